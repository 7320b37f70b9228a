#pragma once

#include "zetaint.hpp"

#include <cmath>
#include <utility>
#include <vector>

namespace rll {

enum class WeightCase { unramified, ramified, conductor_exceeds };

inline const char* weight_case_name(WeightCase c)
{
    switch (c) {
    case WeightCase::unramified: return "unramified";
    case WeightCase::ramified: return "ramified";
    default: return "conductor-exceeds";
    }
}

/** \brief Newvector lower bound for the local weight at one place.
 *
 * normalized_* values carry the factor vol^(-1)(K_{p^r}) zeta_v(1)^2.
 * trivial_lower_bound replaces L_v(1, pi x pi~) by 1 in the ramified case.
 */
struct WeightReport {
    PlaceData place;
    WeightCase tag = WeightCase::unramified;
    Scalar lower_bound;
    Scalar normalized_lower_bound;
    Scalar trivial_lower_bound;
    Scalar normalized_trivial_bound;
    Scalar floor;      // (1 - p^(-1+2 theta)) / (1 - 1/p)
    Scalar floor_half; // (1 - p^(-1/2+2 theta)) / (1 - 1/p)
    bool floor_holds = true; // normalized_lower_bound >= floor
};

namespace detail {

inline Scalar theta_floor(std::int64_t p, const Rational& offset, const Rational& theta)
{
    // (1 - p^(-offset + 2 theta)) / (1 - 1/p)
    Scalar num = Scalar(1) - p_pow(p, Scalar(Rational(offset - 2 * theta)));
    return num * Scalar(zeta_value(p, 1));
}

inline double real_of(const Scalar& x) { return x.numeric().real(); }

// exact when both factors live in the same Q(sqrt(1/p)), numeric otherwise
inline Scalar mixed_product(const Scalar& a, const Scalar& b)
{
    if (a.is_exact() && b.is_exact()) {
        const Surd &x = a.exact(), &y = b.exact();
        if (x.is_rational() || y.is_rational() || x.radicand() == y.radicand()) return a * b;
    }
    return Scalar(a.numeric() * b.numeric());
}

} // namespace detail

inline WeightReport local_weight_lower(const SatakeParams& pi, int cond_exp, const PlaceData& pl)
{
    if (cond_exp < 0) throw std::invalid_argument("conductor exponent must be non-negative");
    WeightReport w;
    w.place = pl;
    w.floor = detail::theta_floor(pl.p, 1, pi.theta);
    w.floor_half = detail::theta_floor(pl.p, make_q(1, 2), pi.theta);
    Rational vol = volume_K(pl), z1 = zeta_value(pl.p, 1);
    Rational renorm = z1 * z1 / vol;
    if (cond_exp > pl.r) {
        w.tag = WeightCase::conductor_exceeds;
        w.lower_bound = w.normalized_lower_bound = w.trivial_lower_bound = w.normalized_trivial_bound = Scalar(0);
        w.floor_holds = false;
        return w;
    }
    if (!pi.ramified) {
        w.tag = WeightCase::unramified;
        w.lower_bound = Scalar(vol * zeta_value(pl.p, 2) / (z1 * z1 * z1));
        w.trivial_lower_bound = w.lower_bound;
    } else {
        w.tag = WeightCase::ramified;
        Scalar X(make_q(1, pl.p));
        Scalar L1 = rankin_L(pi.alphas(), conj_all(pi.alphas()), X);
        Scalar tail = Scalar(1) - X * pi.a1 * conj(pi.a1);
        Scalar base = Scalar(vol / z1) * tail;
        w.lower_bound = base * L1;
        w.trivial_lower_bound = base;
    }
    w.normalized_lower_bound = w.lower_bound * Scalar(renorm);
    w.normalized_trivial_bound = w.trivial_lower_bound * Scalar(renorm);
    w.floor_holds = detail::real_of(w.normalized_lower_bound) >= detail::real_of(w.floor) * (1 - 1e-15);
    return w;
}

/** \brief Product of the per-place bounds and floors against (1 - eps)^omega(q). */
struct JqLowerReport {
    std::vector<WeightReport> places;
    Scalar normalized_product;
    Scalar floor_product;
    Scalar floor_half_product;
    double eps = 0;
    double target = 1; // (1 - eps)^omega
    bool floor_exceeds_target = false;
    bool floor_half_exceeds_target = false;
};

inline JqLowerReport jq_lower(const std::vector<std::pair<SatakeParams, int>>& pi_places, const IdealFactorization& q,
                              const Rational& theta = make_q(7, 64), double eps = 0.1)
{
    if (pi_places.size() != q.places().size())
        throw std::invalid_argument("expected " + std::to_string(q.places().size()) + " local representations, got " +
                                    std::to_string(pi_places.size()));
    if (!(eps > 0 && eps < 1)) throw std::invalid_argument("eps must lie in (0, 1)");
    JqLowerReport r;
    r.normalized_product = r.floor_product = r.floor_half_product = Scalar(1);
    for (size_t i = 0; i < pi_places.size(); ++i) {
        SatakeParams pi = pi_places[i].first;
        pi.theta = theta;
        auto w = local_weight_lower(pi, pi_places[i].second, q.places()[i]);
        r.normalized_product = detail::mixed_product(r.normalized_product, w.normalized_lower_bound);
        r.floor_product = detail::mixed_product(r.floor_product, w.floor);
        r.floor_half_product = detail::mixed_product(r.floor_half_product, w.floor_half);
        r.places.push_back(std::move(w));
    }
    r.eps = eps;
    r.target = std::pow(1 - eps, q.omega());
    r.floor_exceeds_target = detail::real_of(r.floor_product) >= r.target;
    r.floor_half_exceeds_target = detail::real_of(r.floor_half_product) >= r.target;
    return r;
}

/** \brief prod_v zeta_v(2)/L_v(1, pi0 x pi0~) int |f|^2 |W0|^2, times vol^(-1)(K_q). */
struct PlancherelReport {
    Rational vol_inv;
    Scalar mass;
    Scalar ratio; // mass / vol^(-1)(K_q)
    std::vector<Scalar> local_integrals; // kind (i) at the origin
};

inline PlancherelReport plancherel_mass(const SatakeParams& pi0, const IdealFactorization& q)
{
    PlancherelReport r;
    r.vol_inv = vol_inv_q(q);
    Scalar prod(1);
    for (auto& pl : q.places()) {
        Scalar I = rf_eval(psi_closed(ZetaKind::i, pl, pi0).value, Scalar(0), Scalar(0));
        Scalar L1 = rankin_L(pi0.alphas(), conj_all(pi0.alphas()), Scalar(make_q(1, pl.p)));
        r.local_integrals.push_back(I);
        prod = prod * Scalar(zeta_value(pl.p, 2)) / L1 * I;
    }
    r.ratio = prod;
    r.mass = Scalar(r.vol_inv) * prod;
    return r;
}

} // namespace rll
