#pragma once

#include "recurrence.hpp"
#include "whittaker.hpp"

#include <optional>
#include <sstream>
#include <string>

namespace rll {

/** \brief val(y) and val(c); an empty val_c means c = 0. */
struct BruhatPoint {
    long val_y = 0;
    std::optional<long> val_c = 0;
    bool c_integral() const { return !val_c || *val_c >= 0; }
};

enum class ZetaKind { i, ii, iii, iv };

inline const char* kind_name(ZetaKind k)
{
    static const char* n[] = {"i", "ii", "iii", "iv"};
    return n[static_cast<int>(k)];
}

inline ZetaKind parse_kind(const std::string& s)
{
    for (int k = 0; k < 4; ++k)
        if (s == kind_name(static_cast<ZetaKind>(k))) return static_cast<ZetaKind>(k);
    throw ParseError("unknown zeta-integral kind '" + s + "'");
}

/** \brief f * p^(-half/2), with half reduced to 0 or 1. */
struct ScaledRF {
    RF f;
    long half = 0;

    ScaledRF(RF f_ = RF(Rational(0)), long half_ = 0) : f(std::move(f_)), half(half_) { normalize(); }

    friend ScaledRF operator*(const ScaledRF& a, const ScaledRF& b) { return ScaledRF(a.f * b.f, a.half + b.half); }
    friend ScaledRF operator/(const ScaledRF& a, const ScaledRF& b) { return ScaledRF(a.f / b.f, a.half - b.half); }
    bool is_zero() const { return f.is_zero(); }

    RF integral() const
    {
        if (half != 0 && !f.is_zero()) throw std::logic_error("odd half power where an integral power was expected");
        return f;
    }

private:
    void normalize()
    {
        if (f.is_zero()) {
            half = 0;
            return;
        }
        long e = half >= 0 ? half / 2 : -((-half + 1) / 2);
        half -= 2 * e;
        if (e != 0) {
            std::int64_t p = f.p();
            if (p < 2) throw std::logic_error("scaled rational function without residue cardinality");
            f = f * RF(q_pow(Rational(static_cast<long>(p)), -e), p);
        }
    }
};

namespace detail {

inline long twice_integral(const Rational& m)
{
    Rational t = 2 * m;
    if (!is_integer(t)) throw std::domain_error("shift constant must be a half-integer");
    return t.get_num().get_si();
}

// |y|^s for val(y) = v
inline ScaledRF abs_power(const PlaceData& pl, long v, const Shift& s)
{
    return ScaledRF(RF::monomial(Rational(1), static_cast<int>(v * s.a), static_cast<int>(v * s.b), pl.p), v * twice_integral(s.m));
}

inline RF zeta_at(const PlaceData& pl, const Rational& m, int a, int b) { return zeta_local(pl, Shift{m, a, b}); }

} // namespace detail

/** \brief f_s(y; c) = |y|^s 1_o(c). */
inline ScaledRF f_eval(const PlaceData& pl, const BruhatPoint& pt, const Shift& s)
{
    if (!pt.c_integral()) return ScaledRF(RF(Rational(0), pl.p));
    return detail::abs_power(pl, pt.val_y, s);
}

/** \brief ftilde_s(y; c) = |y|^(1-s) zeta(2(1-s)) / zeta(1) on c in o, and
 * |y|^(1-s) zeta(2(1-s)) / zeta(2s-1) |c|^(-2(1-s)) off it.
 */
inline ScaledRF ftilde_eval(const PlaceData& pl, const BruhatPoint& pt, const Shift& s)
{
    Shift t{1 - s.m, -s.a, -s.b};
    ScaledRF y = detail::abs_power(pl, pt.val_y, t);
    RF z2 = detail::zeta_at(pl, 2 * t.m, 2 * t.a, 2 * t.b);
    if (pt.c_integral()) return y * ScaledRF(z2 / RF(zeta_value(pl.p, 1), pl.p));
    long k = *pt.val_c;
    RF den = detail::zeta_at(pl, 2 * s.m - 1, 2 * s.a, 2 * s.b);
    // |c|^(-2(1-s)) = p^(k (2 - 2m)) T1^(2 a k) T2^(2 b k)
    ScaledRF c(RF::monomial(Rational(1), static_cast<int>(2 * s.a * k), static_cast<int>(2 * s.b * k), pl.p),
               -k * detail::twice_integral(2 * t.m));
    return y * ScaledRF(z2 / den) * c;
}

/** \brief Closed-form local value together with where it came from. */
struct LocalZetaResult {
    RF value;
    enum class Source { closed_form, oracle } source = Source::closed_form;
    std::string note;
};

namespace detail {

inline void require_rational_unitary(const SatakeParams& pi0)
{
    if (pi0.ramified) throw SatakeError("pi0 must be unramified");
    if (!pi0.a1.is_rational() || !pi0.a2.is_rational()) throw SatakeError("exact local zeta integrals need rational Satake parameters");
    if (pi0.a1.rational() * pi0.a2.rational() != 1) throw SatakeError("pi0 must have alpha1 alpha2 = 1");
}

} // namespace detail

/** \brief G_v(sz, tw) for signs s, t in {+1, -1}. */
inline RF G_local(const PlaceData& pl, const SatakeParams& pi0, int s, int t)
{
    detail::require_rational_unitary(pi0);
    Rational a[2] = {pi0.a1.rational(), pi0.a2.rational()};
    RF out = RF::monomial(Rational(1), -pl.r * s, -pl.r * t, pl.p);
    out = out * zeta_local(pl, Shift{1, 2 * s, 0}) * zeta_local(pl, Shift{1, 0, 2 * t});
    for (auto& x : a)
        for (auto& y : a) out = out / (RF(Rational(1), pl.p) - RF::monomial(x * y / Rational(static_cast<long>(pl.p)), s, t, pl.p));
    return out / zeta_local(pl, Shift{2, 2 * s, 2 * t});
}

/** \brief Local factor of h_j, j = 1..4. */
inline RF h_local(int j, const PlaceData& pl)
{
    RF z1(zeta_value(pl.p, 1), pl.p);
    switch (j) {
    case 1: return (zeta_local(pl, Shift{1, 2, 0}) * zeta_local(pl, Shift{1, 0, 2})).inverse();
    case 2: return (z1 * zeta_local(pl, Shift{1, 0, 2})).inverse();
    case 3: return (zeta_local(pl, Shift{1, 2, 0}) * z1).inverse();
    case 4:
        return zeta_local(pl, Shift{1, -2, -2}) / (zeta_local(pl, Shift{1, -2, 0}) * zeta_local(pl, Shift{1, 0, -2}) * z1);
    default: throw std::invalid_argument("h index must be 1..4");
    }
}

/** \brief p^(-(r+1)(1-2z-2w)) zeta(1-2z) zeta(1-2w) zeta(1) / (zeta(2z) zeta(2w) zeta(2z+2w)). */
inline RF E_local(const PlaceData& pl)
{
    long r1 = pl.r + 1;
    RF pw = RF::monomial(q_pow(Rational(static_cast<long>(pl.p)), -r1), static_cast<int>(-2 * r1), static_cast<int>(-2 * r1), pl.p);
    RF num = zeta_local(pl, Shift{1, -2, 0}) * zeta_local(pl, Shift{1, 0, -2}) * RF(zeta_value(pl.p, 1), pl.p);
    RF den = zeta_local(pl, Shift{0, 2, 0}) * zeta_local(pl, Shift{0, 0, 2}) * zeta_local(pl, Shift{0, 2, 2});
    return pw * num / den;
}

inline LocalZetaResult psi_closed(ZetaKind kind, const PlaceData& pl, const SatakeParams& pi0)
{
    if (pl.r < 1) throw std::domain_error("local zeta integrals are computed at places dividing q");
    RF v;
    switch (kind) {
    case ZetaKind::i: v = G_local(pl, pi0, 1, 1) * h_local(1, pl); break;
    case ZetaKind::ii: v = G_local(pl, pi0, -1, 1) * h_local(2, pl); break;
    case ZetaKind::iii: v = G_local(pl, pi0, 1, -1) * h_local(3, pl); break;
    case ZetaKind::iv: v = G_local(pl, pi0, -1, -1) * h_local(4, pl) * (RF(Rational(1), pl.p) - E_local(pl)); break;
    }
    return {v, LocalZetaResult::Source::closed_form, ""};
}

struct CertificationError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/** \brief Bruhat-coordinate integral by exact valuation strata.
 *
 * For val(c) = k the measure is p^(-k)(1 - 1/p), the y-sum over val(y) = m
 * carries p^m, and |W0|^2 is evaluated at m (k >= 0) or m - 2k (k < 0).
 * Each k contributes base * sum_n |W0(n)|^2 rho^n with rho certified on a
 * third term and the W-series summed through its Berlekamp-Massey
 * generating function. Strata outside [-cutoff, r + cutoff] are summed as
 * geometric tails whose ratio is certified on the last two strata.
 */
inline LocalZetaResult psi_oracle(ZetaKind kind, const PlaceData& pl, const SatakeParams& pi0, int cutoff = 3)
{
    if (pl.r < 1) throw std::domain_error("local zeta integrals are computed at places dividing q");
    detail::require_rational_unitary(pi0);
    if (cutoff < 3) throw CertificationError("cutoff " + std::to_string(cutoff) + " is too small to certify the strata tails (need 3)");
    const std::int64_t p = pl.p;
    const int r = pl.r;
    const Shift s1{make_q(1, 2), 1, 0}, s2{make_q(1, 2), 0, 1};
    const bool t1 = kind == ZetaKind::ii || kind == ZetaKind::iv, t2 = kind == ZetaKind::iii || kind == ZetaKind::iv;

    // |W0(n)|^2 = p^(-n) S(n+1)^2, rational
    std::vector<Rational> a;
    {
        Rational x1 = pi0.a1.rational(), x2 = pi0.a2.rational(), Sp = 0, S = 1;
        for (int n = 0; n < 24; ++n) {
            a.push_back(S * S / q_pow(Rational(static_cast<long>(p)), n));
            Rational Sn = (x1 + x2) * S - x1 * x2 * Sp;
            Sp = S;
            S = Sn;
        }
    }
    RationalGF gf = berlekamp_massey(a);
    auto gf_at = [&](const RF& rho) {
        auto poly = [&](const std::vector<Rational>& c) {
            RF acc(Rational(0), p);
            for (size_t i = c.size(); i-- > 0;) acc = acc * rho + RF(c[i], p);
            return acc;
        };
        return poly(gf.P) / poly(gf.Q);
    };

    RF one(Rational(1), p);
    auto base = [&](long m, long k) {
        BruhatPoint pt{m - r, k - r};
        ScaledRF F1 = t1 ? ftilde_eval(pl, pt, s1) : f_eval(pl, pt, s1);
        ScaledRF F2 = t2 ? ftilde_eval(pl, pt, s2) : f_eval(pl, pt, s2);
        Rational meas = q_pow(Rational(static_cast<long>(p)), m - k) * (1 - make_q(1, p));
        return (F1 * F2).integral() * RF(meas, p);
    };
    auto stratum = [&](long k) {
        long m0 = 2 * std::min(k, 0L);
        RF b0 = base(m0, k), b1 = base(m0 + 1, k), b2 = base(m0 + 2, k);
        if (b0.is_zero()) {
            if (!b1.is_zero() || !b2.is_zero()) throw CertificationError("y-strata are not geometric at val(c) = " + std::to_string(k));
            return RF(Rational(0), p);
        }
        RF rho = b1 / b0;
        if (b2 != rho * b1) throw CertificationError("y-ratio not certified at val(c) = " + std::to_string(k));
        return b0 * gf_at(rho);
    };

    long klo = -cutoff, khi = r + cutoff;
    std::vector<RF> terms;
    for (long k = klo; k <= khi; ++k) terms.push_back(stratum(k));
    RF sum(Rational(0), p);
    for (auto& t : terms) sum = sum + t;

    auto tail = [&](const RF& last, const RF& prev, const RF& prev2, const char* side) {
        if (last.is_zero() && prev.is_zero() && prev2.is_zero()) return RF(Rational(0), p);
        if (last.is_zero() || prev.is_zero() || prev2.is_zero())
            throw CertificationError(std::string(side) + " tail is not geometric within the cutoff");
        RF t = last / prev;
        if (prev / prev2 != t) throw CertificationError(std::string(side) + " tail ratio not certified; raise the cutoff");
        return last * t / (one - t);
    };
    size_t n = terms.size();
    sum = sum + tail(terms[n - 1], terms[n - 2], terms[n - 3], "upper");
    sum = sum + tail(terms[0], terms[1], terms[2], "lower");

    std::ostringstream note;
    note << "strata k in [" << klo << ", " << khi << "], recurrence order " << (gf.Q.size() - 1);
    return {sum, LocalZetaResult::Source::oracle, note.str()};
}

/** \brief Local Rankin-Selberg value
 * (1 - p^(-1) a~1 a~2 b1 b2) / prod_{i,j} (1 - p^(-1/2) a~_i b_j), a~ = conj(alpha_pi).
 */
inline Scalar rs_local_value(const SatakeParams& pi, const SatakeParams& pi0, const PlaceData& pl)
{
    auto at = conj_all(pi.alphas());
    auto b = pi0.alphas();
    double lim = std::sqrt(static_cast<double>(pl.p));
    for (auto& x : at)
        for (auto& y : b)
            if (modulus(x * y) >= lim) throw std::domain_error("Rankin-Selberg series diverges: |alpha_i beta_j| >= p^(1/2)");
    Scalar num = Scalar(1) - Scalar(make_q(1, pl.p)) * at[0] * at[1] * b[0] * b[1];
    return num * rankin_L(at, b, Scalar(Surd::S(pl.p)));
}

/** \brief sum_n p^(-n/2) S~(n+1) S0(n+1) by recursion. */
inline OracleSum rs_local_oracle(const SatakeParams& pi, const SatakeParams& pi0, const PlaceData& pl, long terms = 10000)
{
    Complex a1 = std::conj(pi.a1.numeric()), a2 = std::conj(pi.a2.numeric());
    Complex b1 = pi0.a1.numeric(), b2 = pi0.a2.numeric();
    double x = 1 / std::sqrt(static_cast<double>(pl.p));
    Complex Sa = 1, Sap = 0, Sb = 1, Sbp = 0, sum = 0;
    double xn = 1;
    for (long n = 0; n < terms; ++n) {
        sum += xn * Sa * Sb;
        Complex na = (a1 + a2) * Sa - a1 * a2 * Sap, nb = (b1 + b2) * Sb - b1 * b2 * Sbp;
        Sap = Sa;
        Sa = na;
        Sbp = Sb;
        Sb = nb;
        xn *= x;
    }
    double M = std::max(std::abs(a1), std::abs(a2)) * std::max(std::abs(b1), std::abs(b2)) * x;
    double nn = static_cast<double>(terms), grow = (nn + 2) * (nn + 2) / ((nn + 1) * (nn + 1)) * M;
    double tail = grow < 1 ? (nn + 1) * (nn + 1) * std::pow(M, nn) / (1 - grow) : INFINITY;
    return {sum, tail, terms};
}

enum class RegForm { difference, four_term };

namespace detail {

// d^k S(n) without dividing by d for n < 0; requires k + n >= 0 in that case
inline Scalar dS(const Scalar& a1, const Scalar& a2, int k, long n)
{
    Scalar d = a1 * a2;
    if (n >= 0) return spow(d, k) * satake_S(a1, a2, n);
    if (k + n < 0) throw std::domain_error("negative power of alpha1 alpha2");
    return -satake_S(a1, a2, -n) * spow(d, k + n);
}

} // namespace detail

/** \brief Local integral of the regularized term at a place dividing q.
 *
 * With a = conj(alpha), c = p^(-1/2+z), u = p^(-1/2-z):
 * difference form  -p^(-r/2) (g(a1) - g(a2)) / (a1 - a2), g(x) = (c - x) x^r / (1 - x u)^2
 * (the derivative when a1 = a2);
 * four-term form   p^(-r/2) L(1/2+z)^2 [S(r+1) - (c + 2u d) S(r) + (2cu d + u^2 d^2) S(r-1) - c u^2 d^2 S(r-2)], d = a1 a2.
 */
inline Scalar reg_local_closed(const SatakeParams& pi, const PlaceData& pl, const Scalar& z, RegForm form = RegForm::four_term)
{
    const std::int64_t p = pl.p;
    const long r = pl.r;
    Scalar a1 = conj(pi.a1), a2 = conj(pi.a2);
    Scalar c = p_pow(p, Scalar(make_q(1, 2)) - z), u = p_pow(p, Scalar(make_q(1, 2)) + z);
    for (auto& x : {a1, a2})
        if (modulus(x * u) >= 1) throw std::domain_error("regularized local integral diverges: |alpha| p^(-1/2-Re z) >= 1");
    Scalar pr = Scalar(Surd::p_half_power(p, r));
    if (form == RegForm::four_term) {
        Scalar one(1);
        Scalar L = one / ((one - a1 * u) * (one - a2 * u));
        Scalar br = detail::dS(a1, a2, 0, r + 1) - c * detail::dS(a1, a2, 0, r) - Scalar(2) * u * detail::dS(a1, a2, 1, r) +
                    Scalar(2) * c * u * detail::dS(a1, a2, 1, r - 1) + u * u * detail::dS(a1, a2, 2, r - 1) -
                    c * u * u * detail::dS(a1, a2, 2, r - 2);
        return pr * L * L * br;
    }
    auto g = [&](const Scalar& x) {
        Scalar d = Scalar(1) - x * u;
        return (c - x) * spow(x, r) / (d * d);
    };
    bool equal = a1.is_exact() && a2.is_exact() ? exact_equal(a1, a2) : modulus(a1 - a2) == 0.0;
    if (!equal) return -pr * (g(a1) - g(a2)) / (a1 - a2);
    // g'(x) = (-x^r + (c - x) r x^(r-1)) / (1 - xu)^2 + 2u (c - x) x^r / (1 - xu)^3
    Scalar x = a1, d = Scalar(1) - x * u;
    Scalar xr1 = r >= 1 ? spow(x, r - 1) : Scalar(0);
    Scalar gp = (-spow(x, r) + (c - x) * Scalar(r) * xr1) / (d * d) + Scalar(2) * u * (c - x) * spow(x, r) / (d * d * d);
    return -pr * gp;
}

/** \brief -p^(-1+z) W~(r-1) + sum_n p^(-nz) (-1/p + (n+1)/zeta(1)) W~(n+r), W~ from conj(alpha). */
inline OracleSum reg_local_oracle(const SatakeParams& pi, const PlaceData& pl, const Scalar& z, long terms = 10000)
{
    const double p = static_cast<double>(pl.p), lp = std::log(p);
    const long r = pl.r;
    Complex a1 = std::conj(pi.a1.numeric()), a2 = std::conj(pi.a2.numeric()), zz = z.numeric();
    // W~(n) = p^(-n/2) S(n+1), advanced by recursion from W~(r-1), W~(r)
    auto S_direct = [&](long n) {
        Complex s = 0, sp = 0;
        for (long k = 0; k < n; ++k) {
            Complex nx = (a1 + a2) * s - a1 * a2 * sp + (k == 0 ? 1.0 : 0.0);
            sp = s;
            s = nx;
        }
        return s;
    };
    Complex Sp = S_direct(r), S = S_direct(r + 1); // S(r), S(r+1)
    Complex boundary = r >= 1 ? -std::exp((-1.0 + zz) * lp) * std::pow(p, -(r - 1) / 2.0) * Sp : Complex(0);
    Complex sum = boundary, xn = 1, x = std::exp(-zz * lp);
    double wscale = std::pow(p, -r / 2.0), iz1 = 1 - 1 / p;
    for (long n = 0; n < terms; ++n) {
        sum += xn * (-1 / p + (n + 1) * iz1) * wscale * S;
        Complex Sn = (a1 + a2) * S - a1 * a2 * Sp;
        Sp = S;
        S = Sn;
        xn *= x;
        wscale /= std::sqrt(p);
    }
    double M = std::max(std::abs(a1), std::abs(a2)) * std::abs(x) / std::sqrt(p);
    double nn = static_cast<double>(terms), grow = (nn + 2 + r) * (nn + 2) / ((nn + 1 + r) * (nn + 1)) * M;
    double tail = grow < 1 ? (nn + 1) * (nn + 1 + r) * std::pow(M, nn) / (1 - grow) : INFINITY;
    return {sum, tail, terms};
}

/** \brief p^(-r/2) |L(1/2+z)|^2 (r+1) max |alpha_i|^r. */
inline double reg_local_bound_shape(const SatakeParams& pi, const PlaceData& pl, const Scalar& z)
{
    Scalar a1 = conj(pi.a1), a2 = conj(pi.a2), u = p_pow(pl.p, Scalar(make_q(1, 2)) + z);
    double L = std::abs(1.0 / ((1.0 - a1.numeric() * u.numeric()) * (1.0 - a2.numeric() * u.numeric())));
    double M = std::max(modulus(a1), modulus(a2));
    return std::pow(static_cast<double>(pl.p), -pl.r / 2.0) * L * L * (pl.r + 1) * std::pow(M, pl.r);
}

} // namespace rll
