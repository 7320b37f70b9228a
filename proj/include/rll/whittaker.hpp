#pragma once

#include "localdata.hpp"
#include "scalar.hpp"

#include <cmath>
#include <stdexcept>
#include <vector>

namespace rll {

/** \brief p^(-x): exact in Q(S) when 2x is an integer, numeric otherwise. */
inline Scalar p_pow(std::int64_t p, const Scalar& x)
{
    if (auto e = exact_p_power(p, x)) return Scalar(*e);
    return Scalar(std::exp(-x.numeric() * std::log(static_cast<double>(p))));
}

inline Scalar conj(const Scalar& x)
{
    if (x.is_exact()) return x; // exact values are real
    return Scalar(std::conj(x.numeric()));
}

inline double modulus(const Scalar& x) { return std::abs(x.numeric()); }

inline bool is_zero(const Scalar& x, double tol = 0.0)
{
    if (x.is_exact()) return x.exact().is_zero();
    return std::abs(x.numeric()) <= tol;
}

inline Scalar spow(const Scalar& x, long e)
{
    if (e < 0) return spow(Scalar(1) / x, -e);
    Scalar r(1), b = x;
    for (; e; e >>= 1) {
        if (e & 1) r = r * b;
        if (e > 1) b = b * b;
    }
    return r;
}

struct SatakeError : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

/** \brief Local Satake data. A ramified representation has alpha2 = 0. */
struct SatakeParams {
    Scalar a1 = 1, a2 = 1;
    bool ramified = false;
    Rational theta = make_q(7, 64);

    static SatakeParams unramified(Scalar a1, Scalar a2, Rational theta = make_q(7, 64))
    {
        return SatakeParams{std::move(a1), std::move(a2), false, theta};
    }
    static SatakeParams ramified_with(Scalar a1, Rational theta = make_q(7, 64)) { return SatakeParams{std::move(a1), Scalar(0), true, theta}; }

    bool exact() const { return a1.is_exact() && a2.is_exact(); }

    /** Checks alpha2 = 0 when ramified, alpha1 alpha2 = 1 when asked, and |alpha_i| <= p^theta. */
    void validate(std::int64_t p, bool trivial_central = false, double tol = 1e-12) const
    {
        if (ramified && !is_zero(a2, tol)) throw SatakeError("ramified representation must have alpha2 = 0");
        if (trivial_central) {
            if (ramified) throw SatakeError("trivial central character check applies to unramified data only");
            Scalar d = a1 * a2 - Scalar(1);
            if (!is_zero(d, tol)) throw SatakeError("unramified with trivial central character needs alpha1 alpha2 = 1");
        }
        double bound = std::pow(static_cast<double>(p), theta.get_d()) * (1 + tol);
        if (modulus(a1) > bound || modulus(a2) > bound) throw SatakeError("Satake parameter exceeds p^theta");
    }
    std::vector<Scalar> alphas() const { return {a1, a2}; }
};

/** \brief S(n) = (a1^n - a2^n)/(a1 - a2), extended to n < 0 by S(-n) = -S(n)/(a1 a2)^n. */
inline Scalar satake_S(const Scalar& a1, const Scalar& a2, long n)
{
    if (n == 0) return Scalar(0);
    if (n < 0) return -satake_S(a1, a2, -n) / spow(a1 * a2, -n);
    // sum_{k<n} a1^k a2^(n-1-k); no division, so the equal-parameter case needs no special handling
    Scalar s(0), x = spow(a2, n - 1);
    bool a2zero = is_zero(a2);
    if (a2zero) return spow(a1, n - 1);
    Scalar ratio = a1 / a2;
    for (long k = 0; k < n; ++k) {
        s = s + x;
        x = x * ratio;
    }
    return s;
}

/** \brief W(diag(varpi^n, 1)) = p^(-n/2) S(n+1) for n >= 0, else 0. */
inline Scalar whittaker_value(const SatakeParams& pi, const PlaceData& pl, long n)
{
    if (n < 0) return Scalar(0);
    return Scalar(Surd::p_half_power(pl.p, n)) * satake_S(pi.a1, pi.a2, n + 1);
}

/** \brief prod_{i,j} (1 - a_i b_j X)^(-1). */
inline Scalar rankin_L(const std::vector<Scalar>& a, const std::vector<Scalar>& b, const Scalar& X, double tol = 1e-13)
{
    Scalar d(1);
    for (auto& x : a)
        for (auto& y : b) d = d * (Scalar(1) - x * y * X);
    if (is_zero(d, tol)) throw PoleError("pole of the Rankin-Selberg factor");
    return Scalar(1) / d;
}

inline std::vector<Scalar> conj_all(const std::vector<Scalar>& a)
{
    std::vector<Scalar> r;
    for (auto& x : a) r.push_back(conj(x));
    return r;
}

/** \brief sum_n p^(-n(1+s)) |S(n+1)|^2 in closed form, valid for arbitrary parameters:
 * (1 - |a1 a2|^2 X^2) / prod_{i,j} (1 - a_i conj(a_j) X), X = p^(-1-s).
 */
inline Scalar weighted_integral_closed(const SatakeParams& pi, const PlaceData& pl, const Scalar& s)
{
    Scalar X = p_pow(pl.p, Scalar(1) + s);
    Scalar d = pi.a1 * pi.a2;
    Scalar num = Scalar(1) - d * conj(d) * X * X;
    return num * rankin_L(pi.alphas(), conj_all(pi.alphas()), X);
}

struct OracleSum {
    Complex value;
    double tail_bound; // bound on the omitted terms
    long terms;
};

/** \brief Truncated sum of |W(n)|^2 |varpi^n|^s over n < terms, by the three-term recursion. */
inline OracleSum weighted_integral_oracle(const SatakeParams& pi, const PlaceData& pl, const Scalar& s, long terms = 10000)
{
    Complex a1 = pi.a1.numeric(), a2 = pi.a2.numeric();
    Complex X = std::exp(-(1.0 + s.numeric()) * std::log(static_cast<double>(pl.p)));
    Complex Sprev = 0.0, S = 1.0, Xn = 1.0, sum = 0.0;
    for (long n = 0; n < terms; ++n) {
        sum += Xn * std::norm(S);
        Complex Snext = (a1 + a2) * S - a1 * a2 * Sprev;
        Sprev = S;
        S = Snext;
        Xn *= X;
    }
    double M = std::max(std::abs(a1), std::abs(a2));
    double rho = M * M * std::abs(X);
    double n = static_cast<double>(terms);
    double grow = (n + 2) * (n + 2) / ((n + 1) * (n + 1)) * rho;
    double tail = grow < 1 ? (n + 1) * (n + 1) * std::pow(rho, n) / (1 - grow) : INFINITY;
    return {sum, tail, terms};
}

/** \brief ||W||^2 = zeta_v(2)/L_v(1, pi x pi~) * sum_n |W(n)|^2. */
inline Scalar whittaker_norm_sq(const SatakeParams& pi, const PlaceData& pl)
{
    Scalar X = Scalar(make_q(1, pl.p));
    Scalar L1 = rankin_L(pi.alphas(), conj_all(pi.alphas()), X);
    Scalar z2 = Scalar(zeta_value(pl.p, 2));
    if (pi.ramified) {
        Scalar t = Scalar(1) - pi.a1 * conj(pi.a1) * X;
        if (t.numeric().real() <= 0)
            throw std::domain_error("norm diverges: |alpha1|^2 / p >= 1");
        return z2 / L1 / t;
    }
    return z2 / L1 * weighted_integral_closed(pi, pl, Scalar(0));
}

} // namespace rll
