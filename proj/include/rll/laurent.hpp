#pragma once

#include "ratfun.hpp"
#include "series.hpp"

#include <algorithm>
#include <array>
#include <cstdint>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

namespace rll {

struct SingularError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/** \brief Pole exponents on the divisors z, w, z+w, z-w. */
struct Poles {
    std::array<int, 4> e{0, 0, 0, 0};
    int total() const { return e[0] + e[1] + e[2] + e[3]; }
    friend bool operator==(const Poles& a, const Poles& b) { return a.e == b.e; }
};

inline constexpr int kDefaultDepth = 8;

/** \brief N(z,w) / (z^a w^b (z+w)^c (z-w)^d), N known through total degree K.
 *
 * Values are kept minimal: a positive exponent is never divisible out of N.
 * For numeric coefficients, divisibility is decided with the relative
 * tolerance tol() against the size of N.
 */
template <class C> class LaurentSeries2 {
public:
    LaurentSeries2() : N_(Series2<C>::constant(ring<C>::one(), kDefaultDepth)) {}
    LaurentSeries2(Series2<C> N, Poles P = {}, double tol = 1e-9) : N_(std::move(N)), P_(P), tol_(tol)
    {
        for (int x : P_.e)
            if (x < 0) throw std::domain_error("negative pole exponent");
        minimalize();
    }
    static LaurentSeries2 constant(const C& c, int K = kDefaultDepth) { return LaurentSeries2(Series2<C>::constant(c, K)); }

    const Series2<C>& numerator() const { return N_; }
    const Poles& poles() const { return P_; }
    int order() const { return N_.order(); }
    double tol() const { return tol_; }
    bool is_regular() const { return P_.total() == 0; }

    // invariant K >= a+b+c+d+3, checked where a result is about to be consumed
    void require_depth(int margin = 3) const
    {
        if (N_.order() < P_.total() + margin) {
            std::ostringstream os;
            os << "insufficient depth: order " << N_.order() << " with pole order " << P_.total();
            throw DepthError(os.str());
        }
    }

    friend LaurentSeries2 operator*(const LaurentSeries2& a, const LaurentSeries2& b)
    {
        Poles P;
        for (int k = 0; k < 4; ++k) P.e[k] = a.P_.e[k] + b.P_.e[k];
        return LaurentSeries2(a.N_ * b.N_, P, std::max(a.tol_, b.tol_));
    }
    friend LaurentSeries2 operator+(const LaurentSeries2& a, const LaurentSeries2& b) { return combine(a, b, false); }
    friend LaurentSeries2 operator-(const LaurentSeries2& a, const LaurentSeries2& b) { return combine(a, b, true); }
    LaurentSeries2 operator-() const { return LaurentSeries2(-N_, P_, tol_); }
    LaurentSeries2 scaled(const C& c) const { return LaurentSeries2(N_.scaled(c), P_, tol_); }

    /** z -> -z and/or w -> -w. One flip swaps the roles of z+w and z-w. */
    LaurentSeries2 flipped(bool fz, bool fw) const
    {
        Series2<C> N = N_.flipped(fz, fw);
        Poles P = P_;
        int sign_exp = 0;
        if (fz) sign_exp += P_.e[0];
        if (fw) sign_exp += P_.e[1];
        if (fz && fw) {
            sign_exp += P_.e[2] + P_.e[3];
        } else if (fz) {
            // z+w -> -(z-w), z-w -> -(z+w)
            std::swap(P.e[2], P.e[3]);
            sign_exp += P_.e[2] + P_.e[3];
        } else if (fw) {
            // z+w -> z-w, z-w -> z+w
            std::swap(P.e[2], P.e[3]);
        }
        if (sign_exp & 1) N = -N;
        return LaurentSeries2(std::move(N), P, tol_);
    }

    /** Sum of the homogeneous pieces N_d/D that D does not divide. */
    LaurentSeries2 singular_part() const
    {
        Series2<C> S(N_.order());
        bool any = false;
        for (int d = 0; d <= N_.order(); ++d) {
            Series2<C> piece = N_.component(d);
            if (piece.is_zero(abs_tol())) continue;
            if (!divisible_by_denominator(piece)) {
                S = S + piece;
                any = true;
            }
        }
        if (!any) return LaurentSeries2(Series2<C>(N_.order()), Poles{}, tol_);
        LaurentSeries2 r;
        r.N_ = S;
        r.P_ = P_;
        r.tol_ = tol_;
        return r;
    }

    bool is_zero() const { return N_.is_zero(abs_tol()); }

    /** Value at the origin; requires a vanishing singular part. */
    C constant_term() const
    {
        if (!singular_part().is_zero()) throw SingularError("nonzero singular part");
        if (P_.total() != 0) throw SingularError("pole exponents did not clear");
        return N_.at(0, 0);
    }

    /** Limit at the origin: pieces below the pole degree must vanish, the
     * piece at the pole degree must be a constant multiple of D, and higher
     * pieces tend to zero.
     */
    C limit_at_origin() const
    {
        int dD = P_.total();
        if (dD > N_.order()) throw DepthError("pole degree beyond truncation order");
        double t = abs_tol();
        for (int d = 0; d < dD; ++d)
            if (!N_.component(d).is_zero(t)) throw SingularError("no limit: nonzero piece of degree " + std::to_string(d));
        Series2<C> piece = N_.component(dD);
        if (!divisible_by_denominator(piece)) throw SingularError("no limit: direction-dependent value at the origin");
        for (int k = 0; k < 4; ++k)
            for (int m = 0; m < P_.e[k]; ++m) {
                Series2<C> q;
                piece.divide_divisor(k, q, t);
                piece = std::move(q);
            }
        return piece.at(0, 0);
    }

    // Coefficient of z^i w^j in the regular case.
    C coeff(int i, int j) const
    {
        if (P_.total() != 0) throw SingularError("Taylor coefficient of a singular object");
        if (i + j > N_.order()) throw DepthError("coefficient beyond truncation order");
        return N_.at(i, j);
    }

    Complex eval(Complex z, Complex w, double lam = 0.0) const
    {
        Complex d = std::pow(z, P_.e[0]) * std::pow(w, P_.e[1]) * std::pow(z + w, P_.e[2]) * std::pow(z - w, P_.e[3]);
        return N_.eval(z, w, lam) / d;
    }

    std::string str() const
    {
        std::ostringstream os;
        os << "N/(z^" << P_.e[0] << " w^" << P_.e[1] << " (z+w)^" << P_.e[2] << " (z-w)^" << P_.e[3] << "), K=" << N_.order();
        return os.str();
    }

private:
    double abs_tol() const { return ring<C>::exact ? 0.0 : tol_ * std::max(1.0, N_.magnitude()); }

    void minimalize()
    {
        for (int k = 0; k < 4; ++k) {
            while (P_.e[k] > 0) {
                Series2<C> q;
                if (!N_.divide_divisor(k, q, abs_tol())) break;
                N_ = std::move(q);
                --P_.e[k];
            }
        }
    }

    bool divisible_by_denominator(Series2<C> piece) const
    {
        double t = abs_tol();
        for (int k = 0; k < 4; ++k)
            for (int m = 0; m < P_.e[k]; ++m) {
                Series2<C> q;
                if (!piece.divide_divisor(k, q, t)) return false;
                piece = std::move(q);
            }
        return true;
    }

    static LaurentSeries2 combine(const LaurentSeries2& a, const LaurentSeries2& b, bool subtract)
    {
        Poles P;
        for (int k = 0; k < 4; ++k) P.e[k] = std::max(a.P_.e[k], b.P_.e[k]);
        Series2<C> na = a.lift(P), nb = b.lift(P);
        return LaurentSeries2(subtract ? na - nb : na + nb, P, std::max(a.tol_, b.tol_));
    }

    Series2<C> lift(const Poles& P) const
    {
        Series2<C> N = N_;
        for (int k = 0; k < 4; ++k)
            for (int m = P_.e[k]; m < P.e[k]; ++m) N = N.times_divisor(k);
        return N;
    }

    Series2<C> N_;
    Poles P_;
    double tol_ = 1e-9;
};

/** \brief Embedding of Q and of logarithms into a series coefficient ring. */
template <class C> struct log_embedding {
    static C log_of(std::int64_t n) { return ring<C>::log_of(n); }
};

/** \brief Laurent expansion of f(p^(-z), p^(-w)) around the origin.
 *
 * T^(a,b) = exp(-(a z + b w) log p). The denominator's vanishing at the origin
 * must be explained by the four divisors, which is decided exactly on the
 * polynomial (substituting T1 = 1, T2 = 1, T1 T2 = 1, T1 = T2).
 */
template <class C> LaurentSeries2<C> ls_from_rational(const RF& f, int K = kDefaultDepth, double tol = 1e-9)
{
    if (f.is_zero()) return LaurentSeries2<C>(Series2<C>(K));
    auto order_on = [](const Poly2<Rational>& P, int which) {
        // multiplicity of the line through the origin in the T-polynomial, via repeated exact division
        Poly2<Rational> lin;
        switch (which) {
        case 0: lin.add_term({1, 0}, 1); lin.add_term({0, 0}, -1); break;    // T1 - 1
        case 1: lin.add_term({0, 1}, 1); lin.add_term({0, 0}, -1); break;    // T2 - 1
        case 2: lin.add_term({1, 1}, 1); lin.add_term({0, 0}, -1); break;    // T1 T2 - 1
        default: lin.add_term({1, 0}, 1); lin.add_term({0, 1}, -1); break;   // T1 - T2
        }
        int m = 0;
        auto lo = P.min_exponents();
        Poly2<Rational> Q = P.shifted(-lo.first, -lo.second);
        while (!Q.is_zero()) {
            Poly2<Rational> g = poly_gcd(Q, lin);
            if (g.is_constant()) break;
            Q = poly_exact_div(Q, lin);
            ++m;
        }
        return m;
    };
    Poles Pd;
    for (int k = 0; k < 4; ++k) Pd.e[k] = order_on(f.den(), k);
    int need = K + Pd.total();

    C lp = f.p() >= 2 ? log_embedding<C>::log_of(f.p()) : ring<C>::zero();
    auto expand = [&](const Poly2<Rational>& P, int depth) {
        Series2<C> s(depth);
        for (auto& [k, c] : P.terms()) {
            // exp(-(i z + j w) log p)
            C mlp = -lp;
            s = s + Series2<C>::exp_linear(mlp, k.first, k.second, depth).scaled(ring<C>::from_q(c));
        }
        return s;
    };
    Series2<C> N = expand(f.num(), K), D = expand(f.den(), need);
    double t = 0.0;
    if constexpr (!ring<C>::exact) t = tol * std::max(1.0, D.magnitude());
    for (int k = 0; k < 4; ++k)
        for (int m = 0; m < Pd.e[k]; ++m) {
            Series2<C> q;
            if (!D.divide_divisor(k, q, t)) throw SingularError("denominator vanishes along a divisor but is not divisible by it");
            D = std::move(q);
        }
    if (ring<C>::exact ? ring<C>::is_zero(D.at(0, 0)) : ring<C>::magnitude(D.at(0, 0)) <= t)
        throw SingularError("denominator vanishes at the origin in a direction other than z, w, z+w, z-w");
    return LaurentSeries2<C>(N * D.truncated(K).inverse(), Pd, tol);
}

template <class C> LaurentSeries2<C> ls_mul(const LaurentSeries2<C>& a, const LaurentSeries2<C>& b) { return a * b; }
template <class C> LaurentSeries2<C> ls_add(const LaurentSeries2<C>& a, const LaurentSeries2<C>& b) { return a + b; }
template <class C> LaurentSeries2<C> ls_sub(const LaurentSeries2<C>& a, const LaurentSeries2<C>& b) { return a - b; }
template <class C> LaurentSeries2<C> ls_flip(const LaurentSeries2<C>& a, bool fz, bool fw) { return a.flipped(fz, fw); }
template <class C> LaurentSeries2<C> ls_singular_part(const LaurentSeries2<C>& a) { return a.singular_part(); }
template <class C> C ls_constant_term(const LaurentSeries2<C>& a) { return a.constant_term(); }

/** \brief c3 lambda^3 + c2 lambda^2 + c1 lambda + c0. */
template <class F> struct CubicPolynomial {
    F c3, c2, c1, c0;
};

} // namespace rll
