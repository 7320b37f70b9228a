#pragma once

#include "poly.hpp"
#include "scalar.hpp"

#include <cmath>
#include <cstdint>
#include <optional>
#include <sstream>
#include <stdexcept>
#include <string>

namespace rll {

struct PoleError : std::domain_error {
    using std::domain_error::domain_error;
};

/** \brief num/den in T1 = p^(-z), T2 = p^(-w).
 *
 * Exact fields keep the canonical form: gcd(num, den) = 1 and den has
 * leading coefficient 1. p == 0 marks a value with no T dependence that can
 * be combined with any residue cardinality.
 */
template <class F> class RationalFunction2 {
public:
    using P = Poly2<F>;

    RationalFunction2() : num_(), den_(P::constant(field<F>::one())) {}
    RationalFunction2(const F& c, std::int64_t p = 0) : num_(P::constant(c)), den_(P::constant(field<F>::one())), p_(p) {}
    RationalFunction2(P num, P den, std::int64_t p) : num_(std::move(num)), den_(std::move(den)), p_(p)
    {
        if (den_.is_zero()) throw std::domain_error("zero denominator");
        canonicalize();
    }

    // c * T1^i * T2^j, negative exponents allowed.
    static RationalFunction2 monomial(const F& c, int i, int j, std::int64_t p)
    {
        P n = P::monomial(c, std::max(i, 0), std::max(j, 0));
        P d = P::monomial(field<F>::one(), std::max(-i, 0), std::max(-j, 0));
        return RationalFunction2(std::move(n), std::move(d), p);
    }
    static RationalFunction2 T1(std::int64_t p) { return monomial(field<F>::one(), 1, 0, p); }
    static RationalFunction2 T2(std::int64_t p) { return monomial(field<F>::one(), 0, 1, p); }

    const P& num() const { return num_; }
    const P& den() const { return den_; }
    std::int64_t p() const { return p_; }
    bool is_zero() const { return num_.is_zero(); }
    bool is_constant() const { return num_.is_constant() && den_.is_constant(); }

    friend RationalFunction2 operator+(const RationalFunction2& a, const RationalFunction2& b)
    {
        auto p = join(a, b);
        if (a.den_ == b.den_) return RationalFunction2(a.num_ + b.num_, a.den_, p);
        return RationalFunction2(a.num_ * b.den_ + b.num_ * a.den_, a.den_ * b.den_, p);
    }
    friend RationalFunction2 operator-(const RationalFunction2& a, const RationalFunction2& b)
    {
        auto p = join(a, b);
        if (a.den_ == b.den_) return RationalFunction2(a.num_ - b.num_, a.den_, p);
        return RationalFunction2(a.num_ * b.den_ - b.num_ * a.den_, a.den_ * b.den_, p);
    }
    RationalFunction2 operator-() const
    {
        RationalFunction2 r = *this;
        r.num_ = -r.num_;
        return r;
    }
    friend RationalFunction2 operator*(const RationalFunction2& a, const RationalFunction2& b)
    {
        auto p = join(a, b);
        if (a.is_zero() || b.is_zero()) return RationalFunction2(field<F>::zero(), p);
        if constexpr (field<F>::exact) {
            // Cross-cancel first so products stay small.
            P g1 = poly_gcd(a.num_, b.den_), g2 = poly_gcd(b.num_, a.den_);
            RationalFunction2 r;
            r.num_ = poly_exact_div(a.num_, g1) * poly_exact_div(b.num_, g2);
            r.den_ = poly_exact_div(a.den_, g2) * poly_exact_div(b.den_, g1);
            r.p_ = p;
            r.normalize_lead();
            return r;
        } else {
            return RationalFunction2(a.num_ * b.num_, a.den_ * b.den_, p);
        }
    }
    friend RationalFunction2 operator/(const RationalFunction2& a, const RationalFunction2& b)
    {
        return a * b.inverse();
    }
    RationalFunction2& operator+=(const RationalFunction2& o) { return *this = *this + o; }
    RationalFunction2& operator-=(const RationalFunction2& o) { return *this = *this - o; }
    RationalFunction2& operator*=(const RationalFunction2& o) { return *this = *this * o; }
    RationalFunction2& operator/=(const RationalFunction2& o) { return *this = *this / o; }

    RationalFunction2 inverse() const
    {
        if (is_zero()) throw std::domain_error("division by the zero function");
        return RationalFunction2(den_, num_, p_);
    }

    RationalFunction2 pow(long e) const
    {
        RationalFunction2 base = e < 0 ? inverse() : *this, out(field<F>::one(), p_);
        for (long k = e < 0 ? -e : e; k; k >>= 1) {
            if (k & 1) out *= base;
            if (k > 1) base *= base;
        }
        return out;
    }

    // Exact-field equality is structural on canonical forms.
    friend bool operator==(const RationalFunction2& a, const RationalFunction2& b)
    {
        static_assert(field<F>::exact, "numeric rational functions compare through evaluation");
        if (a.is_zero() && b.is_zero()) return true;
        if (a.p_ != 0 && b.p_ != 0 && a.p_ != b.p_) return false;
        return a.num_ == b.num_ && a.den_ == b.den_;
    }
    friend bool operator!=(const RationalFunction2& a, const RationalFunction2& b) { return !(a == b); }

    // Evaluate at given T values in a field G (the caller supplies p^(-z), p^(-w)).
    template <class G> G eval_T(const G& t1, const G& t2) const
    {
        G d = den_.template eval<G>(t1, t2);
        if constexpr (field<G>::exact) {
            if (field<G>::is_zero(d)) throw PoleError("pole hit");
        } else {
            G n = num_.template eval<G>(t1, t2);
            double scale = 0.0;
            // cancellation in the denominator relative to the size of its terms
            for (auto& [k, v] : den_.terms())
                scale += std::abs(field<F>::to_complex(v)) * std::pow(std::abs(t1), k.first) * std::pow(std::abs(t2), k.second);
            if (std::abs(d) <= 1e-13 * scale) throw PoleError("pole hit");
            return n / d;
        }
        return num_.template eval<G>(t1, t2) / d;
    }

    template <class G> RationalFunction2<G> map_to() const
    {
        return RationalFunction2<G>(num_.template map_to<G>(), den_.template map_to<G>(), p_);
    }

    RationalFunction2 with_p(std::int64_t p) const
    {
        RationalFunction2 r = *this;
        r.p_ = p;
        return r;
    }

    std::string str() const
    {
        auto poly = [](const P& q) {
            if (q.is_zero()) return std::string("0");
            std::ostringstream os;
            bool first = true;
            for (auto it = q.terms().rbegin(); it != q.terms().rend(); ++it) {
                if (!first) os << " + ";
                first = false;
                os << "(" << field<F>::str(it->second) << ")";
                if (it->first.first) os << "*T1^" << it->first.first;
                if (it->first.second) os << "*T2^" << it->first.second;
            }
            return os.str();
        };
        if (den_.is_constant() && den_.terms().begin()->second == field<F>::one()) return poly(num_);
        return "[" + poly(num_) + "] / [" + poly(den_) + "]";
    }

private:
    static std::int64_t join(const RationalFunction2& a, const RationalFunction2& b)
    {
        if (a.p_ == 0) return b.p_;
        if (b.p_ == 0 || a.p_ == b.p_) return a.p_;
        throw std::domain_error("incompatible residue cardinalities");
    }

    void canonicalize()
    {
        if (num_.is_zero()) {
            den_ = P::constant(field<F>::one());
            return;
        }
        if constexpr (field<F>::exact) {
            if (!den_.is_constant()) {
                P g = poly_gcd(num_, den_);
                if (!g.is_constant()) {
                    num_ = poly_exact_div(num_, g);
                    den_ = poly_exact_div(den_, g);
                }
            }
        } else {
            auto mn = num_.min_exponents(), md = den_.min_exponents();
            int s1 = std::min(mn.first, md.first), s2 = std::min(mn.second, md.second);
            if (s1 || s2) {
                num_ = num_.shifted(-s1, -s2);
                den_ = den_.shifted(-s1, -s2);
            }
        }
        normalize_lead();
    }
    void normalize_lead()
    {
        F lc = den_.lead().second;
        if (lc == field<F>::one()) return;
        F il = field<F>::inv(lc);
        num_ = num_.scaled(il);
        den_ = den_.scaled(il);
    }

    P num_, den_;
    std::int64_t p_ = 0;
};

using RF = RationalFunction2<Rational>;

/** \brief p^(-x) when it lies in Q(S), i.e. 2x is an integer. */
inline std::optional<Surd> exact_p_power(std::int64_t p, const Scalar& x)
{
    if (!x.is_rational()) return std::nullopt;
    Rational q = x.rational();
    Rational twice = 2 * q;
    if (!is_integer(twice)) return std::nullopt;
    return Surd::p_half_power(p, twice.get_num().get_si());
}

/** \brief Substitute T1 = p^(-z), T2 = p^(-w).
 *
 * Exact when both powers lie in Q(S), numeric otherwise.
 */
template <class F> Scalar rf_eval(const RationalFunction2<F>& f, const Scalar& z, const Scalar& w)
{
    if (f.is_constant()) {
        const auto& n = f.num().terms();
        F v = n.empty() ? field<F>::zero() : n.begin()->second;
        F d = f.den().terms().begin()->second;
        if constexpr (field<F>::exact) return Scalar(Surd(v / d));
        else return Scalar(Complex(v / d));
    }
    if (f.p() < 2) throw std::domain_error("rational function has no residue cardinality attached");
    if constexpr (field<F>::exact) {
        auto t1 = exact_p_power(f.p(), z), t2 = exact_p_power(f.p(), w);
        if (t1 && t2) {
            RationalFunction2<Surd> g = f.template map_to<Surd>();
            return Scalar(g.eval_T(*t1, *t2));
        }
    }
    double lp = std::log(static_cast<double>(f.p()));
    Complex t1 = std::exp(-z.numeric() * lp), t2 = std::exp(-w.numeric() * lp);
    return Scalar(f.template eval_T<Complex>(t1, t2));
}

} // namespace rll
