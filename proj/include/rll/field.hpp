#pragma once

#include "rational.hpp"
#include "surd.hpp"

#include <cmath>
#include <complex>
#include <cstdint>
#include <sstream>
#include <iomanip>
#include <stdexcept>
#include <string>

namespace rll {

using Complex = std::complex<double>;

/** \brief Uniform access to the three coefficient fields.
 *
 * Rational and Surd are exact; Complex is the numeric backend. Generic code
 * (polynomials, rational functions, closed forms) is written against this.
 */
template <class F> struct field;

template <> struct field<Rational> {
    static constexpr bool exact = true;
    static Rational zero() { return 0; }
    static Rational one() { return 1; }
    static Rational from_q(const Rational& q) { return q; }
    static bool is_zero(const Rational& x) { return x == 0; }
    static Rational inv(const Rational& x)
    {
        if (x == 0) throw std::domain_error("division by zero");
        return 1 / x;
    }
    static Rational conj(const Rational& x) { return x; }
    static Complex to_complex(const Rational& x) { return {x.get_d(), 0.0}; }
    // p^(-1/2) only exists here for perfect squares.
    static Rational inv_sqrt(std::int64_t p)
    {
        std::int64_t r;
        if (!is_square(p, &r)) throw std::domain_error("p^(-1/2) is irrational; use the Surd field");
        return make_q(1, r);
    }
    static std::string str(const Rational& x) { return q_str(x); }
};

template <> struct field<Surd> {
    static constexpr bool exact = true;
    static Surd zero() { return 0; }
    static Surd one() { return 1; }
    static Surd from_q(const Rational& q) { return q; }
    static bool is_zero(const Surd& x) { return x.is_zero(); }
    static Surd inv(const Surd& x) { return x.inverse(); }
    static Surd conj(const Surd& x) { return x; }
    static Complex to_complex(const Surd& x) { return x.to_complex(); }
    static Surd inv_sqrt(std::int64_t p) { return Surd::S(p); }
    static std::string str(const Surd& x) { return x.str(); }
};

template <> struct field<Complex> {
    static constexpr bool exact = false;
    static Complex zero() { return 0.0; }
    static Complex one() { return 1.0; }
    static Complex from_q(const Rational& q) { return {q.get_d(), 0.0}; }
    // Structural zero only (used to drop vanished terms), never a tolerance test.
    static bool is_zero(const Complex& x) { return x == Complex(0.0, 0.0); }
    static Complex inv(const Complex& x)
    {
        if (x == Complex(0.0, 0.0)) throw std::domain_error("division by zero");
        return 1.0 / x;
    }
    static Complex conj(const Complex& x) { return std::conj(x); }
    static Complex to_complex(const Complex& x) { return x; }
    static Complex inv_sqrt(std::int64_t p) { return 1.0 / std::sqrt(static_cast<double>(p)); }
    static std::string str(const Complex& x)
    {
        std::ostringstream os;
        os << std::setprecision(17) << x.real();
        if (x.imag() != 0.0) os << (x.imag() < 0 ? "-" : "+") << std::setprecision(17) << std::abs(x.imag()) << "i";
        return os.str();
    }
};

template <class F> F fpow(F x, long e)
{
    if (e < 0) {
        x = field<F>::inv(x);
        e = -e;
    }
    F out = field<F>::one();
    while (e) {
        if (e & 1) out = out * x;
        x = x * x;
        e >>= 1;
    }
    return out;
}

template <class F> F abs2(const F& x) { return x * field<F>::conj(x); }

// |z1 - z2| <= tol * max(1, |z1|, |z2|)
inline bool close(Complex a, Complex b, double tol)
{
    double scale = std::max({1.0, std::abs(a), std::abs(b)});
    return std::abs(a - b) <= tol * scale;
}

inline double rel_err(Complex a, Complex b)
{
    double scale = std::max(std::abs(a), std::abs(b));
    if (scale == 0.0) return 0.0;
    return std::abs(a - b) / scale;
}

} // namespace rll
