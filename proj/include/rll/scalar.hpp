#pragma once

#include "field.hpp"

#include <complex>
#include <stdexcept>
#include <string>
#include <variant>

namespace rll {

/** \brief Exact (Q or Q(S)) or numeric (complex double) value.
 *
 * Mixed operations promote to numeric. There is deliberately no operator==:
 * exact values compare with exact_equal, numeric ones with approx_equal.
 */
class Scalar {
public:
    Scalar() : v_(Surd(0)) {}
    Scalar(int v) : v_(Surd(static_cast<long>(v))) {}
    Scalar(long v) : v_(Surd(v)) {}
    Scalar(const Rational& q) : v_(Surd(q)) {}
    Scalar(const Surd& s) : v_(s) {}
    Scalar(Complex c) : v_(c) {}
    Scalar(double d) : v_(Complex(d, 0.0)) {}

    bool is_exact() const { return std::holds_alternative<Surd>(v_); }
    const Surd& exact() const
    {
        if (!is_exact()) throw std::logic_error("numeric scalar has no exact value");
        return std::get<Surd>(v_);
    }
    bool is_rational() const { return is_exact() && exact().is_rational(); }
    Rational rational() const
    {
        if (!is_rational()) throw std::logic_error("scalar is not rational");
        return exact().rational_part();
    }
    Complex numeric() const
    {
        return is_exact() ? std::get<Surd>(v_).to_complex() : std::get<Complex>(v_);
    }

    Scalar operator-() const { return is_exact() ? Scalar(-exact()) : Scalar(-numeric()); }

    friend Scalar operator+(const Scalar& a, const Scalar& b) { return combine(a, b, [](auto x, auto y) { return x + y; }); }
    friend Scalar operator-(const Scalar& a, const Scalar& b) { return combine(a, b, [](auto x, auto y) { return x - y; }); }
    friend Scalar operator*(const Scalar& a, const Scalar& b) { return combine(a, b, [](auto x, auto y) { return x * y; }); }
    friend Scalar operator/(const Scalar& a, const Scalar& b)
    {
        if (b.is_exact() ? b.exact().is_zero() : b.numeric() == Complex(0.0, 0.0))
            throw std::domain_error("division by zero");
        return combine(a, b, [](auto x, auto y) { return x / y; });
    }

    std::string str() const { return is_exact() ? exact().str() : field<Complex>::str(numeric()); }

private:
    template <class Op> static Scalar combine(const Scalar& a, const Scalar& b, Op op)
    {
        if (a.is_exact() && b.is_exact()) return Scalar(op(a.exact(), b.exact()));
        return Scalar(op(a.numeric(), b.numeric()));
    }

    std::variant<Surd, Complex> v_;
};

inline bool exact_equal(const Scalar& a, const Scalar& b)
{
    if (!a.is_exact() || !b.is_exact()) throw std::logic_error("exact_equal on a numeric scalar");
    return a.exact() == b.exact();
}

inline bool approx_equal(const Scalar& a, const Scalar& b, double tol)
{
    if (a.is_exact() && b.is_exact()) return a.exact() == b.exact();
    return close(a.numeric(), b.numeric(), tol);
}

} // namespace rll
