#pragma once

#include "field.hpp"
#include "logsym.hpp"

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

namespace rll {

/** \brief Coefficient rings for series: Rational, Complex, LogQ, LamPoly<...>. */
template <class C> struct ring;

template <> struct ring<Rational> {
    static constexpr bool exact = true;
    static Rational zero() { return 0; }
    static Rational one() { return 1; }
    static Rational from_q(const Rational& q) { return q; }
    static bool is_zero(const Rational& c) { return c == 0; }
    static Rational unit_inv(const Rational& c) { return field<Rational>::inv(c); }
    static double magnitude(const Rational& c) { return std::abs(c.get_d()); }
    static Complex value(const Rational& c, double) { return {c.get_d(), 0.0}; }
    static Rational log_of(std::int64_t n)
    {
        if (n != 1) throw std::domain_error("log of an integer > 1 is not rational");
        return 0;
    }
    static std::string str(const Rational& c) { return q_str(c); }
};

template <> struct ring<Complex> {
    static constexpr bool exact = false;
    static Complex zero() { return 0.0; }
    static Complex one() { return 1.0; }
    static Complex from_q(const Rational& q) { return {q.get_d(), 0.0}; }
    static bool is_zero(const Complex& c) { return c == Complex(0.0, 0.0); }
    static Complex unit_inv(const Complex& c) { return field<Complex>::inv(c); }
    static double magnitude(const Complex& c) { return std::abs(c); }
    static Complex value(const Complex& c, double) { return c; }
    static Complex log_of(std::int64_t n) { return std::log(static_cast<double>(n)); }
    static std::string str(const Complex& c) { return field<Complex>::str(c); }
};

template <> struct ring<LogQ> {
    static constexpr bool exact = true;
    static LogQ zero() { return {}; }
    static LogQ one() { return LogQ(1); }
    static LogQ from_q(const Rational& q) { return LogQ(q); }
    static bool is_zero(const LogQ& c) { return c.is_zero(); }
    static LogQ unit_inv(const LogQ& c) { return c.unit_inverse(); }
    static double magnitude(const LogQ& c) { return std::abs(c.value()); }
    static Complex value(const LogQ& c, double) { return {c.value(), 0.0}; }
    static LogQ log_of(std::int64_t n) { return LogQ::log_of(n); }
    static std::string str(const LogQ& c) { return c.str(); }
};

/** \brief Polynomial in the formal symbol lambda = log N(q) over F. */
template <class F> class LamPoly {
public:
    LamPoly() = default;
    LamPoly(const F& c)
    {
        if (!ring<F>::is_zero(c)) c_.push_back(c);
    }
    LamPoly(long v) : LamPoly(ring<F>::from_q(Rational(v))) {}
    explicit LamPoly(std::vector<F> c) : c_(std::move(c)) { trim(); }

    static LamPoly lambda() { return LamPoly(std::vector<F>{ring<F>::zero(), ring<F>::one()}); }

    const std::vector<F>& coeffs() const { return c_; }
    int degree() const { return static_cast<int>(c_.size()) - 1; }
    F coeff(int k) const { return k < static_cast<int>(c_.size()) ? c_[k] : ring<F>::zero(); }
    bool is_zero() const { return c_.empty(); }

    friend LamPoly operator+(const LamPoly& a, const LamPoly& b)
    {
        std::vector<F> r(std::max(a.c_.size(), b.c_.size()), ring<F>::zero());
        for (size_t i = 0; i < a.c_.size(); ++i) r[i] = a.c_[i];
        for (size_t i = 0; i < b.c_.size(); ++i) r[i] = r[i] + b.c_[i];
        return LamPoly(std::move(r));
    }
    friend LamPoly operator-(const LamPoly& a, const LamPoly& b)
    {
        std::vector<F> r(std::max(a.c_.size(), b.c_.size()), ring<F>::zero());
        for (size_t i = 0; i < a.c_.size(); ++i) r[i] = a.c_[i];
        for (size_t i = 0; i < b.c_.size(); ++i) r[i] = r[i] - b.c_[i];
        return LamPoly(std::move(r));
    }
    LamPoly operator-() const
    {
        std::vector<F> r = c_;
        for (auto& x : r) x = -x;
        return LamPoly(std::move(r));
    }
    friend LamPoly operator*(const LamPoly& a, const LamPoly& b)
    {
        if (a.c_.empty() || b.c_.empty()) return {};
        std::vector<F> r(a.c_.size() + b.c_.size() - 1, ring<F>::zero());
        for (size_t i = 0; i < a.c_.size(); ++i) {
            if (ring<F>::is_zero(a.c_[i])) continue;
            for (size_t j = 0; j < b.c_.size(); ++j) r[i + j] = r[i + j] + a.c_[i] * b.c_[j];
        }
        return LamPoly(std::move(r));
    }
    friend bool operator==(const LamPoly& a, const LamPoly& b) { return a.c_ == b.c_; }
    friend bool operator!=(const LamPoly& a, const LamPoly& b) { return !(a == b); }

    Complex value(double lam) const
    {
        Complex s = 0.0, x = 1.0;
        for (auto& c : c_) {
            s += ring<F>::value(c, lam) * x;
            x *= lam;
        }
        return s;
    }

private:
    void trim()
    {
        while (!c_.empty() && ring<F>::is_zero(c_.back())) c_.pop_back();
    }
    std::vector<F> c_;
};

template <class F> struct ring<LamPoly<F>> {
    using C = LamPoly<F>;
    static constexpr bool exact = ring<F>::exact;
    static C zero() { return {}; }
    static C one() { return C(ring<F>::one()); }
    static C from_q(const Rational& q) { return C(ring<F>::from_q(q)); }
    static bool is_zero(const C& c) { return c.is_zero(); }
    static C unit_inv(const C& c)
    {
        if (c.degree() != 0) throw std::domain_error("only lambda-free constants are invertible");
        return C(ring<F>::unit_inv(c.coeff(0)));
    }
    static double magnitude(const C& c)
    {
        double m = 0.0;
        for (auto& x : c.coeffs()) m = std::max(m, ring<F>::magnitude(x));
        return m;
    }
    static Complex value(const C& c, double lam) { return c.value(lam); }
    static C log_of(std::int64_t n) { return C(ring<F>::log_of(n)); }
    static std::string str(const C& c)
    {
        if (c.is_zero()) return ring<F>::str(ring<F>::zero());
        std::ostringstream os;
        bool first = true;
        for (int k = 0; k <= c.degree(); ++k) {
            if (ring<F>::is_zero(c.coeff(k))) continue;
            if (!first) os << " + ";
            first = false;
            os << "(" << ring<F>::str(c.coeff(k)) << ")";
            if (k) os << "\xC2\xB7\xCE\xBB^" << k;
        }
        return os.str();
    }
};

using ExactCoeff = LamPoly<LogQ>;
using NumericCoeff = LamPoly<Complex>;

} // namespace rll
