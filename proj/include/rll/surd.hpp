#pragma once

#include "rational.hpp"

#include <cmath>
#include <complex>
#include <cstdint>
#include <stdexcept>
#include <string>

namespace rll {

/** \brief Element a + b*S of Q(S) with S^2 = 1/p.
 *
 * S stands for p^(-1/2). When p is a perfect square S is rational and is
 * stored folded into a. The radicand is attached lazily: a rational value
 * carries p = 0 and adopts the radicand of whatever it is combined with.
 */
class Surd {
public:
    Surd() = default;
    Surd(long v) : a_(v) {}
    Surd(const Rational& a) : a_(a) {}
    Surd(const Rational& a, const Rational& b, std::int64_t p) : a_(a), b_(b), p_(p) { fix(); }

    static Surd S(std::int64_t p)
    {
        if (p < 2) throw std::domain_error("radicand must be >= 2");
        std::int64_t root;
        if (is_square(p, &root)) return Surd(make_q(1, root));
        return Surd(0, 1, p);
    }

    // p^(-k/2)
    static Surd p_half_power(std::int64_t p, long k)
    {
        Rational base = make_q(1, p);
        if (k % 2 == 0) return Surd(q_pow(base, k / 2));
        return Surd(q_pow(base, (k - 1) / 2)) * S(p);
    }

    const Rational& rational_part() const { return a_; }
    const Rational& surd_part() const { return b_; }
    std::int64_t radicand() const { return p_; }
    bool is_rational() const { return b_ == 0; }

    Surd operator-() const { return Surd(-a_, -b_, p_); }

    friend Surd operator+(const Surd& x, const Surd& y)
    {
        return Surd(x.a_ + y.a_, x.b_ + y.b_, join(x, y));
    }
    friend Surd operator-(const Surd& x, const Surd& y)
    {
        return Surd(x.a_ - y.a_, x.b_ - y.b_, join(x, y));
    }
    friend Surd operator*(const Surd& x, const Surd& y)
    {
        if (x.b_ == 0 && y.b_ == 0) return Surd(Rational(x.a_ * y.a_));
        std::int64_t p = join(x, y);
        Rational a = x.a_ * y.a_;
        if (x.b_ != 0 && y.b_ != 0) a += x.b_ * y.b_ / Rational(static_cast<long>(p));
        return Surd(a, x.a_ * y.b_ + x.b_ * y.a_, p);
    }
    friend Surd operator/(const Surd& x, const Surd& y) { return x * y.inverse(); }

    Surd& operator+=(const Surd& o) { return *this = *this + o; }
    Surd& operator-=(const Surd& o) { return *this = *this - o; }
    Surd& operator*=(const Surd& o) { return *this = *this * o; }
    Surd& operator/=(const Surd& o) { return *this = *this / o; }

    Surd inverse() const
    {
        if (b_ == 0) {
            if (a_ == 0) throw std::domain_error("division by zero");
            return Surd(Rational(1 / a_));
        }
        Rational norm = a_ * a_ - b_ * b_ / Rational(static_cast<long>(p_));
        return Surd(a_ / norm, -b_ / norm, p_);
    }

    friend bool operator==(const Surd& x, const Surd& y)
    {
        if (x.b_ != 0 && y.b_ != 0 && x.p_ != y.p_) return false;
        return x.a_ == y.a_ && x.b_ == y.b_;
    }
    friend bool operator!=(const Surd& x, const Surd& y) { return !(x == y); }

    bool is_zero() const { return a_ == 0 && b_ == 0; }

    std::complex<double> to_complex() const
    {
        double v = a_.get_d();
        if (b_ != 0) v += b_.get_d() / std::sqrt(static_cast<double>(p_));
        return {v, 0.0};
    }

    // "a", "b·S" or "a + b·S"; a and b in num/den form.
    std::string str() const
    {
        if (b_ == 0) return q_str(a_);
        std::string s = q_str(b_) + "\xC2\xB7S";
        if (a_ == 0) return s;
        return q_str(a_) + " + " + s;
    }

    friend Surd pow(Surd x, long e)
    {
        if (e < 0) return pow(x.inverse(), -e);
        Surd out(1);
        while (e) {
            if (e & 1) out *= x;
            x *= x;
            e >>= 1;
        }
        return out;
    }

private:
    static std::int64_t join(const Surd& x, const Surd& y)
    {
        if (x.b_ == 0) return y.p_;
        if (y.b_ == 0) return x.p_;
        if (x.p_ != y.p_) throw std::domain_error("mixing square roots of different radicands");
        return x.p_;
    }
    void fix()
    {
        if (b_ == 0) p_ = 0;
        else if (p_ < 2) throw std::domain_error("surd part without radicand");
    }

    Rational a_ = 0, b_ = 0;
    std::int64_t p_ = 0;
};

} // namespace rll
