#pragma once

#include "ring.hpp"

#include <algorithm>
#include <stdexcept>
#include <vector>

namespace rll {

struct DepthError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/** \brief Power series in (z, w) known exactly through total degree K. */
template <class C> class Series2 {
public:
    Series2() : Series2(0) {}
    explicit Series2(int K) : K_(K), c_(size_for(K), ring<C>::zero())
    {
        if (K < 0) throw DepthError("negative truncation order");
    }
    static Series2 constant(const C& v, int K)
    {
        Series2 s(K);
        s.c_[0] = v;
        return s;
    }
    // Single monomial c z^i w^j.
    static Series2 monomial(const C& v, int i, int j, int K)
    {
        Series2 s(K);
        if (i + j <= K) s.at(i, j) = v;
        return s;
    }

    int order() const { return K_; }
    static size_t index(int i, int j)
    {
        int d = i + j;
        return static_cast<size_t>(d) * (d + 1) / 2 + j;
    }
    const C& at(int i, int j) const { return c_[index(i, j)]; }
    C& at(int i, int j) { return c_[index(i, j)]; }
    C get(int i, int j) const { return (i >= 0 && j >= 0 && i + j <= K_) ? at(i, j) : ring<C>::zero(); }

    Series2 truncated(int K) const
    {
        if (K > K_) throw DepthError("cannot raise truncation order");
        Series2 s(K);
        std::copy(c_.begin(), c_.begin() + size_for(K), s.c_.begin());
        return s;
    }

    friend Series2 operator+(const Series2& a, const Series2& b)
    {
        int K = std::min(a.K_, b.K_);
        Series2 s(K);
        for (size_t k = 0; k < s.c_.size(); ++k) s.c_[k] = a.c_[k] + b.c_[k];
        return s;
    }
    friend Series2 operator-(const Series2& a, const Series2& b)
    {
        int K = std::min(a.K_, b.K_);
        Series2 s(K);
        for (size_t k = 0; k < s.c_.size(); ++k) s.c_[k] = a.c_[k] - b.c_[k];
        return s;
    }
    Series2 operator-() const
    {
        Series2 s = *this;
        for (auto& x : s.c_) x = -x;
        return s;
    }
    Series2 scaled(const C& v) const
    {
        Series2 s = *this;
        for (auto& x : s.c_) x = x * v;
        return s;
    }

    // Truncated product. Valuations let the result keep more depth:
    // a known to K1 with valuation v1 times b known to K2 with valuation v2 is known to min(K1+v2, K2+v1).
    friend Series2 operator*(const Series2& a, const Series2& b)
    {
        int va = a.valuation(), vb = b.valuation();
        int K = std::min(a.K_ + (vb < 0 ? b.K_ + 1 : vb), b.K_ + (va < 0 ? a.K_ + 1 : va));
        K = std::max(K, std::min(a.K_, b.K_));
        K = std::min(K, std::max(a.K_, b.K_));
        Series2 s(K);
        for (int d1 = 0; d1 <= a.K_; ++d1) {
            for (int j1 = 0; j1 <= d1; ++j1) {
                const C& x = a.at(d1 - j1, j1);
                if (ring<C>::is_zero(x)) continue;
                for (int d2 = 0; d1 + d2 <= K && d2 <= b.K_; ++d2)
                    for (int j2 = 0; j2 <= d2; ++j2) {
                        const C& y = b.at(d2 - j2, j2);
                        if (ring<C>::is_zero(y)) continue;
                        C& t = s.at(d1 - j1 + d2 - j2, j1 + j2);
                        t = t + x * y;
                    }
            }
        }
        return s;
    }

    // Lowest degree with a nonzero coefficient; -1 for the zero series.
    int valuation() const
    {
        for (int d = 0; d <= K_; ++d)
            for (int j = 0; j <= d; ++j)
                if (!ring<C>::is_zero(at(d - j, j))) return d;
        return -1;
    }

    // z -> -z and/or w -> -w
    Series2 flipped(bool fz, bool fw) const
    {
        Series2 s = *this;
        for (int d = 0; d <= K_; ++d)
            for (int j = 0; j <= d; ++j) {
                int i = d - j;
                bool neg = (fz && (i & 1)) != (fw && (j & 1));
                if (neg) s.at(i, j) = -s.at(i, j);
            }
        return s;
    }

    // Multiplication by z, w, z+w, z-w raises the known depth by one.
    Series2 times_divisor(int which) const
    {
        Series2 s(K_ + 1);
        for (int d = 0; d <= K_; ++d)
            for (int j = 0; j <= d; ++j) {
                const C& x = at(d - j, j);
                if (ring<C>::is_zero(x)) continue;
                int i = d - j;
                switch (which) {
                case 0: s.at(i + 1, j) = s.at(i + 1, j) + x; break;
                case 1: s.at(i, j + 1) = s.at(i, j + 1) + x; break;
                case 2:
                    s.at(i + 1, j) = s.at(i + 1, j) + x;
                    s.at(i, j + 1) = s.at(i, j + 1) + x;
                    break;
                default:
                    s.at(i + 1, j) = s.at(i + 1, j) + x;
                    s.at(i, j + 1) = s.at(i, j + 1) - x;
                    break;
                }
            }
        return s;
    }

    /** \brief Divide by z, w, z+w or z-w (which = 0..3).
     *
     * Returns false when the remainder is not negligible. Known depth drops by one.
     */
    bool divide_divisor(int which, Series2& out, double tol = 0.0) const
    {
        if (K_ == 0) {
            out = Series2(0);
            return false;
        }
        Series2 q(K_ - 1);
        auto small = [&](const C& x) { return ring<C>::exact ? ring<C>::is_zero(x) : ring<C>::magnitude(x) <= tol; };
        for (int d = 0; d <= K_; ++d) {
            if (which == 0) {
                if (!small(at(0, d))) return false;
                if (d > 0)
                    for (int j = 0; j < d; ++j) q.at(d - 1 - j, j) = at(d - j, j);
            } else if (which == 1) {
                if (!small(at(d, 0))) return false;
                if (d > 0)
                    for (int j = 1; j <= d; ++j) q.at(d - j, j - 1) = at(d - j, j);
            } else {
                // (z + s w) Q = N on each homogeneous piece: q_j = n_j - s q_{j-1}, n_d = s q_{d-1}.
                C s = which == 2 ? ring<C>::one() : -ring<C>::one();
                if (d == 0) {
                    if (!small(at(0, 0))) return false;
                    continue;
                }
                C prev = ring<C>::zero();
                for (int j = 0; j < d; ++j) {
                    C qj = at(d - j, j) - s * prev;
                    q.at(d - 1 - j, j) = qj;
                    prev = qj;
                }
                if (!small(at(0, d) - s * prev)) return false;
            }
        }
        out = std::move(q);
        return true;
    }

    // Homogeneous component of degree d.
    Series2 component(int d) const
    {
        Series2 s(K_);
        if (d <= K_)
            for (int j = 0; j <= d; ++j) s.at(d - j, j) = at(d - j, j);
        return s;
    }

    // 1/A for A with an invertible constant term.
    Series2 inverse() const
    {
        C i0 = ring<C>::unit_inv(at(0, 0));
        Series2 b(K_);
        b.at(0, 0) = i0;
        for (int d = 1; d <= K_; ++d)
            for (int j = 0; j <= d; ++j) {
                int i = d - j;
                C acc = ring<C>::zero();
                for (int k = 0; k <= i; ++k)
                    for (int l = 0; l <= j; ++l) {
                        if (k == 0 && l == 0) continue;
                        const C& a = at(k, l);
                        if (ring<C>::is_zero(a)) continue;
                        acc = acc + a * b.at(i - k, j - l);
                    }
                b.at(i, j) = -(i0 * acc);
            }
        return b;
    }

    // exp(x * (alpha z + beta w)) for a coefficient x and integers alpha, beta.
    static Series2 exp_linear(const C& x, int alpha, int beta, int K)
    {
        Series2 lin(K);
        if (K >= 1) {
            lin.at(1, 0) = x * ring<C>::from_q(Rational(alpha));
            lin.at(0, 1) = x * ring<C>::from_q(Rational(beta));
        }
        Series2 out = constant(ring<C>::one(), K), pw = out;
        for (int k = 1; k <= K; ++k) {
            pw = (pw * lin).truncated(K);
            out = out + pw.scaled(ring<C>::from_q(Rational(1) / factorial(k)));
        }
        return out;
    }

    bool is_zero(double tol = 0.0) const
    {
        for (auto& x : c_)
            if (ring<C>::exact ? !ring<C>::is_zero(x) : ring<C>::magnitude(x) > tol) return false;
        return true;
    }
    double magnitude() const
    {
        double m = 0.0;
        for (auto& x : c_) m = std::max(m, ring<C>::magnitude(x));
        return m;
    }

    friend bool operator==(const Series2& a, const Series2& b) { return a.K_ == b.K_ && a.c_ == b.c_; }

    Complex eval(Complex z, Complex w, double lam = 0.0) const
    {
        Complex s = 0.0;
        for (int d = 0; d <= K_; ++d)
            for (int j = 0; j <= d; ++j) {
                const C& x = at(d - j, j);
                if (ring<C>::is_zero(x)) continue;
                s += ring<C>::value(x, lam) * std::pow(z, d - j) * std::pow(w, j);
            }
        return s;
    }

    template <class D, class Fn> Series2<D> map(Fn fn) const
    {
        Series2<D> s(K_);
        for (int d = 0; d <= K_; ++d)
            for (int j = 0; j <= d; ++j) s.at(d - j, j) = fn(at(d - j, j));
        return s;
    }

private:
    static size_t size_for(int K) { return static_cast<size_t>(K + 1) * (K + 2) / 2; }
    static Rational factorial(int k)
    {
        Rational f = 1;
        for (int i = 2; i <= k; ++i) f *= i;
        return f;
    }

    int K_;
    std::vector<C> c_;
};

} // namespace rll
