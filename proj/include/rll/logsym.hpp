#pragma once

#include "field.hpp"

#include <cmath>
#include <cstdint>
#include <map>
#include <sstream>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace rll {

/** \brief Laurent polynomials over Q in the symbols log(q), q prime.
 *
 * log(p^f) is stored as f*log(p), so the relation between log 4 and log 2
 * is exact. Only monomials are invertible, which is all that series
 * inversion ever needs here.
 */
class LogQ {
public:
    using Mono = std::vector<std::pair<std::int64_t, int>>; // (prime, exponent), sorted by prime

    LogQ() = default;
    LogQ(long v) : LogQ(Rational(v)) {}
    LogQ(const Rational& q)
    {
        if (q != 0) t_.emplace(Mono{}, q);
    }

    static LogQ symbol(std::int64_t prime)
    {
        LogQ r;
        r.t_.emplace(Mono{{prime, 1}}, Rational(1));
        return r;
    }

    // log n for n >= 1, expanded over the prime factorization of n.
    static LogQ log_of(std::int64_t n)
    {
        if (n < 1) throw std::domain_error("log of a non-positive integer");
        LogQ r;
        for (std::int64_t q = 2; q * q <= n; ++q) {
            int e = 0;
            while (n % q == 0) {
                n /= q;
                ++e;
            }
            if (e) r = r + LogQ(Rational(e)) * symbol(q);
        }
        if (n > 1) r = r + symbol(n);
        return r;
    }

    const std::map<Mono, Rational>& terms() const { return t_; }
    bool is_zero() const { return t_.empty(); }
    bool is_rational() const { return t_.empty() || (t_.size() == 1 && t_.begin()->first.empty()); }
    Rational rational() const
    {
        if (!is_rational()) throw std::logic_error("value depends on logarithms");
        return t_.empty() ? Rational(0) : t_.begin()->second;
    }

    friend LogQ operator+(LogQ a, const LogQ& b)
    {
        for (auto& [m, c] : b.t_) a.add(m, c);
        return a;
    }
    friend LogQ operator-(LogQ a, const LogQ& b)
    {
        for (auto& [m, c] : b.t_) a.add(m, -c);
        return a;
    }
    LogQ operator-() const
    {
        LogQ r;
        for (auto& [m, c] : t_) r.t_.emplace(m, -c);
        return r;
    }
    friend LogQ operator*(const LogQ& a, const LogQ& b)
    {
        LogQ r;
        if (a.t_.empty() || b.t_.empty()) return r;
        for (auto& [ma, ca] : a.t_)
            for (auto& [mb, cb] : b.t_) r.add(mono_mul(ma, mb), ca * cb);
        return r;
    }
    friend bool operator==(const LogQ& a, const LogQ& b) { return a.t_ == b.t_; }
    friend bool operator!=(const LogQ& a, const LogQ& b) { return !(a == b); }

    LogQ unit_inverse() const
    {
        if (t_.size() != 1) throw std::domain_error("only monomials in log symbols are invertible");
        auto& [m, c] = *t_.begin();
        Mono inv = m;
        for (auto& e : inv) e.second = -e.second;
        LogQ r;
        r.t_.emplace(inv, Rational(1 / c));
        return r;
    }

    double value() const
    {
        double s = 0.0;
        for (auto& [m, c] : t_) {
            double v = c.get_d();
            for (auto& [q, e] : m) v *= std::pow(std::log(static_cast<double>(q)), e);
            s += v;
        }
        return s;
    }

    std::string str() const
    {
        if (t_.empty()) return "0/1";
        std::ostringstream os;
        bool first = true;
        for (auto& [m, c] : t_) {
            if (!first) os << " + ";
            first = false;
            os << q_str(c);
            for (auto& [q, e] : m) {
                os << "\xC2\xB7log(" << q << ")";
                if (e != 1) os << "^" << e;
            }
        }
        return os.str();
    }

private:
    static Mono mono_mul(const Mono& a, const Mono& b)
    {
        Mono r;
        r.reserve(a.size() + b.size());
        size_t i = 0, j = 0;
        while (i < a.size() || j < b.size()) {
            if (j == b.size() || (i < a.size() && a[i].first < b[j].first)) r.push_back(a[i++]);
            else if (i == a.size() || b[j].first < a[i].first) r.push_back(b[j++]);
            else {
                int e = a[i].second + b[j].second;
                if (e) r.emplace_back(a[i].first, e);
                ++i;
                ++j;
            }
        }
        return r;
    }
    void add(const Mono& m, const Rational& c)
    {
        if (c == 0) return;
        auto it = t_.find(m);
        if (it == t_.end()) {
            t_.emplace(m, c);
            return;
        }
        it->second += c;
        if (it->second == 0) t_.erase(it);
    }

    std::map<Mono, Rational> t_;
};

} // namespace rll
