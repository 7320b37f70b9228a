#pragma once

#include "field.hpp"
#include "zgcd.hpp"

#include <algorithm>
#include <map>
#include <stdexcept>
#include <utility>
#include <vector>

namespace rll {

/** \brief Dense univariate polynomial over a field, low degree first. */
template <class F> struct UPoly {
    std::vector<F> c;

    UPoly() = default;
    explicit UPoly(std::vector<F> v) : c(std::move(v)) { trim(); }
    static UPoly constant(const F& x) { return UPoly(std::vector<F>{x}); }

    void trim()
    {
        while (!c.empty() && field<F>::is_zero(c.back())) c.pop_back();
    }
    bool is_zero() const { return c.empty(); }
    int deg() const { return static_cast<int>(c.size()) - 1; }
    const F& lc() const { return c.back(); }

    friend UPoly operator+(const UPoly& a, const UPoly& b)
    {
        std::vector<F> r(std::max(a.c.size(), b.c.size()), field<F>::zero());
        for (size_t i = 0; i < a.c.size(); ++i) r[i] = a.c[i];
        for (size_t i = 0; i < b.c.size(); ++i) r[i] = r[i] + b.c[i];
        return UPoly(std::move(r));
    }
    friend UPoly operator-(const UPoly& a, const UPoly& b)
    {
        std::vector<F> r(std::max(a.c.size(), b.c.size()), field<F>::zero());
        for (size_t i = 0; i < a.c.size(); ++i) r[i] = a.c[i];
        for (size_t i = 0; i < b.c.size(); ++i) r[i] = r[i] - b.c[i];
        return UPoly(std::move(r));
    }
    friend UPoly operator*(const UPoly& a, const UPoly& b)
    {
        if (a.is_zero() || b.is_zero()) return {};
        std::vector<F> r(a.c.size() + b.c.size() - 1, field<F>::zero());
        for (size_t i = 0; i < a.c.size(); ++i) {
            if (field<F>::is_zero(a.c[i])) continue;
            for (size_t j = 0; j < b.c.size(); ++j) r[i + j] = r[i + j] + a.c[i] * b.c[j];
        }
        return UPoly(std::move(r));
    }
    UPoly scaled(const F& s) const
    {
        std::vector<F> r = c;
        for (auto& x : r) x = x * s;
        return UPoly(std::move(r));
    }
    friend bool operator==(const UPoly& a, const UPoly& b) { return a.c == b.c; }

    // Euclidean division; q*b + r = a with deg r < deg b.
    static void divmod(const UPoly& a, const UPoly& b, UPoly& q, UPoly& r)
    {
        if (b.is_zero()) throw std::domain_error("polynomial division by zero");
        r = a;
        if (a.deg() < b.deg()) {
            q = {};
            return;
        }
        std::vector<F> qc(a.deg() - b.deg() + 1, field<F>::zero());
        F ilc = field<F>::inv(b.lc());
        while (!r.is_zero() && r.deg() >= b.deg()) {
            int shift = r.deg() - b.deg();
            F t = r.lc() * ilc;
            qc[shift] = t;
            for (int i = 0; i <= b.deg(); ++i) r.c[i + shift] = r.c[i + shift] - t * b.c[i];
            r.c.pop_back();
            r.trim();
        }
        q = UPoly(std::move(qc));
    }

    static UPoly exact_div(const UPoly& a, const UPoly& b)
    {
        UPoly q, r;
        divmod(a, b, q, r);
        if (!r.is_zero()) throw std::logic_error("inexact polynomial division");
        return q;
    }

    UPoly monic() const
    {
        if (is_zero()) return *this;
        return scaled(field<F>::inv(lc()));
    }

    static UPoly gcd(UPoly a, UPoly b)
    {
        while (!b.is_zero()) {
            UPoly q, r;
            divmod(a, b, q, r);
            a = std::move(b);
            b = std::move(r);
        }
        return a.monic();
    }
};

/** \brief Sparse bivariate polynomial in (T1, T2) with nonnegative exponents. */
template <class F> class Poly2 {
public:
    using Key = std::pair<int, int>;
    using Map = std::map<Key, F>;

    Poly2() = default;
    static Poly2 constant(const F& c)
    {
        Poly2 p;
        if (!field<F>::is_zero(c)) p.t_[{0, 0}] = c;
        return p;
    }
    static Poly2 monomial(const F& c, int i, int j)
    {
        if (i < 0 || j < 0) throw std::domain_error("negative exponent in polynomial");
        Poly2 p;
        if (!field<F>::is_zero(c)) p.t_[{i, j}] = c;
        return p;
    }

    const Map& terms() const { return t_; }
    bool is_zero() const { return t_.empty(); }
    bool is_constant() const { return t_.empty() || (t_.size() == 1 && t_.begin()->first == Key{0, 0}); }
    // Leading term in (deg T1, deg T2) lexicographic order.
    const std::pair<const Key, F>& lead() const { return *t_.rbegin(); }
    int deg1() const
    {
        int d = -1;
        for (auto& [k, v] : t_) d = std::max(d, k.first);
        return d;
    }
    int deg2() const
    {
        int d = -1;
        for (auto& [k, v] : t_) d = std::max(d, k.second);
        return d;
    }
    Key min_exponents() const
    {
        Key m{1 << 30, 1 << 30};
        for (auto& [k, v] : t_) m = {std::min(m.first, k.first), std::min(m.second, k.second)};
        return m;
    }

    void add_term(const Key& k, const F& c)
    {
        auto it = t_.find(k);
        if (it == t_.end()) {
            if (!field<F>::is_zero(c)) t_.emplace(k, c);
            return;
        }
        it->second = it->second + c;
        if (field<F>::is_zero(it->second)) t_.erase(it);
    }

    friend Poly2 operator+(Poly2 a, const Poly2& b)
    {
        for (auto& [k, v] : b.t_) a.add_term(k, v);
        return a;
    }
    friend Poly2 operator-(Poly2 a, const Poly2& b)
    {
        for (auto& [k, v] : b.t_) a.add_term(k, -v);
        return a;
    }
    Poly2 operator-() const
    {
        Poly2 r;
        for (auto& [k, v] : t_) r.t_.emplace(k, -v);
        return r;
    }
    friend Poly2 operator*(const Poly2& a, const Poly2& b)
    {
        Poly2 r;
        for (auto& [ka, va] : a.t_)
            for (auto& [kb, vb] : b.t_) r.add_term({ka.first + kb.first, ka.second + kb.second}, va * vb);
        return r;
    }
    Poly2 scaled(const F& s) const
    {
        if (field<F>::is_zero(s)) return {};
        Poly2 r;
        for (auto& [k, v] : t_) r.t_.emplace(k, v * s);
        return r;
    }
    Poly2 shifted(int di, int dj) const
    {
        Poly2 r;
        for (auto& [k, v] : t_) {
            if (k.first + di < 0 || k.second + dj < 0) throw std::domain_error("negative exponent in polynomial");
            r.t_.emplace(Key{k.first + di, k.second + dj}, v);
        }
        return r;
    }
    friend bool operator==(const Poly2& a, const Poly2& b) { return a.t_ == b.t_; }
    friend bool operator!=(const Poly2& a, const Poly2& b) { return !(a == b); }

    template <class G> G eval(const G& t1, const G& t2) const
    {
        // Horner-free direct evaluation; term counts are small.
        G s = field<G>::zero();
        for (auto& [k, v] : t_) s = s + convert<G>(v) * fpow(t1, k.first) * fpow(t2, k.second);
        return s;
    }

    template <class G> Poly2<G> map_to() const
    {
        Poly2<G> r;
        for (auto& [k, v] : t_) r.add_term(k, convert<G>(v));
        return r;
    }

    // Recursive view: coefficient of T2^j as a polynomial in T1.
    std::vector<UPoly<F>> to_recursive() const
    {
        std::vector<UPoly<F>> r(std::max(deg2() + 1, 0));
        for (auto& [k, v] : t_) {
            auto& u = r[k.second];
            if (static_cast<int>(u.c.size()) <= k.first) u.c.resize(k.first + 1, field<F>::zero());
            u.c[k.first] = v;
        }
        return r;
    }
    static Poly2 from_recursive(const std::vector<UPoly<F>>& r)
    {
        Poly2 p;
        for (size_t j = 0; j < r.size(); ++j)
            for (size_t i = 0; i < r[j].c.size(); ++i)
                if (!field<F>::is_zero(r[j].c[i])) p.t_.emplace(Key{static_cast<int>(i), static_cast<int>(j)}, r[j].c[i]);
        return p;
    }

    template <class G> static G convert(const F& v)
    {
        if constexpr (std::is_same_v<G, F>) return v;
        else if constexpr (std::is_same_v<G, Complex>) return field<F>::to_complex(v);
        else return G(v);
    }

private:
    Map t_;
};

namespace detail {

template <class F> using RPoly = std::vector<UPoly<F>>;

template <class F> void rtrim(RPoly<F>& a)
{
    while (!a.empty() && a.back().is_zero()) a.pop_back();
}

template <class F> UPoly<F> rcontent(const RPoly<F>& a)
{
    UPoly<F> g;
    for (auto& c : a) {
        if (c.is_zero()) continue;
        g = g.is_zero() ? c.monic() : UPoly<F>::gcd(g, c);
        if (g.deg() == 0) break;
    }
    return g;
}

template <class F> RPoly<F> rdiv_scalar(const RPoly<F>& a, const UPoly<F>& d)
{
    RPoly<F> r;
    r.reserve(a.size());
    for (auto& c : a) r.push_back(c.is_zero() ? c : UPoly<F>::exact_div(c, d));
    return r;
}

template <class F> RPoly<F> rprimitive(const RPoly<F>& a)
{
    UPoly<F> c = rcontent(a);
    if (c.is_zero() || c.deg() == 0) return a;
    return rdiv_scalar(a, c);
}

// Pseudo-remainder of a by b over F[T1][T2] (without the trailing lc power).
template <class F> RPoly<F> rprem(RPoly<F> a, const RPoly<F>& b)
{
    int db = static_cast<int>(b.size()) - 1;
    const UPoly<F>& lb = b.back();
    rtrim(a);
    while (static_cast<int>(a.size()) - 1 >= db) {
        int shift = static_cast<int>(a.size()) - 1 - db;
        UPoly<F> la = a.back();
        for (auto& c : a) c = c * lb;
        for (int i = 0; i <= db; ++i) a[i + shift] = a[i + shift] - la * b[i];
        a.pop_back();
        rtrim(a);
    }
    return a;
}

template <class F> RPoly<F> rexact_div(RPoly<F> a, const RPoly<F>& b)
{
    rtrim(a);
    int db = static_cast<int>(b.size()) - 1;
    if (a.empty()) return {};
    if (static_cast<int>(a.size()) - 1 < db) throw std::logic_error("inexact bivariate division");
    RPoly<F> q(a.size() - db);
    while (!a.empty() && static_cast<int>(a.size()) - 1 >= db) {
        int shift = static_cast<int>(a.size()) - 1 - db;
        UPoly<F> t = UPoly<F>::exact_div(a.back(), b.back());
        q[shift] = t;
        for (int i = 0; i <= db; ++i) a[i + shift] = a[i + shift] - t * b[i];
        a.pop_back();
        rtrim(a);
    }
    if (!a.empty()) throw std::logic_error("inexact bivariate division");
    return q;
}

} // namespace detail

/** \brief gcd over F[T1,T2], up to a constant factor (exact fields only).
 *
 * Recursive content / primitive part with a primitive pseudo-remainder
 * sequence in T2 over F[T1].
 */
template <class F> Poly2<F> poly_gcd(const Poly2<F>& A, const Poly2<F>& B);

namespace detail {

inline zgcd::ZZPoly to_zz(const Poly2<Rational>& a)
{
    mpz_class l = 1;
    for (auto& [k, v] : a.terms()) mpz_lcm(l.get_mpz_t(), l.get_mpz_t(), v.get_den_mpz_t());
    zgcd::ZZPoly r(std::max(a.deg2() + 1, 0));
    for (auto& [k, v] : a.terms()) {
        auto& u = r[k.second];
        if (static_cast<int>(u.size()) <= k.first) u.resize(k.first + 1);
        u[k.first] = v.get_num() * (l / v.get_den());
    }
    return r;
}

inline Poly2<Rational> from_zz(const zgcd::ZZPoly& a)
{
    Poly2<Rational> p;
    for (size_t j = 0; j < a.size(); ++j)
        for (size_t i = 0; i < a[j].size(); ++i)
            if (a[j][i] != 0) p.add_term({static_cast<int>(i), static_cast<int>(j)}, Rational(a[j][i]));
    return p;
}

} // namespace detail

// Over Q the work happens in Z[T1][T2] to keep coefficient growth in check.
template <> inline Poly2<Rational> poly_gcd<Rational>(const Poly2<Rational>& A, const Poly2<Rational>& B)
{
    if (A.is_zero()) return B;
    if (B.is_zero()) return A;
    if (A.is_constant() || B.is_constant()) return Poly2<Rational>::constant(1);
    return detail::from_zz(zgcd::gcd(detail::to_zz(A), detail::to_zz(B)));
}

template <class F> Poly2<F> poly_gcd(const Poly2<F>& A, const Poly2<F>& B)
{
    static_assert(field<F>::exact, "gcd requires an exact field");
    if (A.is_zero()) return B;
    if (B.is_zero()) return A;
    if (A.is_constant() || B.is_constant()) return Poly2<F>::constant(field<F>::one());
    auto a = A.to_recursive(), b = B.to_recursive();
    UPoly<F> ca = detail::rcontent(a), cb = detail::rcontent(b);
    UPoly<F> cg = UPoly<F>::gcd(ca, cb);
    a = detail::rdiv_scalar(a, ca);
    b = detail::rdiv_scalar(b, cb);
    if (a.size() < b.size()) std::swap(a, b);
    while (true) {
        if (b.size() == 1) {
            b = {UPoly<F>::constant(field<F>::one())};
            break;
        }
        auto r = detail::rprem(a, b);
        if (r.empty()) break;
        a = std::move(b);
        b = detail::rprimitive(r);
    }
    for (auto& c : b) c = c * cg;
    return Poly2<F>::from_recursive(b);
}

template <class F> Poly2<F> poly_exact_div(const Poly2<F>& A, const Poly2<F>& B)
{
    if (B.is_zero()) throw std::domain_error("division by zero polynomial");
    if (B.is_constant()) return A.scaled(field<F>::inv(B.terms().begin()->second));
    return Poly2<F>::from_recursive(detail::rexact_div(A.to_recursive(), B.to_recursive()));
}

} // namespace rll
