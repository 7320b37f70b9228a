#pragma once

#include "rational.hpp"

#include <algorithm>
#include <stdexcept>
#include <utility>
#include <vector>

namespace rll::zgcd {

/** Dense Z[x], low degree first, trimmed. */
using ZPoly = std::vector<mpz_class>;
/** Z[x][y] as coefficients in y (index = degree in y). */
using ZZPoly = std::vector<ZPoly>;

inline void trim(ZPoly& a)
{
    while (!a.empty() && a.back() == 0) a.pop_back();
}
inline void trim(ZZPoly& a)
{
    while (!a.empty() && a.back().empty()) a.pop_back();
}

inline ZPoly add(const ZPoly& a, const ZPoly& b, int sign = 1)
{
    ZPoly r(std::max(a.size(), b.size()));
    for (size_t i = 0; i < a.size(); ++i) r[i] = a[i];
    for (size_t i = 0; i < b.size(); ++i) {
        if (sign > 0) r[i] += b[i];
        else r[i] -= b[i];
    }
    trim(r);
    return r;
}

inline ZPoly mul(const ZPoly& a, const ZPoly& b)
{
    if (a.empty() || b.empty()) return {};
    ZPoly r(a.size() + b.size() - 1);
    for (size_t i = 0; i < a.size(); ++i) {
        if (a[i] == 0) continue;
        for (size_t j = 0; j < b.size(); ++j) r[i + j] += a[i] * b[j];
    }
    trim(r);
    return r;
}

inline ZPoly zpow(ZPoly a, long e)
{
    ZPoly r{1};
    while (e > 0) {
        if (e & 1) r = mul(r, a);
        e >>= 1;
        if (e) a = mul(a, a);
    }
    return r;
}

inline mpz_class content(const ZPoly& a)
{
    mpz_class g = 0;
    for (auto& c : a) {
        mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), c.get_mpz_t());
        if (g == 1) break;
    }
    return g;
}

inline ZPoly div_int(const ZPoly& a, const mpz_class& d)
{
    ZPoly r(a.size());
    for (size_t i = 0; i < a.size(); ++i) mpz_divexact(r[i].get_mpz_t(), a[i].get_mpz_t(), d.get_mpz_t());
    return r;
}

// Exact division in Z[x]; throws if b does not divide a.
inline ZPoly exact_div(ZPoly a, const ZPoly& b)
{
    if (b.empty()) throw std::domain_error("division by zero polynomial");
    trim(a);
    if (a.empty()) return {};
    if (a.size() < b.size()) throw std::logic_error("inexact division in Z[x]");
    ZPoly q(a.size() - b.size() + 1);
    const mpz_class& lb = b.back();
    while (!a.empty() && a.size() >= b.size()) {
        size_t shift = a.size() - b.size();
        if (!mpz_divisible_p(a.back().get_mpz_t(), lb.get_mpz_t())) throw std::logic_error("inexact division in Z[x]");
        mpz_class t;
        mpz_divexact(t.get_mpz_t(), a.back().get_mpz_t(), lb.get_mpz_t());
        for (size_t i = 0; i < b.size(); ++i) a[i + shift] -= t * b[i];
        q[shift] = t;
        a.pop_back();
        trim(a);
    }
    if (!a.empty()) throw std::logic_error("inexact division in Z[x]");
    return q;
}

// Standard pseudo-remainder lc(b)^(deg a - deg b + 1) * a mod b.
template <class P, class Mul, class Sub, class Scale>
P prem_generic(P a, const P& b, Mul mulc, Sub subc, Scale powc)
{
    long da = static_cast<long>(a.size()) - 1, db = static_cast<long>(b.size()) - 1;
    if (da < db) return a;
    long e = da - db + 1;
    auto lb = b.back();
    while (!a.empty() && static_cast<long>(a.size()) - 1 >= db) {
        size_t shift = a.size() - 1 - db;
        auto la = a.back();
        for (auto& c : a) c = mulc(c, lb);
        for (long i = 0; i <= db; ++i) a[i + shift] = subc(a[i + shift], mulc(la, b[i]));
        a.pop_back();
        trim(a);
        --e;
    }
    if (e > 0) {
        auto f = powc(lb, e);
        for (auto& c : a) c = mulc(c, f);
        trim(a);
    }
    return a;
}

inline ZPoly prem(const ZPoly& a, const ZPoly& b)
{
    return prem_generic(
        a, b, [](const mpz_class& x, const mpz_class& y) { return mpz_class(x * y); },
        [](const mpz_class& x, const mpz_class& y) { return mpz_class(x - y); },
        [](const mpz_class& x, long e) {
            mpz_class r;
            mpz_pow_ui(r.get_mpz_t(), x.get_mpz_t(), static_cast<unsigned long>(e));
            return r;
        });
}

inline ZPoly primitive(const ZPoly& a)
{
    if (a.empty()) return a;
    mpz_class c = content(a);
    if (a.back() < 0) c = -c;
    return c == 1 ? a : div_int(a, c);
}

// gcd in Z[x], positive leading coefficient.
inline ZPoly gcd(const ZPoly& A, const ZPoly& B)
{
    if (A.empty()) return primitive(B);
    if (B.empty()) return primitive(A);
    mpz_class c;
    mpz_class ca = content(A), cb = content(B);
    mpz_gcd(c.get_mpz_t(), ca.get_mpz_t(), cb.get_mpz_t());
    ZPoly a = primitive(A), b = primitive(B);
    if (a.size() < b.size()) std::swap(a, b);
    while (true) {
        if (b.size() == 1) return ZPoly{c};
        ZPoly r = prem(a, b);
        if (r.empty()) break;
        a = std::move(b);
        b = primitive(r);
    }
    b = primitive(b);
    for (auto& x : b) x *= c;
    return b;
}

inline ZPoly content(const ZZPoly& a)
{
    ZPoly g;
    for (auto& c : a) {
        if (c.empty()) continue;
        g = g.empty() ? primitive(c) : gcd(g, c);
        if (g.size() == 1) break;
    }
    // Keep the integer content too.
    mpz_class ic = 0;
    for (auto& c : a) {
        mpz_class cc = content(c);
        mpz_gcd(ic.get_mpz_t(), ic.get_mpz_t(), cc.get_mpz_t());
    }
    mpz_class gc = content(g);
    if (gc != ic) {
        g = div_int(g, gc);
        for (auto& x : g) x *= ic;
    }
    return g;
}

inline ZZPoly div_content(const ZZPoly& a, const ZPoly& c)
{
    ZZPoly r(a.size());
    for (size_t i = 0; i < a.size(); ++i) r[i] = a[i].empty() ? ZPoly{} : exact_div(a[i], c);
    return r;
}

inline ZZPoly primitive(const ZZPoly& a)
{
    if (a.empty()) return a;
    ZPoly c = content(a);
    if (c.size() == 1 && c[0] == 1) return a;
    return div_content(a, c);
}

inline ZZPoly prem(const ZZPoly& a, const ZZPoly& b)
{
    return prem_generic(
        a, b, [](const ZPoly& x, const ZPoly& y) { return mul(x, y); },
        [](const ZPoly& x, const ZPoly& y) { return add(x, y, -1); }, [](const ZPoly& x, long e) { return zpow(x, e); });
}

/** \brief gcd in Z[x][y] by the subresultant PRS in y. */
inline ZZPoly gcd(ZZPoly A, ZZPoly B)
{
    trim(A);
    trim(B);
    if (A.empty()) return B;
    if (B.empty()) return A;
    ZPoly ca = content(A), cb = content(B);
    ZPoly cg = gcd(ca, cb);
    ZZPoly a = div_content(A, ca), b = div_content(B, cb);
    if (a.size() < b.size()) std::swap(a, b);
    ZPoly g{1}, h{1};
    while (true) {
        if (b.size() == 1) {
            b = ZZPoly{ZPoly{1}};
            break;
        }
        long delta = static_cast<long>(a.size()) - static_cast<long>(b.size());
        ZZPoly r = prem(a, b);
        if (r.empty()) break;
        a = std::move(b);
        ZPoly d = mul(g, zpow(h, delta));
        b = div_content(r, d);
        g = a.back();
        if (delta == 0) {
        } else if (delta == 1) {
            h = g;
        } else {
            h = exact_div(zpow(g, delta), zpow(h, delta - 1));
        }
    }
    b = primitive(b);
    for (auto& c : b) c = mul(c, cg);
    return b;
}

} // namespace rll::zgcd
