#pragma once

#include "ratfun.hpp"

#include <cctype>
#include <cstdint>
#include <map>
#include <set>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

namespace rll {

struct PlaceError : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

// p = prime^f for some f >= 1; returns the prime or 0.
inline std::int64_t prime_power_base(std::int64_t p)
{
    if (p < 2) return 0;
    std::int64_t q = 2;
    for (; q * q <= p; ++q)
        if (p % q == 0) break;
    if (q * q > p) return p;
    while (p % q == 0) p /= q;
    return p == 1 ? q : 0;
}

/** \brief Residue cardinality p, exponent r of q, exponent of the different. */
struct PlaceData {
    std::int64_t p = 2;
    int r = 0;
    int d_exp = 0;

    PlaceData() = default;
    PlaceData(std::int64_t p_, int r_, int d_exp_ = 0) : p(p_), r(r_), d_exp(d_exp_) { validate(); }

    void validate() const
    {
        if (prime_power_base(p) == 0) throw PlaceError("residue cardinality " + std::to_string(p) + " is not a prime power");
        if (r < 0 || d_exp < 0) throw PlaceError("negative exponent at place " + std::to_string(p));
        if (r > 0 && d_exp > 0)
            throw PlaceError("q must be coprime to the different: place " + std::to_string(p) + " has r=" + std::to_string(r) +
                             " and different exponent " + std::to_string(d_exp));
    }
    Rational norm_q() const { return q_pow(Rational(static_cast<long>(p)), r); }
};

/** \brief s = m + a z + b w. */
struct Shift {
    Rational m = 0;
    int a = 0, b = 0;
};

class IdealFactorization {
public:
    IdealFactorization() = default;
    explicit IdealFactorization(std::vector<PlaceData> places) : places_(std::move(places))
    {
        std::set<std::int64_t> seen;
        for (auto& pl : places_) {
            pl.validate();
            if (pl.r <= 0) throw PlaceError("ideal factor with non-positive exponent");
            if (!seen.insert(pl.p).second) throw PlaceError("repeated residue cardinality " + std::to_string(pl.p));
        }
    }

    // "2^3*5^1*49^2"; "1" or "" is the unit ideal. A bare "7" means 7^1.
    static IdealFactorization parse(const std::string& s)
    {
        std::vector<PlaceData> out;
        std::string t;
        for (char ch : s)
            if (!std::isspace(static_cast<unsigned char>(ch))) t += ch;
        if (t.empty() || t == "1") return {};
        std::stringstream ss(t);
        std::string tok;
        while (std::getline(ss, tok, '*')) {
            if (tok.empty()) throw ParseError("empty factor in ideal '" + s + "'");
            if (tok == "1") continue;
            auto caret = tok.find('^');
            std::string base = tok.substr(0, caret), ex = caret == std::string::npos ? "1" : tok.substr(caret + 1);
            if (!detail::all_digits(base) || !detail::all_digits(ex) || base.size() > 12 || ex.size() > 4)
                throw ParseError("malformed factor '" + tok + "'");
            out.emplace_back(std::stoll(base), std::stoi(ex));
        }
        return IdealFactorization(std::move(out));
    }

    const std::vector<PlaceData>& places() const { return places_; }
    int omega() const { return static_cast<int>(places_.size()); }
    Rational norm() const
    {
        Rational n = 1;
        for (auto& pl : places_) n *= pl.norm_q();
        return n;
    }
    std::string str() const
    {
        if (places_.empty()) return "1";
        std::ostringstream os;
        for (size_t i = 0; i < places_.size(); ++i) os << (i ? "*" : "") << places_[i].p << "^" << places_[i].r;
        return os.str();
    }

private:
    std::vector<PlaceData> places_;
};

/** \brief zeta_v(m + a z + b w) = (1 - p^(-m) T1^a T2^b)^(-1), times N(d_v)^(s/2) at a place of the different. */
inline RF zeta_local(const PlaceData& pl, const Shift& s)
{
    if (!is_integer(s.m)) throw std::domain_error("zeta_local needs an integral constant shift");
    long m = s.m.get_num().get_si();
    Rational pm = q_pow(Rational(static_cast<long>(pl.p)), -m);
    RF z = (RF(Rational(1), pl.p) - RF::monomial(pm, s.a, s.b, pl.p)).inverse();
    if (pl.d_exp > 0) {
        long e = pl.d_exp;
        if ((e * m) % 2 || (e * s.a) % 2 || (e * s.b) % 2)
            throw std::domain_error("different factor N(d)^(s/2) is not a rational function of T1, T2 here");
        // p^(e s/2) = p^(e m/2) T1^(-e a/2) T2^(-e b/2)
        z = z * RF::monomial(q_pow(Rational(static_cast<long>(pl.p)), e * m / 2), -e * s.a / 2, -e * s.b / 2, pl.p);
    }
    return z;
}

/** \brief Product of rational functions attached to distinct residue cardinalities.
 *
 * T1, T2 mean p^(-z), p^(-w) for each factor's own p, so factors at different
 * places never merge into one RF.
 */
class RFProduct {
public:
    RFProduct() = default;
    RFProduct(const RF& f) { *this = *this * f; }

    const std::map<std::int64_t, RF>& factors() const { return f_; }
    const Rational& scalar() const { return c_; }

    friend RFProduct operator*(RFProduct a, const RF& f)
    {
        if (f.is_constant()) {
            a.c_ *= rf_eval(f, Scalar(0), Scalar(0)).exact().rational_part();
            return a;
        }
        auto it = a.f_.find(f.p());
        if (it == a.f_.end()) a.f_.emplace(f.p(), f);
        else it->second = it->second * f;
        return a;
    }
    friend RFProduct operator*(RFProduct a, const RFProduct& b)
    {
        a.c_ *= b.c_;
        for (auto& [p, f] : b.f_) a = a * f;
        return a;
    }
    RFProduct inverse() const
    {
        RFProduct r;
        r.c_ = 1 / c_;
        for (auto& [p, f] : f_) r.f_.emplace(p, f.inverse());
        return r;
    }
    // The factor at p; the scalar is kept separately.
    RF at(std::int64_t p) const
    {
        auto it = f_.find(p);
        return it == f_.end() ? RF(Rational(1), p) : it->second;
    }
    Scalar eval(const Scalar& z, const Scalar& w) const
    {
        Scalar v(c_);
        for (auto& [p, f] : f_) v = v * rf_eval(f, z, w);
        return v;
    }
    friend bool operator==(const RFProduct& a, const RFProduct& b)
    {
        // per-place ratios must be constant, and all constants multiply to 1
        Rational k = a.c_ / b.c_;
        std::set<std::int64_t> ps;
        for (auto& [p, f] : a.f_) ps.insert(p);
        for (auto& [p, f] : b.f_) ps.insert(p);
        for (auto p : ps) {
            RF r = a.at(p) / b.at(p);
            if (!r.is_constant()) return false;
            k *= rf_eval(r, Scalar(0), Scalar(0)).exact().rational_part();
        }
        return k == 1;
    }

private:
    Rational c_ = 1;
    std::map<std::int64_t, RF> f_;
};

inline RFProduct zeta_q(const IdealFactorization& q, const Shift& s)
{
    RFProduct out;
    for (auto& pl : q.places()) out = out * zeta_local(pl, s);
    return out;
}

// Constant zeta_v(m) as a rational number.
inline Rational zeta_value(std::int64_t p, long m)
{
    return 1 / (1 - q_pow(Rational(static_cast<long>(p)), -m));
}

inline Rational zeta_q_value(const IdealFactorization& q, long m)
{
    Rational out = 1;
    for (auto& pl : q.places()) out *= zeta_value(pl.p, m);
    return out;
}

/** \brief vol(K_{p^r}) = p^(-r) zeta_v(2) / zeta_v(1). */
inline Rational volume_K(const PlaceData& pl)
{
    if (pl.r < 1) throw std::domain_error("volume of K_{p^r} needs r >= 1");
    return q_pow(Rational(static_cast<long>(pl.p)), -pl.r) * zeta_value(pl.p, 2) / zeta_value(pl.p, 1);
}

inline Rational volume_K(const IdealFactorization& q)
{
    Rational v = 1;
    for (auto& pl : q.places()) v *= volume_K(pl);
    return v;
}

/** \brief vol(K_q)^(-1) = N(q) zeta_q(1) / zeta_q(2). */
inline Rational vol_inv_q(const IdealFactorization& q) { return q.norm() * zeta_q_value(q, 1) / zeta_q_value(q, 2); }

inline int omega(const IdealFactorization& q) { return q.omega(); }
inline Rational norm(const IdealFactorization& q) { return q.norm(); }

/** \brief The ideal nZ over Q, factored by trial division. */
inline IdealFactorization rational_ideal(std::int64_t n)
{
    if (n < 1) throw PlaceError("rational ideal needs a positive generator");
    std::vector<PlaceData> out;
    for (std::int64_t p = 2; p * p <= n; ++p) {
        int r = 0;
        while (n % p == 0) {
            n /= p;
            ++r;
        }
        if (r) out.emplace_back(p, r);
    }
    if (n > 1) out.emplace_back(n, 1);
    return IdealFactorization(std::move(out));
}

} // namespace rll
