#pragma once

#include <gmpxx.h>

#include <cstdint>
#include <stdexcept>
#include <string>
#include <string_view>

namespace rll {

using Rational = mpq_class;

struct ParseError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

inline Rational make_q(long num, long den = 1)
{
    if (den == 0) throw std::domain_error("zero denominator");
    Rational q(num, den);
    q.canonicalize();
    return q;
}

inline Rational q_pow(const Rational& x, long e)
{
    if (e < 0) {
        if (x == 0) throw std::domain_error("0 raised to a negative power");
        Rational inv = 1 / x;
        return q_pow(inv, -e);
    }
    Rational out = 1, base = x;
    unsigned long k = static_cast<unsigned long>(e);
    while (k) {
        if (k & 1u) out *= base;
        base *= base;
        k >>= 1u;
    }
    return out;
}

inline bool is_integer(const Rational& q) { return q.get_den() == 1; }

// Always "num/den", including den == 1, so the format is uniform.
inline std::string q_str(const Rational& q)
{
    return q.get_num().get_str() + "/" + q.get_den().get_str();
}

namespace detail {

inline bool all_digits(std::string_view s)
{
    if (s.empty()) return false;
    for (char c : s)
        if (c < '0' || c > '9') return false;
    return true;
}

inline Rational parse_decimal(std::string_view s)
{
    std::string_view body = s;
    bool neg = false;
    if (!body.empty() && (body[0] == '-' || body[0] == '+')) {
        neg = body[0] == '-';
        body.remove_prefix(1);
    }
    long exp10 = 0;
    if (auto e = body.find_first_of("eE"); e != std::string_view::npos) {
        std::string_view es = body.substr(e + 1);
        bool eneg = false;
        if (!es.empty() && (es[0] == '-' || es[0] == '+')) {
            eneg = es[0] == '-';
            es.remove_prefix(1);
        }
        if (!all_digits(es) || es.size() > 6) throw ParseError("bad exponent in number: " + std::string(s));
        exp10 = std::stol(std::string(es));
        if (eneg) exp10 = -exp10;
        body = body.substr(0, e);
    }
    std::string digits;
    if (auto dot = body.find('.'); dot != std::string_view::npos) {
        std::string_view ip = body.substr(0, dot), fp = body.substr(dot + 1);
        if ((ip.empty() && fp.empty()) || (!ip.empty() && !all_digits(ip)) || (!fp.empty() && !all_digits(fp)))
            throw ParseError("bad decimal: " + std::string(s));
        digits = std::string(ip) + std::string(fp);
        exp10 -= static_cast<long>(fp.size());
    } else {
        if (!all_digits(body)) throw ParseError("bad number: " + std::string(s));
        digits = std::string(body);
    }
    mpz_class n(digits, 10);
    mpz_class ten = 10, scale;
    mpz_pow_ui(scale.get_mpz_t(), ten.get_mpz_t(), static_cast<unsigned long>(exp10 < 0 ? -exp10 : exp10));
    Rational q = exp10 >= 0 ? Rational(n * scale) : Rational(n, scale);
    q.canonicalize();
    return neg ? Rational(-q) : q;
}

} // namespace detail

// Accepts "num/den", integers and decimal strings (read exactly, so "0.1" is 1/10).
inline Rational parse_q(std::string_view s)
{
    while (!s.empty() && s.front() == ' ') s.remove_prefix(1);
    while (!s.empty() && s.back() == ' ') s.remove_suffix(1);
    if (s.empty()) throw ParseError("empty number");
    if (auto slash = s.find('/'); slash != std::string_view::npos) {
        std::string_view n = s.substr(0, slash), d = s.substr(slash + 1);
        std::string_view nd = n;
        if (!nd.empty() && (nd[0] == '-' || nd[0] == '+')) nd.remove_prefix(1);
        if (!detail::all_digits(nd) || !detail::all_digits(d)) throw ParseError("bad fraction: " + std::string(s));
        mpz_class den(std::string(d), 10);
        if (den == 0) throw ParseError("zero denominator: " + std::string(s));
        Rational q(mpz_class(std::string(nd), 10), den);
        q.canonicalize();
        return (!n.empty() && n[0] == '-') ? Rational(-q) : q;
    }
    return detail::parse_decimal(s);
}

// Integer square root test for radicands of p^(1/2).
inline bool is_square(std::int64_t n, std::int64_t* root = nullptr)
{
    if (n < 0) return false;
    mpz_class z(static_cast<long>(n));
    if (!mpz_perfect_square_p(z.get_mpz_t())) return false;
    if (root) {
        mpz_class r;
        mpz_sqrt(r.get_mpz_t(), z.get_mpz_t());
        *root = r.get_si();
    }
    return true;
}

} // namespace rll
