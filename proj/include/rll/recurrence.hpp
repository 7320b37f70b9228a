#pragma once

#include "rational.hpp"

#include <stdexcept>
#include <vector>

namespace rll {

/** \brief Rational generating function sum a_n x^n = P(x)/Q(x), Q(0) = 1. */
struct RationalGF {
    std::vector<Rational> P, Q;
};

/** \brief Berlekamp-Massey over Q.
 *
 * Finds the shortest linear recurrence generating the first terms of a and
 * checks it on every supplied term. Throws when the recurrence is not
 * confirmed by at least `certify` terms beyond those used to find it.
 */
inline RationalGF berlekamp_massey(const std::vector<Rational>& a, size_t certify = 4)
{
    std::vector<Rational> C{1}, B{1};
    size_t L = 0, m = 1;
    Rational b = 1;
    for (size_t n = 0; n < a.size(); ++n) {
        Rational d = a[n];
        for (size_t i = 1; i <= L && i < C.size(); ++i) d += C[i] * a[n - i];
        if (d == 0) {
            ++m;
            continue;
        }
        std::vector<Rational> T = C;
        Rational coef = d / b;
        if (C.size() < B.size() + m) C.resize(B.size() + m, 0);
        for (size_t i = 0; i < B.size(); ++i) C[i + m] -= coef * B[i];
        if (2 * L <= n) {
            L = n + 1 - L;
            B = T;
            b = d;
            m = 1;
        } else {
            ++m;
        }
    }
    C.resize(L + 1, 0);
    if (a.size() < 2 * L + certify) throw std::runtime_error("recurrence not certified: too few terms");
    // P = (A C) mod x^L
    std::vector<Rational> P(L, 0);
    for (size_t i = 0; i < L; ++i)
        for (size_t j = 0; j <= i && j < C.size(); ++j) P[i] += C[j] * a[i - j];
    while (!P.empty() && P.back() == 0) P.pop_back();
    return {P, C};
}

} // namespace rll
