#pragma once

#include "laurent.hpp"

#include <array>
#include <random>

namespace rll {

/** \brief G(z,w)h1 + G(-z,w)h2 + G(z,-w)h3 + G(-z,-w)h4. */
template <class C>
LaurentSeries2<C> four_term(const LaurentSeries2<C>& G, const std::array<LaurentSeries2<C>, 4>& h)
{
    return G * h[0] + G.flipped(true, false) * h[1] + G.flipped(false, true) * h[2] + G.flipped(true, true) * h[3];
}

/** \brief Differences along the six lines on which the h_j must agree.
 *
 * Order: h1-h3 on w=0, h2-h4 on w=0, h1-h2 on z=0, h3-h4 on z=0,
 * h1-h4 on z+w=0, h2-h3 on z=w. Each entry is a univariate series in t.
 */
template <class C> std::array<std::vector<C>, 6> symmetry_defects(const std::array<Series2<C>, 4>& h)
{
    int K = h[0].order();
    for (auto& x : h) K = std::min(K, x.order());
    auto on_line = [&](const Series2<C>& s, int a, int b) {
        // restriction to (z,w) = (a t, b t)
        std::vector<C> r(K + 1, ring<C>::zero());
        for (int d = 0; d <= K; ++d)
            for (int j = 0; j <= d; ++j) {
                int i = d - j;
                C x = s.at(i, j);
                if (ring<C>::is_zero(x)) continue;
                Rational f = q_pow(Rational(a), i) * q_pow(Rational(b), j);
                r[d] = r[d] + x * ring<C>::from_q(f);
            }
        return r;
    };
    auto diff = [&](int x, int y, int a, int b) {
        auto u = on_line(h[x], a, b), v = on_line(h[y], a, b);
        for (size_t k = 0; k < u.size(); ++k) u[k] = u[k] - v[k];
        return u;
    };
    return {diff(0, 2, 1, 0), diff(1, 3, 1, 0), diff(0, 1, 0, 1), diff(2, 3, 0, 1), diff(0, 3, -1, 1), diff(1, 2, 1, 1)};
}

/** \brief Random quadruple satisfying the six agreement constraints, with a model G. */
struct CancellationCase {
    LaurentSeries2<Rational> G;
    std::array<Series2<Rational>, 4> h;
    int broken = -1; // index of the violated constraint, -1 if none
};

class CancellationFuzzer {
public:
    explicit CancellationFuzzer(std::uint64_t seed, int K = kDefaultDepth) : rng_(seed), K_(K) {}

    CancellationCase draw(bool break_one = false)
    {
        CancellationCase c;
        Series2<Rational> h1 = random_series(K_), A2 = random_series(K_ - 1), B = random_series(K_ - 2), D = random_series(K_ - 3);
        // A3 = A2 + (z-w)B, h2 = h1 + z A2, h3 = h1 + w A3, h4 = h1 + z A2 + w A3 + zw(-2B + (z+w)D)
        Series2<Rational> A3 = A2 + B.times_divisor(3);
        Series2<Rational> zA2 = A2.times_divisor(0), wA3 = A3.times_divisor(1);
        Series2<Rational> inner = B.scaled(-2) + D.times_divisor(2);
        Series2<Rational> zw = inner.times_divisor(0).times_divisor(1);
        c.h = {h1, h1 + zA2, h1 + wA3, h1 + zA2 + wA3 + zw};
        if (break_one) {
            std::uniform_int_distribution<int> pick(0, 5);
            c.broken = pick(rng_);
            perturb(c.h, c.broken);
        }
        c.G = model_G();
        return c;
    }

    // G = H1(z+w) H2(z) H2(w), H(s) = rho/s + regular.
    LaurentSeries2<Rational> model_G()
    {
        Rational r1 = nonzero(), r2 = nonzero();
        std::vector<Rational> g1(K_ + 1), g2(K_ + 1);
        for (int k = 0; k <= K_; ++k) {
            g1[k] = small();
            g2[k] = small();
        }
        auto along = [&](Rational rho, const std::vector<Rational>& g, int a, int b) {
            // numerator rho + s * sum g_k s^k with s = a z + b w
            Series2<Rational> s(K_);
            for (int d = 0; d <= K_; ++d) {
                Rational coef = d == 0 ? rho : g[d - 1];
                for (int j = 0; j <= d; ++j)
                    s.at(d - j, j) += coef * binom(d, j) * q_pow(Rational(a), d - j) * q_pow(Rational(b), j);
            }
            return s;
        };
        LaurentSeries2<Rational> H1(along(r1, g1, 1, 1), Poles{{0, 0, 1, 0}});
        LaurentSeries2<Rational> H2z(along(r2, g2, 1, 0), Poles{{1, 0, 0, 0}});
        LaurentSeries2<Rational> H2w(along(r2, g2, 0, 1), Poles{{0, 1, 0, 0}});
        return H1 * H2z * H2w;
    }

    static std::array<LaurentSeries2<Rational>, 4> as_laurent(const std::array<Series2<Rational>, 4>& h)
    {
        return {LaurentSeries2<Rational>(h[0]), LaurentSeries2<Rational>(h[1]), LaurentSeries2<Rational>(h[2]),
                LaurentSeries2<Rational>(h[3])};
    }

private:
    Rational small()
    {
        std::uniform_int_distribution<int> n(-5, 5), d(1, 4);
        return make_q(n(rng_), d(rng_));
    }
    Rational nonzero()
    {
        Rational x = 0;
        while (x == 0) x = small();
        return x;
    }
    static Rational binom(int n, int k)
    {
        Rational r = 1;
        for (int i = 1; i <= k; ++i) r = r * (n - k + i) / i;
        return r;
    }
    Series2<Rational> random_series(int K)
    {
        Series2<Rational> s(std::max(K, 0));
        for (int d = 0; d <= s.order(); ++d)
            for (int j = 0; j <= d; ++j) s.at(d - j, j) = small();
        return s;
    }

    // Add c * (product of the linear forms of the other two lines through h_j), so only constraint k breaks.
    void perturb(std::array<Series2<Rational>, 4>& h, int k)
    {
        static const int owner[6] = {0, 1, 0, 2, 0, 1};
        // lines are named by their divisor index: z, w, z+w, z-w
        static const int line_of[6] = {1, 1, 0, 0, 2, 3};
        static const std::array<int, 3> lines_of_h[4] = {{1, 0, 2}, {1, 0, 3}, {1, 0, 3}, {1, 0, 2}};
        int j = owner[k];
        Series2<Rational> bump = Series2<Rational>::constant(nonzero(), K_ - 2);
        for (int l : lines_of_h[j])
            if (l != line_of[k]) bump = bump.times_divisor(l);
        h[j] = h[j] + bump;
    }

    std::mt19937_64 rng_;
    int K_;
};

} // namespace rll
