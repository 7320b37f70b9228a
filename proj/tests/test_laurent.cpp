#include <gtest/gtest.h>

#include "rll/cancellation.hpp"

#include <random>

using namespace rll;

namespace {

using LQ = LaurentSeries2<Rational>;
using LL = LaurentSeries2<LogQ>;

RF zeta_v(std::int64_t p, long m, int a, int b)
{
    RF x = RF::monomial(Rational(1) / q_pow(Rational(static_cast<long>(p)), m), a, b, p);
    return (RF(Rational(1)) - x).inverse();
}

LQ inv_divisors(Poles P, int K = kDefaultDepth) { return LQ(Series2<Rational>::constant(1, K), P); }

} // namespace

TEST(Laurent, UnitAndProducts)
{
    LQ one = LQ::constant(1);
    EXPECT_TRUE(one.is_regular());
    EXPECT_EQ(one.constant_term(), Rational(1));

    LQ iz = inv_divisors(Poles{{1, 0, 0, 0}}), iw = inv_divisors(Poles{{0, 1, 0, 0}});
    EXPECT_EQ((iz * iw).poles(), (Poles{{1, 1, 0, 0}}));
    LQ a = inv_divisors(Poles{{1, 1, 1, 0}});
    EXPECT_TRUE((a - a).is_zero());
    LQ b = a * one;
    EXPECT_EQ(b.poles(), a.poles());
    EXPECT_TRUE((b - a).is_zero());
}

TEST(Laurent, MinimalizationDividesOut)
{
    // z(z+w) / (z (z+w) w) -> 1/w
    Series2<Rational> N = Series2<Rational>::constant(1, 8).times_divisor(0).times_divisor(2);
    LQ x(N, Poles{{1, 1, 1, 0}});
    EXPECT_EQ(x.poles(), (Poles{{0, 1, 0, 0}}));
    EXPECT_EQ(x.order(), 8);
}

TEST(Laurent, ZetaAlongSumHasSimplePole)
{
    // (1 - 2^{-2(z+w)})^{-1} = 1/(2 log 2 (z+w)) + ...
    LL s = ls_from_rational<LogQ>(zeta_v(2, 0, 2, 2));
    EXPECT_EQ(s.poles(), (Poles{{0, 0, 1, 0}}));
    LogQ lead = s.numerator().at(0, 0);
    EXPECT_EQ(lead, LogQ(make_q(1, 2)) * LogQ::symbol(2).unit_inverse());

    // shifted by one it is regular with value 2
    LL t = ls_from_rational<LogQ>(zeta_v(2, 1, 2, 2));
    EXPECT_TRUE(t.is_regular());
    EXPECT_EQ(t.constant_term(), LogQ(2));
}

TEST(Laurent, InverseZetaTaylorData)
{
    LL s = ls_from_rational<LogQ>(zeta_v(2, 1, 2, 0).inverse());
    EXPECT_TRUE(s.is_regular());
    EXPECT_EQ(s.coeff(0, 0), LogQ(make_q(1, 2)));
    EXPECT_EQ(s.coeff(1, 0), LogQ::symbol(2));
    EXPECT_TRUE(s.coeff(0, 1).is_zero());
    // log 4 is stored as 2 log 2
    LL u = ls_from_rational<LogQ>(zeta_v(4, 1, 2, 0).inverse());
    EXPECT_EQ(u.coeff(1, 0), LogQ(make_q(1, 2)) * LogQ::log_of(4));
    EXPECT_EQ(u.coeff(1, 0), LogQ::symbol(2));
}

TEST(Laurent, NonDivisorVanishingIsRejected)
{
    // 1 - T1 T2^2 vanishes along z + 2w = 0
    RF bad = (RF(Rational(1)) - RF::monomial(Rational(1), 1, 2, 3)).inverse();
    EXPECT_THROW(ls_from_rational<LogQ>(bad), SingularError);
}

TEST(Laurent, FlipRules)
{
    LQ a = inv_divisors(Poles{{1, 1, 1, 0}});
    LQ both = a.flipped(true, true);
    EXPECT_EQ(both.poles(), a.poles());
    EXPECT_TRUE((both + a).is_zero());

    LQ c = inv_divisors(Poles{{0, 0, 2, 0}});
    LQ fz = c.flipped(true, false);
    EXPECT_EQ(fz.poles(), (Poles{{0, 0, 0, 2}}));
    EXPECT_TRUE((fz.flipped(true, false) - c).is_zero());

    std::mt19937_64 g(7);
    std::uniform_int_distribution<int> u(-4, 4);
    Series2<Rational> N(8);
    for (int d = 0; d <= 8; ++d)
        for (int j = 0; j <= d; ++j) N.at(d - j, j) = u(g);
    LQ r(N, Poles{{1, 0, 1, 1}});
    for (int m = 0; m < 4; ++m) {
        bool fz2 = m & 1, fw2 = m & 2;
        EXPECT_TRUE((r.flipped(fz2, fw2).flipped(fz2, fw2) - r).is_zero());
    }
    // numeric agreement with substitution
    Complex z(0.013, 0.002), w(-0.007, 0.004);
    EXPECT_NEAR(std::abs(r.flipped(true, false).eval(z, w) - r.eval(-z, w)), 0.0, 1e-9 * std::abs(r.eval(-z, w)));
    EXPECT_NEAR(std::abs(r.flipped(false, true).eval(z, w) - r.eval(z, -w)), 0.0, 1e-9 * std::abs(r.eval(z, -w)));
}

TEST(Laurent, SingularParts)
{
    Series2<Rational> N = Series2<Rational>::constant(1, 8) + Series2<Rational>::monomial(5, 1, 0, 8);
    LQ x(N, Poles{{1, 0, 0, 0}}); // 1/z + 5
    LQ sp = x.singular_part();
    EXPECT_TRUE((sp - inv_divisors(Poles{{1, 0, 0, 0}})).is_zero());
    EXPECT_THROW(x.constant_term(), SingularError);
    EXPECT_TRUE(LQ::constant(3).singular_part().is_zero());

    // 1/(zw(z+w)) - 1/(zw(w-z)) + 1/(zw(w-z)) - 1/(zw(z+w)) = 0
    LQ g = inv_divisors(Poles{{1, 1, 1, 0}});
    std::array<LQ, 4> ones{LQ::constant(1), LQ::constant(1), LQ::constant(1), LQ::constant(1)};
    LQ comb = four_term(g, ones);
    EXPECT_TRUE(comb.singular_part().is_zero());
    EXPECT_EQ(comb.constant_term(), Rational(0));
}

TEST(Laurent, CubicLogPattern)
{
    // lambda^3 (z+w)^3 / (6 * 2z * 2w * (z+w)) alone is singular
    using LE = LaurentSeries2<ExactCoeff>;
    ExactCoeff lam3 = ExactCoeff::lambda() * ExactCoeff::lambda() * ExactCoeff::lambda();
    Series2<ExactCoeff> N = Series2<ExactCoeff>::constant(lam3 * ExactCoeff(LogQ(make_q(1, 24))), 8);
    N = N.times_divisor(2).times_divisor(2).times_divisor(2);
    LE t(N, Poles{{1, 1, 1, 0}});
    EXPECT_THROW(t.constant_term(), SingularError);

    // G-like term symmetrized with the four flips: (z+w)^2 - (z-w)^2 - (z-w)^2 + (z+w)^2 over 4zw, times 1/6
    std::array<LE, 4> ones{LE::constant(1), LE::constant(1), LE::constant(1), LE::constant(1)};
    LE s = four_term(t, ones);
    ExactCoeff c = s.constant_term();
    EXPECT_EQ(c, lam3 * ExactCoeff(LogQ(make_q(1, 3))));
}

TEST(Laurent, TruncatedExpansionMatchesEvaluation)
{
    // regular function; series at a small point versus direct evaluation
    RF f = zeta_v(3, 1, 2, 0) * zeta_v(3, 2, 1, 1) * zeta_v(3, 1, 0, 2).inverse();
    auto s = ls_from_rational<Complex>(f, 8);
    Complex z(1e-4, 0), w(2e-4, 0);
    Complex direct = rf_eval(f, Scalar(z), Scalar(w)).numeric();
    EXPECT_LE(std::abs(s.eval(z, w) - direct), 1e-12 * std::abs(direct));
    auto e = ls_from_rational<LogQ>(f, 8);
    EXPECT_LE(std::abs(e.eval(z, w) - direct), 1e-12 * std::abs(direct));
}

TEST(Laurent, DepthInvariant)
{
    LQ a(Series2<Rational>::constant(1, 4), Poles{{1, 1, 1, 0}});
    EXPECT_THROW(a.require_depth(), DepthError);
    LQ b(Series2<Rational>::constant(1, 6), Poles{{1, 1, 1, 0}});
    EXPECT_NO_THROW(b.require_depth());
}

TEST(LaurentProperty, SymmetricQuadruplesCancel)
{
    CancellationFuzzer fz(20240611);
    for (int t = 0; t < 40; ++t) {
        auto c = fz.draw();
        for (auto& d : symmetry_defects(c.h))
            for (auto& x : d) ASSERT_EQ(x, 0);
        LQ comb = four_term(c.G, CancellationFuzzer::as_laurent(c.h));
        EXPECT_TRUE(comb.singular_part().is_zero()) << comb.str();
        EXPECT_TRUE(comb.is_regular());
    }
}

TEST(LaurentProperty, BreakingOneConstraintLeavesPoles)
{
    CancellationFuzzer fz(31337);
    for (int t = 0; t < 24; ++t) {
        auto c = fz.draw(true);
        auto d = symmetry_defects(c.h);
        for (int k = 0; k < 6; ++k) {
            bool zero = std::all_of(d[k].begin(), d[k].end(), [](const Rational& x) { return x == 0; });
            EXPECT_EQ(zero, k != c.broken);
        }
        LQ comb = four_term(c.G, CancellationFuzzer::as_laurent(c.h));
        EXPECT_FALSE(comb.singular_part().is_zero());
    }
}
