#include <gtest/gtest.h>

#include "rll/whittaker.hpp"

#include <random>

using namespace rll;

namespace {

Complex unit(double t) { return std::polar(1.0, t); }

} // namespace

TEST(Whittaker, Values)
{
    PlaceData pl(2, 1);
    auto a = SatakeParams::unramified(make_q(3, 2), make_q(1, 5), make_q(1, 1));
    EXPECT_TRUE(exact_equal(whittaker_value(a, pl, 0), Scalar(1)));
    EXPECT_TRUE(exact_equal(whittaker_value(a, pl, -3), Scalar(0)));
    auto one = SatakeParams::unramified(1, 1);
    EXPECT_TRUE(exact_equal(whittaker_value(one, pl, 2), Scalar(make_q(3, 2))));
    // odd n carries the symbol S
    Scalar w1 = whittaker_value(one, pl, 1);
    EXPECT_TRUE(exact_equal(w1, Scalar(Surd(0, 2, 2))));
}

TEST(Whittaker, NegativeIndexS)
{
    Scalar a1(make_q(2, 3)), a2(make_q(5, 4));
    for (long n = 1; n < 6; ++n) {
        Scalar lhs = satake_S(a1, a2, -n);
        Scalar rhs = (spow(a1, -n) - spow(a2, -n)) / (a1 - a2);
        EXPECT_TRUE(exact_equal(lhs, rhs)) << n;
    }
}

TEST(Whittaker, Norms)
{
    PlaceData pl(2, 1);
    EXPECT_TRUE(exact_equal(whittaker_norm_sq(SatakeParams::unramified(1, 1), pl), Scalar(1)));
    EXPECT_TRUE(exact_equal(whittaker_norm_sq(SatakeParams::ramified_with(1), pl), Scalar(make_q(4, 3))));
    EXPECT_THROW(whittaker_norm_sq(SatakeParams::ramified_with(Scalar(make_q(3, 2)), 1), pl), std::domain_error);

    // oracle side: zeta(2)/L(1) times the truncated sum at s = 0
    auto r = SatakeParams::ramified_with(Scalar(unit(0.4)));
    auto o = weighted_integral_oracle(r, pl, Scalar(0));
    Complex L1 = 1.0 / (1.0 - 0.5);
    Complex via_oracle = (4.0 / 3.0) / L1 * o.value;
    EXPECT_NEAR(std::abs(via_oracle - whittaker_norm_sq(r, pl).numeric()), 0.0, 1e-10);
}

TEST(Whittaker, WeightedIntegralExamples)
{
    PlaceData pl(2, 1);
    auto one = SatakeParams::unramified(1, 1);
    EXPECT_TRUE(exact_equal(weighted_integral_closed(one, pl, Scalar(0)), Scalar(12)));
    auto o = weighted_integral_oracle(one, pl, Scalar(0));
    EXPECT_NEAR(o.value.real(), 12.0, 1e-10);
    EXPECT_LT(o.tail_bound, 1e-10);
    // large s: only n = 0 survives
    EXPECT_NEAR(weighted_integral_closed(one, pl, Scalar(60)).numeric().real(), 1.0, 1e-15);
    EXPECT_NEAR(weighted_integral_oracle(one, pl, Scalar(60)).value.real(), 1.0, 1e-15);
    // s = 1/10 with unitary parameters
    auto u = SatakeParams::unramified(Scalar(unit(0.9)), Scalar(unit(-0.9)));
    Scalar s(make_q(1, 10));
    EXPECT_NEAR(std::abs(weighted_integral_closed(u, pl, s).numeric() - weighted_integral_oracle(u, pl, s).value), 0.0, 1e-10);
}

TEST(WhittakerProperty, HeckeRecursionExact)
{
    std::mt19937_64 g(424242);
    std::uniform_int_distribution<int> n(-9, 9), d(1, 7);
    for (std::int64_t p : {2, 3, 5, 4, 9}) {
        PlaceData pl(p, 1);
        for (int t = 0; t < 10; ++t) {
            auto pi = SatakeParams::unramified(Scalar(make_q(n(g), d(g))), Scalar(make_q(n(g), d(g))), 4);
            Scalar sp = Scalar(Surd::S(p)), ip = Scalar(make_q(1, p));
            for (long k = 1; k < 9; ++k) {
                Scalar lhs = whittaker_value(pi, pl, k + 1);
                Scalar rhs = sp * (pi.a1 + pi.a2) * whittaker_value(pi, pl, k) - ip * pi.a1 * pi.a2 * whittaker_value(pi, pl, k - 1);
                ASSERT_TRUE(exact_equal(lhs, rhs));
            }
        }
    }
}

TEST(WhittakerProperty, ClosedMatchesOracle)
{
    std::mt19937_64 g(1789);
    std::uniform_real_distribution<double> ang(0, 2 * M_PI), ss(0, 1);
    const std::int64_t ps[] = {2, 3, 5, 9, 11};
    for (int t = 0; t < 100; ++t) {
        PlaceData pl(ps[t % 5], 1);
        auto pi = SatakeParams::unramified(Scalar(unit(ang(g))), Scalar(unit(ang(g))));
        pi.validate(pl.p);
        Scalar s(ss(g));
        Complex c = weighted_integral_closed(pi, pl, s).numeric();
        auto o = weighted_integral_oracle(pi, pl, s);
        ASSERT_LE(std::abs(c - o.value), 1e-10 * std::max(1.0, std::abs(c))) << t;
        ASSERT_LT(o.tail_bound, 1e-10);
    }
}

TEST(WhittakerProperty, UnramifiedUnitaryNormIsOne)
{
    std::mt19937_64 g(99);
    std::uniform_real_distribution<double> ang(0, 2 * M_PI);
    for (int t = 0; t < 20; ++t) {
        double a = ang(g);
        auto pi = SatakeParams::unramified(Scalar(unit(a)), Scalar(unit(-a)));
        pi.validate(3, true);
        EXPECT_NEAR(std::abs(whittaker_norm_sq(pi, PlaceData(3, 1)).numeric() - 1.0), 0.0, 1e-12);
    }
    // exact rational pair with product 1
    auto q = SatakeParams::unramified(Scalar(make_q(9, 8)), Scalar(make_q(8, 9)), make_q(1, 4));
    q.validate(2, true);
    EXPECT_TRUE(exact_equal(whittaker_norm_sq(q, PlaceData(2, 1)), Scalar(1)));
}

TEST(Whittaker, Validation)
{
    EXPECT_THROW(SatakeParams::unramified(Scalar(make_q(3, 2)), Scalar(make_q(2, 3))).validate(2), SatakeError);
    EXPECT_THROW(SatakeParams::unramified(Scalar(make_q(1, 2)), Scalar(1)).validate(2, true), SatakeError);
    SatakeParams bad = SatakeParams::ramified_with(1);
    bad.a2 = Scalar(1);
    EXPECT_THROW(bad.validate(2), SatakeError);
}
