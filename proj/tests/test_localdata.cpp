#include <gtest/gtest.h>

#include "rll/localdata.hpp"

using namespace rll;

namespace {

Rational const_value(const RF& f) { return rf_eval(f, Scalar(0), Scalar(0)).exact().rational_part(); }
Rational const_value(const RFProduct& f) { return f.eval(Scalar(0), Scalar(0)).exact().rational_part(); }

} // namespace

TEST(LocalData, ZetaLocalValues)
{
    EXPECT_EQ(const_value(zeta_local(PlaceData(2, 0), Shift{1})), Rational(2));
    EXPECT_EQ(const_value(zeta_local(PlaceData(3, 0), Shift{2})), make_q(9, 8));
    RF t = zeta_local(PlaceData(2, 0), Shift{1, 2, 0});
    RF want = (RF(Rational(1)) - RF::monomial(make_q(1, 2), 2, 0, 2)).inverse();
    EXPECT_TRUE((t - want).is_zero());
}

TEST(LocalData, ZetaQ)
{
    auto q = IdealFactorization::parse("2*3");
    EXPECT_EQ(const_value(zeta_q(q, Shift{1})), Rational(3));
    EXPECT_EQ(const_value(zeta_q(q, Shift{2})), make_q(3, 2));
    EXPECT_EQ(const_value(zeta_q(IdealFactorization{}, Shift{1})), Rational(1));
    EXPECT_EQ(zeta_q_value(q, 2), make_q(3, 2));
}

TEST(LocalData, Volumes)
{
    EXPECT_EQ(volume_K(PlaceData(2, 1)), make_q(1, 3));
    EXPECT_EQ(volume_K(PlaceData(3, 2)), make_q(1, 12));
    EXPECT_EQ(vol_inv_q(IdealFactorization::parse("2^1")), Rational(3));
    EXPECT_THROW(volume_K(PlaceData(2, 0)), std::domain_error);
    auto q = IdealFactorization::parse("2^3*5*49^2");
    EXPECT_EQ(vol_inv_q(q) * volume_K(q), Rational(1));
}

TEST(LocalData, OmegaAndNorm)
{
    auto a = IdealFactorization::parse("2^1*3^2");
    EXPECT_EQ(omega(a), 2);
    EXPECT_EQ(norm(a), Rational(18));
    EXPECT_EQ(omega(IdealFactorization::parse("")), 0);
    EXPECT_EQ(norm(IdealFactorization::parse("1")), Rational(1));
    auto c = IdealFactorization::parse("5^3");
    EXPECT_EQ(omega(c), 1);
    EXPECT_EQ(norm(c), Rational(125));
    EXPECT_EQ(IdealFactorization::parse(" 2^3 * 49^2 ").str(), "2^3*49^2");
}

TEST(LocalData, Rejections)
{
    EXPECT_THROW(PlaceData(6, 1), PlaceError);
    EXPECT_THROW(PlaceData(1, 1), PlaceError);
    EXPECT_THROW(PlaceData(2, 1, 1), PlaceError);
    EXPECT_NO_THROW(PlaceData(2, 0, 3));
    EXPECT_THROW(IdealFactorization::parse("2^1*2^3"), PlaceError);
    EXPECT_THROW(IdealFactorization::parse("2^0"), PlaceError);
    EXPECT_THROW(IdealFactorization::parse("2^^1"), ParseError);
    EXPECT_THROW(IdealFactorization::parse("2**3"), ParseError);
    EXPECT_THROW(IdealFactorization::parse("x^2"), ParseError);
    try {
        PlaceData(5, 2, 1);
        FAIL();
    } catch (const PlaceError& e) {
        EXPECT_NE(std::string(e.what()).find("coprime"), std::string::npos);
    }
}

TEST(LocalData, DifferentFactor)
{
    // N(d)^(s/2) with N(d) = 2^2: at s = 1 the factor is 2
    RF z = zeta_local(PlaceData(2, 0, 2), Shift{1});
    EXPECT_EQ(const_value(z), Rational(4));
    EXPECT_THROW(zeta_local(PlaceData(2, 0, 1), Shift{1}), std::domain_error);
}

TEST(LocalDataProperty, VolumeScaling)
{
    for (std::int64_t p : {2, 3, 4, 5, 7, 8, 9, 11, 25, 27})
        for (int r = 1; r <= 6; ++r)
            EXPECT_EQ(volume_K(PlaceData(p, r + 1)), volume_K(PlaceData(p, r)) / Rational(static_cast<long>(p)));
}

TEST(LocalDataProperty, ZetaQMultiplicative)
{
    const char* parts[][2] = {{"2^3", "5^1*49^2"}, {"3", "4^2"}, {"7^2*11", "13"}, {"1", "8^2"}};
    for (auto& pr : parts) {
        auto a = IdealFactorization::parse(pr[0]), b = IdealFactorization::parse(pr[1]);
        auto ab = IdealFactorization::parse(std::string(pr[0]) + "*" + pr[1]);
        for (Shift s : {Shift{1, 2, 0}, Shift{2, 1, 1}, Shift{0, 2, 2}, Shift{1, -2, 0}})
            EXPECT_TRUE(zeta_q(ab, s) == zeta_q(a, s) * zeta_q(b, s));
        EXPECT_EQ(norm(ab), norm(a) * norm(b));
        EXPECT_EQ(omega(ab), omega(a) + omega(b));
    }
}
