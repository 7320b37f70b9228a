#include <gtest/gtest.h>

#include "rll/specweight.hpp"

#include <random>

using namespace rll;

namespace {

Complex unit(double t) { return std::polar(1.0, t); }

// |Psi|^2 / |L(1/2, pi0 x pi~)|^2 with Psi = p^(r/2) vol / ||W|| * sum_n p^(-n/2) S~(n+1) S0(n+1)
double bound_from_definition(const SatakeParams& pi, const SatakeParams& pi0, const PlaceData& pl)
{
    double vol = volume_K(pl).get_d();
    OracleSum rs = rs_local_oracle(pi, pi0, pl, 4000);
    double normW = std::sqrt(whittaker_norm_sq(pi, pl).numeric().real());
    Complex psi = std::pow(static_cast<double>(pl.p), pl.r / 2.0) * vol / normW * rs.value;
    Complex L = rankin_L(conj_all(pi.alphas()), pi0.alphas(), Scalar(Surd::S(pl.p))).numeric();
    return std::norm(psi) / std::norm(L);
}

} // namespace

TEST(SpecWeight, UnramifiedExample)
{
    auto w = local_weight_lower(SatakeParams::unramified(1, 1), 0, PlaceData(2, 1));
    EXPECT_EQ(w.tag, WeightCase::unramified);
    ASSERT_TRUE(w.lower_bound.is_rational());
    EXPECT_EQ(w.lower_bound.rational(), make_q(1, 18));
    // normalized value is zeta(2)/zeta(1)
    EXPECT_EQ(w.normalized_lower_bound.rational(), zeta_value(2, 2) / zeta_value(2, 1));
}

TEST(SpecWeight, ConductorExceeds)
{
    auto w = local_weight_lower(SatakeParams::ramified_with(make_q(1, 2)), 2, PlaceData(2, 1));
    EXPECT_EQ(w.tag, WeightCase::conductor_exceeds);
    EXPECT_TRUE(is_zero(w.lower_bound));
    EXPECT_THROW(local_weight_lower(SatakeParams{}, -1, PlaceData(2, 1)), std::invalid_argument);
}

TEST(SpecWeight, Floors)
{
    auto t0 = SatakeParams::unramified(1, 1, 0);
    for (std::int64_t p : {2, 3, 7, 9}) {
        auto w = local_weight_lower(t0, 0, PlaceData(p, 1));
        ASSERT_TRUE(w.floor.is_rational());
        EXPECT_EQ(w.floor.rational(), Rational(1));
        // -1/2 floor at theta = 0 is 1/(1 + p^(-1/2))
        EXPECT_TRUE(exact_equal(w.floor_half, Scalar(1) / (Scalar(1) + Scalar(Surd::S(p)))));
    }
    auto w = local_weight_lower(SatakeParams::unramified(1, 1), 0, PlaceData(2, 1));
    double want = (1 - std::pow(2.0, -1 + 7.0 / 32)) / 0.5;
    EXPECT_NEAR(w.floor.numeric().real(), want, 1e-15);
}

TEST(SpecWeight, UnramifiedValueSitsBelowTheTemperedFloor)
{
    // zeta(2)/zeta(1) = p/(p+1) < 1, so the theta = 0 floor is not a pointwise bound here
    auto w = local_weight_lower(SatakeParams::unramified(1, 1, 0), 0, PlaceData(5, 2));
    EXPECT_FALSE(w.floor_holds);
    auto r = local_weight_lower(SatakeParams::ramified_with(Complex(0.3, 0.2), 0), 1, PlaceData(5, 2));
    EXPECT_TRUE(r.floor_holds);
}

TEST(SpecWeightProperty, MatchesDefinitionOracle)
{
    std::mt19937_64 rng(20261016);
    std::uniform_real_distribution<double> ang(0, 2 * M_PI), rad(0, 1);
    std::uniform_int_distribution<int> pick(0, 4), rr(1, 3);
    const std::int64_t ps[] = {2, 3, 5, 9, 11};
    for (int it = 0; it < 60; ++it) {
        PlaceData pl(ps[pick(rng)], rr(rng));
        Complex b = unit(ang(rng));
        auto pi0 = SatakeParams::unramified(Scalar(b), Scalar(1.0 / b));
        SatakeParams pi;
        if (it % 2) {
            Complex a = unit(ang(rng));
            pi = SatakeParams::unramified(Scalar(a), Scalar(1.0 / a));
        } else {
            double bound = std::pow(static_cast<double>(pl.p), 7.0 / 64);
            pi = SatakeParams::ramified_with(Scalar(std::polar(bound * rad(rng), ang(rng))));
        }
        auto w = local_weight_lower(pi, pi.ramified ? 1 : 0, pl);
        double want = bound_from_definition(pi, pi0, pl);
        EXPECT_NEAR(w.lower_bound.numeric().real(), want, 1e-12 * want) << it;
    }
}

TEST(SpecWeightProperty, NormalizedFloorIncreasesInP)
{
    for (Rational th : {Rational(0), make_q(7, 64), make_q(1, 5)}) {
        double prev = -1;
        for (std::int64_t p : {2, 3, 5, 7, 11, 13, 101, 1009}) {
            auto w = local_weight_lower(SatakeParams::unramified(1, 1, th), 0, PlaceData(p, 1));
            double f = w.floor_half.numeric().real();
            EXPECT_GT(f, prev) << p;
            prev = f;
            if (th == 0) {
                EXPECT_EQ(w.floor.rational(), Rational(1));
            }
        }
    }
    // beyond p0(eps) both floors exceed 1 - eps
    auto w = local_weight_lower(SatakeParams::unramified(1, 1), 0, PlaceData(100003, 1));
    EXPECT_GE(w.floor_half.numeric().real(), 0.9);
    EXPECT_GE(w.floor.numeric().real(), 0.9);
}

TEST(SpecWeightProperty, TrivialEstimateNeverExceedsTrueBound)
{
    std::mt19937_64 rng(7);
    std::uniform_real_distribution<double> ang(0, 2 * M_PI), rad(0, 1);
    for (std::int64_t p : {2, 3, 4, 5, 7, 8, 9, 11}) {
        for (int i = 0; i < 10; ++i) {
            double bound = std::pow(static_cast<double>(p), 7.0 / 64);
            auto pi = SatakeParams::ramified_with(Scalar(std::polar(bound * rad(rng), ang(rng))));
            auto w = local_weight_lower(pi, 1, PlaceData(p, 2));
            EXPECT_LE(w.trivial_lower_bound.numeric().real(), w.lower_bound.numeric().real());
            EXPECT_GE(w.normalized_trivial_bound.numeric().real(), w.floor.numeric().real() * (1 - 1e-14));
        }
    }
}

TEST(SpecWeight, JqLower)
{
    auto q = IdealFactorization::parse("2*3");
    std::vector<std::pair<SatakeParams, int>> tempered{{SatakeParams::unramified(1, 1), 0}, {SatakeParams::ramified_with(1), 1}};
    auto r = jq_lower(tempered, q, 0);
    EXPECT_EQ(r.floor_product.rational(), Rational(1));
    EXPECT_TRUE(r.floor_exceeds_target);
    EXPECT_THROW(jq_lower({tempered[0]}, q), std::invalid_argument);

    auto one = jq_lower({{SatakeParams::unramified(1, 1), 0}}, IdealFactorization::parse("2"));
    EXPECT_NEAR(one.floor_product.numeric().real(), (1 - std::pow(2.0, -1 + 7.0 / 32)) / 0.5, 1e-15);

    auto big = IdealFactorization::parse("10007*10009*10037");
    std::vector<std::pair<SatakeParams, int>> three(3, {SatakeParams::unramified(1, 1), 0});
    auto b = jq_lower(three, big, make_q(7, 64), 0.1);
    EXPECT_NEAR(b.target, 0.729, 1e-15);
    EXPECT_TRUE(b.floor_exceeds_target);
    EXPECT_TRUE(b.floor_half_exceeds_target);
    auto small = jq_lower(three, IdealFactorization::parse("2*3*5"), make_q(7, 64), 0.1);
    EXPECT_FALSE(small.floor_half_exceeds_target);
}

TEST(SpecWeight, PlancherelMass)
{
    for (const char* qs : {"2", "2*3", "2^2*3*5^3", "9*7^2"}) {
        auto q = IdealFactorization::parse(qs);
        for (Rational a : {Rational(1), Rational(2), make_q(3, 5)}) {
            auto r = plancherel_mass(SatakeParams::unramified(a, Rational(1 / a)), q);
            ASSERT_TRUE(r.ratio.is_rational()) << qs;
            EXPECT_EQ(r.ratio.rational(), Rational(1)) << qs;
            EXPECT_EQ(r.mass.rational(), vol_inv_q(q)) << qs;
        }
    }
    // kind (i) at the origin against the Rankin-Selberg factor: L(1)/zeta(2) = 12 for p = 2, alpha = 1
    auto r = plancherel_mass(SatakeParams::unramified(1, 1), IdealFactorization::parse("2"));
    EXPECT_EQ(r.local_integrals[0].rational(), Rational(12));
    EXPECT_EQ(r.vol_inv, Rational(3));
}
