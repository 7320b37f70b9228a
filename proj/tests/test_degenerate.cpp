#include <gtest/gtest.h>

#include "rll/degenerate.hpp"

#include <chrono>

using namespace rll;

namespace {

const GlobalZetaData& stub()
{
    static GlobalZetaData d = GlobalZetaData::from_file(std::string(RLL_DATA_DIR) + "/q_stub.json");
    return d;
}

// small exact data: xi(1+t) = 1/t + 1/2 - t/3 ..., Lambda = xi * 3/4 exp(t/2) truncated
GlobalZetaData toy()
{
    GlobalZetaData d;
    d.xi_residue = 1;
    d.xi_regular = {make_q(1, 2), make_q(-1, 3), make_q(1, 5), make_q(1, 7), make_q(-2, 9), make_q(1, 11), make_q(3, 13), make_q(1, 17)};
    d.xi_at_2 = make_q(1, 2);
    d.xi_at_2_taylor = std::vector<Rational>{make_q(1, 2), make_q(-3, 4), make_q(7, 8), make_q(-1, 1), make_q(1, 1), make_q(-1, 1),
                                             make_q(1, 1), make_q(-1, 1), make_q(1, 1)};
    d.adjoint_L = make_q(3, 4);
    d.lambda_residue = make_q(3, 4);
    d.lambda_regular = {make_q(1, 3), make_q(1, 4), make_q(-1, 5), make_q(1, 6), make_q(1, 8), make_q(-1, 9), make_q(1, 10), make_q(1, 12)};
    d.norm_different = 1;
    return d;
}

ExactCoeff q_coeff(const Rational& x) { return ExactCoeff(LogQ(x)); }

} // namespace

TEST(Degenerate, DataIngest)
{
    const auto& d = stub();
    EXPECT_EQ(d.xi_residue, Rational(1));
    EXPECT_NEAR(d.xi_at_2.get_d(), M_PI / 6, 1e-15);
    EXPECT_GE(d.depth(), 8);
    nlohmann::json j = {{"xi_residue", "1"}, {"xi_regular", {"0.5"}}, {"xi_at_2", "1/2"}, {"lambda_pi0_residue", "2"},
                        {"lambda_pi0_regular", {"1"}}, {"adjoint_L_value", "1"}, {"norm_different", 1}};
    EXPECT_THROW(GlobalZetaData::from_json(j), DataError); // residue mismatch
    j["lambda_pi0_residue"] = "1.0";
    EXPECT_NO_THROW(GlobalZetaData::from_json(j));
    j["xi_at_2"] = "abc";
    EXPECT_THROW(GlobalZetaData::from_json(j), DataError);
    j.erase("xi_at_2");
    EXPECT_THROW(GlobalZetaData::from_json(j), DataError);
    EXPECT_THROW(GlobalZetaData::from_file("/nonexistent/zeta.json"), DataError);
}

TEST(Degenerate, HValuesAtOrigin)
{
    auto q = IdealFactorization::parse("2*3");
    for (int j = 1; j <= 4; ++j) EXPECT_EQ(build_h(j, q).series.at(0, 0), q_coeff(make_q(1, 9))) << j;
    auto h = build_h(1, IdealFactorization::parse("2"));
    EXPECT_EQ(h.series.at(1, 0), ExactCoeff(LogQ(make_q(1, 2)) * LogQ::symbol(2)));
    auto e = build_h(3, IdealFactorization{});
    EXPECT_EQ(e.series.at(0, 0), q_coeff(1));
    for (int d = 1; d <= e.series.order(); ++d)
        for (int i = 0; i <= d; ++i) EXPECT_TRUE(e.series.at(d - i, i).is_zero());
}

TEST(DegenerateProperty, SixConstraintsHoldForConcreteH)
{
    for (const char* qs : {"2", "3^2", "2*3", "4*5^3", "2^2*3*7"}) {
        auto q = IdealFactorization::parse(qs);
        std::array<Series2<ExactCoeff>, 4> h;
        for (int j = 0; j < 4; ++j) h[j] = build_h(j + 1, q).series;
        auto d = symmetry_defects(h);
        for (int k = 0; k < 6; ++k)
            for (auto& x : d[k]) ASSERT_TRUE(x.is_zero()) << qs << " constraint " << k;
    }
}

TEST(Degenerate, GStructure)
{
    auto d = toy();
    auto G = build_G(d, 1, 1);
    EXPECT_EQ(G.poles(), (Poles{{1, 1, 1, 0}}));
    // leading singular coefficient res^2 res_Lambda N(d) / (4 xi(2))
    EXPECT_EQ(G.numerator().at(0, 0), q_coeff(make_q(3, 4) / (4 * make_q(1, 2))));
    auto Gz = build_G(d, -1, 1);
    EXPECT_EQ(Gz.poles(), (Poles{{1, 1, 0, 1}}));
    EXPECT_THROW(build_G(d, 1, 1, 12), DepthError);
}

TEST(Degenerate, LambdaCubeInGh1Alone)
{
    // the lambda^3 part of G h1's numerator at degree 3 is (z+w)^3/6 times res^2 res_L/(4 xi(2)) h1(0,0)
    auto d = toy();
    auto q = IdealFactorization::parse("2");
    auto G = build_G(d, 1, 1);
    auto prod = G * LaurentSeries2<ExactCoeff>(build_h(1, q).series);
    Rational lead = make_q(3, 4) / (4 * make_q(1, 2)) * make_q(1, 4);
    for (int j = 0; j <= 3; ++j) {
        Rational binom = j == 0 || j == 3 ? 1 : 3;
        EXPECT_EQ(prod.numerator().at(3 - j, j).coeff(3), LogQ(lead * binom / 6)) << j;
    }
    EXPECT_THROW(prod.constant_term(), SingularError);
}

TEST(Degenerate, CorrectionTerm)
{
    auto d = toy();
    EXPECT_TRUE(correction_term(d, IdealFactorization{}).limit.is_zero());
    auto s = correction_sum(IdealFactorization::parse("2"));
    LogQ l2 = LogQ::symbol(2);
    EXPECT_EQ(s, LogQ(2) * l2 * l2 * l2);
    // limit = -2 xi*^2 res_L N(d) sum / (xi(2) zeta_q(1)^2)
    for (const char* qs : {"2", "2*3", "5^2*7"}) {
        auto q = IdealFactorization::parse(qs);
        auto c = correction_term(d, q);
        Rational z1 = zeta_q_value(q, 1);
        Rational f = -2 * d.lambda_residue / (d.xi_at_2 * z1 * z1);
        EXPECT_EQ(c.factor, q_coeff(f)) << qs;
        ASSERT_TRUE(c.implied_c_cubed.has_value());
        EXPECT_EQ(*c.implied_c_cubed, q_pow(d.xi_residue, 3) / z1);
    }
}

TEST(Degenerate, LeadingCoefficientExactToyData)
{
    auto d = toy();
    for (const char* qs : {"2", "8", "2*3", "2*3*25"}) {
        auto rep = degenerate_limit(d, IdealFactorization::parse(qs));
        EXPECT_TRUE(rep.singular_part_zero);
        ASSERT_TRUE(rep.exact.c3.is_rational()) << qs;
        EXPECT_EQ(rep.exact.c3.rational(), rep.c3_formula) << qs;
        for (auto& x : rep.higher) EXPECT_TRUE(x.is_zero()) << qs;
    }
}

TEST(Degenerate, ExactEAgreesWithCubicTruncation)
{
    auto d = toy();
    for (const char* qs : {"2", "3^2"}) {
        auto q = IdealFactorization::parse(qs);
        auto rep = degenerate_limit(d, q);
        ExactCoeff e = degenerate_limit_exact_E(d, q);
        for (int k = 0; k <= 3; ++k) {
            LogQ want = k == 0 ? rep.exact.c0 : k == 1 ? rep.exact.c1 : k == 2 ? rep.exact.c2 : rep.exact.c3;
            EXPECT_EQ(e.coeff(k), want) << qs << " k=" << k;
        }
    }
}

TEST(Degenerate, StubDataLeadingCoefficient)
{
    const auto& d = stub();
    std::optional<LogQ> first;
    for (const char* qs : {"2", "8", "2*3", "2*3*25"}) {
        auto t0 = std::chrono::steady_clock::now();
        auto rep = degenerate_limit(d, IdealFactorization::parse(qs));
        double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
        EXPECT_LE(std::abs(rep.numeric.c3 - rep.c3_formula.get_d()), 1e-10) << qs;
        if (!first) first = rep.exact.c3;
        EXPECT_EQ(rep.exact.c3, *first) << qs;
        for (auto& x : rep.higher) EXPECT_TRUE(x.is_zero());
        EXPECT_TRUE(rep.lower_complete);
        std::cerr << qs << ": " << secs << " s\n";
    }
}

TEST(Degenerate, TaylorBounds)
{
    auto h = build_h(1, IdealFactorization::parse("2*3"));
    auto b = taylor_bound_report(h, 0, 0, 1.0);
    EXPECT_LE(b.magnitude, 1.0);
    EXPECT_TRUE(b.within);
    auto e = build_h(2, IdealFactorization{});
    EXPECT_EQ(taylor_bound_report(e, 1, 1, 1.0).magnitude, 0.0);
    // single place: nonzero orders are small against p^(-1) log^2 p scales
    auto s = build_h(1, IdealFactorization::parse("101"));
    auto b11 = taylor_bound_report(s, 1, 1, 1.0);
    double p = 101, lp = std::log(p);
    EXPECT_LE(b11.magnitude, 8 * lp * lp / p);
}
