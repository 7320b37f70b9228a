#pragma once

#include "cancellation.hpp"
#include "laurent.hpp"
#include "zetaint.hpp"

#include <json.hpp>

#include <fstream>
#include <optional>
#include <string>
#include <vector>

namespace rll {

struct DataError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/** \brief Global Laurent data for xi and Lambda(s, pi0 x pi0~), read from a JSON document.
 *
 * xi(1 + t) = xi_residue / t + sum_k xi_regular[k] t^k, and likewise for Lambda.
 * The optional xi_at_2_taylor lists xi(2 + t) = sum_k c_k t^k; without it only
 * xi(2) is known and the lower coefficients of the limit are marked incomplete.
 */
struct GlobalZetaData {
    Rational xi_residue;
    std::vector<Rational> xi_regular;
    Rational xi_at_2;
    std::optional<std::vector<Rational>> xi_at_2_taylor;
    Rational lambda_residue;
    std::vector<Rational> lambda_regular;
    Rational adjoint_L;
    long norm_different = 1;

    // number of regular coefficients available everywhere it matters
    int depth() const
    {
        size_t d = std::min(xi_regular.size(), lambda_regular.size());
        if (xi_at_2_taylor) d = std::min(d, xi_at_2_taylor->size() > 0 ? xi_at_2_taylor->size() - 1 : 0);
        return static_cast<int>(d);
    }

    void validate(double tol = 1e-12) const
    {
        if (xi_residue <= 0) throw DataError("xi_residue must be positive");
        if (xi_at_2 <= 0) throw DataError("xi_at_2 must be positive");
        if (norm_different < 1) throw DataError("norm_different must be a positive integer");
        Rational want = xi_residue * adjoint_L;
        double err = std::abs(Rational(lambda_residue - want).get_d());
        if (err > tol * std::max(1.0, std::abs(want.get_d())))
            throw DataError("lambda_pi0_residue differs from xi_residue * adjoint_L_value by " + std::to_string(err));
        if (xi_at_2_taylor && (xi_at_2_taylor->empty() || (*xi_at_2_taylor)[0] != xi_at_2))
            throw DataError("xi_at_2_taylor[0] must equal xi_at_2");
    }

    static GlobalZetaData from_json(const nlohmann::json& j, double tol = 1e-12)
    {
        auto num = [&](const char* key) -> Rational {
            if (!j.contains(key)) throw DataError(std::string("missing key '") + key + "'");
            const auto& v = j.at(key);
            try {
                if (v.is_string()) return parse_q(v.get<std::string>());
                if (v.is_number_integer()) return Rational(v.get<long>());
            } catch (const ParseError& e) {
                throw DataError(std::string("key '") + key + "': " + e.what());
            }
            throw DataError(std::string("key '") + key + "' must be a decimal string, \"num/den\" or an integer");
        };
        auto arr = [&](const char* key) {
            if (!j.contains(key) || !j.at(key).is_array()) throw DataError(std::string("missing array '") + key + "'");
            std::vector<Rational> out;
            for (auto& v : j.at(key)) {
                if (!v.is_string()) throw DataError(std::string("entries of '") + key + "' must be strings");
                try {
                    out.push_back(parse_q(v.get<std::string>()));
                } catch (const ParseError& e) {
                    throw DataError(std::string("array '") + key + "': " + e.what());
                }
            }
            return out;
        };
        if (!j.is_object()) throw DataError("zeta data must be a JSON object");
        GlobalZetaData d;
        d.xi_residue = num("xi_residue");
        d.xi_regular = arr("xi_regular");
        d.xi_at_2 = num("xi_at_2");
        if (j.contains("xi_at_2_taylor")) d.xi_at_2_taylor = arr("xi_at_2_taylor");
        d.lambda_residue = num("lambda_pi0_residue");
        d.lambda_regular = arr("lambda_pi0_regular");
        d.adjoint_L = num("adjoint_L_value");
        Rational nd = num("norm_different");
        if (!is_integer(nd)) throw DataError("norm_different must be an integer");
        d.norm_different = nd.get_num().get_si();
        d.validate(tol);
        return d;
    }

    static GlobalZetaData from_file(const std::string& path, double tol = 1e-12)
    {
        std::ifstream in(path);
        if (!in) throw DataError("cannot open zeta data file '" + path + "'");
        nlohmann::json j;
        try {
            in >> j;
        } catch (const nlohmann::json::exception& e) {
            throw DataError("malformed zeta data '" + path + "': " + e.what());
        }
        return from_json(j, tol);
    }
};

/** \brief h_j(z, w) = prod over places of q of its local factor, as a regular series. */
struct HFunction {
    int which = 1;
    IdealFactorization q;
    Series2<ExactCoeff> series;
};

inline HFunction build_h(int which, const IdealFactorization& q, int K = kDefaultDepth)
{
    if (which < 1 || which > 4) throw std::invalid_argument("h index must be 1..4");
    Series2<ExactCoeff> s = Series2<ExactCoeff>::constant(ExactCoeff(1), K);
    for (auto& pl : q.places()) {
        auto loc = ls_from_rational<ExactCoeff>(h_local(which, pl), K);
        s = s * loc.numerator();
    }
    return {which, q, s};
}

/** \brief |a_{m,n}| of h against omega(q)^(m+n). */
struct TaylorBound {
    int m = 0, n = 0;
    LogQ coeff;
    double magnitude = 0;
    double omega_power = 0;
    double C = 0;
    bool within = true;
};

inline TaylorBound taylor_bound_report(const HFunction& h, int m, int n, double C)
{
    TaylorBound b;
    b.m = m;
    b.n = n;
    if (m + n > h.series.order()) throw DepthError("Taylor coefficient beyond the expansion depth");
    ExactCoeff a = h.series.at(m, n);
    if (a.degree() > 0) throw std::logic_error("h carries no lambda dependence");
    b.coeff = a.coeff(0);
    b.magnitude = std::abs(b.coeff.value());
    b.omega_power = std::pow(static_cast<double>(h.q.omega()), m + n);
    b.C = C;
    b.within = b.magnitude <= C * b.omega_power;
    return b;
}

namespace detail {

// sum_k c_k (a z + b w)^k as a bivariate series
inline Series2<ExactCoeff> along(const std::vector<Rational>& c, int a, int b, int K)
{
    Series2<ExactCoeff> s(K);
    std::vector<Rational> binom{1};
    for (int d = 0; d <= K && d < static_cast<int>(c.size()); ++d) {
        if (d > 0) {
            std::vector<Rational> nb(d + 1, 0);
            for (int j = 0; j <= d; ++j) nb[j] = (j < d ? binom[j] : Rational(0)) + (j > 0 ? binom[j - 1] : Rational(0));
            binom = nb;
        }
        if (c[d] == 0) continue;
        for (int j = 0; j <= d; ++j)
            s.at(d - j, j) = s.at(d - j, j) + ExactCoeff(LogQ(c[d] * binom[j] * q_pow(Rational(a), d - j) * q_pow(Rational(b), j)));
    }
    return s;
}

} // namespace detail

/** \brief G(sz z, sw w) with G(z,w) = N(q)^(z+w) N(d)^(1+2z+2w) xi(1+2z) xi(1+2w) Lambda(1+z+w) / xi(2+2z+2w).
 *
 * N(q)^(z+w) = exp(lambda (z+w)) with lambda = log N(q) kept formal.
 */
inline LaurentSeries2<ExactCoeff> build_G(const GlobalZetaData& data, int sign_z, int sign_w, int K = kDefaultDepth)
{
    if (static_cast<int>(std::min(data.xi_regular.size(), data.lambda_regular.size())) < K)
        throw DepthError("zeta data has " + std::to_string(std::min(data.xi_regular.size(), data.lambda_regular.size())) +
                         " regular coefficients, depth " + std::to_string(K) + " needs " + std::to_string(K));
    // xi(1+2z) z = res/2 + sum_k g_k 2^k z^(k+1)
    std::vector<Rational> xz(K + 1, 0);
    xz[0] = data.xi_residue / 2;
    for (int k = 0; k + 1 <= K; ++k) xz[k + 1] = data.xi_regular[k] * q_pow(Rational(2), k);
    // Lambda(1+u) u = res + sum_k l_k u^(k+1)
    std::vector<Rational> lu(K + 1, 0);
    lu[0] = data.lambda_residue;
    for (int k = 0; k + 1 <= K; ++k) lu[k + 1] = data.lambda_regular[k];
    // 1/xi(2+2u)
    Series2<ExactCoeff> inv_xi2;
    if (data.xi_at_2_taylor) {
        std::vector<Rational> t(K + 1, 0);
        for (int k = 0; k <= K && k < static_cast<int>(data.xi_at_2_taylor->size()); ++k)
            t[k] = (*data.xi_at_2_taylor)[k] * q_pow(Rational(2), k);
        inv_xi2 = detail::along(t, 1, 1, K).inverse();
    } else {
        inv_xi2 = Series2<ExactCoeff>::constant(ExactCoeff(LogQ(1 / data.xi_at_2)), K);
    }
    Series2<ExactCoeff> N = detail::along(xz, 1, 0, K) * detail::along(xz, 0, 1, K) * detail::along(lu, 1, 1, K) * inv_xi2;
    N = N * Series2<ExactCoeff>::exp_linear(ExactCoeff::lambda(), 1, 1, K);
    if (data.norm_different != 1) {
        ExactCoeff two_log_d = ExactCoeff(LogQ(2) * LogQ::log_of(data.norm_different));
        N = (N * Series2<ExactCoeff>::exp_linear(two_log_d, 1, 1, K)).scaled(ExactCoeff(LogQ(Rational(data.norm_different))));
    }
    LaurentSeries2<ExactCoeff> G(N, Poles{{1, 1, 1, 0}});
    return G.flipped(sign_z < 0, sign_w < 0);
}

/** \brief sum over places of q of zeta_v(1)^3 log^3 p / p^(r+1). */
inline LogQ correction_sum(const IdealFactorization& q)
{
    LogQ s;
    for (auto& pl : q.places()) {
        LogQ l = LogQ::log_of(pl.p);
        s = s + LogQ(q_pow(zeta_value(pl.p, 1), 3) / q_pow(Rational(static_cast<long>(pl.p)), pl.r + 1)) * l * l * l;
    }
    return s;
}

struct CorrectionReport {
    LogQ sum;          // sum_v zeta_v(1)^3 log^3 p / p^(r+1)
    ExactCoeff limit;  // lim G(-z,-w) h4 8zw(z+w) * sum
    ExactCoeff factor; // lim G(-z,-w) h4 8zw(z+w)
    std::optional<Rational> implied_c_cubed;
};

/** \brief The limit of G(-z,-w) h4(z,w) 8 z w (z+w) sum_v ..., from the Laurent expansion. */
inline CorrectionReport correction_term(const GlobalZetaData& data, const IdealFactorization& q, int K = kDefaultDepth)
{
    CorrectionReport r;
    r.sum = correction_sum(q);
    auto G = build_G(data, -1, -1, K);
    auto h4 = build_h(4, q, K);
    Series2<ExactCoeff> cubic = Series2<ExactCoeff>::constant(ExactCoeff(8), K).times_divisor(0).times_divisor(1).times_divisor(2);
    auto prod = G * LaurentSeries2<ExactCoeff>(h4.series) * LaurentSeries2<ExactCoeff>(cubic.truncated(K));
    r.factor = prod.constant_term();
    r.limit = r.factor * ExactCoeff(r.sum);
    // the displayed form -2 c^3 Lambda(1,Ad) N(d) / (xi(2) zeta_q(1)) * sum fixes c^3
    if (r.factor.degree() == 0 && r.factor.coeff(0).is_rational() && data.adjoint_L != 0) {
        Rational f = r.factor.coeff(0).rational();
        r.implied_c_cubed = -f * data.xi_at_2 * zeta_q_value(q, 1) / (2 * data.adjoint_L * Rational(data.norm_different));
    }
    return r;
}

/** \brief Normalized coefficients of the limit, c3 lambda^3 + ... + c0. */
struct DegenerateReport {
    CubicPolynomial<LogQ> exact;
    CubicPolynomial<double> numeric;
    std::vector<LogQ> higher;      // lambda^4 and above; must vanish
    bool singular_part_zero = false;
    bool lower_complete = true;    // false when xi(2+2u) was known only at u = 0
    Rational normalization;        // zeta_q(1)^2
    CorrectionReport correction;
    Rational c3_formula;           // xi*^3 N(d) Lambda(1,Ad) / (3 xi(2))
    int depth = kDefaultDepth;
};

inline LaurentSeries2<ExactCoeff> four_term_combination(const GlobalZetaData& data, const IdealFactorization& q, int K)
{
    auto G = build_G(data, 1, 1, K);
    std::array<LaurentSeries2<ExactCoeff>, 4> h;
    for (int j = 0; j < 4; ++j) h[j] = LaurentSeries2<ExactCoeff>(build_h(j + 1, q, K).series);
    auto comb = four_term(G, h);
    comb.require_depth(0);
    return comb;
}

inline DegenerateReport degenerate_limit(const GlobalZetaData& data, const IdealFactorization& q, int K = kDefaultDepth)
{
    DegenerateReport rep;
    rep.depth = K;
    auto comb = four_term_combination(data, q, K);
    rep.singular_part_zero = comb.singular_part().is_zero();
    if (!rep.singular_part_zero) throw SingularError("four-term combination has a nonzero singular part: " + comb.str());
    rep.correction = correction_term(data, q, K);
    ExactCoeff lim = comb.constant_term() - rep.correction.limit;
    Rational z1 = zeta_q_value(q, 1);
    rep.normalization = z1 * z1;
    LogQ nrm(rep.normalization);
    LogQ* out[4] = {&rep.exact.c0, &rep.exact.c1, &rep.exact.c2, &rep.exact.c3};
    double* num[4] = {&rep.numeric.c0, &rep.numeric.c1, &rep.numeric.c2, &rep.numeric.c3};
    for (int k = 0; k < 4; ++k) {
        *out[k] = lim.coeff(k) * nrm;
        *num[k] = out[k]->value();
    }
    for (int k = 4; k <= lim.degree(); ++k) rep.higher.push_back(lim.coeff(k) * nrm);
    rep.lower_complete = data.xi_at_2_taylor.has_value();
    rep.c3_formula = q_pow(data.xi_residue, 3) * Rational(data.norm_different) * data.adjoint_L / (3 * data.xi_at_2);
    return rep;
}

/** \brief Same limit with the exact factor prod_v (1 - E_v) in place of its cubic truncation. */
inline ExactCoeff degenerate_limit_exact_E(const GlobalZetaData& data, const IdealFactorization& q, int K = kDefaultDepth)
{
    auto G = build_G(data, 1, 1, K);
    std::array<LaurentSeries2<ExactCoeff>, 4> h;
    for (int j = 0; j < 3; ++j) h[j] = LaurentSeries2<ExactCoeff>(build_h(j + 1, q, K).series);
    Series2<ExactCoeff> h4 = build_h(4, q, K).series;
    for (auto& pl : q.places()) {
        RF oneMinusE = RF(Rational(1), pl.p) - E_local(pl);
        h4 = h4 * ls_from_rational<ExactCoeff>(oneMinusE, K).numerator();
    }
    h[3] = LaurentSeries2<ExactCoeff>(h4);
    Rational z1 = zeta_q_value(q, 1);
    return four_term(G, h).limit_at_origin() * ExactCoeff(LogQ(z1 * z1));
}

} // namespace rll
