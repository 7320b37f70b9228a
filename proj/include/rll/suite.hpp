#pragma once

#include "degenerate.hpp"
#include "specweight.hpp"

#include <chrono>
#include <functional>
#include <random>
#include <sstream>
#include <string>
#include <vector>

namespace rll::suite {

inline constexpr std::uint64_t kDefaultSeed = 20240611;

// pinned tolerances
inline constexpr double kWhittakerSumRelTol = 1e-10;
inline constexpr double kLeadingTol = 1e-10;
inline constexpr double kRegOracleTol = 1e-10;
inline constexpr double kCrossBackendRelTol = 1e-12;
// frozen constants, fixed on the first full run
inline constexpr double kTaylorC = 6.0;
inline constexpr double kRegBoundC = 4.1;

struct Options {
    std::uint64_t seed = kDefaultSeed;
    int fuzz = 500;
    int broken = 50;
    bool break_symmetry = false;
    std::string data_path;
};

struct Outcome {
    int id = 0;
    std::string key;
    std::string title;
    bool pass = false;
    std::string detail; // deterministic given the options; timing is kept apart
    double seconds = 0;
    double limit_seconds = 0; // 0 when the criterion has no runtime limit
};

namespace detail {

using clock = std::chrono::steady_clock;

inline double since(clock::time_point t0) { return std::chrono::duration<double>(clock::now() - t0).count(); }

inline double rel_err(Complex a, Complex b) { return std::abs(a - b) / std::max(1e-300, std::max(std::abs(a), std::abs(b))); }

inline std::string fmt(double x)
{
    std::ostringstream os;
    os.precision(3);
    os << x;
    return os.str();
}

inline SatakeParams rational_pair(const Rational& a) { return SatakeParams::unramified(Scalar(a), Scalar(Rational(1 / a))); }

inline SatakeParams numeric_copy(const SatakeParams& pi)
{
    SatakeParams n = pi;
    n.a1 = Scalar(pi.a1.numeric());
    n.a2 = Scalar(pi.a2.numeric());
    return n;
}

} // namespace detail

/** Closed form of the weighted Whittaker integral against its truncated sum. */
inline Outcome whittaker_sum(const Options& o)
{
    Outcome r{1, "lemma43", "weighted Whittaker integral: closed form vs 10^4-term sum", false, "", 0};
    auto t0 = detail::clock::now();
    std::mt19937_64 g(o.seed);
    std::uniform_real_distribution<double> ang(0, 2 * M_PI), sd(0, 1);
    std::uniform_int_distribution<int> pick(0, 4);
    const std::int64_t ps[] = {2, 3, 5, 9, 11};
    double worst = 0;
    bool ok = true;
    for (int t = 0; t < 100; ++t) {
        PlaceData pl(ps[pick(g)], 0);
        auto pi = SatakeParams::unramified(Scalar(std::polar(1.0, ang(g))), Scalar(std::polar(1.0, ang(g))));
        Scalar s(sd(g));
        Complex c = weighted_integral_closed(pi, pl, s).numeric();
        auto orc = weighted_integral_oracle(pi, pl, s, 10000);
        worst = std::max(worst, detail::rel_err(c, orc.value));
    }
    ok = worst <= kWhittakerSumRelTol;
    Scalar spot = weighted_integral_closed(SatakeParams::unramified(1, 1), PlaceData(2, 0), Scalar(0));
    bool spot_ok = spot.is_rational() && spot.rational() == 12;
    r.seconds = detail::since(t0);
    r.limit_seconds = 5;
    r.pass = ok && spot_ok && r.seconds < r.limit_seconds;
    r.detail = "max rel err " + detail::fmt(worst) + " over 100 draws (tol 1e-10); exact spot p=2 alpha=(1,1) s=0 -> " + spot.str();
    return r;
}

/** Local zeta integrals: closed forms equal the stratum oracle as rational functions. */
inline Outcome psi_grid(const Options&)
{
    Outcome r{2, "psi", "local zeta integrals (i)-(iv): closed form == oracle over the grid", false, "", 0};
    auto t0 = detail::clock::now();
    int n = 0, bad = 0;
    std::string first_bad;
    for (int k = 0; k < 4; ++k)
        for (std::int64_t p : {2, 3, 5, 9})
            for (int rr = 1; rr <= 3; ++rr)
                for (Rational a : {Rational(1), make_q(3, 2), make_q(5, 4)}) {
                    PlaceData pl(p, rr);
                    auto kind = static_cast<ZetaKind>(k);
                    auto pi0 = detail::rational_pair(a);
                    ++n;
                    if (!(psi_closed(kind, pl, pi0).value == psi_oracle(kind, pl, pi0).value)) {
                        if (!bad++) first_bad = std::string(kind_name(kind)) + " p=" + std::to_string(p) + " r=" + std::to_string(rr);
                    }
                }
    r.seconds = detail::since(t0);
    r.limit_seconds = 30;
    r.pass = bad == 0 && r.seconds < r.limit_seconds;
    r.detail = std::to_string(n - bad) + "/" + std::to_string(n) + " exact matches" + (bad ? " (first mismatch " + first_bad + ")" : "");
    return r;
}

/** Leading term of the kind-(iv) correction factor E. */
inline Outcome kind4_correction(const Options&, int K = kDefaultDepth)
{
    Outcome r{3, "kind4", "kind (iv) correction: leading term 8zw(z+w) zeta^3(1) log^3 p / p^(r+1)", false, "", 0};
    auto t0 = detail::clock::now();
    int n = 0, bad = 0;
    for (std::int64_t p : {2, 3, 4, 5, 9})
        for (int rr = 1; rr <= 3; ++rr) {
            ++n;
            PlaceData pl(p, rr);
            auto e = ls_from_rational<ExactCoeff>(E_local(pl), K);
            LogQ l = LogQ::log_of(p);
            ExactCoeff lead(LogQ(8 * q_pow(zeta_value(p, 1), 3) / q_pow(Rational(static_cast<long>(p)), rr + 1)) * l * l * l);
            bool ok = e.is_regular() && e.numerator().order() >= K;
            for (int d = 0; d <= 3 && ok; ++d)
                for (int j = 0; j <= d; ++j) {
                    ExactCoeff want = d == 3 && (j == 1 || j == 2) ? lead : ExactCoeff();
                    if (!(e.coeff(d - j, j) == want)) ok = false;
                }
            // the remainder starts at degree 4 and is known through depth K, i.e. K - 3 orders past the leading term
            bool nonzero_tail = false;
            for (int j = 0; j <= 4; ++j) nonzero_tail |= !e.coeff(4 - j, j).is_zero();
            if (!ok || !nonzero_tail) ++bad;
        }
    r.seconds = detail::since(t0);
    r.pass = bad == 0;
    r.detail = std::to_string(n - bad) + "/" + std::to_string(n) + " places exact (LogQ), depth " + std::to_string(K);
    return r;
}

/** Residue cancellation over fuzzed symmetric quadruples, plus broken controls. */
inline Outcome residue_cancellation(const Options& o)
{
    Outcome r{4, "lemma44", "residue cancellation: fuzzed quadruples have zero singular part", false, "", 0};
    auto t0 = detail::clock::now();
    CancellationFuzzer fz(o.seed, 8);
    int good = 0, caught = 0;
    int n_sym = o.break_symmetry ? 0 : o.fuzz;
    int n_broken = o.break_symmetry ? o.fuzz : o.broken;
    for (int t = 0; t < n_sym; ++t) {
        auto c = fz.draw();
        auto comb = four_term(c.G, CancellationFuzzer::as_laurent(c.h));
        if (comb.singular_part().is_zero() && comb.is_regular()) ++good;
    }
    for (int t = 0; t < n_broken; ++t) {
        auto c = fz.draw(true);
        auto comb = four_term(c.G, CancellationFuzzer::as_laurent(c.h));
        if (!comb.singular_part().is_zero()) ++caught;
    }
    r.seconds = detail::since(t0);
    if (o.break_symmetry) {
        // every quadruple violates one constraint, so cancellation must fail on each
        r.pass = false;
        r.detail = "symmetry broken on purpose: " + std::to_string(caught) + "/" + std::to_string(n_broken) +
                   " quadruples keep a nonzero singular part (expected failure); seed " + std::to_string(o.seed);
        return r;
    }
    r.limit_seconds = 20;
    r.pass = good == n_sym && caught == n_broken && r.seconds < r.limit_seconds;
    r.detail = std::to_string(good) + "/" + std::to_string(n_sym) + " symmetric cancel to depth 8, " + std::to_string(caught) + "/" +
               std::to_string(n_broken) + " broken keep poles; seed " + std::to_string(o.seed);
    return r;
}

/** Leading log^3 coefficient of the degenerate limit from the ingested zeta data. */
inline Outcome leading_coefficient(const Options& o)
{
    Outcome r{5, "leading", "degenerate limit: c3 == xi*^3 N(d) Lambda(1,Ad) / (3 xi(2)), q-independent", false, "", 0};
    auto t0 = detail::clock::now();
    try {
        auto data = GlobalZetaData::from_file(o.data_path);
        double worst = 0;
        bool same = true, higher_zero = true;
        std::optional<LogQ> first;
        for (std::int64_t n : {2, 8, 6, 150}) {
            auto rep = degenerate_limit(data, rational_ideal(n));
            worst = std::max(worst, std::abs(rep.numeric.c3 - rep.c3_formula.get_d()));
            if (!first) first = rep.exact.c3;
            same &= rep.exact.c3 == *first;
            for (auto& x : rep.higher) higher_zero &= x.is_zero();
        }
        r.seconds = detail::since(t0);
        r.pass = worst <= kLeadingTol && same && higher_zero;
        r.detail = "|c3 - formula| max " + detail::fmt(worst) + " (tol 1e-10) over q in {2, 8, 6, 150}; identical c3: " +
                   (same ? "yes" : "no") + "; lambda^4+ vanish: " + (higher_zero ? "yes" : "no");
    } catch (const std::exception& e) {
        r.pass = false;
        r.detail = std::string("error: ") + e.what();
    }
    return r;
}

inline const std::vector<std::string>& taylor_ideals()
{
    static const std::vector<std::string> v{"2",         "3",           "4",         "101",           "2^3",
                                            "9^2",       "2*3",         "4*3^2",     "2*101*103",     "2*3*5",
                                            "4*9*5",     "2*3*5*7",     "8*3^2*5*7", "2*3*5*7*11",    "2^5*3*5",
                                            "25*49*121", "2*3*5*7*11*13", "4*27*25*7*11*13", "8*9*125*49*11*13", "1009*1013*1019*1021*1031*1033"};
    return v;
}

/** max over ideals, j and m+n <= 3 of |a| / omega^(m+n). */
inline double taylor_worst_ratio(std::string* where = nullptr)
{
    double worst = 0;
    for (auto& qs : taylor_ideals()) {
        auto q = IdealFactorization::parse(qs);
        for (int j = 1; j <= 4; ++j) {
            auto h = build_h(j, q, 3);
            for (int d = 0; d <= 3; ++d)
                for (int n = 0; n <= d; ++n) {
                    auto b = taylor_bound_report(h, d - n, n, kTaylorC);
                    double ratio = b.magnitude / b.omega_power;
                    if (ratio > worst) {
                        worst = ratio;
                        if (where) *where = "q=" + qs + " h" + std::to_string(j) + " a(" + std::to_string(d - n) + "," + std::to_string(n) + ")";
                    }
                }
        }
    }
    return worst;
}

/** Taylor coefficients of h_j against omega(q)^(m+n). */
inline Outcome taylor(const Options&)
{
    Outcome r{6, "taylor", "Taylor coefficients of h_j: |a_mn| <= C omega(q)^(m+n), C frozen", false, "", 0};
    auto t0 = detail::clock::now();
    std::string where;
    double worst = taylor_worst_ratio(&where);
    r.seconds = detail::since(t0);
    r.pass = worst <= kTaylorC;
    r.detail = std::to_string(taylor_ideals().size()) + " ideals, m+n <= 3, j = 1..4: worst ratio " + detail::fmt(worst) + " at " + where +
               " (C = " + detail::fmt(kTaylorC) + ")";
    return r;
}

/** Regularized local integral: both closed forms, the oracle, and the frozen bound. */
inline Outcome regularized_integral(const Options& o)
{
    Outcome r{7, "lemma52", "regularized local integral: closed forms, oracle, frozen bound", false, "", 0};
    auto t0 = detail::clock::now();
    std::mt19937_64 g(o.seed);
    // exact agreement of the two closed forms
    int exact_ok = 0, exact_n = 0;
    {
        std::uniform_int_distribution<int> num(-6, 6), den(1, 6);
        const std::int64_t ps[] = {2, 3, 5, 7};
        const Rational zs[] = {Rational(0), make_q(1, 2), Rational(1)};
        for (int t = 0; exact_n < 50; ++t) {
            PlaceData pl(ps[t % 4], 1 + t % 5);
            Rational a1 = make_q(num(g), den(g)), a2 = t % 7 == 0 ? a1 : make_q(num(g), den(g));
            auto pi = SatakeParams::unramified(Scalar(a1), Scalar(a2), 4);
            Scalar z(zs[t % 3]);
            Scalar u = p_pow(pl.p, Scalar(make_q(1, 2)) + z);
            if (modulus(Scalar(a1) * u) >= 1 || modulus(Scalar(a2) * u) >= 1) continue;
            ++exact_n;
            if (exact_equal(reg_local_closed(pi, pl, z, RegForm::difference), reg_local_closed(pi, pl, z, RegForm::four_term))) ++exact_ok;
        }
    }
    // closed form against the oracle
    double worst_oracle = 0;
    {
        std::uniform_real_distribution<double> ang(0, 2 * M_PI), re(0, 0.3), im(-2, 2);
        const std::int64_t ps[] = {2, 3, 5};
        for (int t = 0; t < 100; ++t) {
            PlaceData pl(ps[t % 3], 1 + t % 6);
            auto pi = SatakeParams::unramified(Scalar(std::polar(1.0, ang(g))), Scalar(std::polar(1.0, ang(g))));
            Scalar z(Complex(re(g), im(g)));
            Complex c = reg_local_closed(pi, pl, z).numeric();
            auto orc = reg_local_oracle(pi, pl, z);
            worst_oracle = std::max(worst_oracle, std::abs(c - orc.value) / std::max(1.0, std::abs(c)));
        }
    }
    // frozen bound constant
    double worst_bound = 0;
    {
        std::uniform_real_distribution<double> ang(0, 2 * M_PI), re(0, 0.3), im(-3, 3);
        for (std::int64_t p : {2, 3, 5})
            for (int rr = 1; rr <= 6; ++rr) {
                PlaceData pl(p, rr);
                for (int t = 0; t < 200; ++t) {
                    bool corner = t == 0;
                    auto pi = corner ? SatakeParams::unramified(-1, -1)
                                     : SatakeParams::unramified(Scalar(std::polar(1.0, ang(g))), Scalar(std::polar(1.0, ang(g))));
                    Scalar z = corner ? Scalar(0) : Scalar(Complex(re(g), t % 3 ? im(g) : 0.0));
                    worst_bound = std::max(worst_bound, std::abs(reg_local_closed(pi, pl, z).numeric()) / reg_local_bound_shape(pi, pl, z));
                }
            }
    }
    r.seconds = detail::since(t0);
    r.pass = exact_ok == exact_n && worst_oracle <= kRegOracleTol && worst_bound <= kRegBoundC;
    r.detail = "forms agree exactly " + std::to_string(exact_ok) + "/" + std::to_string(exact_n) + "; oracle max err " +
               detail::fmt(worst_oracle) + " (tol 1e-10, 100 draws); bound ratio max " + detail::fmt(worst_bound) + " (C = " +
               detail::fmt(kRegBoundC) + ")";
    return r;
}

/** Local weight bound, floors, Plancherel mass, and the conductor condition. */
inline Outcome specweight(const Options&)
{
    Outcome r{8, "specweight", "local weight: exact unramified bound, floor, Plancherel mass, conductor", false, "", 0};
    auto t0 = detail::clock::now();
    bool unram = true, floor = true, mass = true, cond = true;
    for (std::int64_t p : {2, 3, 4, 5, 9, 11})
        for (int rr = 1; rr <= 3; ++rr) {
            PlaceData pl(p, rr);
            auto w = local_weight_lower(SatakeParams::unramified(1, 1, 0), 0, pl);
            Rational z1 = zeta_value(p, 1);
            unram &= w.lower_bound.is_rational() && w.lower_bound.rational() == volume_K(pl) * zeta_value(p, 2) / (z1 * z1 * z1);
            floor &= w.floor.is_rational() && w.floor.rational() == 1;
            auto c = local_weight_lower(SatakeParams::ramified_with(make_q(1, 2)), rr + 1, pl);
            cond &= c.tag == WeightCase::conductor_exceeds && is_zero(c.lower_bound);
        }
    for (const char* qs : {"2", "3^2", "2*3", "4*5^2", "2*3*5", "9*7^2*11^3"})
        for (Rational a : {Rational(1), make_q(3, 2), make_q(5, 4)}) {
            auto q = IdealFactorization::parse(qs);
            auto pm = plancherel_mass(detail::rational_pair(a), q);
            mass &= pm.mass.is_rational() && pm.mass.rational() == vol_inv_q(q);
        }
    r.seconds = detail::since(t0);
    r.pass = unram && floor && mass && cond;
    auto yn = [](bool b) { return b ? "yes" : "no"; };
    r.detail = std::string("unramified == vol zeta(2)/zeta(1)^3: ") + yn(unram) + "; floor == 1 at theta=0: " + yn(floor) +
               "; Plancherel mass == vol^-1(K_q): " + yn(mass) + "; cond_exp > r gives 0: " + yn(cond);
    return r;
}

/** Numeric backend against exact mode on rational inputs. */
inline Outcome cross_backend(const Options& o)
{
    Outcome r{9, "crossbackend", "numeric mode agrees with exact mode on rational inputs", false, "", 0};
    auto t0 = detail::clock::now();
    double worst = 0;
    int n = 0;
    std::string where;
    int poles = 0, pole_mismatch = 0;
    // both backends must agree on where a value is undefined as well as on values
    auto cmp = [&](const std::function<Scalar()>& exact, const std::function<Scalar()>& num, const std::string& what) {
        ++n;
        std::optional<Scalar> a, b;
        // a pole or a divergent series counts as "undefined" on that backend
        try {
            a = exact();
        } catch (const PoleError&) {
        } catch (const std::domain_error&) {
        }
        try {
            b = num();
        } catch (const PoleError&) {
        } catch (const std::domain_error&) {
        }
        if (!a || !b) {
            if (!a && !b) ++poles;
            else ++pole_mismatch;
            return;
        }
        double e = detail::rel_err(a->numeric(), b->numeric());
        if (e > worst) {
            worst = e;
            where = what;
        }
    };
    std::mt19937_64 g(o.seed);
    std::uniform_int_distribution<int> num(1, 9), den(1, 9);
    for (int t = 0; t < 40; ++t) {
        const std::int64_t ps[] = {2, 3, 5, 9, 11};
        PlaceData pl(ps[t % 5], 1 + t % 3);
        Rational a = make_q(num(g), den(g));
        if (a * a >= pl.p) a = 1 / a;
        auto pi = detail::rational_pair(a);
        auto pn = detail::numeric_copy(pi);
        Scalar s(make_q(t % 3, 2));
        cmp([&] { return weighted_integral_closed(pi, pl, s); }, [&] { return weighted_integral_closed(pn, pl, Scalar(s.numeric())); },
            "weighted integral");
        cmp([&] { return whittaker_norm_sq(pi, pl); }, [&] { return whittaker_norm_sq(pn, pl); }, "whittaker norm");
        auto pi2 = detail::rational_pair(make_q(num(g), 9));
        if (modulus(pi2.a1) * modulus(pi.a1) < std::sqrt(static_cast<double>(pl.p)) &&
            modulus(pi2.a2) * modulus(pi.a2) < std::sqrt(static_cast<double>(pl.p)) &&
            modulus(pi2.a1) * modulus(pi.a2) < std::sqrt(static_cast<double>(pl.p)) &&
            modulus(pi2.a2) * modulus(pi.a1) < std::sqrt(static_cast<double>(pl.p)))
            cmp([&] { return rs_local_value(pi, pi2, pl); }, [&] { return rs_local_value(pn, detail::numeric_copy(pi2), pl); }, "Rankin-Selberg");
        Scalar z(make_q(1, 2));
        Scalar u = p_pow(pl.p, Scalar(make_q(1, 2)) + z);
        if (modulus(pi.a1 * u) < 1 && modulus(pi.a2 * u) < 1)
            cmp([&] { return reg_local_closed(pi, pl, z); }, [&] { return reg_local_closed(pn, pl, Scalar(z.numeric())); }, "regularized local");
        auto ram = SatakeParams::ramified_with(Scalar(make_q(num(g), 10)));
        cmp([&] { return local_weight_lower(ram, 1, pl).lower_bound; },
            [&] { return local_weight_lower(detail::numeric_copy(ram), 1, pl).lower_bound; }, "local weight");
        for (int k = 0; k < 4; ++k) {
            RF f = psi_closed(static_cast<ZetaKind>(k), pl, pi).value;
            Scalar zz(make_q(3 + t % 2, 2)), ww = zz;
            cmp([&] { return rf_eval(f, zz, ww); }, [&] { return rf_eval(f, Scalar(zz.numeric()), Scalar(ww.numeric())); },
                std::string("psi ") + kind_name(static_cast<ZetaKind>(k)));
        }
    }
    // Laurent pipeline: complex coefficients against the symbolic ones evaluated
    for (std::int64_t p : {2, 3, 5}) {
        PlaceData pl(p, 2);
        auto e = ls_from_rational<ExactCoeff>(E_local(pl), 6);
        auto c = ls_from_rational<Complex>(E_local(pl), 6);
        for (int d = 0; d <= 6; ++d)
            for (int j = 0; j <= d; ++j) {
                Complex ex = e.coeff(d - j, j).value(0), nu = c.coeff(d - j, j);
                if (std::abs(ex) == 0 && std::abs(nu) < 1e-300) continue;
                cmp([&] { return Scalar(ex); }, [&] { return Scalar(nu); }, "Laurent E coefficient");
            }
    }
    r.seconds = detail::since(t0);
    r.pass = worst <= kCrossBackendRelTol && pole_mismatch == 0;
    r.detail = std::to_string(n) + " comparisons (" + std::to_string(poles) + " undefined on both backends, " + std::to_string(pole_mismatch) +
               " mismatches), max rel err " + detail::fmt(worst) + (where.empty() ? "" : " (" + where + ")") +
               " (tol 1e-12)";
    return r;
}

struct Entry {
    std::string key;
    std::function<Outcome(const Options&)> run;
};

inline const std::vector<Entry>& registry()
{
    static const std::vector<Entry> v{
        {"lemma43", whittaker_sum},
        {"psi", psi_grid},
        {"kind4", [](const Options& o) { return kind4_correction(o); }},
        {"lemma44", residue_cancellation},
        {"leading", leading_coefficient},
        {"taylor", taylor},
        {"lemma52", regularized_integral},
        {"specweight", specweight},
        {"crossbackend", cross_backend},
    };
    return v;
}

inline std::vector<std::string> suite_names()
{
    std::vector<std::string> n;
    for (auto& e : registry()) n.push_back(e.key);
    return n;
}

/** Runs one named criterion, or all of them for "all". */
inline std::vector<Outcome> run(const std::string& which, const Options& o)
{
    std::vector<Outcome> out;
    bool any = false;
    for (auto& e : registry())
        if (which == "all" || which == e.key) {
            any = true;
            out.push_back(e.run(o));
        }
    if (!any) throw std::invalid_argument("unknown suite '" + which + "'");
    return out;
}

} // namespace rll::suite
