// rll: command-line front end for the verification engine.
//
// Exit codes: 0 pass, 1 verification failure, 2 usage or data error.

#include "rll/suite.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <iostream>
#include <sstream>

#ifndef RLL_DEFAULT_DATA
#define RLL_DEFAULT_DATA "data/q_stub.json"
#endif

using nlohmann::json;
using namespace rll;

namespace {

struct UsageError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

enum class Mode { exact, numeric };

struct RunConfig {
    std::string format = "pretty";
    std::uint64_t seed = suite::kDefaultSeed;
    Mode mode = Mode::exact;
    double tol = 1e-10;
    int depth = kDefaultDepth;
    bool timing = false;

    // psi
    std::string kind = "all";
    std::int64_t p = 2;
    int r = 1;
    std::string pi0 = "1,1";
    std::string at;
    bool expand = false;
    int cutoff = 3;

    // degenerate
    std::vector<std::string> q{"2"};
    bool rational_q = false;
    std::string data = RLL_DEFAULT_DATA;

    // verify
    std::string suite_name = "all";
    int fuzz = 500;
    int broken = 50;
    bool break_symmetry = false;
};

std::vector<std::string> split(const std::string& s, char sep)
{
    std::vector<std::string> out;
    std::stringstream ss(s);
    std::string t;
    while (std::getline(ss, t, sep)) out.push_back(t);
    if (!s.empty() && s.back() == sep) out.emplace_back();
    return out;
}

Rational parse_rational_arg(const std::string& s, const char* what)
{
    try {
        return parse_q(s);
    } catch (const ParseError& e) {
        throw UsageError(std::string(what) + ": " + e.what() + " (expected a decimal or num/den)");
    }
}

SatakeParams parse_pi0(const std::string& s)
{
    auto t = split(s, ',');
    if (t.size() != 2) throw UsageError("--pi0 expects two Satake parameters 'a1,a2'");
    Rational a1 = parse_rational_arg(t[0], "--pi0"), a2 = parse_rational_arg(t[1], "--pi0");
    return SatakeParams::unramified(Scalar(a1), Scalar(a2));
}

json scalar_json(const Scalar& x, std::int64_t p)
{
    json j;
    j["value"] = x.numeric().real();
    if (x.numeric().imag() != 0) j["imag"] = x.numeric().imag();
    if (x.is_exact()) {
        j["exact"] = x.str();
        if (!x.is_rational()) j["S"] = std::to_string(p) + "^(-1/2)";
    }
    return j;
}

template <class C> json series_terms(const LaurentSeries2<C>& s, int upto)
{
    json arr = json::array();
    for (int d = 0; d <= upto && d <= s.numerator().order(); ++d)
        for (int j = 0; j <= d; ++j) {
            const C& c = s.numerator().at(d - j, j);
            if (ring<C>::is_zero(c)) continue;
            arr.push_back({{"m", d - j}, {"n", j}, {"coeff", ring<C>::str(c)}});
        }
    return arr;
}

json poles_json(const Poles& p) { return json::array({p.e[0], p.e[1], p.e[2], p.e[3]}); }

// ---------------------------------------------------------------- psi

int cmd_psi(const RunConfig& c, json& out)
{
    std::vector<ZetaKind> kinds;
    if (c.kind == "all") kinds = {ZetaKind::i, ZetaKind::ii, ZetaKind::iii, ZetaKind::iv};
    else {
        try {
            kinds = {parse_kind(c.kind)};
        } catch (const ParseError& e) {
            throw UsageError(e.what());
        }
    }
    PlaceData pl = [&] {
        try {
            return PlaceData(c.p, c.r);
        } catch (const std::exception& e) {
            throw UsageError(e.what());
        }
    }();
    if (pl.r < 1) throw UsageError("--r must be at least 1");
    SatakeParams pi0 = parse_pi0(c.pi0);
    std::optional<std::pair<Scalar, Scalar>> at;
    if (!c.at.empty()) {
        auto t = split(c.at, ',');
        if (t.size() != 2) throw UsageError("--at expects 'z,w'");
        Rational z = parse_rational_arg(t[0], "--at"), w = parse_rational_arg(t[1], "--at");
        if (c.mode == Mode::numeric) at = {Scalar(z.get_d()), Scalar(w.get_d())};
        else at = {Scalar(z), Scalar(w)};
    }

    out["command"] = "psi";
    out["place"] = {{"p", pl.p}, {"r", pl.r}};
    out["pi0"] = json::array({pi0.a1.str(), pi0.a2.str()});
    bool all_match = true;
    json results = json::array();
    for (auto kind : kinds) {
        json k;
        k["kind"] = kind_name(kind);
        LocalZetaResult closed, oracle;
        try {
            closed = psi_closed(kind, pl, pi0);
            oracle = psi_oracle(kind, pl, pi0, c.cutoff);
        } catch (const SatakeError& e) {
            throw UsageError(e.what());
        } catch (const CertificationError& e) {
            throw UsageError(e.what());
        }
        bool match = closed.value == oracle.value;
        all_match &= match;
        k["closed"] = closed.value.str();
        k["oracle"] = oracle.value.str();
        k["oracle_note"] = oracle.note;
        k["match"] = match;
        if (at) {
            json a;
            try {
                a["closed"] = scalar_json(rf_eval(closed.value, at->first, at->second), pl.p);
                a["oracle"] = scalar_json(rf_eval(oracle.value, at->first, at->second), pl.p);
            } catch (const PoleError&) {
                a["pole"] = true;
            }
            k["at"] = a;
        }
        if (c.expand) {
            json e;
            try {
                auto ls = ls_from_rational<ExactCoeff>(closed.value, c.depth);
                e["poles"] = poles_json(ls.poles());
                e["numerator"] = series_terms(ls, 3);
            } catch (const std::exception& ex) {
                e["error"] = ex.what();
            }
            if (kind == ZetaKind::iv) {
                // E = 1 - (1 - E): the correction factor, regular with leading degree 3
                auto E = ls_from_rational<ExactCoeff>(E_local(pl), c.depth);
                json corr;
                corr["depth"] = c.depth;
                corr["leading"] = series_terms(E, 3);
                corr["next"] = json::array();
                for (auto& t : series_terms(E, 4))
                    if (t["m"].get<int>() + t["n"].get<int>() == 4) corr["next"].push_back(t);
                e["correction"] = corr;
            }
            k["expand"] = e;
        }
        results.push_back(k);
    }
    out["results"] = results;
    out["verdict"] = all_match ? "MATCH" : "MISMATCH";
    return all_match ? 0 : 1;
}

// ---------------------------------------------------------------- degenerate

int cmd_degenerate(const RunConfig& c, json& out)
{
    GlobalZetaData data;
    try {
        data = GlobalZetaData::from_file(c.data, c.tol);
    } catch (const DataError& e) {
        throw UsageError(e.what());
    }
    out["command"] = "degenerate";
    out["data"] = c.data;
    out["depth"] = c.depth;
    json runs = json::array();
    bool ok = true;
    std::optional<LogQ> first;
    bool identical = true;
    for (auto& qs : c.q) {
        IdealFactorization q;
        try {
            if (c.rational_q) {
                Rational n = parse_rational_arg(qs, "--q");
                if (!is_integer(n) || n < 1) throw UsageError("--q with --rational expects a positive integer");
                q = rational_ideal(n.get_num().get_si());
            } else {
                q = IdealFactorization::parse(qs);
            }
        } catch (const ParseError& e) {
            throw UsageError(e.what());
        } catch (const PlaceError& e) {
            throw UsageError(e.what());
        }
        DegenerateReport rep;
        try {
            rep = degenerate_limit(data, q, c.depth);
        } catch (const DepthError& e) {
            throw UsageError(e.what());
        }
        json j;
        j["q"] = qs;
        j["factorization"] = q.str();
        j["omega"] = q.omega();
        const LogQ* cs[4] = {&rep.exact.c0, &rep.exact.c1, &rep.exact.c2, &rep.exact.c3};
        const double* ns[4] = {&rep.numeric.c0, &rep.numeric.c1, &rep.numeric.c2, &rep.numeric.c3};
        for (int k = 3; k >= 0; --k) j["c" + std::to_string(k)] = {{"exact", cs[k]->str()}, {"value", *ns[k]}};
        double residual = std::abs(rep.numeric.c3 - rep.c3_formula.get_d());
        j["c3_formula"] = {{"exact", q_str(rep.c3_formula)}, {"value", rep.c3_formula.get_d()}};
        j["c3_residual"] = residual;
        bool higher = true;
        for (auto& x : rep.higher) higher &= x.is_zero();
        j["higher_vanish"] = higher;
        j["singular_part_zero"] = rep.singular_part_zero;
        j["lower_complete"] = rep.lower_complete;
        json corr;
        corr["sum"] = rep.correction.sum.str();
        corr["factor"] = ring<ExactCoeff>::str(rep.correction.factor);
        if (rep.correction.implied_c_cubed) corr["implied_c_cubed"] = q_str(*rep.correction.implied_c_cubed);
        j["correction"] = corr;
        runs.push_back(j);
        ok &= residual <= c.tol && higher && rep.singular_part_zero;
        if (!first) first = rep.exact.c3;
        identical &= rep.exact.c3 == *first;
    }
    out["runs"] = runs;
    out["c3_identical"] = identical;
    out["tolerance"] = c.tol;
    ok &= identical;
    out["verdict"] = ok ? "PASS" : "FAIL";
    return ok ? 0 : 1;
}

// ---------------------------------------------------------------- verify

int cmd_verify(const RunConfig& c, json& out)
{
    suite::Options o;
    o.seed = c.seed;
    o.fuzz = c.fuzz;
    o.broken = c.broken;
    o.break_symmetry = c.break_symmetry;
    o.data_path = c.data;
    std::vector<suite::Outcome> res;
    try {
        res = suite::run(c.suite_name, o);
    } catch (const std::invalid_argument& e) {
        throw UsageError(e.what());
    }
    out["command"] = "verify";
    out["suite"] = c.suite_name;
    out["fuzz"] = c.fuzz;
    out["break_symmetry"] = c.break_symmetry;
    json crit = json::array();
    int failed = 0;
    for (auto& r : res) {
        json j{{"id", r.id}, {"key", r.key}, {"title", r.title}, {"pass", r.pass}, {"detail", r.detail}};
        if (c.timing) {
            j["seconds"] = r.seconds;
            if (r.limit_seconds > 0) j["limit_seconds"] = r.limit_seconds;
        }
        crit.push_back(j);
        failed += !r.pass;
    }
    out["criteria"] = crit;
    out["passed"] = static_cast<int>(res.size()) - failed;
    out["failed"] = failed;
    out["verdict"] = failed ? "FAIL" : "PASS";
    return failed ? 1 : 0;
}

// ---------------------------------------------------------------- output

std::string csv_escape(const std::string& s)
{
    if (s.find_first_of(",\"\n") == std::string::npos) return s;
    std::string o = "\"";
    for (char ch : s) o += ch == '"' ? std::string("\"\"") : std::string(1, ch);
    return o + "\"";
}

std::string leaf(const json& v) { return v.is_string() ? v.get<std::string>() : v.dump(); }

void flatten(const json& j, const std::string& prefix, std::vector<std::pair<std::string, std::string>>& rows)
{
    if (j.is_object()) {
        for (auto& [k, v] : j.items()) flatten(v, prefix.empty() ? k : prefix + "." + k, rows);
    } else if (j.is_array()) {
        for (size_t i = 0; i < j.size(); ++i) flatten(j[i], prefix + "[" + std::to_string(i) + "]", rows);
    } else {
        rows.emplace_back(prefix, leaf(j));
    }
}

void pretty(const json& j, std::ostream& os, int indent = 0)
{
    std::string pad(indent, ' ');
    if (j.contains("criteria")) {
        for (auto& c : j["criteria"])
            os << "[" << (c["pass"].get<bool>() ? "PASS" : "FAIL") << "] " << c["id"] << " " << leaf(c["key"]) << ": " << leaf(c["detail"])
               << "\n";
        os << leaf(j["verdict"]) << ": " << j["passed"] << " passed, " << j["failed"] << " failed (seed " << j["seed"] << ")\n";
        return;
    }
    for (auto& [k, v] : j.items()) {
        if (v.is_object()) {
            os << pad << k << ":\n";
            pretty(v, os, indent + 2);
        } else if (v.is_array() && !v.empty() && v[0].is_object()) {
            for (size_t i = 0; i < v.size(); ++i) {
                os << pad << k << "[" << i << "]:\n";
                pretty(v[i], os, indent + 2);
            }
        } else {
            os << pad << k << ": " << (v.is_array() ? v.dump() : leaf(v)) << "\n";
        }
    }
}

void emit(const json& j, const std::string& format)
{
    if (format == "json") {
        std::cout << j.dump(2) << "\n";
    } else if (format == "csv") {
        std::vector<std::pair<std::string, std::string>> rows;
        flatten(j, "", rows);
        std::cout << "key,value\n";
        for (auto& [k, v] : rows) std::cout << csv_escape(k) << "," << csv_escape(v) << "\n";
    } else {
        pretty(j, std::cout);
    }
}

} // namespace

int main(int argc, char** argv)
{
    RunConfig c;
    CLI::App app{"exact-arithmetic checks for local zeta integrals and the degenerate term"};
    app.require_subcommand(1);
    app.fallthrough();
    std::string mode = "exact";
    app.add_option("--format", c.format, "output format")->check(CLI::IsMember({"json", "csv", "pretty"}));
    app.add_option("--seed", c.seed, "random seed for fuzzed checks");
    app.add_option("--mode", mode, "exact or numeric")->check(CLI::IsMember({"exact", "numeric"}));
    app.add_option("--tol", c.tol, "tolerance for numeric comparisons (ignored in exact mode)");
    app.add_option("--depth", c.depth, "Laurent expansion depth K")->check(CLI::Range(4, 16));

    auto* psi = app.add_subcommand("psi", "local zeta integral at one place: closed form against the stratum oracle");
    psi->add_option("--kind", c.kind, "i, ii, iii, iv or all");
    psi->add_option("--p", c.p, "residue field cardinality");
    psi->add_option("--r", c.r, "exponent of the place in q");
    psi->add_option("--pi0", c.pi0, "Satake parameters of pi0 as 'a1,a2' with a1 a2 = 1");
    psi->add_option("--at", c.at, "evaluate at 'z,w'");
    psi->add_flag("--expand", c.expand, "Laurent expansion at the origin");
    psi->add_option("--cutoff", c.cutoff, "oracle strata beyond [0, r]");

    auto* deg = app.add_subcommand("degenerate", "leading coefficients of the degenerate limit");
    deg->add_option("--q", c.q, "ideal such as 2^3*5 (repeatable)");
    deg->add_flag("--rational", c.rational_q, "read each --q as an integer n and factor nZ");
    deg->add_option("--data", c.data, "global zeta data (JSON)");

    auto* ver = app.add_subcommand("verify", "run the acceptance suite");
    ver->add_option("--suite", c.suite_name, "all or one of: " + [] {
        std::string s;
        for (auto& n : suite::suite_names()) s += (s.empty() ? "" : ", ") + n;
        return s;
    }());
    ver->add_option("--fuzz", c.fuzz, "number of fuzzed quadruples")->check(CLI::Range(1, 100000));
    ver->add_option("--broken", c.broken, "number of broken control quadruples")->check(CLI::Range(0, 100000));
    ver->add_flag("--break-symmetry", c.break_symmetry, "fuzz only quadruples violating one constraint");
    ver->add_option("--data", c.data, "global zeta data (JSON)");
    ver->add_flag("--timing", c.timing, "include run times in the report");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int code = app.exit(e);
        return code == 0 ? 0 : 2;
    }
    c.mode = mode == "numeric" ? Mode::numeric : Mode::exact;

    json out;
    int code = 0;
    try {
        if (psi->parsed()) code = cmd_psi(c, out);
        else if (deg->parsed()) code = cmd_degenerate(c, out);
        else code = cmd_verify(c, out);
    } catch (const UsageError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    }
    out["seed"] = c.seed;
    out["mode"] = mode;
    emit(out, c.format);
    return code;
}
