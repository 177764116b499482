#include "kuracycle/cli.hpp"

#include <fstream>
#include <iomanip>
#include <iostream>
#include <memory>
#include <optional>
#include <sstream>

#include <CLI11.hpp>

#include "kuracycle/analysis.hpp"
#include "kuracycle/dynamics.hpp"
#include "kuracycle/json_io.hpp"
#include "kuracycle/polytope.hpp"
#include "kuracycle/rng.hpp"
#include "kuracycle/solver.hpp"

namespace kuracycle::cli {

using nlohmann::json;

namespace {

double parse_real(const std::string& s)
{
    if (s.empty() || s == "+")
        return 1.0;
    if (s == "-")
        return -1.0;
    std::size_t used = 0;
    const double v = std::stod(s, &used);
    if (used != s.size())
        throw std::invalid_argument("bad number '" + s + "'");
    return v;
}

}  // namespace

Complex parse_complex(const std::string& text)
{
    std::string s;
    for (char c : text)
        if (!std::isspace(static_cast<unsigned char>(c)))
            s.push_back(c);
    if (s.empty())
        throw std::invalid_argument("empty complex literal");
    try {
        if (s.back() != 'i')
            return {parse_real(s), 0.0};
        s.pop_back();
        // Split at the last sign that is not a leading sign or an exponent sign.
        std::size_t split = std::string::npos;
        for (std::size_t k = s.size(); k-- > 1;)
            if ((s[k] == '+' || s[k] == '-') && s[k - 1] != 'e' && s[k - 1] != 'E') {
                split = k;
                break;
            }
        if (split == std::string::npos)
            return {0.0, parse_real(s)};
        const std::string re = s.substr(0, split);
        if (re.empty())
            throw std::invalid_argument("missing real part");
        return {parse_real(re), parse_real(s.substr(split))};
    } catch (const std::logic_error&) {
        throw std::invalid_argument("malformed complex literal '" + text + "'");
    }
}

std::vector<Complex> parse_complex_list(const std::string& text)
{
    std::vector<Complex> out;
    std::stringstream ss(text);
    std::string item;
    while (std::getline(ss, item, ','))
        out.push_back(parse_complex(item));
    return out;
}

namespace {

class UsageError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

struct Options {
    int N = 0;
    std::uint64_t seed = 1;
    double tol_residual = 1e-8;
    double tol_dedup = 1e-6;
    double tol_torus = 1e-6;
    std::string format = "json";
    bool parallel = false;
    std::string out_path;
    std::string omega;
    std::string a;
    bool list = false;
    int trials = 5;
    int facet = -1;
    double K = 1.0;
    int starts = 200;
    double spread = 0.1;
    bool dump = false;
};

json header(const std::string& command, const Options& o, int resamples)
{
    return json{{"tool_version", kToolVersion},
                {"command", command},
                {"seed", o.seed},
                {"tol_residual", o.tol_residual},
                {"tol_dedup", o.tol_dedup},
                {"resample_count", resamples}};
}

SolverConfig solver_config(const Options& o, std::uint64_t seed)
{
    SolverConfig c;
    c.seed = seed;
    c.tol_residual = o.tol_residual;
    c.tol_dedup = o.tol_dedup;
    c.parallel = o.parallel;
    return c;
}

void require_n(int N, int max_n)
{
    if (N < 3 || N > max_n)
        throw UsageError("N must lie in [3, " + std::to_string(max_n) + "], got " + std::to_string(N));
}

// Instance from the seed, with optional --omega / --a overrides.
std::optional<CycleInstance> overridden_instance(const Options& o)
{
    if (o.omega.empty() && o.a.empty())
        return std::nullopt;
    auto rng = substream(o.seed, kInstanceStream, 0);
    CycleInstance inst = sample_generic_instance(o.N, rng);
    try {
        if (!o.omega.empty()) {
            const auto w = parse_complex_list(o.omega);
            if (static_cast<int>(w.size()) != o.N - 1)
                throw UsageError("--omega needs N - 1 = " + std::to_string(o.N - 1) + " values");
            inst.omega = Eigen::Map<const CVector>(w.data(), static_cast<Eigen::Index>(w.size()));
        }
        if (!o.a.empty())
            inst.a = parse_complex(o.a);
        inst.validate();
    } catch (const std::invalid_argument& e) {
        throw UsageError(e.what());
    }
    return inst;
}

struct Outcome {
    json report;
    std::string csv;  // solve only
    bool ok = true;
};

Outcome cmd_count(const Options& o)
{
    require_n(o.N, 60);
    const CountPrediction c = predicted_counts(o.N);
    json j = header("count", o, 0);
    j.update(prediction_to_json(c));
    return {j, {}, true};
}

Outcome cmd_facets(const Options& o)
{
    require_n(o.N, 24);
    json j = header("facets", o, 0);
    j["N"] = o.N;
    j["facet_count"] = facet_count(o.N);
    j["bound"] = adjacency_polytope_bound(o.N);
    bool ok = true;
    if (o.list) {
        json arr = json::array();
        const auto facets = enumerate_facets(o.N);
        for (std::size_t i = 0; i < facets.size(); ++i) {
            const auto& f = facets[i];
            const IntMatrix V = facet_matrix(f);
            const FacetReduction red = facet_reduction(f);
            json e{{"id", i}, {"facet", facet_to_json(f)}};
            json verts = json::array();
            for (Eigen::Index c = 0; c < V.cols(); ++c) {
                std::vector<std::int64_t> col(V.rows());
                for (Eigen::Index r = 0; r < V.rows(); ++r)
                    col[r] = V(r, c);
                verts.push_back(col);
            }
            e["vertices"] = verts;
            e["det_Q"] = determinant(red.Q);
            if (!f.odd())
                e["h"] = std::vector<std::int64_t>(red.h.data(), red.h.data() + red.h.size());
            ok = ok && std::abs(determinant(red.Q)) == 1;
            arr.push_back(e);
        }
        j["facets"] = arr;
    }
    return {j, {}, ok};
}

std::string solutions_csv(const std::vector<TorusSolution>& sols, int n)
{
    std::ostringstream os;
    os << std::setprecision(17);
    os << "facet_id,residual_sub,residual_full";
    for (int i = 1; i <= n; ++i)
        os << ",re_x" << i << ",im_x" << i;
    os << '\n';
    for (const auto& s : sols) {
        os << s.facet_id << ',' << s.residual_sub << ',' << s.residual_full;
        for (Eigen::Index i = 0; i < s.x.size(); ++i)
            os << ',' << s.x[i].real() << ',' << s.x[i].imag();
        os << '\n';
    }
    return os.str();
}

bool census_matches(const CensusReport& r)
{
    const std::int64_t per = predicted_per_facet(r.N);
    for (int c : r.per_facet_counts)
        if (c != per)
            return false;
    return r.total == r.predicted;
}

Outcome cmd_solve(const Options& o)
{
    require_n(o.N, 16);
    const SolverConfig cfg = solver_config(o, o.seed);
    CycleInstance inst;
    Census census;
    if (auto given = overridden_instance(o)) {
        inst = *given;
        census = solve_all(inst, cfg);
    } else {
        GenericCensus g = solve_generic(o.N, cfg);
        inst = std::move(g.instance);
        census = std::move(g.census);
    }
    json j = header("solve", o, census.report.resample_count);
    j["instance"] = instance_to_json(inst);
    j["report"] = census_to_json(census.report);
    json sols = json::array();
    for (const auto& s : census.solutions)
        sols.push_back(solution_to_json(s));
    j["solutions"] = sols;
    return {j, solutions_csv(census.solutions, inst.n()), census_matches(census.report)};
}

Outcome cmd_verify(const Options& o)
{
    require_n(o.N, 16);
    if (o.trials < 1)
        throw UsageError("--trials must be positive");
    json trials = json::array();
    bool ok = true;
    int resamples = 0;
    std::optional<std::int64_t> first_total;
    for (int t = 0; t < o.trials; ++t) {
        const std::uint64_t s = o.seed + static_cast<std::uint64_t>(t);
        const GenericCensus g = solve_generic(o.N, solver_config(o, s));
        const auto& r = g.census.report;
        resamples += r.resample_count;
        const bool match = census_matches(r);
        if (!first_total)
            first_total = r.total;
        ok = ok && match && r.total == *first_total;
        trials.push_back(json{{"seed", s},
                              {"total", r.total},
                              {"resample_count", r.resample_count},
                              {"max_residual_full", r.max_residual_full},
                              {"matches_prediction", match}});
    }
    json j = header("verify", o, resamples);
    j["N"] = o.N;
    j["predicted"] = predicted_counts(o.N).total;
    j["trials"] = trials;
    j["invariant"] = ok;
    return {j, {}, ok};
}

Outcome cmd_witness(const Options& o)
{
    require_n(o.N, 24);
    const auto facets = enumerate_facets(o.N);
    json arr = json::array();
    bool ok = true;
    int found = 0;
    for (std::size_t i = 0; i < facets.size(); ++i) {
        const auto& f = facets[i];
        json e{{"facet_id", i}, {"facet", facet_to_json(f)}};
        if (!f.odd()) {
            const FacetReduction red = facet_reduction(f);
            e["h"] = std::vector<std::int64_t>(red.h.data(), red.h.data() + red.h.size());
            e["h_product"] = sign_product(red.h);
        }
        const auto w = initial_witness(f, static_cast<int>(i));
        e["witness"] = w ? witness_to_json(*w) : json(nullptr);
        if (w) {
            ++found;
            ok = ok && w->verified;
        }
        arr.push_back(e);
    }
    const bool should_exist = o.N % 4 == 0;
    ok = ok && (should_exist ? found == static_cast<int>(facets.size()) : found == 0);
    json j = header("witness", o, 0);
    j["N"] = o.N;
    j["witness_count"] = found;
    j["facets"] = arr;
    return {j, {}, ok};
}

Outcome cmd_oracle(const Options& o)
{
    require_n(o.N, 16);
    const auto facets = enumerate_facets(o.N);
    if (o.facet >= static_cast<int>(facets.size()))
        throw UsageError("--facet out of range");

    auto rng = substream(o.seed, kInstanceStream, 0);
    const CycleInstance inst = sample_generic_instance(o.N, rng);
    const int expected_diff = o.N % 4 == 0 ? 1 : 0;
    const int expected_trims = o.N % 2 == 1 ? -1 : expected_diff;

    json arr = json::array();
    std::int64_t sum_generic = 0, sum_uniform = 0;
    bool ok = true;
    for (std::size_t i = 0; i < facets.size(); ++i) {
        if (o.facet >= 0 && static_cast<int>(i) != o.facet)
            continue;
        const auto& f = facets[i];
        const int generic = generic_bkk_facet(f, o.seed);
        const CMatrix M = inst.a * facet_matrix(f).cast<Complex>();
        const int uniform = static_cast<int>(facet_system_roots(f, M, inst.omega, 1e-10, expected_trims).roots.size());
        sum_generic += generic;
        sum_uniform += uniform;
        ok = ok && generic - uniform == expected_diff;
        arr.push_back(json{{"facet_id", i}, {"generic", generic}, {"uniform", uniform}, {"difference", generic - uniform}});
    }
    json j = header("oracle", o, 0);
    j["N"] = o.N;
    j["facets"] = arr;
    j["sum_generic"] = sum_generic;
    j["sum_uniform"] = sum_uniform;
    j["difference"] = sum_generic - sum_uniform;
    if (o.facet < 0) {
        const CountPrediction c = predicted_counts(o.N);
        j["expected_difference"] = c.gap;
        ok = ok && sum_generic - sum_uniform == c.gap && sum_generic == c.bkk_bound;
    }
    return {j, {}, ok};
}

Outcome cmd_ode(const Options& o)
{
    require_n(o.N, 12);
    if (o.starts < 0)
        throw UsageError("--starts must be nonnegative");
    if (o.K == 0.0)
        throw UsageError("--k must be nonzero");

    SolverConfig cfg = solver_config(o, o.seed);
    std::optional<Census> census;
    CycleInstance inst;
    int resamples = 0;
    std::string last_error;
    for (int r = 0; r <= cfg.max_resamples && !census; ++r) {
        auto rng = substream(o.seed, kOdeStream, 0xffff0000ULL + static_cast<std::uint64_t>(r));
        std::uniform_real_distribution<double> u(-o.spread, o.spread);
        RVector omega(o.N - 1);
        for (auto& w : omega)
            w = u(rng);
        inst = make_real_instance(o.N, o.K, omega);
        try {
            census = solve_all(inst, cfg);
            resamples = r + census->report.resample_count;
        } catch (const GenericityFailure& e) {
            last_error = e.what();
        }
    }
    if (!census)
        throw GenericityFailure(last_error);

    const auto configs = torus_filter(census->solutions, o.tol_torus);
    OdeConfig ode;
    ode.K = o.K;
    ode.omega = inst.omega.real();
    const auto eq = find_stable_equilibria(ode, o.starts, o.seed, o.parallel);
    const MatchReport m = match_equilibria(eq, configs, 1e-5);

    double max_dist = 0.0;
    for (const auto& e : m.matched)
        max_dist = std::max(max_dist, e.distance);
    json j = header("ode", o, resamples);
    j["N"] = o.N;
    j["K"] = o.K;
    j["omega"] = std::vector<double>(ode.omega.data(), ode.omega.data() + ode.omega.size());
    j["algebraic_total"] = census->report.total;
    j["torus_configurations"] = configs.size();
    j["equilibria"] = eq.size();
    j["matched"] = m.matched.size();
    j["unmatched"] = m.unmatched.size();
    j["max_match_distance"] = max_dist;
    if (o.dump) {
        json dump = json::array();
        for (const auto& e : eq)
            dump.push_back(std::vector<double>(e.data(), e.data() + e.size()));
        j["equilibrium_phases"] = dump;
        json tor = json::array();
        for (const auto& c : configs)
            tor.push_back(std::vector<double>(c.data(), c.data() + c.size()));
        j["torus_phases"] = tor;
    }
    return {j, {}, m.unmatched.empty() && census->report.total == census->report.predicted};
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err)
{
    Options o;
    CLI::App app{"Counts and computes synchronization configurations of Kuramoto cycle networks", "kuracycle"};
    app.require_subcommand(1);
    app.fallthrough();
    app.add_option("--seed", o.seed, "master seed for every random choice");
    app.add_option("--tol-residual", o.tol_residual, "full-system residual tolerance")->check(CLI::PositiveNumber);
    app.add_option("--tol-dedup", o.tol_dedup, "relative distance below which roots coincide")->check(CLI::PositiveNumber);
    app.add_option("--tol-torus", o.tol_torus, "max ||x_i| - 1| for torus solutions")->check(CLI::PositiveNumber);
    app.add_option("--format", o.format, "output format")->check(CLI::IsMember({"json", "csv"}));
    app.add_flag("--parallel", o.parallel, "run kernels with OpenMP");
    app.add_option("--out", o.out_path, "write the report to this file");

    auto add_n = [&](CLI::App* sub) { sub->add_option("N", o.N, "cycle length")->required(); };
    auto* count = app.add_subcommand("count", "closed-form root counts");
    add_n(count);
    auto* facets = app.add_subcommand("facets", "facets of the adjacency polytope");
    add_n(facets);
    facets->add_flag("--list", o.list, "list every facet with its matrices");
    auto* solve = app.add_subcommand("solve", "all complex solutions and the census report");
    add_n(solve);
    solve->add_option("--omega", o.omega, "comma-separated complex frequencies, e.g. 0.5-0.1i,0.2");
    solve->add_option("--a", o.a, "complex coupling coefficient");
    auto* verify = app.add_subcommand("verify", "repeat solve with fresh seeds and check count invariance");
    add_n(verify);
    verify->add_option("--trials", o.trials, "number of seeds");
    auto* witness = app.add_subcommand("witness", "initial-system kernel witness per facet");
    add_n(witness);
    auto* oracle = app.add_subcommand("oracle", "generic-coefficient facet root counts");
    add_n(oracle);
    oracle->add_option("--facet", o.facet, "only this facet id");
    auto* ode = app.add_subcommand("ode", "cross-check ODE equilibria against torus solutions");
    add_n(ode);
    ode->add_option("--k", o.K, "real coupling K");
    ode->add_option("--starts", o.starts, "random initial phases");
    ode->add_option("--spread", o.spread, "frequencies drawn from U(-spread, spread)")->check(CLI::PositiveNumber);
    ode->add_flag("--dump", o.dump, "include equilibrium and torus phases");

    std::vector<const char*> argv;
    for (const auto& a : args)
        argv.push_back(a.c_str());
    try {
        app.parse(static_cast<int>(argv.size()), argv.data());
    } catch (const CLI::CallForHelp&) {
        out << app.help();
        return kOk;
    } catch (const CLI::ParseError& e) {
        err << "error: " << e.what() << "\n" << app.help();
        return kUsageError;
    }

    Outcome res;
    try {
        if (count->parsed())
            res = cmd_count(o);
        else if (facets->parsed())
            res = cmd_facets(o);
        else if (solve->parsed())
            res = cmd_solve(o);
        else if (verify->parsed())
            res = cmd_verify(o);
        else if (witness->parsed())
            res = cmd_witness(o);
        else if (oracle->parsed())
            res = cmd_oracle(o);
        else
            res = cmd_ode(o);
    } catch (const UsageError& e) {
        err << "error: " << e.what() << "\n" << app.help();
        return kUsageError;
    } catch (const std::exception& e) {
        err << "error: " << e.what() << "\n";
        return kAssertionFailed;
    }

    std::string text;
    if (o.format == "csv") {
        if (!solve->parsed()) {
            err << "error: --format csv is only available for solve\n";
            return kUsageError;
        }
        text = res.csv;
    } else {
        text = res.report.dump(2) + "\n";
    }

    if (o.out_path.empty()) {
        out << text;
    } else {
        std::ofstream f(o.out_path);
        if (!f) {
            err << "error: cannot write " << o.out_path << "\n";
            return kUsageError;
        }
        f << text;
    }
    if (!res.ok)
        err << "assertion failed: results disagree with the predicted counts\n";
    return res.ok ? kOk : kAssertionFailed;
}

}  // namespace kuracycle::cli
