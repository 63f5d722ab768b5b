#include "hcsos/cli.hpp"

#include "hcsos/chain.hpp"
#include "hcsos/errors.hpp"
#include "hcsos/extremality.hpp"
#include "hcsos/phase.hpp"
#include "hcsos/sampler.hpp"
#include "hcsos/tisgm.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <algorithm>
#include <cstdio>
#include <fstream>
#include <iomanip>
#include <ostream>
#include <sstream>
#include <thread>

namespace hcsos::cli {

namespace {

using nlohmann::json;

struct Options {
    int k = 2;
    int m = 2;
    double theta = 1.0;
    double theta_min = 0.1;
    double theta_max = 2.5;
    int steps = 200;
    std::string measure = "mu0";
    std::string format = "table";
    std::string out_path;
    std::uint64_t seed = 1;
    double tol = kDefaultBoundaryTol;
    int depth = 4;
    std::int64_t samples = 10000;
    int max_iter = 100000;
    double iter_tol = 1e-14;
    std::vector<double> init;
    unsigned threads = 0;
};

json solution_json(const TisgmSolution& s, int k, double theta)
{
    return {{"branch", to_string(s.branch)},
            {"x", s.x},
            {"y", s.y},
            {"residual", fixed_point_residual(s, k, theta)}};
}

json verdict_json(const ExtremalityVerdict& v)
{
    return {{"measure", to_string(v.measure)}, {"verdict", to_string(v.verdict)},
            {"s2", v.s2},                      {"kappa", v.kappa},
            {"gamma", v.gamma},                {"ks_value", v.ks_value},
            {"msw_value", v.msw_value}};
}

// Writes to --out when given, otherwise to `fallback`.
template <class Fn>
int emit(const std::string& path, std::ostream& fallback, std::ostream& err, Fn&& write)
{
    if (path.empty()) {
        write(fallback);
        return kExitOk;
    }
    std::ofstream f(path, std::ios::binary);
    if (!f) {
        err << "error: cannot open '" << path << "' for writing\n";
        return kExitFailure;
    }
    write(f);
    f.flush();
    if (!f) {
        err << "error: failed writing '" << path << "'\n";
        return kExitFailure;
    }
    return kExitOk;
}

int cmd_tisgm(const Options& o, std::ostream& out)
{
    const auto set = enumerate(o.k, o.theta);
    if (o.format == "json") {
        json j{{"k", o.k}, {"theta", o.theta}, {"theta_cr", theta_cr(o.k)}, {"critical", set.critical}};
        j["solutions"] = json::array();
        for (const auto& s : set.solutions)
            j["solutions"].push_back(solution_json(s, o.k, o.theta));
        out << j.dump(2) << '\n';
        return kExitOk;
    }
    if (o.format == "csv") {
        out << "k,theta,branch,x,y\n";
        for (const auto& s : set.solutions)
            out << o.k << ',' << format_double(o.theta) << ',' << to_string(s.branch) << ','
                << format_double(s.x) << ',' << format_double(s.y) << '\n';
        return kExitOk;
    }
    out << "k = " << o.k << ", theta = " << format_double(o.theta) << ", theta_cr = "
        << format_double(theta_cr(o.k)) << (set.critical ? "  [critical]" : "") << '\n';
    out << std::left << std::setw(11) << "branch" << std::setw(24) << "x" << std::setw(24) << "y"
        << "residual\n";
    for (const auto& s : set.solutions)
        out << std::setw(11) << to_string(s.branch) << std::setw(24) << format_double(s.x) << std::setw(24)
            << format_double(s.y) << format_double(fixed_point_residual(s, o.k, o.theta)) << '\n';
    return kExitOk;
}

int cmd_classify(const Options& o, std::ostream& out)
{
    std::vector<ExtremalityVerdict> verdicts;
    if (o.measure == "all") {
        verdicts.push_back(classify(o.k, o.theta, Measure::Mu0, o.tol));
        if (o.theta < theta_cr(o.k) - kCriticalBand) {
            verdicts.push_back(classify(o.k, o.theta, Measure::Mu1, o.tol));
            verdicts.push_back(classify(o.k, o.theta, Measure::Mu2, o.tol));
        }
    } else {
        verdicts.push_back(classify(o.k, o.theta, parse_measure(o.measure), o.tol));
    }

    if (o.format == "json") {
        json j = json::array();
        for (const auto& v : verdicts)
            j.push_back(verdict_json(v));
        out << j.dump(2) << '\n';
        return kExitOk;
    }
    for (const auto& v : verdicts)
        out << to_string(v.measure) << ": " << to_string(v.verdict) << "  (k s2^2 = " << format_double(v.ks_value)
            << ", k kappa gamma = " << format_double(v.msw_value) << ", s2 = " << format_double(v.s2)
            << ", kappa = " << format_double(v.kappa) << ", gamma = " << format_double(v.gamma) << ")\n";
    return kExitOk;
}

int cmd_sweep(const Options& o, std::ostream& out, std::ostream& err)
{
    const unsigned threads = o.threads ? o.threads : std::max(1u, std::thread::hardware_concurrency());
    const auto records = sweep(o.k, o.theta_min, o.theta_max, o.steps, threads);
    return emit(o.out_path, out, err, [&](std::ostream& os) {
        if (o.format == "json")
            write_jsonl(os, records);
        else
            write_csv(os, records);
    });
}

int cmd_thresholds(const Options& o, std::ostream& out)
{
    ThresholdTable table;
    try {
        table = thresholds(o.k);
    } catch (const Unsupported& e) {
        out << "note: " << e.what() << '\n';
        return kExitOk;
    }
    if (o.format == "json") {
        json j = json::array();
        for (const auto& t : table.entries) {
            json e{{"name", t.name}, {"root_found", t.root_found}};
            e["closed_form"] = t.closed_form ? json(*t.closed_form) : json(nullptr);
            e["quoted"] = t.quoted ? json(*t.quoted) : json(nullptr);
            j.push_back(e);
        }
        out << j.dump(2) << '\n';
        return kExitOk;
    }
    out << std::left << std::setw(8) << "name" << std::setw(24) << "root_found" << std::setw(24) << "closed_form"
        << std::setw(14) << "difference" << "quoted\n";
    for (const auto& t : table.entries) {
        std::ostringstream diff;
        if (t.closed_form)
            diff << std::scientific << std::setprecision(2) << std::abs(t.root_found - *t.closed_form);
        out << std::setw(8) << t.name << std::setw(24) << format_double(t.root_found) << std::setw(24)
            << (t.closed_form ? format_double(*t.closed_form) : "-") << std::setw(14)
            << (t.closed_form ? diff.str() : "-") << (t.quoted ? format_double(*t.quoted) : "-") << '\n';
    }
    return kExitOk;
}

TisgmSolution solution_for(int k, double theta, Measure m)
{
    if (m == Measure::Mu0)
        return solve_symmetric(k, theta);
    const auto pair = solve_asymmetric(k, theta);
    if (pair.empty())
        throw MeasureNotFound(std::string(to_string(m)) + " does not exist for theta >= theta_cr(k)");
    return m == Measure::Mu1 ? pair[0] : pair[1];
}

int cmd_simulate(const Options& o, std::ostream& out, std::ostream& err)
{
    const Measure m = parse_measure(o.measure);
    const auto kern = kernel_of(solution_for(o.k, o.theta, m), o.k, o.theta);
    const TreeConfig cfg{o.k, o.depth, o.seed};
    const auto st = estimate_marginals(kern, cfg, o.samples);
    const auto pi = stationary(kern);

    json j{{"k", o.k},           {"theta", o.theta},     {"measure", to_string(m)},
           {"depth", o.depth},   {"samples", st.samples}, {"seed", o.seed},
           {"violations", st.violations}};
    j["stationary"] = pi;
    j["transition"] = kern.p();
    j["level_freq"] = st.level_freq;
    j["pair_freq"] = st.pair_freq;
    return emit(o.out_path, out, err, [&](std::ostream& os) { os << j.dump(2) << '\n'; });
}

int cmd_iterate(const Options& o, std::ostream& out)
{
    const ModelParams p(o.k, o.theta, o.m);
    const auto init = o.init.empty() ? BoundaryLaw::ones(o.m) : BoundaryLaw(o.init);
    const auto res = iterate_boundary_law(p, init, o.max_iter, o.iter_tol);

    json j{{"m", o.m}, {"k", o.k}, {"theta", o.theta}, {"status", res.reason}, {"converged", res.converged},
           {"iterations", res.iterations}, {"last_step", res.last_step}, {"residual", res.residual},
           {"z", res.law}};
    if (res.converged && o.m == 2) {
        const auto s = solution_from_law(res.law, o.k);
        j["solution"] = solution_json(s, o.k, o.theta);
    }
    if (!res.converged)
        j["tail"] = res.tail;

    if (o.format == "json") {
        out << j.dump(2) << '\n';
        return kExitOk;
    }
    out << (res.converged ? "converged" : "not converged (" + res.reason + ")") << " after " << res.iterations
        << " iterations, last step " << format_double(res.last_step) << ", residual "
        << format_double(res.residual) << '\n';
    out << "z =";
    for (double v : res.law)
        out << ' ' << format_double(v);
    out << '\n';
    if (j.contains("solution"))
        out << "x = " << format_double(j["solution"]["x"].get<double>()) << ", y = "
            << format_double(j["solution"]["y"].get<double>()) << ", branch "
            << j["solution"]["branch"].get<std::string>() << '\n';
    if (!res.converged) {
        out << "trajectory tail:\n";
        for (const auto& z : res.tail) {
            out << ' ';
            for (double v : z)
                out << ' ' << format_double(v);
            out << '\n';
        }
    }
    return kExitOk;
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err)
{
    CLI::App app{"Translation-invariant Gibbs measures of the hard-core SOS wand model on Cayley trees",
                 args.empty() ? "hcsos" : args.front()};
    app.require_subcommand(1);
    Options o;

    const auto positive = CLI::PositiveNumber;
    const auto order = CLI::Range(2, 1000);
    auto add_k = [&](CLI::App* sub) { sub->add_option("--k", o.k, "Cayley tree order (k >= 2)")->check(order); };
    auto add_theta = [&](CLI::App* sub) {
        sub->add_option("--theta", o.theta, "coupling theta = e^J (> 0)")->required()->check(positive);
    };

    auto* tisgm = app.add_subcommand("tisgm", "enumerate translation-invariant splitting Gibbs measures (m = 2)");
    add_k(tisgm);
    add_theta(tisgm);
    tisgm->add_option("--format", o.format)->check(CLI::IsMember({"table", "csv", "json"}));

    auto* classify_cmd = app.add_subcommand("classify", "extremality verdict for mu0, mu1, mu2");
    add_k(classify_cmd);
    add_theta(classify_cmd);
    classify_cmd->add_option("--measure", o.measure)->check(CLI::IsMember({"mu0", "mu1", "mu2", "all"}));
    classify_cmd->add_option("--tol", o.tol, "boundary band on k s2^2 - 1")->check(CLI::NonNegativeNumber);
    classify_cmd->add_option("--format", o.format)->check(CLI::IsMember({"table", "json"}));

    auto* sweep_cmd = app.add_subcommand("sweep", "phase records over a uniform theta grid");
    add_k(sweep_cmd);
    sweep_cmd->add_option("--theta-min", o.theta_min)->check(positive);
    sweep_cmd->add_option("--theta-max", o.theta_max)->check(positive);
    sweep_cmd->add_option("--steps", o.steps)->check(CLI::Range(2, 10000000));
    sweep_cmd->add_option("--out", o.out_path, "output file (default stdout)");
    sweep_cmd->add_option("--format", o.format, "csv or json (JSON lines)")->check(CLI::IsMember({"csv", "json"}));
    sweep_cmd->add_option("--threads", o.threads, "worker threads (0 = hardware)");

    auto* thr = app.add_subcommand("thresholds", "extremality thresholds for k = 2, 3");
    add_k(thr);
    thr->add_option("--format", o.format)->check(CLI::IsMember({"table", "json"}));

    auto* sim = app.add_subcommand("simulate", "sample configurations on a finite subtree");
    add_k(sim);
    add_theta(sim);
    sim->add_option("--measure", o.measure)->check(CLI::IsMember({"mu0", "mu1", "mu2"}));
    sim->add_option("--depth", o.depth)->check(CLI::Range(0, 40));
    sim->add_option("--samples", o.samples)->check(CLI::PositiveNumber);
    sim->add_option("--seed", o.seed);
    sim->add_option("--out", o.out_path, "output JSON file (default stdout)");

    auto* iter = app.add_subcommand("iterate", "forward iteration of the boundary-law equation");
    iter->add_option("--m", o.m, "spin-space parameter (even, >= 2)")->check(CLI::Range(2, 1000));
    add_k(iter);
    add_theta(iter);
    iter->add_option("--max-iter", o.max_iter)->check(CLI::Range(1, 100000000));
    iter->add_option("--tol", o.iter_tol, "max-norm stopping tolerance")->check(positive);
    iter->add_option("--init", o.init, "initial law z_0 ... z_m (z_m = 1)");
    iter->add_option("--format", o.format)->check(CLI::IsMember({"table", "json"}));

    std::vector<std::string> rest(args.begin() + (args.empty() ? 0 : 1), args.end());
    std::reverse(rest.begin(), rest.end());
    try {
        app.parse(rest);
        if (iter->parsed() && o.m % 2 != 0)
            throw CLI::ValidationError("--m", "must be even");
        if (sweep_cmd->parsed() && !(o.theta_min < o.theta_max))
            throw CLI::ValidationError("--theta-min", "must be below --theta-max");
        if (sweep_cmd->parsed() && o.format == "table")
            o.format = "csv";
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e, out, err);
        return code == 0 ? kExitOk : kExitUsage;
    }

    try {
        if (tisgm->parsed()) return cmd_tisgm(o, out);
        if (classify_cmd->parsed()) return cmd_classify(o, out);
        if (sweep_cmd->parsed()) return cmd_sweep(o, out, err);
        if (thr->parsed()) return cmd_thresholds(o, out);
        if (sim->parsed()) return cmd_simulate(o, out, err);
        if (iter->parsed()) return cmd_iterate(o, out);
    } catch (const MeasureNotFound& e) {
        err << "error: measure does not exist: " << e.what() << '\n';
        return kExitFailure;
    } catch (const std::exception& e) {
        err << "error: " << e.what() << '\n';
        return kExitFailure;
    }
    return kExitUsage;
}

}  // namespace hcsos::cli
