#include "cli.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <cstdio>
#include <fstream>
#include <ostream>
#include <sstream>
#include <string>
#include <vector>

#include "stin/analysis.hpp"
#include "stin/error.hpp"
#include "stin/grid.hpp"
#include "stin/montecarlo.hpp"
#include "stin/scenario_file.hpp"
#include "stin/sweep.hpp"
#include "stin/validate.hpp"

#ifndef STIN_GIT_HASH
#define STIN_GIT_HASH "unknown"
#endif

namespace stin {

namespace {

using nlohmann::json;

std::string num(double x) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.17g", x);
    return buf;
}

json quad_json(const QuadratureSpec& q) {
    return {{"abs_tol", q.abs_tol}, {"rel_tol", q.rel_tol}, {"max_subdivisions", q.max_subdivisions}};
}

json layer_json(const NetworkLayer& l) {
    json j{{"density_per_m2", l.density_per_m2},
           {"path_loss_exponent", l.path_loss_exponent},
           {"tx_power_w", l.tx_power_w},
           {"main_gain", l.main_gain},
           {"side_gain", l.side_gain},
           {"bias", l.bias},
           {"fading", describe(l.fading)}};
    if (l.heights.is_degenerate())
        j["heights"] = {{"kind", "degenerate"}, {"height_m", l.heights.h_min_m}};
    else
        j["heights"] = {{"kind", "uniform"}, {"min_m", l.heights.h_min_m}, {"max_m", l.heights.h_max_m}};
    return j;
}

json scenario_json(const ScenarioConfig& sc) {
    return {{"earth_radius_m", sc.geom.earth_radius_m},
            {"orbit_radius_m", sc.geom.orbit_radius_m},
            {"bandwidth_hz", sc.bandwidth_hz},
            {"noise_psd_dbm_hz", sc.noise_psd_dbm_hz},
            {"noise_power_w", sc.noise_power_w()},
            {"user_density_per_m2", sc.user_density_per_m2},
            {"satellite", layer_json(sc.satellite)},
            {"terrestrial", layer_json(sc.terrestrial)}};
}

json envelope(const std::string& command, const std::string& path, const ScenarioConfig& sc) {
    return {{"tool", "stin"},
            {"git_hash", STIN_GIT_HASH},
            {"command", command},
            {"scenario_path", path},
            {"scenario", scenario_json(sc)}};
}

/// Writes to --out when given, else to the command's output stream.
void emit(const std::string& out_path, std::ostream& out, const std::string& text) {
    if (out_path.empty()) {
        out << text;
        return;
    }
    std::ofstream f(out_path, std::ios::binary);
    if (!f) throw ConfigError("out", "cannot write '" + out_path + "'");
    f << text;
}

struct Common {
    std::string scenario;
    std::string out;
    bool json = false;
    int threads = 0;
};

void add_common(CLI::App* app, Common& c) {
    app->add_option("scenario", c.scenario, "scenario file")->required();
    app->add_option("-o,--out", c.out, "output file (default stdout)");
    app->add_flag("--json", c.json, "emit a JSON envelope instead of CSV");
    app->add_option("--threads", c.threads, "worker threads (default: STIN_THREADS or all cores)")
        ->check(CLI::NonNegativeNumber);
}

int cmd_analyze(const Common& c, const std::string& grid_spec, bool load_aware, std::ostream& out) {
    const ScenarioConfig sc = load_scenario(c.scenario);
    const auto grid = parse_grid(grid_spec);
    AnalysisOptions opt;
    opt.threads = c.threads;
    const CoverageModel model(sc, opt);
    const CoverageCurve curve = coverage_curve(model, grid, load_aware);

    const std::vector<std::string> cols = {"gamma_bps", "p_cov",   "p_cov_sat", "p_cov_terr",
                                           "pi_sat",    "pi_terr", "quadrature_max_err"};
    if (c.json) {
        json j = envelope("analyze", c.scenario, sc);
        j["provenance"] = {{"grid", grid_spec},
                           {"load_aware", load_aware},
                           {"inner_quadrature", quad_json(opt.inner)},
                           {"outer_quadrature", quad_json(opt.outer)}};
        j["loads"] = {{"satellite", curve.load_sat}, {"terrestrial", curve.load_terr}};
        j["columns"] = cols;
        j["rows"] = json::array();
        for (const auto& p : curve.points)
            j["rows"].push_back({p.gamma_bps, p.p_cov, p.p_cov_sat, p.p_cov_terr, curve.pi_sat,
                                 curve.pi_terr, p.quad_error});
        emit(c.out, out, j.dump(2) + "\n");
        return 0;
    }
    std::ostringstream os;
    for (std::size_t i = 0; i < cols.size(); ++i) os << (i ? "," : "") << cols[i];
    os << "\n";
    for (const auto& p : curve.points)
        os << num(p.gamma_bps) << "," << num(p.p_cov) << "," << num(p.p_cov_sat) << ","
           << num(p.p_cov_terr) << "," << num(curve.pi_sat) << "," << num(curve.pi_terr) << ","
           << num(p.quad_error) << "\n";
    emit(c.out, out, os.str());
    return 0;
}

int cmd_simulate(const Common& c, const std::string& grid_spec, std::size_t trials,
                 std::uint64_t seed, bool load_aware, std::ostream& out) {
    const ScenarioConfig sc = load_scenario(c.scenario);
    const auto grid = parse_grid(grid_spec);
    const EmpiricalCurve curve = empirical_coverage(sc, grid, trials, seed, load_aware, c.threads);

    const std::vector<std::string> cols = {"gamma_bps", "p_cov", "n_trials", "wilson_halfwidth"};
    if (c.json) {
        json j = envelope("simulate", c.scenario, sc);
        j["provenance"] = {{"grid", grid_spec}, {"load_aware", load_aware}, {"seed", seed},
                           {"n_trials", trials}};
        j["columns"] = cols;
        j["rows"] = json::array();
        for (std::size_t i = 0; i < grid.size(); ++i)
            j["rows"].push_back({curve.thresholds[i], curve.coverage[i], curve.n_trials,
                                 curve.halfwidth[i]});
        emit(c.out, out, j.dump(2) + "\n");
        return 0;
    }
    std::ostringstream os;
    os << "gamma_bps,p_cov,n_trials,wilson_halfwidth\n";
    for (std::size_t i = 0; i < grid.size(); ++i)
        os << num(curve.thresholds[i]) << "," << num(curve.coverage[i]) << "," << curve.n_trials
           << "," << num(curve.halfwidth[i]) << "\n";
    emit(c.out, out, os.str());
    return 0;
}

int cmd_validate(const Common& c, const std::string& budget_spec, std::uint64_t seed,
                 std::ostream& out) {
    const ScenarioConfig sc = load_scenario(c.scenario);
    const ValidationBudget budget = parse_budget(budget_spec);
    const ValidationReport rep = validate_scenario(sc, budget, seed, c.threads);
    if (c.json) {
        json j = envelope("validate", c.scenario, sc);
        j["provenance"] = {{"seed", seed},
                           {"trials", budget.trials},
                           {"draws", budget.draws},
                           {"constellations", budget.constellations}};
        j["checks"] = json::array();
        for (const auto& k : rep.checks)
            j["checks"].push_back({{"name", k.name},
                                   {"result", k.skipped ? "skip" : (k.passed ? "pass" : "fail")},
                                   {"statistic", k.statistic},
                                   {"limit", k.limit},
                                   {"detail", k.detail}});
        j["passed"] = rep.passed();
        emit(c.out, out, j.dump(2) + "\n");
    } else {
        emit(c.out, out, format_report(rep));
    }
    return rep.passed() ? 0 : 3;
}

int cmd_sweep(const Common& c, const std::vector<std::string>& param_specs,
              const SweepOptions& opt, std::ostream& out) {
    const ScenarioDocument doc = load_document(c.scenario);
    const ScenarioConfig sc = scenario_from_document(doc);
    std::vector<SweepParam> params;
    for (const auto& p : param_specs) params.push_back(parse_sweep_param(p));
    const auto rows = run_sweep(doc, params, opt);
    if (c.json) {
        json j = envelope("sweep", c.scenario, sc);
        j["provenance"] = {{"metric", opt.metric.name()},
                           {"method", opt.method == SweepMethod::Analytic ? "analytic" : "mc"},
                           {"load_aware", opt.load_aware}};
        if (opt.method == SweepMethod::MonteCarlo) {
            j["provenance"]["seed"] = opt.seed;
            j["provenance"]["n_trials"] = opt.trials;
        }
        json cols = json::array();
        for (const auto& p : params) cols.push_back(p.key);
        cols.push_back("value");
        j["columns"] = cols;
        j["rows"] = json::array();
        for (const auto& r : rows) {
            json row = r.values;
            row.push_back(r.value);
            j["rows"].push_back(row);
        }
        emit(c.out, out, j.dump(2) + "\n");
    } else {
        emit(c.out, out, sweep_csv(params, rows, opt));
    }
    return 0;
}

void report_error(std::ostream& err, const std::string& kind, const std::string& message,
                  const json& extra = json::object()) {
    json j{{"error", {{"kind", kind}, {"message", message}}}};
    for (const auto& [k, v] : extra.items()) j["error"][k] = v;
    err << j.dump() << "\n";
}

}  // namespace

int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
    CLI::App app{"Coverage and rate analysis for satellite-terrestrial networks", "stin"};
    app.require_subcommand(1);
    app.set_version_flag("--version", std::string("stin ") + STIN_GIT_HASH);

    Common common;
    std::string grid = std::string(kDefaultGrid);
    bool load_aware = false;
    std::size_t trials = 100000;
    std::uint64_t seed = 42;
    std::string budget = "standard";
    std::vector<std::string> params;
    std::string metric = "median";
    std::string method = "analytic";

    auto* analyze = app.add_subcommand("analyze", "analytic rate coverage curve");
    add_common(analyze, common);
    analyze->add_option("--grid", grid, "threshold grid: log:a:b:n, lin:a:b:n or list:x,y");
    analyze->add_flag("--load-aware", load_aware, "divide rates by the mean load factors");

    auto* simulate = app.add_subcommand("simulate", "Monte Carlo rate coverage curve");
    add_common(simulate, common);
    simulate->add_option("--grid", grid, "threshold grid");
    simulate->add_option("--trials", trials, "number of trials")->check(CLI::PositiveNumber);
    simulate->add_option("--seed", seed, "master seed");
    simulate->add_flag("--load-aware", load_aware, "divide rates by the mean load factors");

    auto* validate = app.add_subcommand("validate", "cross-check analysis against simulation");
    add_common(validate, common);
    validate->add_option("--budget", budget, "quick, standard or trials=N,draws=M,constellations=K");
    validate->add_option("--seed", seed, "master seed");

    auto* sweep = app.add_subcommand("sweep", "metric over a grid of scenario values");
    add_common(sweep, common);
    sweep->add_option("--param", params, "section.key=v1,v2,... (repeatable)");
    sweep->add_option("--metric", metric, "median, p10 or coverage@<gamma_bps>");
    sweep->add_option("--method", method, "analytic or mc")
        ->check(CLI::IsMember({"analytic", "mc"}));
    sweep->add_option("--trials", trials, "trials per point for mc")->check(CLI::PositiveNumber);
    sweep->add_option("--seed", seed, "master seed for mc");
    sweep->add_flag("--load-aware", load_aware, "divide rates by the mean load factors");

    try {
        app.parse(argc, argv);
    } catch (const CLI::Success& e) {
        return app.exit(e, out, err);
    } catch (const CLI::ParseError& e) {
        report_error(err, "usage", e.what());
        return 2;
    }

    try {
        if (*analyze) return cmd_analyze(common, grid, load_aware, out);
        if (*simulate) return cmd_simulate(common, grid, trials, seed, load_aware, out);
        if (*validate) return cmd_validate(common, budget, seed, out);
        SweepOptions opt;
        opt.metric = parse_sweep_metric(metric);
        opt.method = method == "mc" ? SweepMethod::MonteCarlo : SweepMethod::Analytic;
        opt.load_aware = load_aware;
        opt.trials = trials;
        opt.seed = seed;
        opt.threads = common.threads;
        return cmd_sweep(common, params, opt, out);
    } catch (const ConfigError& e) {
        report_error(err, "config", e.what(), {{"key", e.key()}});
        return 2;
    } catch (const NonConvergence& e) {
        report_error(err, "nonconvergence", e.what(), {{"value", e.value()}, {"error", e.error()}});
        return 1;
    } catch (const SamplingGuardError& e) {
        report_error(err, "config", e.what(), {{"key", "density"}});
        return 2;
    } catch (const std::domain_error& e) {
        report_error(err, "config", e.what());
        return 2;
    }
}

}  // namespace stin
