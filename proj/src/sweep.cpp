#include "stin/sweep.hpp"

#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <sstream>

#include "stin/analysis.hpp"
#include "stin/error.hpp"
#include "stin/grid.hpp"
#include "stin/montecarlo.hpp"
#include "stin/parallel.hpp"

namespace stin {

namespace {

double metric_from_curve(const SweepMetric& m, std::span<const double> grid,
                         std::span<const double> cov) {
    switch (m.kind) {
        case SweepMetric::Kind::Median: return percentile_rate(grid, cov, 50.0);
        case SweepMetric::Kind::P10: return percentile_rate(grid, cov, 10.0);
        case SweepMetric::Kind::CoverageAt: return cov[0];
    }
    return 0.0;
}

double analytic_metric(const ScenarioConfig& sc, const SweepOptions& o) {
    AnalysisOptions ao;
    ao.threads = 1;
    const CoverageModel model(sc, ao);
    switch (o.metric.kind) {
        case SweepMetric::Kind::Median: return rate_percentile(model, 50.0, o.load_aware);
        case SweepMetric::Kind::P10: return rate_percentile(model, 10.0, o.load_aware);
        case SweepMetric::Kind::CoverageAt:
            return coverage_at(model, o.metric.gamma_bps,
                               o.load_aware ? load_factors(model) : LoadFactors{});
    }
    return 0.0;
}

double mc_metric(const ScenarioConfig& sc, const SweepOptions& o) {
    std::vector<double> grid = o.metric.kind == SweepMetric::Kind::CoverageAt
                                   ? std::vector<double>{o.metric.gamma_bps}
                                   : parse_grid(o.mc_grid);
    const auto curve = empirical_coverage(sc, grid, o.trials, o.seed, o.load_aware, o.threads);
    return metric_from_curve(o.metric, curve.thresholds, curve.coverage);
}

}  // namespace

SweepParam parse_sweep_param(std::string_view spec) {
    const auto eq = spec.find('=');
    if (eq == std::string_view::npos || eq == 0)
        throw ConfigError("param", "sweep parameter must look like section.key=v1,v2");
    SweepParam p;
    p.key = std::string(spec.substr(0, eq));
    if (p.key.find('.') == std::string::npos)
        throw ConfigError(p.key, "sweep key '" + p.key + "' needs a section prefix");
    std::string_view rest = spec.substr(eq + 1);
    while (!rest.empty()) {
        const auto comma = rest.find(',');
        const std::string_view item = rest.substr(0, comma);
        if (item.empty()) throw ConfigError(p.key, "empty value in sweep list for '" + p.key + "'");
        p.values.emplace_back(item);
        if (comma == std::string_view::npos) break;
        rest = rest.substr(comma + 1);
    }
    return p;
}

std::string SweepMetric::name() const {
    switch (kind) {
        case Kind::Median: return "median";
        case Kind::P10: return "p10";
        case Kind::CoverageAt: {
            char buf[64];
            std::snprintf(buf, sizeof buf, "coverage@%.17g", gamma_bps);
            return buf;
        }
    }
    return {};
}

SweepMetric parse_sweep_metric(std::string_view spec) {
    SweepMetric m;
    if (spec == "median") return m;
    if (spec == "p10") {
        m.kind = SweepMetric::Kind::P10;
        return m;
    }
    if (spec.substr(0, 9) == "coverage@") {
        const std::string v(spec.substr(9));
        char* end = nullptr;
        const double g = std::strtod(v.c_str(), &end);
        if (v.empty() || end != v.c_str() + v.size() || !std::isfinite(g) || g < 0.0)
            throw ConfigError("metric", "bad threshold in metric '" + std::string(spec) + "'");
        m.kind = SweepMetric::Kind::CoverageAt;
        m.gamma_bps = g;
        return m;
    }
    throw ConfigError("metric", "metric must be median, p10 or coverage@<gamma>");
}

std::vector<SweepRow> run_sweep(const ScenarioDocument& base, const std::vector<SweepParam>& params,
                                const SweepOptions& options) {
    std::vector<SweepRow> rows;
    if (params.empty()) return rows;
    std::size_t total = 1;
    for (const auto& p : params) total *= p.values.size();
    if (total == 0) return rows;

    // Build and validate every scenario before any compute.
    std::vector<ScenarioConfig> scenarios;
    for (std::size_t idx = 0; idx < total; ++idx) {
        SweepRow row;
        ScenarioDocument doc = base;
        std::size_t rem = idx;
        row.values.resize(params.size());
        for (std::size_t k = params.size(); k-- > 0;) {
            const auto& p = params[k];
            row.values[k] = p.values[rem % p.values.size()];
            rem /= p.values.size();
        }
        for (std::size_t k = 0; k < params.size(); ++k) doc.set(params[k].key, row.values[k]);
        scenarios.push_back(scenario_from_document(doc));
        rows.push_back(std::move(row));
    }

    if (options.method == SweepMethod::Analytic) {
        parallel_for(total, resolve_threads(options.threads), [&](std::size_t i) {
            rows[i].value = analytic_metric(scenarios[i], options);
        });
    } else {
        for (std::size_t i = 0; i < total; ++i) rows[i].value = mc_metric(scenarios[i], options);
    }
    return rows;
}

std::string sweep_csv(const std::vector<SweepParam>& params, const std::vector<SweepRow>& rows,
                      const SweepOptions& options) {
    std::ostringstream os;
    for (const auto& p : params) os << p.key << ",";
    os << "metric,method,value\n";
    const char* method = options.method == SweepMethod::Analytic ? "analytic" : "mc";
    const std::string metric = options.metric.name();
    for (const auto& r : rows) {
        for (const auto& v : r.values) os << v << ",";
        char buf[64];
        std::snprintf(buf, sizeof buf, "%.17g", r.value);
        os << metric << "," << method << "," << buf << "\n";
    }
    return os.str();
}

}  // namespace stin
