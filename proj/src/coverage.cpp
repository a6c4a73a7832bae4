#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>
#include <utility>

#include "stin/analysis.hpp"
#include "stin/parallel.hpp"

namespace stin {

namespace {

CoverageCurve evaluate_curve(const CoverageModel& model, std::span<const double> grid,
                             LoadFactors loads) {
    const ScenarioConfig& sc = model.scenario();
    CoverageCurve curve;
    curve.pi_sat = model.association_probability(LayerRole::Satellite);
    curve.pi_terr = model.association_probability(LayerRole::Terrestrial);
    curve.p_vis_sat = model.process(LayerRole::Satellite).visibility_probability();
    curve.p_vis_terr = model.process(LayerRole::Terrestrial).visibility_probability();
    curve.load_sat = loads.satellite;
    curve.load_terr = loads.terrestrial;
    curve.points.resize(grid.size());

    auto one = [&](std::size_t i) {
        const double gamma = grid[i];
        const auto ts = model.coverage_term(
            LayerRole::Satellite, sinr_threshold(gamma, sc.bandwidth_hz, loads.satellite));
        const auto tt = model.coverage_term(
            LayerRole::Terrestrial, sinr_threshold(gamma, sc.bandwidth_hz, loads.terrestrial));
        CoveragePoint& p = curve.points[i];
        p.gamma_bps = gamma;
        p.p_cov_sat = ts.value;
        p.p_cov_terr = tt.value;
        p.p_cov = ts.value + tt.value;
        p.quad_error = ts.error + tt.error;
    };
    parallel_for(grid.size(), resolve_threads(model.options().threads), one);
    return curve;
}

}  // namespace

double sinr_threshold(double gamma_bps, double bandwidth_hz, double load) noexcept {
    return std::expm1(std::numbers::ln2 * gamma_bps * load / bandwidth_hz);
}

double CoverageCurve::max_quad_error() const noexcept {
    double m = 0.0;
    for (const auto& p : points) m = std::max(m, p.quad_error);
    return m;
}

CoverageCurve coverage_probability(const ScenarioConfig& sc, std::span<const double> gamma_grid,
                                   const AnalysisOptions& options) {
    const CoverageModel model(sc, options);
    return evaluate_curve(model, gamma_grid, {});
}

double load_factor(double user_density, double pi_conditional, double layer_density) {
    const double assigned = user_density * pi_conditional;
    if (assigned == 0.0) return 1.0;
    if (layer_density == 0.0)
        throw std::domain_error("load factor: users assigned to a layer with zero density");
    return 1.0 + assigned / layer_density;
}

LoadFactors load_factors(const CoverageModel& model) {
    const ScenarioConfig& sc = model.scenario();
    return {load_factor(sc.user_density_per_m2, model.association_probability(LayerRole::Satellite),
                        sc.satellite.density_per_m2),
            load_factor(sc.user_density_per_m2,
                        model.association_probability(LayerRole::Terrestrial),
                        sc.terrestrial.density_per_m2)};
}

LoadFactors load_factors(const ScenarioConfig& sc) { return load_factors(CoverageModel(sc)); }

CoverageCurve load_aware_coverage(const ScenarioConfig& sc, std::span<const double> gamma_grid,
                                  const AnalysisOptions& options) {
    const CoverageModel model(sc, options);
    return evaluate_curve(model, gamma_grid, load_factors(model));
}

CoverageCurve coverage_curve(const CoverageModel& model, std::span<const double> gamma_grid,
                             bool load_aware) {
    return evaluate_curve(model, gamma_grid, load_aware ? load_factors(model) : LoadFactors{});
}

double coverage_at(const CoverageModel& model, double gamma_bps, const LoadFactors& loads) {
    const double w = model.scenario().bandwidth_hz;
    double p = 0.0;
    for (const auto& [role, load] : {std::pair{LayerRole::Satellite, loads.satellite},
                                     std::pair{LayerRole::Terrestrial, loads.terrestrial}}) {
        // Past 2^1000 the threshold overflows and no link can reach it.
        if (gamma_bps * load / w > 1000.0) continue;
        p += model.coverage_term(role, sinr_threshold(gamma_bps, w, load)).value;
    }
    return p;
}

double rate_percentile(const CoverageModel& model, double percentile, bool load_aware,
                       double rel_tol) {
    if (!(percentile > 0.0 && percentile < 100.0))
        throw std::invalid_argument("percentile must lie in (0, 100)");
    const LoadFactors loads = load_aware ? load_factors(model) : LoadFactors{};
    const double target = 1.0 - percentile / 100.0;
    const double w = model.scenario().bandwidth_hz;
    // Bracket in log(gamma); coverage is nonincreasing in gamma.
    double lo = 1e-6 * w;
    if (coverage_at(model, lo, loads) < target) return 0.0;
    double hi = lo;
    do {
        lo = hi;
        hi *= 4.0;
        if (hi > 1e4 * w * std::max(loads.satellite, loads.terrestrial)) return hi;
    } while (coverage_at(model, hi, loads) >= target);
    while (hi - lo > rel_tol * lo) {
        const double mid = std::sqrt(lo * hi);
        (coverage_at(model, mid, loads) >= target ? lo : hi) = mid;
    }
    return std::sqrt(lo * hi);
}

}  // namespace stin
