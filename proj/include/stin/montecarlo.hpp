#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "stin/analysis.hpp"
#include "stin/scenario.hpp"
#include "stin/stochastic.hpp"

namespace stin {

enum class Association { None, Satellite, Terrestrial };

const char* to_string(Association a) noexcept;

struct TrialResult {
    Association associated = Association::None;
    double serving_distance_m = 0.0;
    double sinr = 0.0;
    double rate_bps = 0.0;
    double load_scaled_rate_bps = 0.0;
    std::size_t visible_sat = 0;
    std::size_t visible_terr = 0;
};

struct TrialOptions {
    /// The cap region samples every node that can be visible, and nothing far
    /// beyond; the resulting visible set has the full-sphere law.
    SamplingRegion region = SamplingRegion::VisibilityCap;
    LoadFactors loads{};
};

/// Biased association, SINR and rate for one pair of sampled constellations.
TrialResult evaluate_trial(const ScenarioConfig& sc, const ConstellationSample& sat,
                           const ConstellationSample& terr, const LoadFactors& loads = {});

/// Samples both layers with stream (seed, trial) and evaluates the trial.
TrialResult run_trial(const ScenarioConfig& sc, std::uint64_t seed, std::uint32_t trial = 0,
                      const TrialOptions& options = {});

/// Trials 0..n-1 in index order; independent of the worker count.
std::vector<TrialResult> run_trials(const ScenarioConfig& sc, std::size_t n_trials,
                                    std::uint64_t seed, const TrialOptions& options = {},
                                    int threads = 0);

struct EmpiricalCurve {
    std::vector<double> thresholds;
    std::vector<double> coverage;
    std::vector<double> halfwidth;  ///< 95% Wilson half-width
    std::size_t n_trials = 0;
};

/// Wilson score half-width for a proportion.
double wilson_halfwidth(double p_hat, std::size_t n, double z = 1.959963984540054);

/// Fraction of rates strictly above each threshold.
EmpiricalCurve empirical_curve(std::span<const double> rates, std::span<const double> grid);

std::vector<double> rates_of(std::span<const TrialResult> trials, bool load_scaled);

/// Monte Carlo rate coverage. With load_aware, rates are divided by the
/// mean-load factors from the analysis.
EmpiricalCurve empirical_coverage(const ScenarioConfig& sc, std::span<const double> gamma_grid,
                                  std::size_t n_trials, std::uint64_t master_seed,
                                  bool load_aware = false, int threads = 0);

/// Rate reached by (100 - percentile)% of users: the largest threshold with
/// coverage >= 1 - percentile/100, interpolated linearly between grid points.
double percentile_rate(const EmpiricalCurve& curve, double percentile);
double percentile_rate(const CoverageCurve& curve, double percentile);
double percentile_rate(std::span<const double> thresholds, std::span<const double> coverage,
                       double percentile);

struct LaplaceEstimate {
    double mean = 0.0;
    double std_error = 0.0;
};

/// Monte Carlo E[exp(-s I)] for the source layer's interference beyond each
/// exclusion radius; result[i][j] is radius i, s value j.
std::vector<std::vector<LaplaceEstimate>> empirical_interference_laplace(
    const ScenarioConfig& sc, LayerRole source, std::span<const double> exclusion_radii,
    std::span<const double> s_values, std::size_t n_draws, std::uint64_t seed, int threads = 0);

}  // namespace stin
