#pragma once

#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

#include "stin/scenario_file.hpp"

namespace stin {

/// One swept scenario key ("section.key") and its values, kept as text so
/// unit-suffixed keys go through the normal scenario parser.
struct SweepParam {
    std::string key;
    std::vector<std::string> values;
};

/// "satellite.bias=0.5,2,8". An empty value list is allowed.
SweepParam parse_sweep_param(std::string_view spec);

struct SweepMetric {
    enum class Kind { Median, P10, CoverageAt };
    Kind kind = Kind::Median;
    double gamma_bps = 0.0;  ///< for CoverageAt

    std::string name() const;
};

/// "median", "p10" or "coverage@<gamma_bps>".
SweepMetric parse_sweep_metric(std::string_view spec);

enum class SweepMethod { Analytic, MonteCarlo };

struct SweepOptions {
    SweepMetric metric;
    SweepMethod method = SweepMethod::Analytic;
    bool load_aware = false;
    std::size_t trials = 20000;
    std::uint64_t seed = 1;
    int threads = 0;
    /// Threshold grid for Monte Carlo percentiles.
    std::string mc_grid = "log:1e4:1e10:361";
};

struct SweepRow {
    std::vector<std::string> values;  ///< one per SweepParam, same order
    double value = 0.0;
};

/// Cartesian product of the parameter values, first parameter slowest.
/// No parameters, or any empty value list, gives no rows.
std::vector<SweepRow> run_sweep(const ScenarioDocument& base, const std::vector<SweepParam>& params,
                                const SweepOptions& options);

/// Long format: one column per parameter, then metric, method, value.
std::string sweep_csv(const std::vector<SweepParam>& params, const std::vector<SweepRow>& rows,
                      const SweepOptions& options);

}  // namespace stin
