#pragma once

#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

#include "stin/scenario.hpp"

namespace stin {

struct ValidationBudget {
    std::size_t trials = 100000;        ///< end-to-end Monte Carlo trials
    std::size_t draws = 100000;         ///< per-layer draws for Laplace points
    std::size_t constellations = 10000; ///< per-layer draws for count/distance laws
};

/// "quick", "standard" or a comma list such as "trials=2000,draws=500".
ValidationBudget parse_budget(std::string_view spec);

struct CheckResult {
    std::string name;
    bool passed = true;
    bool skipped = false;
    double statistic = 0.0;  ///< what was measured
    double limit = 0.0;      ///< pass boundary for the statistic
    std::string detail;
};

struct ValidationReport {
    std::vector<CheckResult> checks;
    bool passed() const noexcept;
};

/// Runs the oracle suite: Poisson visible counts, nearest-distance KS,
/// association fractions, Laplace points, analytic-vs-empirical coverage and
/// the Rayleigh reduction identity when both layers are Rayleigh.
ValidationReport validate_scenario(const ScenarioConfig& sc, const ValidationBudget& budget,
                                   std::uint64_t seed, int threads = 0);

std::string format_report(const ValidationReport& report);

}  // namespace stin
