#pragma once

#include <cmath>
#include <string>

#include "stin/analysis.hpp"
#include "stin/scenario.hpp"

namespace stin::test {

inline std::string source_path(const std::string& rel) {
    return std::string(STIN_SOURCE_DIR) + "/" + rel;
}

inline bool rel_close(double a, double b, double tol) {
    return std::abs(a - b) <= tol * std::max(std::abs(a), std::abs(b));
}

/// Rayleigh on both layers, densities from mean visible counts.
inline ScenarioConfig fig3_config() {
    ScenarioConfig sc = baseline_scenario(100, 5000);
    sc.satellite.bias = 10.0;
    return sc;
}

/// Satellites on the shell itself (h = 0), density for the given mean visible count.
inline NetworkLayer shell_satellites(const SphereGeometry& g, double mean_visible) {
    NetworkLayer l = baseline_scenario(1, 1).satellite;
    l.heights = HeightDistribution::degenerate(0.0);
    l.density_per_m2 = mean_visible / (2.0 * M_PI * g.orbit_radius_m * g.standard_orbit_altitude_m);
    return l;
}

}  // namespace stin::test
