#pragma once

#include <optional>

namespace stin {

enum class LayerRole { Satellite, Terrestrial };

const char* to_string(LayerRole role) noexcept;

/// Earth ball of radius R_E and the satellite base sphere of radius R_S.
struct SphereGeometry {
    double earth_radius_m = 6371e3;
    double orbit_radius_m = 6871e3;
    double standard_orbit_altitude_m = 500e3;  ///< R_S - R_E

    /// Throws ConfigError unless orbit_radius > earth_radius > 0.
    static SphereGeometry make(double earth_radius_m, double orbit_radius_m);

    double base_radius(LayerRole role) const noexcept {
        return role == LayerRole::Satellite ? orbit_radius_m : earth_radius_m;
    }
    /// Base radius minus Earth radius: h_S for satellites, 0 for terrestrial.
    double base_offset(LayerRole role) const noexcept {
        return role == LayerRole::Satellite ? standard_orbit_altitude_m : 0.0;
    }

    bool operator==(const SphereGeometry&) const = default;
};

/// i.i.d. node height marks. Degenerate heights are kept exact so integrals
/// over h collapse to point evaluations.
struct HeightDistribution {
    enum class Kind { Uniform, Degenerate };

    Kind kind = Kind::Degenerate;
    double h_min_m = 0.0;
    double h_max_m = 0.0;

    static HeightDistribution uniform(double h_min_m, double h_max_m);
    static HeightDistribution degenerate(double h_m);

    bool is_degenerate() const noexcept { return kind == Kind::Degenerate; }
    double width() const noexcept { return h_max_m - h_min_m; }

    double pdf(double h) const noexcept;
    double cdf(double h) const noexcept;
    /// Inverse CDF at u in [0, 1).
    double quantile(double u) const noexcept;

    bool operator==(const HeightDistribution&) const = default;
};

/// Feasible slant-range interval [r_min, r_max].
struct CapWindow {
    double r_min_m = 0.0;
    double r_max_m = 0.0;

    bool contains(double r) const noexcept { return r >= r_min_m && r <= r_max_m; }
};

/// Area of the inner cap (on the Earth) seen within slant range r of the
/// typical user by a terrestrial node at height h.
double cap_area_terrestrial(const SphereGeometry& geom, double h, double r);

/// Same on the satellite base sphere of radius R_S.
double cap_area_satellite(const SphereGeometry& geom, double h, double r);

double cap_area(LayerRole role, const SphereGeometry& geom, double h, double r);

/// d/dr of the cap area. Zero outside the open middle branch.
double cap_area_derivative(LayerRole role, const SphereGeometry& geom, double h, double r);

/// Slant-range window of a single height h.
CapWindow cap_window(LayerRole role, const SphereGeometry& geom, double h);

/// Union of the per-height windows over the height support.
CapWindow slant_range_window(LayerRole role, const SphereGeometry& geom,
                             const HeightDistribution& heights);

struct HeightInterval {
    double h_low_m;
    double h_high_m;
};

/// Heights for which a node at slant range exactly r is visible.
/// Empty when r lies outside the layer's window.
std::optional<HeightInterval> height_integration_bounds(LayerRole role,
                                                        const SphereGeometry& geom,
                                                        const HeightDistribution& heights,
                                                        double r);

}  // namespace stin
