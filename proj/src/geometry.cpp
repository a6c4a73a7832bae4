#include "stin/geometry.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>

#include "stin/error.hpp"

namespace stin {

namespace {

constexpr double kPi = std::numbers::pi;

// Middle branch written as pi R^2 (r - a)(r + a) / (R_E u) with a = u - R_E,
// which avoids the large cancellation of the h_r form. r - a is formed as
// (r - offset) - h so it stays exact near the lower breakpoint.
double cap_area_impl(double base_radius, double offset, double earth_radius, double h,
                     double r) {
    const double u = base_radius + h;
    const double a = offset + h;  // u - R_E without the subtraction
    const double gap = (r - offset) - h;
    if (gap < 0.0) return 0.0;
    const double scale = kPi * base_radius * base_radius;
    if (r * r >= a * (u + earth_radius)) return 2.0 * scale * a / u;
    return scale * gap * (r + a) / (earth_radius * u);
}

}  // namespace

const char* to_string(LayerRole role) noexcept {
    return role == LayerRole::Satellite ? "satellite" : "terrestrial";
}

SphereGeometry SphereGeometry::make(double earth_radius_m, double orbit_radius_m) {
    if (!(earth_radius_m > 0.0) || !std::isfinite(earth_radius_m))
        throw ConfigError("earth_radius", "earth radius must be positive and finite");
    if (!(orbit_radius_m > earth_radius_m) || !std::isfinite(orbit_radius_m))
        throw ConfigError("orbit_radius", "orbit radius must exceed the earth radius");
    return {earth_radius_m, orbit_radius_m, orbit_radius_m - earth_radius_m};
}

HeightDistribution HeightDistribution::uniform(double h_min_m, double h_max_m) {
    if (!(h_min_m >= 0.0) || !(h_max_m >= h_min_m) || !std::isfinite(h_max_m))
        throw ConfigError("height", "height support must satisfy 0 <= h_min <= h_max");
    if (h_min_m == h_max_m) return degenerate(h_min_m);
    return {Kind::Uniform, h_min_m, h_max_m};
}

HeightDistribution HeightDistribution::degenerate(double h_m) {
    if (!(h_m >= 0.0) || !std::isfinite(h_m))
        throw ConfigError("height", "height must be nonnegative");
    return {Kind::Degenerate, h_m, h_m};
}

double HeightDistribution::pdf(double h) const noexcept {
    if (is_degenerate()) return h == h_min_m ? std::numeric_limits<double>::infinity() : 0.0;
    return (h >= h_min_m && h <= h_max_m) ? 1.0 / width() : 0.0;
}

double HeightDistribution::cdf(double h) const noexcept {
    if (h < h_min_m) return 0.0;
    if (h >= h_max_m) return 1.0;
    return (h - h_min_m) / width();
}

double HeightDistribution::quantile(double u) const noexcept {
    if (is_degenerate()) return h_min_m;
    return h_min_m + u * width();
}

double cap_area_terrestrial(const SphereGeometry& geom, double h, double r) {
    return cap_area_impl(geom.earth_radius_m, 0.0, geom.earth_radius_m, h, r);
}

double cap_area_satellite(const SphereGeometry& geom, double h, double r) {
    return cap_area_impl(geom.orbit_radius_m, geom.standard_orbit_altitude_m,
                         geom.earth_radius_m, h, r);
}

double cap_area(LayerRole role, const SphereGeometry& geom, double h, double r) {
    return role == LayerRole::Satellite ? cap_area_satellite(geom, h, r)
                                        : cap_area_terrestrial(geom, h, r);
}

double cap_area_derivative(LayerRole role, const SphereGeometry& geom, double h, double r) {
    const CapWindow w = cap_window(role, geom, h);
    if (!(r > w.r_min_m && r < w.r_max_m)) return 0.0;
    const double R = geom.base_radius(role);
    return 2.0 * kPi * r * R * R / (geom.earth_radius_m * (R + h));
}

CapWindow cap_window(LayerRole role, const SphereGeometry& geom, double h) {
    const double a = geom.base_offset(role) + h;
    const double u = geom.base_radius(role) + h;
    return {a, std::sqrt(a * (u + geom.earth_radius_m))};
}

CapWindow slant_range_window(LayerRole role, const SphereGeometry& geom,
                             const HeightDistribution& heights) {
    return {cap_window(role, geom, heights.h_min_m).r_min_m,
            cap_window(role, geom, heights.h_max_m).r_max_m};
}

std::optional<HeightInterval> height_integration_bounds(LayerRole role,
                                                        const SphereGeometry& geom,
                                                        const HeightDistribution& heights,
                                                        double r) {
    const double R = geom.base_radius(role);
    const double re = geom.earth_radius_m;
    const double offset = geom.base_offset(role);
    if (!(r >= 0.0)) return std::nullopt;
    // sqrt(r^2 + R_E^2) - R, rationalized.
    const double lowest = (r * r - offset * (re + R)) / (std::sqrt(r * r + re * re) + R);
    double lo = std::max(heights.h_min_m, lowest);
    double hi = std::min(heights.h_max_m, r - offset);
    const double tol = 64.0 * std::numeric_limits<double>::epsilon() * R;
    if (lo > hi) {
        if (lo - hi > tol) return std::nullopt;
        lo = hi = std::clamp(0.5 * (lo + hi), heights.h_min_m, heights.h_max_m);
    }
    return HeightInterval{lo, hi};
}

}  // namespace stin
