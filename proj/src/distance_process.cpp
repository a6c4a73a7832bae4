#include <algorithm>
#include <cmath>
#include <numbers>

#include "stin/analysis.hpp"

namespace stin {

namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;

// Height integrals are smooth on each branch; one or two panels suffice.
const QuadratureSpec kHeightSpec{1e-300, 1e-12, 200, true};

}  // namespace

DistanceProcess::DistanceProcess(const NetworkLayer& layer, const SphereGeometry& geom)
    : role_(layer.role),
      lambda_(layer.density_per_m2),
      base_radius_(geom.base_radius(layer.role)),
      earth_radius_(geom.earth_radius_m),
      offset_(geom.base_offset(layer.role)),
      heights_(layer.heights),
      geom_(geom),
      window_(slant_range_window(layer.role, geom, layer.heights)) {
    const double R = base_radius_;
    const double scale = lambda_ * kTwoPi * R * R;
    if (heights_.is_degenerate()) {
        const double h = heights_.h_min_m;
        visible_mean_ = scale * (offset_ + h) / (R + h);
    } else if (lambda_ > 0.0) {
        auto ratio = [&](double h) { return (offset_ + h) / (R + h); };
        const QuadResult q = integrate_1d(ratio, heights_.h_min_m, heights_.h_max_m, kHeightSpec);
        visible_mean_ = scale * q.value / heights_.width();
        for (double k : {cap_window(role_, geom_, heights_.h_max_m).r_min_m,
                         cap_window(role_, geom_, heights_.h_min_m).r_max_m}) {
            if (k > window_.r_min_m && k < window_.r_max_m) kinks_.push_back(k);
        }
        std::sort(kinks_.begin(), kinks_.end());
    }
}

double DistanceProcess::intensity(double v) const {
    if (lambda_ == 0.0 || !window_.contains(v)) return 0.0;
    const double R = base_radius_;
    const double pref = lambda_ * kTwoPi * v * R * R / earth_radius_;
    if (heights_.is_degenerate()) {
        const double h = heights_.h_min_m;
        return cap_window(role_, geom_, h).contains(v) ? pref / (R + h) : 0.0;
    }
    const auto b = height_integration_bounds(role_, geom_, heights_, v);
    if (!b) return 0.0;
    // integral of 1/(R+h) over [h_low, h_high], divided by the support width
    const double w = std::log1p((b->h_high_m - b->h_low_m) / (R + b->h_low_m)) / heights_.width();
    return pref * w;
}

double DistanceProcess::cumulative(double r) const {
    if (lambda_ == 0.0 || r <= window_.r_min_m) return 0.0;
    if (r >= window_.r_max_m) return visible_mean_;
    if (heights_.is_degenerate()) return lambda_ * cap_area(role_, geom_, heights_.h_min_m, r);
    // Heights above r - offset see an empty cap.
    const double upper = std::min(heights_.h_max_m, r - offset_);
    if (upper <= heights_.h_min_m) return 0.0;
    const double R = base_radius_;
    const double re = earth_radius_;
    const double h_sat = (r * r - offset_ * (re + R)) / (std::sqrt(r * r + re * re) + R);
    const double cut[1] = {h_sat};
    auto area = [&](double h) { return cap_area(role_, geom_, h, r); };
    const QuadResult q = integrate_1d(area, heights_.h_min_m, upper, kHeightSpec, cut);
    return lambda_ * q.value / heights_.width();
}

double DistanceProcess::cumulative_by_intensity(double r) const {
    if (lambda_ == 0.0 || r <= window_.r_min_m) return 0.0;
    const double hi = std::min(r, window_.r_max_m);
    auto mu = [&](double v) { return intensity(v); };
    const QuadResult q = integrate_1d(mu, window_.r_min_m, hi, kHeightSpec, kinks_);
    return q.value;
}

double DistanceProcess::visibility_probability() const noexcept {
    return -std::expm1(-visible_mean_);
}

Visibility visibility_probability(const NetworkLayer& layer, const SphereGeometry& geom) {
    const DistanceProcess p(layer, geom);
    return {p.visible_mean(), p.visibility_probability()};
}

double density_from_mean_visible(const NetworkLayer& layer, const SphereGeometry& geom,
                                 double mean_visible) {
    if (mean_visible == 0.0) return 0.0;
    NetworkLayer unit = layer;
    unit.density_per_m2 = 1.0;
    return mean_visible / DistanceProcess(unit, geom).visible_mean();
}

double nearest_distance_pdf(const NetworkLayer& layer, const SphereGeometry& geom, double r) {
    const DistanceProcess p(layer, geom);
    const double pv = p.visibility_probability();
    if (pv == 0.0) return 0.0;
    return p.intensity(r) * std::exp(-p.cumulative(r)) / pv;
}

double nearest_distance_cdf(const NetworkLayer& layer, const SphereGeometry& geom, double r) {
    const DistanceProcess p(layer, geom);
    const double pv = p.visibility_probability();
    if (pv == 0.0) return 0.0;
    return -std::expm1(-p.cumulative(r)) / pv;
}

}  // namespace stin
