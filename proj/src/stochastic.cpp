#include "stin/stochastic.hpp"

#include <cmath>
#include <numbers>
#include <sstream>

#include "stin/error.hpp"

namespace stin {

namespace {

std::uint32_t layer_tag(LayerRole role) { return role == LayerRole::Satellite ? 1u : 2u; }

// Largest 1 - cos(theta) that the region covers.
double region_w_max(const NetworkLayer& layer, const SphereGeometry& geom,
                    SamplingRegion region) {
    if (region == SamplingRegion::FullSphere) return 2.0;
    const double h = layer.heights.h_max_m;
    return (geom.base_offset(layer.role) + h) / (geom.base_radius(layer.role) + h);
}

}  // namespace

std::size_t ConstellationSample::visible_count() const noexcept {
    std::size_t n = 0;
    for (const Node& node : nodes) n += node.visible ? 1 : 0;
    return n;
}

double expected_sample_count(const NetworkLayer& layer, const SphereGeometry& geom,
                             SamplingRegion region) {
    const double R = geom.base_radius(layer.role);
    return layer.density_per_m2 * 2.0 * std::numbers::pi * R * R *
           region_w_max(layer, geom, region);
}

ConstellationSample sample_constellation(const NetworkLayer& layer, const SphereGeometry& geom,
                                         std::uint64_t seed, std::uint32_t trial,
                                         const SamplingOptions& options) {
    ConstellationSample out;
    out.role = layer.role;
    out.seed = seed;
    out.trial = trial;
    out.region = options.region;

    const double mean = expected_sample_count(layer, geom, options.region);
    if (mean > options.max_expected_count) {
        std::ostringstream msg;
        msg << to_string(layer.role) << " layer expects " << mean
            << " sampled nodes, above the guard of " << options.max_expected_count;
        throw SamplingGuardError(msg.str());
    }
    if (!(mean > 0.0)) return out;

    const std::uint32_t tag = layer_tag(layer.role);
    CounterStream count_rng(seed, 0xFFFFFFFFu, trial, tag, StreamPurpose::Count);
    const auto n = static_cast<std::size_t>(count_rng.poisson(mean));
    out.nodes.reserve(n);

    const double R = geom.base_radius(layer.role);
    const double re = geom.earth_radius_m;
    const double offset = geom.base_offset(layer.role);
    const double w_max = region_w_max(layer, geom, options.region);
    const auto* sr = std::get_if<ShadowedRicianParams>(&layer.fading);
    const GammaMixture mix = fading_mixture(layer.fading);

    for (std::size_t i = 0; i < n; ++i) {
        const auto idx = static_cast<std::uint32_t>(i);
        CounterStream rng(seed, idx, trial, tag, StreamPurpose::Node);
        // z = R(1 - w) with w uniform: the hat-box construction.
        const double w = w_max * rng.uniform();
        const double phi = 2.0 * std::numbers::pi * rng.uniform();
        const double h = layer.heights.quantile(rng.uniform());

        Node node{};
        const double sin_t = std::sqrt(std::max(0.0, w * (2.0 - w)));
        node.direction[0] = sin_t * std::cos(phi);
        node.direction[1] = sin_t * std::sin(phi);
        node.direction[2] = 1.0 - w;
        node.height_m = h;
        node.radius_m = R + h;
        const double a = offset + h;  // u - R_E
        const double u = node.radius_m;
        const double d2 = a * a + 2.0 * re * u * w;
        node.slant_range_m = std::sqrt(d2);
        node.visible = d2 <= a * (u + re);
        if (node.visible && options.draw_fading) {
            CounterStream frng(seed, idx, trial, tag, StreamPurpose::Fading);
            node.fading_power = sr ? sample_gamma_mixture(mix, frng)
                                   : sample_nakagami_power(std::get<NakagamiParams>(layer.fading), frng);
        }
        out.nodes.push_back(node);
    }
    return out;
}

double sample_gamma_mixture(const GammaMixture& mix, CounterStream& rng) {
    const double u = rng.uniform();
    double acc = 0.0;
    int k = mix.terms() - 1;
    for (int j = 0; j < mix.terms(); ++j) {
        acc += mix.weights[j];
        if (u < acc) {
            k = j;
            break;
        }
    }
    return rng.gamma_integer(k + 1) / mix.rate;
}

double sample_shadowed_rician_power(const ShadowedRicianParams& params, CounterStream& rng) {
    // The power law is a Binomial-weighted mixture of Gamma(k+1, delta_bar).
    return sample_gamma_mixture(params.mixture(), rng);
}

double sample_nakagami_power(const NakagamiParams& params, CounterStream& rng) {
    return rng.gamma_integer(params.n) / params.n;
}

double sample_fading_power(const Fading& fading, CounterStream& rng) {
    if (const auto* sr = std::get_if<ShadowedRicianParams>(&fading))
        return sample_shadowed_rician_power(*sr, rng);
    return sample_nakagami_power(std::get<NakagamiParams>(fading), rng);
}

std::optional<double> nearest_visible_distance(const ConstellationSample& sample) {
    std::optional<double> best;
    for (const Node& node : sample.nodes) {
        if (node.visible && (!best || node.slant_range_m < *best)) best = node.slant_range_m;
    }
    return best;
}

}  // namespace stin
