#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "stin/fading.hpp"
#include "stin/rng.hpp"
#include "stin/scenario.hpp"

namespace stin {

struct Node {
    double direction[3];     ///< unit vector on the base sphere; user sits at +z
    double height_m;
    double radius_m;         ///< base radius + height
    double slant_range_m;
    bool visible;
    double fading_power;     ///< drawn for visible nodes only, else 0
};

enum class SamplingRegion {
    FullSphere,     ///< the whole base sphere
    VisibilityCap,  ///< only the cap that can contain visible nodes; visible set is exact
};

struct SamplingOptions {
    SamplingRegion region = SamplingRegion::FullSphere;
    double max_expected_count = 1e7;
    bool draw_fading = true;
};

struct ConstellationSample {
    LayerRole role = LayerRole::Satellite;
    std::vector<Node> nodes;
    std::uint64_t seed = 0;
    std::uint32_t trial = 0;
    SamplingRegion region = SamplingRegion::FullSphere;

    std::size_t visible_count() const noexcept;
};

/// Expected number of points the sampler draws in the given region.
double expected_sample_count(const NetworkLayer& layer, const SphereGeometry& geom,
                             SamplingRegion region);

/// Draws one marked PPP realization. Throws SamplingGuardError when the
/// expected count exceeds options.max_expected_count.
ConstellationSample sample_constellation(const NetworkLayer& layer, const SphereGeometry& geom,
                                         std::uint64_t seed, std::uint32_t trial = 0,
                                         const SamplingOptions& options = {});

/// Picks a component by its weight, then draws Gamma(k+1, rate).
double sample_gamma_mixture(const GammaMixture& mix, CounterStream& rng);
double sample_shadowed_rician_power(const ShadowedRicianParams& params, CounterStream& rng);
double sample_nakagami_power(const NakagamiParams& params, CounterStream& rng);
double sample_fading_power(const Fading& fading, CounterStream& rng);

/// Minimum slant range among visible nodes.
std::optional<double> nearest_visible_distance(const ConstellationSample& sample);

}  // namespace stin
