#pragma once

#include "stin/fading.hpp"
#include "stin/geometry.hpp"

namespace stin {

/// Parameters of one tier (satellite or terrestrial). Gains are effective
/// linear link gains; powers in watts.
struct NetworkLayer {
    LayerRole role = LayerRole::Satellite;
    double density_per_m2 = 0.0;
    HeightDistribution heights;
    double path_loss_exponent = 2.0;
    double tx_power_w = 1.0;
    double bias = 1.0;
    double main_gain = 1.0;
    double side_gain = 1.0;
    Fading fading = ShadowedRicianParams::rayleigh();

    /// Throws ConfigError naming the offending field.
    void validate() const;

    bool operator==(const NetworkLayer&) const = default;
};

struct ScenarioConfig {
    SphereGeometry geom;
    NetworkLayer satellite;
    NetworkLayer terrestrial;
    double bandwidth_hz = 100e6;
    double noise_psd_dbm_hz = -174.0;
    double user_density_per_m2 = 0.0;

    /// sigma^2 = N0 * W in watts.
    double noise_power_w() const noexcept;

    const NetworkLayer& layer(LayerRole role) const noexcept {
        return role == LayerRole::Satellite ? satellite : terrestrial;
    }
    NetworkLayer& layer(LayerRole role) noexcept {
        return role == LayerRole::Satellite ? satellite : terrestrial;
    }

    void validate() const;

    bool operator==(const ScenarioConfig&) const = default;
};

inline LayerRole other(LayerRole role) noexcept {
    return role == LayerRole::Satellite ? LayerRole::Terrestrial : LayerRole::Satellite;
}

double db_to_linear(double db) noexcept;
double dbm_to_watts(double dbm) noexcept;

/// Baseline parameter set: 500 km shell, uniform heights (1 km satellites,
/// 200 m towers), 43/46 dBm, 10/-10 dBi satellite beam, 100 MHz, -174 dBm/Hz.
/// Densities come from mean visible counts; fading defaults to Rayleigh.
ScenarioConfig baseline_scenario(double mean_visible_sat, double mean_visible_terr);

}  // namespace stin
