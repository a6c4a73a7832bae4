#include "stin/scenario.hpp"

#include <cmath>
#include <string>

#include "stin/analysis.hpp"
#include "stin/error.hpp"

namespace stin {

namespace {

std::string prefixed(const NetworkLayer& l, const char* key) {
    return std::string(to_string(l.role)) + "." + key;
}

bool finite_positive(double x) { return std::isfinite(x) && x > 0.0; }

}  // namespace

void NetworkLayer::validate() const {
    if (!(density_per_m2 >= 0.0) || !std::isfinite(density_per_m2))
        throw ConfigError(prefixed(*this, "density"), "density must be finite and >= 0");
    if (!(path_loss_exponent >= 2.0) || !std::isfinite(path_loss_exponent))
        throw ConfigError(prefixed(*this, "path_loss_exponent"), "path-loss exponent must be >= 2");
    if (!finite_positive(tx_power_w))
        throw ConfigError(prefixed(*this, "tx_power"), "transmit power must be positive");
    if (!finite_positive(bias)) throw ConfigError(prefixed(*this, "bias"), "bias must be positive");
    if (!finite_positive(side_gain))
        throw ConfigError(prefixed(*this, "side_gain"), "side-lobe gain must be positive");
    if (!finite_positive(main_gain) || main_gain < side_gain)
        throw ConfigError(prefixed(*this, "main_gain"), "main gain must be >= side-lobe gain");
    if (!(heights.h_min_m >= 0.0) || !(heights.h_max_m >= heights.h_min_m))
        throw ConfigError(prefixed(*this, "height"), "height support must satisfy 0 <= min <= max");
    const bool sr = std::holds_alternative<ShadowedRicianParams>(fading);
    if (sr != (role == LayerRole::Satellite))
        throw ConfigError(prefixed(*this, "fading"),
                          "satellites use shadowed-rician fading, terrestrial nodes nakagami");
    if (sr) {
        const auto& p = std::get<ShadowedRicianParams>(fading);
        ShadowedRicianParams::make(p.m, p.b, p.omega);
    } else {
        NakagamiParams::make(std::get<NakagamiParams>(fading).n);
    }
}

double ScenarioConfig::noise_power_w() const noexcept {
    return dbm_to_watts(noise_psd_dbm_hz) * bandwidth_hz;
}

void ScenarioConfig::validate() const {
    SphereGeometry::make(geom.earth_radius_m, geom.orbit_radius_m);
    if (geom.standard_orbit_altitude_m != geom.orbit_radius_m - geom.earth_radius_m)
        throw ConfigError("orbit_radius", "orbit altitude inconsistent with radii");
    if (satellite.role != LayerRole::Satellite || terrestrial.role != LayerRole::Terrestrial)
        throw ConfigError("role", "layer roles are swapped");
    satellite.validate();
    terrestrial.validate();
    if (!finite_positive(bandwidth_hz))
        throw ConfigError("bandwidth", "bandwidth must be positive");
    if (!std::isfinite(noise_psd_dbm_hz))
        throw ConfigError("noise_psd_dbm_hz", "noise PSD must be finite");
    if (!(user_density_per_m2 >= 0.0) || !std::isfinite(user_density_per_m2))
        throw ConfigError("user_density", "user density must be finite and >= 0");
}

double db_to_linear(double db) noexcept { return std::pow(10.0, db / 10.0); }

double dbm_to_watts(double dbm) noexcept { return std::pow(10.0, (dbm - 30.0) / 10.0); }

ScenarioConfig baseline_scenario(double mean_visible_sat, double mean_visible_terr) {
    ScenarioConfig c;
    c.geom = SphereGeometry::make(6371e3, 6871e3);

    c.satellite.role = LayerRole::Satellite;
    c.satellite.heights = HeightDistribution::uniform(0.0, 1000.0);
    c.satellite.path_loss_exponent = 2.0;
    c.satellite.tx_power_w = dbm_to_watts(43.0);
    c.satellite.main_gain = db_to_linear(10.0);
    c.satellite.side_gain = db_to_linear(-10.0);
    c.satellite.fading = ShadowedRicianParams::rayleigh();

    c.terrestrial.role = LayerRole::Terrestrial;
    c.terrestrial.heights = HeightDistribution::uniform(0.0, 200.0);
    c.terrestrial.path_loss_exponent = 4.0;
    c.terrestrial.tx_power_w = dbm_to_watts(46.0);
    c.terrestrial.main_gain = 1.0;
    c.terrestrial.side_gain = 1.0;
    c.terrestrial.fading = NakagamiParams{1};

    c.bandwidth_hz = 100e6;
    c.noise_psd_dbm_hz = -174.0;

    c.satellite.density_per_m2 = density_from_mean_visible(c.satellite, c.geom, mean_visible_sat);
    c.terrestrial.density_per_m2 =
        density_from_mean_visible(c.terrestrial, c.geom, mean_visible_terr);
    return c;
}

}  // namespace stin
