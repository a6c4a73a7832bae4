#pragma once

#include <string>
#include <variant>
#include <vector>

namespace stin {

/// Mixture of Gamma(k+1, rate) laws, k = 0..weights.size()-1.
/// Both fading families used here are of this form for integer orders.
struct GammaMixture {
    double rate = 1.0;
    std::vector<double> weights;

    int terms() const noexcept { return static_cast<int>(weights.size()); }
    double mean() const noexcept;
    /// E[exp(-t X)].
    double mgf(double t) const noexcept;
    /// 1 - E[exp(-t X)] without cancellation for small t.
    double one_minus_mgf(double t) const noexcept;
    double cdf(double x) const noexcept;
    double ccdf(double x) const noexcept;
    /// tails[i] = sum_{k >= i} weights[k].
    std::vector<double> tails() const;
};

/// Shadowed-Rician fading with integer shadowing order m, half scatter power b
/// and LoS power omega.
struct ShadowedRicianParams {
    int m = 1;
    double b = 0.5;
    double omega = 0.0;

    /// Throws ConfigError on m < 1, b <= 0 or omega < 0.
    static ShadowedRicianParams make(int m, double b, double omega);
    static ShadowedRicianParams rayleigh() { return {1, 0.5, 0.0}; }
    static ShadowedRicianParams frequent_heavy_shadowing() { return {1, 0.063, 8.97e-4}; }
    static ShadowedRicianParams average_shadowing() { return {10, 0.126, 0.835}; }
    static ShadowedRicianParams infrequent_light_shadowing() { return {19, 0.158, 1.29}; }

    double K() const noexcept { return 2.0 * b * m / (2.0 * b * m + omega); }
    double delta() const noexcept { return omega / (2.0 * b * (2.0 * b * m + omega)); }
    double delta_bar() const noexcept { return m / (2.0 * b * m + omega); }
    double mean() const noexcept { return 2.0 * b + omega; }

    /// Power PDF as the finite series in (delta x)^k.
    double pdf(double x) const;
    /// Power CDF through the incomplete-gamma sums.
    double cdf(double x) const;
    /// Closed-form E[exp(-t X)] = (1+2bt)^(m-1) / (1 + t(2bm+omega)/m)^m.
    double mgf(double t) const noexcept;

    GammaMixture mixture() const;

    bool operator==(const ShadowedRicianParams&) const = default;
};

/// Nakagami-m envelope, power Gamma(n, rate n) with unit mean.
struct NakagamiParams {
    int n = 1;

    static NakagamiParams make(int n);

    double pdf(double x) const;
    double cdf(double x) const;
    GammaMixture mixture() const;

    bool operator==(const NakagamiParams&) const = default;
};

using Fading = std::variant<ShadowedRicianParams, NakagamiParams>;

GammaMixture fading_mixture(const Fading& f);
std::string describe(const Fading& f);

}  // namespace stin
