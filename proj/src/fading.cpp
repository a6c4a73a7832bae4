#include "stin/fading.hpp"

#include <boost/math/special_functions/gamma.hpp>
#include <cmath>
#include <numeric>
#include <sstream>

#include "stin/error.hpp"
#include "stin/special.hpp"

namespace stin {

double GammaMixture::mean() const noexcept {
    double s = 0.0;
    for (int k = 0; k < terms(); ++k) s += weights[k] * (k + 1);
    return s / rate;
}

double GammaMixture::mgf(double t) const noexcept {
    const double l = std::log1p(t / rate);
    double s = 0.0;
    for (int k = 0; k < terms(); ++k) s += weights[k] * std::exp(-(k + 1) * l);
    return s;
}

double GammaMixture::one_minus_mgf(double t) const noexcept {
    const double l = std::log1p(t / rate);
    double s = 0.0;
    for (int k = 0; k < terms(); ++k) s -= weights[k] * std::expm1(-(k + 1) * l);
    return s;
}

double GammaMixture::ccdf(double x) const noexcept {
    if (x <= 0.0) return 1.0;
    // P[Gamma(k+1) > y] = e^{-y} sum_{i<=k} y^i / i!
    const double y = rate * x;
    double term = std::exp(-y);
    double partial = 0.0;
    double s = 0.0;
    for (int k = 0; k < terms(); ++k) {
        if (k > 0) term *= y / k;
        partial += term;
        s += weights[k] * partial;
    }
    return s;
}

double GammaMixture::cdf(double x) const noexcept {
    if (x <= 0.0) return 0.0;
    double s = 0.0;
    for (int k = 0; k < terms(); ++k)
        s += weights[k] * boost::math::gamma_p(static_cast<double>(k + 1), rate * x);
    return s;
}

std::vector<double> GammaMixture::tails() const {
    std::vector<double> t(weights.size());
    double acc = 0.0;
    for (int k = terms() - 1; k >= 0; --k) {
        acc += weights[k];
        t[k] = acc;
    }
    return t;
}

ShadowedRicianParams ShadowedRicianParams::make(int m, double b, double omega) {
    if (m < 1) throw ConfigError("fading_m", "shadowed-rician m must be a positive integer");
    if (!(b > 0.0) || !std::isfinite(b))
        throw ConfigError("fading_b", "shadowed-rician b must be positive");
    if (!(omega >= 0.0) || !std::isfinite(omega))
        throw ConfigError("fading_omega", "shadowed-rician omega must be nonnegative");
    return {m, b, omega};
}

double ShadowedRicianParams::pdf(double x) const {
    if (x < 0.0) return 0.0;
    const double d = delta();
    double s = 0.0;
    double fact = 1.0;
    for (int k = 0; k < m; ++k) {
        if (k > 0) fact *= k;
        s += pochhammer(1.0 - m, k) * std::pow(-1.0, k) * std::pow(d * x, k) / (fact * fact);
    }
    return std::pow(K(), m) / (2.0 * b) * std::exp(-x * (1.0 / (2.0 * b) - d)) * s;
}

double ShadowedRicianParams::cdf(double x) const { return mixture().cdf(x); }

double ShadowedRicianParams::mgf(double t) const noexcept {
    return std::exp((m - 1) * std::log1p(2.0 * b * t) -
                    m * std::log1p(t * (2.0 * b * m + omega) / m));
}

GammaMixture ShadowedRicianParams::mixture() const {
    GammaMixture g;
    g.rate = delta_bar();
    g.weights.resize(static_cast<std::size_t>(m));
    const double d = delta();
    const double pref = std::pow(K(), m) / (2.0 * b);
    double fact = 1.0;
    for (int k = 0; k < m; ++k) {
        if (k > 0) fact *= k;
        // integral of x^k e^{-delta_bar x} is k! / delta_bar^{k+1}
        g.weights[k] = pref * pochhammer(1.0 - m, k) * std::pow(-d, k) / fact /
                       std::pow(g.rate, k + 1);
    }
    return g;
}

NakagamiParams NakagamiParams::make(int n) {
    if (n < 1) throw ConfigError("nakagami_n", "nakagami n must be a positive integer");
    return {n};
}

double NakagamiParams::pdf(double x) const {
    if (x < 0.0) return 0.0;
    return std::exp(n * std::log(static_cast<double>(n)) - std::lgamma(n) + (n - 1) * std::log(x) -
                    n * x);
}

double NakagamiParams::cdf(double x) const {
    if (x <= 0.0) return 0.0;
    return boost::math::gamma_p(static_cast<double>(n), n * x);
}

GammaMixture NakagamiParams::mixture() const {
    GammaMixture g;
    g.rate = n;
    g.weights.assign(static_cast<std::size_t>(n), 0.0);
    g.weights.back() = 1.0;
    return g;
}

GammaMixture fading_mixture(const Fading& f) {
    return std::visit([](const auto& p) { return p.mixture(); }, f);
}

std::string describe(const Fading& f) {
    std::ostringstream os;
    if (const auto* sr = std::get_if<ShadowedRicianParams>(&f)) {
        os << "shadowed-rician(m=" << sr->m << ", b=" << sr->b << ", omega=" << sr->omega << ")";
    } else {
        os << "nakagami(n=" << std::get<NakagamiParams>(f).n << ")";
    }
    return os.str();
}

}  // namespace stin
