#include <algorithm>
#include <cmath>
#include <sstream>

#include "stin/analysis.hpp"
#include "stin/error.hpp"

namespace stin {

namespace {

// Levels of Lambda_o(r) + Lambda_x(r_eq) used to split the outer integral.
constexpr double kLevels[] = {1e-3, 1e-2, 0.1, 0.3, 1.0, 2.0, 4.0, 8.0, 16.0, 32.0};
// Beyond this total the serving density mass is below e^-50.
constexpr double kTruncationLevel = 50.0;

double inverse_equivalent_distance(const ScenarioConfig& sc, LayerRole serving, double r_eq) {
    const NetworkLayer& o = sc.layer(serving);
    const NetworkLayer& x = sc.layer(other(serving));
    const double c = std::pow(x.tx_power_w * x.bias / (o.tx_power_w * o.bias),
                              1.0 / x.path_loss_exponent);
    return std::pow(r_eq / c, x.path_loss_exponent / o.path_loss_exponent);
}

}  // namespace

double biased_equivalent_distance(const ScenarioConfig& sc, LayerRole serving, double r) {
    const NetworkLayer& o = sc.layer(serving);
    const NetworkLayer& x = sc.layer(other(serving));
    const double c = std::pow(x.tx_power_w * x.bias / (o.tx_power_w * o.bias),
                              1.0 / x.path_loss_exponent);
    return c * std::pow(r, o.path_loss_exponent / x.path_loss_exponent);
}

CoverageModel::CoverageModel(const ScenarioConfig& sc, AnalysisOptions options)
    : sc_(sc),
      opt_(options),
      sat_((sc.validate(), sc.satellite), sc.geom),
      terr_(sc.terrestrial, sc.geom),
      mix_sat_(fading_mixture(sc.satellite.fading)),
      mix_terr_(fading_mixture(sc.terrestrial.fading)) {
    build_outer(LayerRole::Satellite, outer_sat_, upper_sat_);
    build_outer(LayerRole::Terrestrial, outer_terr_, upper_terr_);
    auto one = [](double) { return 1.0; };
    mass_sat_ = sat_.density() > 0.0 ? outer_integral(LayerRole::Satellite, one) : 0.0;
    mass_terr_ = terr_.density() > 0.0 ? outer_integral(LayerRole::Terrestrial, one) : 0.0;
}

void CoverageModel::build_outer(LayerRole serving, std::vector<double>& cuts,
                                double& upper) const {
    const DistanceProcess& po = process(serving);
    const DistanceProcess& px = process(other(serving));
    const CapWindow w = po.window();
    upper = w.r_max_m;
    cuts.clear();
    if (po.density() == 0.0) return;

    for (double k : po.kinks()) cuts.push_back(k);
    if (px.density() > 0.0) {
        std::vector<double> xs(px.kinks().begin(), px.kinks().end());
        xs.push_back(px.window().r_min_m);
        xs.push_back(px.window().r_max_m);
        for (double k : xs) {
            if (k > 0.0) cuts.push_back(inverse_equivalent_distance(sc_, serving, k));
        }
    }

    auto total = [&](double r) {
        double t = po.cumulative(r);
        if (px.density() > 0.0) t += px.cumulative(biased_equivalent_distance(sc_, serving, r));
        return t;
    };
    auto crossing = [&](double level) {
        double lo = w.r_min_m;
        double hi = w.r_max_m;
        for (int it = 0; it < 200 && hi - lo > 1e-12 * hi; ++it) {
            const double mid = 0.5 * (lo + hi);
            (total(mid) < level ? lo : hi) = mid;
        }
        return 0.5 * (lo + hi);
    };
    const double at_max = total(w.r_max_m);
    for (double level : kLevels) {
        if (at_max > level) cuts.push_back(crossing(level));
    }
    if (at_max > kTruncationLevel) upper = crossing(kTruncationLevel);

    cuts.erase(std::remove_if(cuts.begin(), cuts.end(),
                              [&](double c) { return !(c > w.r_min_m && c < upper); }),
               cuts.end());
    std::sort(cuts.begin(), cuts.end());
    cuts.erase(std::unique(cuts.begin(), cuts.end()), cuts.end());
}

double CoverageModel::serving_density(LayerRole serving, double r) const {
    const DistanceProcess& po = process(serving);
    const DistanceProcess& px = process(other(serving));
    const double mu = po.intensity(r);
    if (mu == 0.0) return 0.0;
    double expo = po.cumulative(r);
    if (px.density() > 0.0) expo += px.cumulative(biased_equivalent_distance(sc_, serving, r));
    return mu * std::exp(-expo);
}

double CoverageModel::outer_integral(LayerRole serving, FunctionRef<double(double)> g,
                                     double* error) const {
    const DistanceProcess& po = process(serving);
    if (po.density() == 0.0) return 0.0;
    auto f = [&](double r) {
        const double d = serving_density(serving, r);
        return d == 0.0 ? 0.0 : d * g(r);
    };
    const QuadResult q =
        integrate_1d(f, po.window().r_min_m, outer_upper(serving), opt_.outer, outer_breakpoints(serving));
    if (error) *error = q.error;
    return q.value;
}

double CoverageModel::association_mass(LayerRole serving) const {
    return serving == LayerRole::Satellite ? mass_sat_ : mass_terr_;
}

double CoverageModel::association_probability(LayerRole serving) const {
    const double pv = process(serving).visibility_probability();
    return pv > 0.0 ? association_mass(serving) / pv : 0.0;
}

double CoverageModel::serving_distance_pdf(LayerRole serving, double r) const {
    const double mass = association_mass(serving);
    return mass > 0.0 ? serving_density(serving, r) / mass : 0.0;
}

Jet CoverageModel::interference_exponent(LayerRole source, double coef, double exclusion,
                                         double s, double step, int order) const {
    Jet g(order);
    const DistanceProcess& p = process(source);
    const CapWindow w = p.window();
    const double lo = std::max(exclusion, w.r_min_m);
    if (p.density() == 0.0 || !(lo < w.r_max_m) || (s == 0.0 && step == 0.0)) return g;

    const GammaMixture& mix = source == LayerRole::Satellite ? mix_sat_ : mix_terr_;
    const double beta = sc_.layer(source).path_loss_exponent;
    const double rho = mix.rate;
    const int n = order + 1;

    // For one Gamma(a) component, M(t) = (1 + t/rho)^-a and
    // M(t + d e) = M(t) sum_j (-1)^j C(a+j-1, j) (d/(rho+t))^j e^j.
    auto integrand = [&](double v, double* out) {
        std::fill(out, out + n, 0.0);
        const double mu = p.intensity(v);
        if (mu == 0.0) return;
        const double x = coef * std::pow(v, -beta);
        const double t = s * x;
        const double l1 = std::log1p(t / rho);
        const double q = step * x / (rho + t);
        for (int k = 0; k < mix.terms(); ++k) {
            const double wk = mix.weights[k];
            if (wk == 0.0) continue;
            const int a = k + 1;
            out[0] -= mu * wk * std::expm1(-a * l1);
            double T = mu * wk * std::exp(-a * l1);
            for (int j = 1; j < n; ++j) {
                T *= q * (a + j - 1) / j;
                out[j] += (j & 1) ? T : -T;
            }
        }
    };
    const VectorQuadResult r = integrate_vector(integrand, n, lo, w.r_max_m, opt_.inner, p.kinks());
    for (int j = 0; j < n; ++j) g[j] = r.values[static_cast<std::size_t>(j)];
    return g;
}

Jet CoverageModel::total_laplace(LayerRole serving, double r, double s, double step,
                                 int order) const {
    const NetworkLayer& o = sc_.layer(serving);
    const NetworkLayer& x = sc_.layer(other(serving));
    const double norm = o.main_gain * o.tx_power_w;
    Jet g = interference_exponent(serving, o.side_gain * o.tx_power_w / norm, r, s, step, order);
    if (x.density_per_m2 > 0.0) {
        g += interference_exponent(other(serving), x.side_gain * x.tx_power_w / norm,
                                   biased_equivalent_distance(sc_, serving, r), s, step, order);
    }
    const double noise = sc_.noise_power_w() / norm;
    g[0] += s * noise;
    if (order >= 1) g[1] += step * noise;
    return jet_exp(-g);
}

double CoverageModel::conditional_coverage(LayerRole serving, double r,
                                           double gamma_tilde) const {
    const GammaMixture& mix = serving == LayerRole::Satellite ? mix_sat_ : mix_terr_;
    const double s = mix.rate * gamma_tilde * std::pow(r, sc_.layer(serving).path_loss_exponent);
    if (s == 0.0) return 1.0;
    const int order = mix.terms() - 1;
    // Scaled jet: L[i] = s^i L^(i)(s) / i!, so E[e^{-sY}(sY)^i/i!] = (-1)^i L[i].
    const Jet L = total_laplace(serving, r, s, s, order);
    const std::vector<double> tails = mix.tails();
    double c = 0.0;
    for (int i = 0; i <= order; ++i) c += ((i & 1) ? -L[i] : L[i]) * tails[static_cast<std::size_t>(i)];
    return c;
}

CoverageModel::Term CoverageModel::coverage_term(LayerRole serving, double gamma_tilde) const {
    Term t;
    if (association_mass(serving) == 0.0) return t;
    auto g = [&](double r) { return conditional_coverage(serving, r, gamma_tilde); };
    try {
        t.value = outer_integral(serving, g, &t.error);
    } catch (const NonConvergence& e) {
        std::ostringstream msg;
        msg << to_string(serving) << " coverage term at gamma_tilde=" << gamma_tilde << ": "
            << e.what();
        throw NonConvergence(msg.str(), e.value(), e.error());
    }
    return t;
}

double association_probability(const ScenarioConfig& sc, LayerRole which) {
    return CoverageModel(sc).association_probability(which);
}

double nearest_distance_pdf_given_association(const ScenarioConfig& sc, LayerRole which,
                                              double r) {
    return CoverageModel(sc).serving_distance_pdf(which, r);
}

Jet interference_laplace(const ScenarioConfig& sc, LayerRole source, double exclusion_radius,
                         double s, int order, double step) {
    const CoverageModel model(sc);
    const NetworkLayer& l = sc.layer(source);
    const Jet g = model.interference_exponent(source, l.side_gain * l.tx_power_w,
                                              exclusion_radius, s, step, order);
    return jet_exp(-g);
}

}  // namespace stin
