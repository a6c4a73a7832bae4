#pragma once

#include <span>
#include <vector>

#include "stin/fading.hpp"
#include "stin/geometry.hpp"
#include "stin/jet.hpp"
#include "stin/quadrature.hpp"
#include "stin/scenario.hpp"

namespace stin {

/// Slant ranges of the visible nodes of one layer form a Poisson process on
/// the line. This class evaluates its intensity mu(v) and the integrated
/// intensity Lambda(r) = lambda * E_h[A(h, r)].
class DistanceProcess {
public:
    DistanceProcess(const NetworkLayer& layer, const SphereGeometry& geom);

    LayerRole role() const noexcept { return role_; }
    double density() const noexcept { return lambda_; }
    CapWindow window() const noexcept { return window_; }

    /// mu(v) = lambda 2 pi v R^2 / R_E * integral over feasible h of f_H(h)/(R+h).
    double intensity(double v) const;
    /// Lambda(r): lambda times the height-averaged cap area, by quadrature over h.
    double cumulative(double r) const;
    /// Lambda(r) as the integral of mu over [R_min, r]. Independent route.
    double cumulative_by_intensity(double r) const;
    /// Mean number of visible nodes, Lambda(R_max).
    double visible_mean() const noexcept { return visible_mean_; }
    double visibility_probability() const noexcept;
    /// Distances where mu has a kink or jump, sorted, inside the window.
    std::span<const double> kinks() const noexcept { return kinks_; }

private:
    LayerRole role_;
    double lambda_;
    double base_radius_;
    double earth_radius_;
    double offset_;
    HeightDistribution heights_;
    SphereGeometry geom_;
    CapWindow window_;
    double visible_mean_ = 0.0;
    std::vector<double> kinks_;
};

struct Visibility {
    double mean = 0.0;         ///< Poisson parameter of the visible count
    double probability = 0.0;  ///< P[at least one visible]
};

/// Visible-count mean lambda 2 pi R^2 E[(R + h - R_E)/(R + h)] and P[V].
Visibility visibility_probability(const NetworkLayer& layer, const SphereGeometry& geom);

/// Density giving the requested mean visible count.
double density_from_mean_visible(const NetworkLayer& layer, const SphereGeometry& geom,
                                 double mean_visible);

/// Nearest visible distance density conditioned on visibility. Zero outside
/// the window or when the layer is empty.
double nearest_distance_pdf(const NetworkLayer& layer, const SphereGeometry& geom, double r);

/// Its CDF, (1 - exp(-Lambda(r))) / (1 - exp(-Lambda(R_max))).
double nearest_distance_cdf(const NetworkLayer& layer, const SphereGeometry& geom, double r);

/// Distance at which the other layer yields the same biased received power:
/// (P_x B_x / (P_o B_o))^(1/beta_x) r^(beta_o/beta_x).
double biased_equivalent_distance(const ScenarioConfig& sc, LayerRole serving, double r);

struct AnalysisOptions {
    /// Inner interference integrals over distance.
    QuadratureSpec inner{1e-13, 1e-9, 400, true};
    /// Outer integrals over the serving distance.
    QuadratureSpec outer{1e-11, 1e-8, 600, true};
    /// Worker count for grid evaluation; 0 resolves from the environment.
    int threads = 0;
};

/// Everything the closed-form evaluators need for one scenario, precomputed
/// once: both distance processes, fading mixtures and outer breakpoints.
class CoverageModel {
public:
    explicit CoverageModel(const ScenarioConfig& sc, AnalysisOptions options = {});

    const ScenarioConfig& scenario() const noexcept { return sc_; }
    const DistanceProcess& process(LayerRole role) const noexcept {
        return role == LayerRole::Satellite ? sat_ : terr_;
    }
    const AnalysisOptions& options() const noexcept { return opt_; }

    /// pi(o | V_o): probability of associating with o given o is visible.
    double association_probability(LayerRole serving) const;
    /// P[V_o] pi(o | V_o).
    double association_mass(LayerRole serving) const;
    /// Serving-distance density given visibility and association with o.
    double serving_distance_pdf(LayerRole serving, double r) const;
    /// Unnormalized serving density mu_o e^{-Lambda_o(r)} e^{-Lambda_x(r_eq)}.
    double serving_density(LayerRole serving, double r) const;

    /// Taylor jet in e of the exponent g(s + step e) of the Laplace transform
    /// of sum_i coef X_i v_i^{-beta} over source nodes beyond `exclusion`.
    Jet interference_exponent(LayerRole source, double coef, double exclusion, double s,
                              double step, int order) const;

    /// Jet of the normalized total transform seen by a user served by o at
    /// distance r: own layer beyond r, other layer beyond r_eq, plus noise.
    Jet total_laplace(LayerRole serving, double r, double s, double step, int order) const;

    /// P[SINR > gamma_tilde | served by o at distance r].
    double conditional_coverage(LayerRole serving, double r, double gamma_tilde) const;

    struct Term {
        double value = 0.0;
        double error = 0.0;
    };
    /// P[V_o] pi(o|V_o) P[SINR > gamma_tilde | o].
    Term coverage_term(LayerRole serving, double gamma_tilde) const;

    /// Breakpoints for outer integrals over the serving distance.
    std::span<const double> outer_breakpoints(LayerRole serving) const noexcept {
        return serving == LayerRole::Satellite ? outer_sat_ : outer_terr_;
    }
    /// Upper end beyond which the serving density is negligible.
    double outer_upper(LayerRole serving) const noexcept {
        return serving == LayerRole::Satellite ? upper_sat_ : upper_terr_;
    }

private:
    double outer_integral(LayerRole serving, FunctionRef<double(double)> g,
                          double* error = nullptr) const;
    void build_outer(LayerRole serving, std::vector<double>& cuts, double& upper) const;

    ScenarioConfig sc_;
    AnalysisOptions opt_;
    DistanceProcess sat_;
    DistanceProcess terr_;
    GammaMixture mix_sat_;
    GammaMixture mix_terr_;
    std::vector<double> outer_sat_;
    std::vector<double> outer_terr_;
    double upper_sat_ = 0.0;
    double upper_terr_ = 0.0;
    double mass_sat_ = 0.0;
    double mass_terr_ = 0.0;
};

double association_probability(const ScenarioConfig& sc, LayerRole which);

double nearest_distance_pdf_given_association(const ScenarioConfig& sc, LayerRole which,
                                              double r);

/// Jet of the conditional Laplace transform E[exp(-(s + step e) I_source) | r],
/// I_source = sum over source nodes beyond r of side_gain P X v^{-beta}.
Jet interference_laplace(const ScenarioConfig& sc, LayerRole source, double exclusion_radius,
                         double s, int order, double step = 1.0);

struct CoveragePoint {
    double gamma_bps = 0.0;
    double p_cov = 0.0;
    double p_cov_sat = 0.0;
    double p_cov_terr = 0.0;
    double quad_error = 0.0;
};

struct CoverageCurve {
    std::vector<CoveragePoint> points;
    double pi_sat = 0.0;
    double pi_terr = 0.0;
    double p_vis_sat = 0.0;
    double p_vis_terr = 0.0;
    double load_sat = 1.0;
    double load_terr = 1.0;

    double max_quad_error() const noexcept;
};

/// Rate coverage P[W log2(1 + SINR) > gamma] on a threshold grid (bits/s).
CoverageCurve coverage_probability(const ScenarioConfig& sc, std::span<const double> gamma_grid,
                                   const AnalysisOptions& options = {});

struct LoadFactors {
    double satellite = 1.0;
    double terrestrial = 1.0;
};

/// 1 + lambda_U pi / lambda_o. Throws std::domain_error when lambda_o is zero
/// while users are assigned.
double load_factor(double user_density, double pi_conditional, double layer_density);

LoadFactors load_factors(const ScenarioConfig& sc);
LoadFactors load_factors(const CoverageModel& model);

/// Coverage of the load-scaled rate W / L_o log2(1 + SINR).
CoverageCurve load_aware_coverage(const ScenarioConfig& sc, std::span<const double> gamma_grid,
                                  const AnalysisOptions& options = {});

/// Curve from a prebuilt model, optionally with mean-load scaling.
CoverageCurve coverage_curve(const CoverageModel& model, std::span<const double> gamma_grid,
                             bool load_aware);

/// Total rate coverage at one threshold under the given loads.
double coverage_at(const CoverageModel& model, double gamma_bps, const LoadFactors& loads = {});

/// Rate reached by (100 - percentile)% of users, found by bisection on the
/// analytic curve. Returns 0 when the outage mass alone exceeds the target.
double rate_percentile(const CoverageModel& model, double percentile, bool load_aware = false,
                       double rel_tol = 1e-6);

/// gamma_tilde = 2^(gamma / W) - 1, computed as expm1.
double sinr_threshold(double gamma_bps, double bandwidth_hz, double load = 1.0) noexcept;

}  // namespace stin
