#include "stin/montecarlo.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "stin/parallel.hpp"

namespace stin {

const char* to_string(Association a) noexcept {
    switch (a) {
        case Association::Satellite: return "satellite";
        case Association::Terrestrial: return "terrestrial";
        case Association::None: break;
    }
    return "none";
}

TrialResult evaluate_trial(const ScenarioConfig& sc, const ConstellationSample& sat,
                           const ConstellationSample& terr, const LoadFactors& loads) {
    TrialResult out;
    out.visible_sat = sat.visible_count();
    out.visible_terr = terr.visible_count();

    // argmax of P B d^-beta, compared in log domain
    const ConstellationSample* best_sample = nullptr;
    std::size_t best_index = 0;
    double best_metric = -INFINITY;
    for (const ConstellationSample* cs : {&sat, &terr}) {
        const NetworkLayer& l = sc.layer(cs->role);
        const double base = std::log(l.tx_power_w * l.bias);
        for (std::size_t i = 0; i < cs->nodes.size(); ++i) {
            const Node& n = cs->nodes[i];
            if (!n.visible) continue;
            const double metric = base - l.path_loss_exponent * std::log(n.slant_range_m);
            if (metric > best_metric) {
                best_metric = metric;
                best_sample = cs;
                best_index = i;
            }
        }
    }
    if (!best_sample) return out;

    double signal = 0.0;
    double interference = 0.0;
    for (const ConstellationSample* cs : {&sat, &terr}) {
        const NetworkLayer& l = sc.layer(cs->role);
        for (std::size_t i = 0; i < cs->nodes.size(); ++i) {
            const Node& n = cs->nodes[i];
            if (!n.visible) continue;
            const double path = n.fading_power * std::pow(n.slant_range_m, -l.path_loss_exponent);
            if (cs == best_sample && i == best_index) {
                signal = l.main_gain * l.tx_power_w * path;
            } else {
                interference += l.side_gain * l.tx_power_w * path;
            }
        }
    }
    const bool sat_served = best_sample->role == LayerRole::Satellite;
    out.associated = sat_served ? Association::Satellite : Association::Terrestrial;
    out.serving_distance_m = best_sample->nodes[best_index].slant_range_m;
    out.sinr = signal / (interference + sc.noise_power_w());
    out.rate_bps = sc.bandwidth_hz * std::log2(1.0 + out.sinr);
    out.load_scaled_rate_bps = out.rate_bps / (sat_served ? loads.satellite : loads.terrestrial);
    return out;
}

TrialResult run_trial(const ScenarioConfig& sc, std::uint64_t seed, std::uint32_t trial,
                      const TrialOptions& options) {
    SamplingOptions so;
    so.region = options.region;
    const ConstellationSample sat = sample_constellation(sc.satellite, sc.geom, seed, trial, so);
    const ConstellationSample terr = sample_constellation(sc.terrestrial, sc.geom, seed, trial, so);
    return evaluate_trial(sc, sat, terr, options.loads);
}

std::vector<TrialResult> run_trials(const ScenarioConfig& sc, std::size_t n_trials,
                                    std::uint64_t seed, const TrialOptions& options, int threads) {
    sc.validate();
    std::vector<TrialResult> out(n_trials);
    parallel_for(n_trials, resolve_threads(threads), [&](std::size_t i) {
        out[i] = run_trial(sc, seed, static_cast<std::uint32_t>(i), options);
    });
    return out;
}

double wilson_halfwidth(double p_hat, std::size_t n, double z) {
    if (n == 0) return 0.0;
    const double nn = static_cast<double>(n);
    const double z2 = z * z;
    return z / (1.0 + z2 / nn) * std::sqrt(p_hat * (1.0 - p_hat) / nn + z2 / (4.0 * nn * nn));
}

EmpiricalCurve empirical_curve(std::span<const double> rates, std::span<const double> grid) {
    EmpiricalCurve c;
    c.n_trials = rates.size();
    std::vector<double> sorted(rates.begin(), rates.end());
    std::sort(sorted.begin(), sorted.end());
    for (double g : grid) {
        const auto above = static_cast<double>(
            sorted.end() - std::upper_bound(sorted.begin(), sorted.end(), g));
        const double p = sorted.empty() ? 0.0 : above / static_cast<double>(sorted.size());
        c.thresholds.push_back(g);
        c.coverage.push_back(p);
        c.halfwidth.push_back(wilson_halfwidth(p, c.n_trials));
    }
    return c;
}

std::vector<double> rates_of(std::span<const TrialResult> trials, bool load_scaled) {
    std::vector<double> r;
    r.reserve(trials.size());
    for (const auto& t : trials) r.push_back(load_scaled ? t.load_scaled_rate_bps : t.rate_bps);
    return r;
}

EmpiricalCurve empirical_coverage(const ScenarioConfig& sc, std::span<const double> gamma_grid,
                                  std::size_t n_trials, std::uint64_t master_seed,
                                  bool load_aware, int threads) {
    if (n_trials == 0) throw std::invalid_argument("empirical_coverage: n_trials must be >= 1");
    TrialOptions opt;
    if (load_aware) opt.loads = load_factors(sc);
    const auto trials = run_trials(sc, n_trials, master_seed, opt, threads);
    return empirical_curve(rates_of(trials, load_aware), gamma_grid);
}

double percentile_rate(std::span<const double> thresholds, std::span<const double> coverage,
                       double percentile) {
    if (!(percentile > 0.0 && percentile < 100.0))
        throw std::invalid_argument("percentile must lie in (0, 100)");
    if (thresholds.empty()) return 0.0;
    const double target = 1.0 - percentile / 100.0;
    if (coverage[0] < target) return 0.0;
    for (std::size_t i = 0; i + 1 < thresholds.size(); ++i) {
        if (coverage[i + 1] < target) {
            const double f = (coverage[i] - target) / (coverage[i] - coverage[i + 1]);
            return thresholds[i] + f * (thresholds[i + 1] - thresholds[i]);
        }
    }
    return thresholds.back();
}

double percentile_rate(const EmpiricalCurve& curve, double percentile) {
    return percentile_rate(curve.thresholds, curve.coverage, percentile);
}

double percentile_rate(const CoverageCurve& curve, double percentile) {
    std::vector<double> g, c;
    for (const auto& p : curve.points) {
        g.push_back(p.gamma_bps);
        c.push_back(p.p_cov);
    }
    return percentile_rate(g, c, percentile);
}

std::vector<std::vector<LaplaceEstimate>> empirical_interference_laplace(
    const ScenarioConfig& sc, LayerRole source, std::span<const double> exclusion_radii,
    std::span<const double> s_values, std::size_t n_draws, std::uint64_t seed, int threads) {
    const NetworkLayer& l = sc.layer(source);
    const std::size_t nr = exclusion_radii.size();
    const std::size_t ns = s_values.size();
    // per draw, e^{-s I} for every (radius, s) pair
    std::vector<double> samples(n_draws * nr * ns);
    SamplingOptions so;
    so.region = SamplingRegion::VisibilityCap;
    parallel_for(n_draws, resolve_threads(threads), [&](std::size_t d) {
        const auto cs = sample_constellation(l, sc.geom, seed, static_cast<std::uint32_t>(d), so);
        for (std::size_t i = 0; i < nr; ++i) {
            double I = 0.0;
            for (const Node& n : cs.nodes) {
                if (n.visible && n.slant_range_m > exclusion_radii[i])
                    I += l.side_gain * l.tx_power_w * n.fading_power *
                         std::pow(n.slant_range_m, -l.path_loss_exponent);
            }
            for (std::size_t j = 0; j < ns; ++j)
                samples[(d * nr + i) * ns + j] = std::exp(-s_values[j] * I);
        }
    });
    std::vector<std::vector<LaplaceEstimate>> out(nr, std::vector<LaplaceEstimate>(ns));
    const double n = static_cast<double>(n_draws);
    for (std::size_t i = 0; i < nr; ++i) {
        for (std::size_t j = 0; j < ns; ++j) {
            double sum = 0.0, sum2 = 0.0;
            for (std::size_t d = 0; d < n_draws; ++d) {
                const double x = samples[(d * nr + i) * ns + j];
                sum += x;
                sum2 += x * x;
            }
            const double mean = sum / n;
            const double var = n > 1 ? std::max(0.0, (sum2 - n * mean * mean) / (n - 1)) : 0.0;
            out[i][j] = {mean, std::sqrt(var / n)};
        }
    }
    return out;
}

}  // namespace stin
