#include "stin/validate.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <sstream>
#include <utility>

#include "stin/analysis.hpp"
#include "stin/error.hpp"
#include "stin/grid.hpp"
#include "stin/montecarlo.hpp"
#include "stin/parallel.hpp"
#include "stin/statistics.hpp"
#include "stin/stochastic.hpp"

namespace stin {

namespace {

constexpr double kAlpha = 0.01;

bool is_rayleigh(const Fading& f) {
    if (const auto* sr = std::get_if<ShadowedRicianParams>(&f)) return sr->m == 1 && sr->omega == 0.0;
    return std::get<NakagamiParams>(f).n == 1;
}

std::string fmt(const char* pattern, double a, double b = 0.0) {
    char buf[160];
    std::snprintf(buf, sizeof buf, pattern, a, b);
    return buf;
}

CheckResult named(std::string name) {
    CheckResult c;
    c.name = std::move(name);
    return c;
}

struct LayerDraws {
    std::vector<std::size_t> counts;
    std::vector<double> nearest;
};

LayerDraws draw_layer(const ScenarioConfig& sc, LayerRole role, std::size_t n, std::uint64_t seed,
                      int threads) {
    LayerDraws out;
    out.counts.resize(n);
    std::vector<double> nearest(n, -1.0);
    SamplingOptions so;
    so.region = SamplingRegion::VisibilityCap;
    so.draw_fading = false;
    parallel_for(n, resolve_threads(threads), [&](std::size_t i) {
        const auto cs = sample_constellation(sc.layer(role), sc.geom, seed,
                                             static_cast<std::uint32_t>(i), so);
        out.counts[i] = cs.visible_count();
        if (const auto d = nearest_visible_distance(cs)) nearest[i] = *d;
    });
    for (double d : nearest)
        if (d >= 0.0) out.nearest.push_back(d);
    return out;
}

// g(s) for Rayleigh interferers straight from the intensity: no mixtures, no jets.
double rayleigh_exponent(const DistanceProcess& p, double coef, double beta, double exclusion,
                         double s) {
    const CapWindow w = p.window();
    const double lo = std::max(exclusion, w.r_min_m);
    if (p.density() == 0.0 || lo >= w.r_max_m) return 0.0;
    std::vector<double> cuts;
    for (double k : p.kinks())
        if (k > lo && k < w.r_max_m) cuts.push_back(k);
    auto f = [&](double v) {
        const double x = s * coef * std::pow(v, -beta);
        return p.intensity(v) * x / (1.0 + x);
    };
    return integrate_1d(f, lo, w.r_max_m, {1e-300, 1e-11, 400, true}, cuts).value;
}

void check_rayleigh(const ScenarioConfig& sc, const CoverageModel& model,
                    std::vector<CheckResult>& out) {
    CheckResult c = named("rayleigh_reduction");
    c.limit = 1e-8;
    if (!is_rayleigh(sc.satellite.fading) || !is_rayleigh(sc.terrestrial.fading)) {
        c.skipped = true;
        c.detail = "not Rayleigh on both layers";
        out.push_back(c);
        return;
    }
    double worst = 0.0;
    const double noise = sc.noise_power_w();
    for (LayerRole o : {LayerRole::Satellite, LayerRole::Terrestrial}) {
        const NetworkLayer& lo = sc.layer(o);
        const NetworkLayer& lx = sc.layer(other(o));
        if (lo.density_per_m2 == 0.0) continue;
        const GammaMixture mix = fading_mixture(lo.fading);
        const CapWindow w = model.process(o).window();
        for (double t : {0.05, 0.3, 0.7}) {
            const double r = w.r_min_m + t * (std::min(w.r_max_m, model.outer_upper(o)) - w.r_min_m);
            for (double gt : {0.1, 1.0, 10.0}) {
                const double s = mix.rate * gt * std::pow(r, lo.path_loss_exponent);
                const double norm = lo.main_gain * lo.tx_power_w;
                double g = s * noise / norm;
                g += rayleigh_exponent(model.process(o), lo.side_gain * lo.tx_power_w / norm,
                                       lo.path_loss_exponent, r, s);
                g += rayleigh_exponent(model.process(other(o)), lx.side_gain * lx.tx_power_w / norm,
                                       lx.path_loss_exponent, biased_equivalent_distance(sc, o, r), s);
                const double direct = std::exp(-g);
                const double via = model.conditional_coverage(o, r, gt);
                const double rel = std::abs(via - direct) / std::max(direct, 1e-300);
                if (direct > 1e-250) worst = std::max(worst, rel);
            }
        }
    }
    c.statistic = worst;
    c.passed = worst <= c.limit;
    c.detail = "max relative gap, mixture path vs direct exp(-g)";
    out.push_back(c);
}

}  // namespace

ValidationBudget parse_budget(std::string_view spec) {
    if (spec == "quick") return {4000, 4000, 2000};
    if (spec == "standard") return {};
    ValidationBudget b;
    std::size_t start = 0;
    while (start <= spec.size()) {
        const auto end = std::min(spec.find(',', start), spec.size());
        const std::string item(spec.substr(start, end - start));
        const auto eq = item.find('=');
        if (eq == std::string::npos) throw ConfigError("budget", "bad budget item '" + item + "'");
        const std::string key = item.substr(0, eq);
        const std::string val = item.substr(eq + 1);
        char* stop = nullptr;
        const double v = std::strtod(val.c_str(), &stop);
        if (val.empty() || stop != val.c_str() + val.size() || !(v >= 1.0) || v != std::floor(v) ||
            v > 4e9)
            throw ConfigError("budget", "budget '" + key + "' must be a positive integer");
        const auto n = static_cast<std::size_t>(v);
        if (key == "trials") b.trials = n;
        else if (key == "draws") b.draws = n;
        else if (key == "constellations") b.constellations = n;
        else throw ConfigError("budget", "unknown budget key '" + key + "'");
        start = end + 1;
    }
    return b;
}

bool ValidationReport::passed() const noexcept {
    return std::all_of(checks.begin(), checks.end(), [](const CheckResult& c) { return c.passed; });
}

ValidationReport validate_scenario(const ScenarioConfig& sc, const ValidationBudget& budget,
                                   std::uint64_t seed, int threads) {
    sc.validate();
    ValidationReport rep;
    AnalysisOptions opt;
    opt.threads = threads;
    const CoverageModel model(sc, opt);

    for (LayerRole role : {LayerRole::Satellite, LayerRole::Terrestrial}) {
        const std::string tag = to_string(role);
        const DistanceProcess& p = model.process(role);
        const LayerDraws d = draw_layer(sc, role, budget.constellations, seed, threads);

        CheckResult chi = named(tag + "_visible_count_chi2");
        const auto cs = chi_square_poisson(d.counts, p.visible_mean());
        chi.limit = kAlpha;
        if (cs.dof < 1) {
            // Too concentrated to bin: compare the sample mean instead.
            std::vector<double> x(d.counts.begin(), d.counts.end());
            const auto m = mean_estimate(x);
            chi.statistic = std::abs(m.mean - p.visible_mean());
            chi.limit = 4.0 * std::sqrt(std::max(p.visible_mean(), 1e-12) / double(x.size()));
            chi.passed = chi.statistic <= chi.limit;
            chi.detail = fmt("mean %.6g vs %.6g (too few bins for chi2)", m.mean, p.visible_mean());
        } else {
            chi.statistic = cs.p_value;
            chi.passed = cs.p_value >= kAlpha;
            chi.detail = fmt("chi2 = %.4g, dof = %.0f", cs.statistic, cs.dof);
        }
        rep.checks.push_back(chi);

        CheckResult ks = named(tag + "_nearest_distance_ks");
        ks.limit = kAlpha;
        if (d.nearest.size() < 20) {
            ks.skipped = true;
            ks.detail = "fewer than 20 draws with a visible node";
        } else {
            const auto k = ks_test(d.nearest, [&](double r) {
                return nearest_distance_cdf(sc.layer(role), sc.geom, r);
            });
            ks.statistic = k.p_value;
            ks.passed = k.p_value >= kAlpha;
            ks.detail = fmt("D = %.4g over %.0f samples", k.statistic, double(d.nearest.size()));
        }
        rep.checks.push_back(ks);

        // Laplace points: two exclusion radii, s across three decades around
        // the inverse mean received power at the first radius.
        CheckResult lp = named(tag + "_laplace_points");
        lp.limit = 4.0;
        const NetworkLayer& l = sc.layer(role);
        if (l.density_per_m2 == 0.0 || p.visible_mean() == 0.0) {
            lp.skipped = true;
            lp.detail = "empty layer";
        } else {
            const CapWindow w = p.window();
            const double span = std::min(w.r_max_m, model.outer_upper(role)) - w.r_min_m;
            const std::vector<double> radii = {w.r_min_m + 0.02 * span, w.r_min_m + 0.2 * span};
            const double s0 = 1.0 / (l.side_gain * l.tx_power_w * std::pow(radii[0], -l.path_loss_exponent));
            const std::vector<double> svals = {s0 * 0.01, s0 * 0.1, s0, s0 * 10.0};
            const auto mc = empirical_interference_laplace(sc, role, radii, svals, budget.draws,
                                                           seed ^ 0x5a5a5a5aULL, threads);
            double worst = 0.0;
            for (std::size_t i = 0; i < radii.size(); ++i) {
                for (std::size_t j = 0; j < svals.size(); ++j) {
                    const double a = interference_laplace(sc, role, radii[i], svals[j], 0)[0];
                    const double se = std::max(mc[i][j].std_error, 1e-12);
                    worst = std::max(worst, std::abs(a - mc[i][j].mean) / se);
                }
            }
            lp.statistic = worst;
            lp.passed = worst <= lp.limit;
            lp.detail = "max |analytic - MC| in standard errors";
        }
        rep.checks.push_back(lp);
    }

    const auto grid = parse_grid(kDefaultGrid);
    TrialOptions to;
    const auto trials = run_trials(sc, budget.trials, seed, to, threads);
    const double n = static_cast<double>(trials.size());

    for (LayerRole role : {LayerRole::Satellite, LayerRole::Terrestrial}) {
        const Association want = role == LayerRole::Satellite ? Association::Satellite
                                                              : Association::Terrestrial;
        const double frac =
            double(std::count_if(trials.begin(), trials.end(),
                                 [&](const TrialResult& t) { return t.associated == want; })) / n;
        const double mass = model.association_mass(role);
        CheckResult c = named(std::string(to_string(role)) + "_association_fraction");
        c.statistic = std::abs(frac - mass);
        c.limit = std::max(0.01, 4.0 * std::sqrt(mass * (1.0 - mass) / n));
        c.passed = c.statistic <= c.limit;
        c.detail = fmt("empirical %.5f vs analytic %.5f", frac, mass);
        rep.checks.push_back(c);
    }

    {
        const auto curve = coverage_curve(model, grid, false);
        const auto emp = empirical_curve(rates_of(trials, false), grid);
        double worst = 0.0;
        for (std::size_t i = 0; i < grid.size(); ++i)
            worst = std::max(worst, std::abs(curve.points[i].p_cov - emp.coverage[i]));
        CheckResult c = named("coverage_curve_band");
        c.statistic = worst;
        c.limit = std::max(0.02, 4.0 * std::sqrt(0.25 / n));
        c.passed = worst <= c.limit;
        c.detail = fmt("max |analytic - empirical| over %.0f thresholds", double(grid.size()));
        rep.checks.push_back(c);
    }

    check_rayleigh(sc, model, rep.checks);
    return rep;
}

std::string format_report(const ValidationReport& report) {
    std::ostringstream os;
    char buf[256];
    std::snprintf(buf, sizeof buf, "%-34s %-6s %12s %12s  %s\n", "check", "result", "statistic",
                  "limit", "detail");
    os << buf;
    for (const auto& c : report.checks) {
        std::snprintf(buf, sizeof buf, "%-34s %-6s %12.5g %12.5g  %s\n", c.name.c_str(),
                      c.skipped ? "SKIP" : (c.passed ? "PASS" : "FAIL"), c.statistic, c.limit,
                      c.detail.c_str());
        os << buf;
    }
    os << (report.passed() ? "PASS" : "FAIL") << "\n";
    return os.str();
}

}  // namespace stin
