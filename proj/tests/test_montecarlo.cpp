#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <limits>
#include <vector>

#include "stin/grid.hpp"
#include "stin/montecarlo.hpp"
#include "support.hpp"

using namespace stin;

namespace {

Node visible_node(double d, double x) {
    Node n{};
    n.visible = true;
    n.slant_range_m = d;
    n.fading_power = x;
    return n;
}

}  // namespace

TEST_CASE("no nodes means no association and zero rate") {
    ScenarioConfig sc = test::fig3_config();
    sc.satellite.density_per_m2 = 0.0;
    sc.terrestrial.density_per_m2 = 0.0;
    const auto t = run_trial(sc, 1, 0);
    CHECK(t.associated == Association::None);
    CHECK(t.rate_bps == 0.0);
}

TEST_CASE("a lone satellite link is pure SNR") {
    const ScenarioConfig sc = test::fig3_config();
    ConstellationSample sat, terr;
    sat.role = LayerRole::Satellite;
    terr.role = LayerRole::Terrestrial;
    sat.nodes.push_back(visible_node(7.5e5, 0.8));
    const auto t = evaluate_trial(sc, sat, terr);
    const double want = sc.satellite.main_gain * sc.satellite.tx_power_w * 0.8 * std::pow(7.5e5, -2.0) /
                        sc.noise_power_w();
    CHECK(t.associated == Association::Satellite);
    CHECK(t.sinr == doctest::Approx(want).epsilon(1e-14));
    CHECK(t.rate_bps == sc.bandwidth_hz * std::log2(1.0 + t.sinr));
}

TEST_CASE("trial bookkeeping matches an independent recomputation") {
    const ScenarioConfig sc = test::fig3_config();
    SamplingOptions so;
    so.region = SamplingRegion::VisibilityCap;
    for (std::uint32_t i = 0; i < 200; ++i) {
        const auto sat = sample_constellation(sc.satellite, sc.geom, 31, i, so);
        const auto terr = sample_constellation(sc.terrestrial, sc.geom, 31, i, so);
        const auto t = evaluate_trial(sc, sat, terr);
        CHECK(t.visible_sat == sat.visible_count());
        CHECK(t.visible_terr == terr.visible_count());

        // Strongest biased received power; every other visible node interferes once.
        const Node* best = nullptr;
        const NetworkLayer* best_layer = nullptr;
        double best_metric = -1.0;
        for (const auto* cs : {&sat, &terr}) {
            const NetworkLayer& l = sc.layer(cs->role);
            for (const Node& n : cs->nodes) {
                if (!n.visible) continue;
                const double m = l.tx_power_w * l.bias * std::pow(n.slant_range_m, -l.path_loss_exponent);
                if (m > best_metric) {
                    best_metric = m;
                    best = &n;
                    best_layer = &l;
                }
            }
        }
        if (!best) {
            CHECK(t.associated == Association::None);
            CHECK(t.rate_bps == 0.0);
            continue;
        }
        double interference = 0.0;
        for (const auto* cs : {&sat, &terr}) {
            const NetworkLayer& l = sc.layer(cs->role);
            for (const Node& n : cs->nodes)
                if (n.visible && &n != best)
                    interference += l.side_gain * l.tx_power_w * n.fading_power * std::pow(n.slant_range_m, -l.path_loss_exponent);
        }
        const double signal = best_layer->main_gain * best_layer->tx_power_w * best->fading_power *
                              std::pow(best->slant_range_m, -best_layer->path_loss_exponent);
        CHECK(t.associated == (best_layer->role == LayerRole::Satellite ? Association::Satellite : Association::Terrestrial));
        CHECK(t.serving_distance_m == best->slant_range_m);
        CHECK(t.sinr == doctest::Approx(signal / (interference + sc.noise_power_w())).epsilon(1e-10));
        CHECK(t.rate_bps == sc.bandwidth_hz * std::log2(1.0 + t.sinr));
    }
}

TEST_CASE("association is invariant under a common rescaling of biased powers") {
    ScenarioConfig a = test::fig3_config();
    ScenarioConfig b = a;
    b.satellite.bias *= 7.3;
    b.terrestrial.bias *= 7.3;
    for (std::uint32_t i = 0; i < 100; ++i) {
        const auto ta = run_trial(a, 9, i), tb = run_trial(b, 9, i);
        CHECK(ta.associated == tb.associated);
        CHECK(ta.serving_distance_m == tb.serving_distance_m);
    }
}

TEST_CASE("results do not depend on the worker count") {
    const ScenarioConfig sc = baseline_scenario(10, 50);
    const auto one = run_trials(sc, 300, 4, {}, 1);
    const auto three = run_trials(sc, 300, 4, {}, 3);
    for (std::size_t i = 0; i < one.size(); ++i) {
        CHECK(one[i].sinr == three[i].sinr);
        CHECK(one[i].associated == three[i].associated);
    }
    const auto grid = parse_grid(kDefaultGrid);
    const auto c1 = empirical_coverage(sc, grid, 300, 4, false, 1);
    const auto c4 = empirical_coverage(sc, grid, 300, 4, false, 4);
    CHECK(c1.coverage == c4.coverage);
}

TEST_CASE("empirical curves") {
    const ScenarioConfig sc = baseline_scenario(2, 3);
    const auto trials = run_trials(sc, 2000, 6);
    std::vector<double> grid = {0.0, 1e6, 1e7, 1e8, 1e9};
    const auto curve = empirical_curve(rates_of(trials, false), grid);
    const double any = double(std::count_if(trials.begin(), trials.end(), [](const TrialResult& t) {
                           return t.associated != Association::None;
                       })) / 2000.0;
    CHECK(curve.coverage[0] == any);
    for (std::size_t i = 0; i < grid.size(); ++i) {
        CHECK(curve.coverage[i] >= 0.0);
        CHECK(curve.coverage[i] <= 1.0);
        if (i) CHECK(curve.coverage[i] <= curve.coverage[i - 1]);
        CHECK(curve.halfwidth[i] == doctest::Approx(wilson_halfwidth(curve.coverage[i], 2000)));
    }
    const auto single = empirical_coverage(sc, grid, 1, 6);
    for (double c : single.coverage) CHECK((c == 0.0 || c == 1.0));
    CHECK_THROWS(empirical_coverage(sc, grid, 0, 6));
}

TEST_CASE("wilson half-width") {
    CHECK(wilson_halfwidth(0.5, 100) == doctest::Approx(0.0970).epsilon(1e-3));
    CHECK(wilson_halfwidth(0.0, 1000) > 0.0);
}

TEST_CASE("percentile from a curve") {
    const std::vector<double> g = {1, 2, 3, 4};
    CHECK(percentile_rate(g, std::vector<double>{1, 1, 1, 1}, 50.0) == 4.0);
    CHECK(percentile_rate(g, std::vector<double>{1, 1, 0.5, 0}, 10.0) == doctest::Approx(2.2));
    CHECK(percentile_rate(g, std::vector<double>{0.4, 0.3, 0.2, 0.1}, 50.0) == 0.0);
    CHECK(percentile_rate(g, std::vector<double>{1, 0.8, 0.4, 0}, 50.0) == doctest::Approx(2.75));
    CHECK_THROWS(percentile_rate(g, std::vector<double>{1, 1, 1, 1}, 0.0));
}

TEST_CASE("towers alone: visibility caps coverage and the median matches the analytic curve") {
    ScenarioConfig sc = baseline_scenario(0, 5);
    sc.terrestrial.fading = NakagamiParams{4};
    const std::size_t n = 5000;
    const double cap = 1.0 - std::exp(-5.0);
    const auto grid = parse_grid(kDefaultGrid);
    const auto c = empirical_coverage(sc, grid, n, 7);
    CHECK(c.coverage[0] <= cap + 3.0 * std::sqrt(cap * (1 - cap) / n));
    const double median = rate_percentile(CoverageModel(sc), 50.0);
    REQUIRE(median > 0.0);
    const double at[] = {median};
    const auto m = empirical_coverage(sc, at, n, 8);
    CHECK(std::abs(m.coverage[0] - 0.5) <= 3.0 * std::sqrt(0.25 / n));
}
