#include <doctest.h>

#include <cmath>
#include <numbers>
#include <stdexcept>
#include <vector>

#include "stin/error.hpp"
#include "stin/geometry.hpp"
#include "stin/jet.hpp"
#include "stin/quadrature.hpp"
#include "stin/rng.hpp"
#include "stin/special.hpp"
#include "stin/statistics.hpp"

using namespace stin;

namespace {

Jet random_jet(CounterStream& rng, int order) {
    Jet j(order);
    for (int k = 0; k <= order; ++k) j[k] = 2.0 * rng.uniform() - 1.0;
    return j;
}

bool jets_close(const Jet& a, const Jet& b, double tol) {
    double scale = 0.0;
    for (int k = 0; k <= a.order(); ++k) scale = std::max(scale, std::abs(a[k]));
    for (int k = 0; k <= a.order(); ++k)
        if (std::abs(a[k] - b[k]) > tol * std::max(scale, 1e-300)) return false;
    return true;
}

}  // namespace

TEST_CASE("quadrature on polynomials and error reporting") {
    const auto q = integrate_1d([](double x) { return x * x; }, 0.0, 1.0);
    CHECK(std::abs(q.value - 1.0 / 3.0) < 1e-12);
    CHECK(q.converged);
    CHECK(q.error < 1e-12);
    CHECK(integrate_1d([](double) { return 1.0; }, 2.0, 2.0).value == 0.0);

    QuadratureSpec tight{1e-15, 1e-15, 3, true};
    auto wild = [](double x) { return std::sin(1.0 / x); };
    CHECK_THROWS_AS(integrate_1d(wild, 1e-4, 1.0, tight), NonConvergence);
    tight.throw_on_failure = false;
    CHECK_FALSE(integrate_1d(wild, 1e-4, 1.0, tight).converged);
}

TEST_CASE("vector quadrature agrees with scalar quadrature") {
    const auto v = integrate_vector(
        [](double x, double* out) {
            out[0] = std::exp(-x);
            out[1] = x * std::exp(-x);
            out[2] = std::cos(x);
        },
        3, 0.0, 3.0);
    CHECK(v.values[0] == doctest::Approx(1 - std::exp(-3.0)).epsilon(1e-12));
    CHECK(v.values[1] == doctest::Approx(1 - 4 * std::exp(-3.0)).epsilon(1e-12));
    CHECK(v.values[2] == doctest::Approx(std::sin(3.0)).epsilon(1e-12));
}

TEST_CASE("integrating the cap area derivative recovers the area difference") {
    const SphereGeometry g = SphereGeometry::make(6371e3, 6871e3);
    for (double h : {0.0, 400.0, 1000.0}) {
        const CapWindow w = cap_window(LayerRole::Satellite, g, h);
        const double a = w.r_min_m + 0.1 * (w.r_max_m - w.r_min_m);
        const double b = w.r_min_m + 0.9 * (w.r_max_m - w.r_min_m);
        const auto q = integrate_1d(
            [&](double r) { return cap_area_derivative(LayerRole::Satellite, g, h, r); }, a, b);
        const double diff = cap_area_satellite(g, h, b) - cap_area_satellite(g, h, a);
        CHECK(std::abs(q.value - diff) / diff < 1e-8);
    }
}

TEST_CASE("height-averaged satellite cap area matches a Monte Carlo height average") {
    const SphereGeometry g = SphereGeometry::make(6371e3, 6871e3);
    const auto hd = HeightDistribution::uniform(0, 1000);
    const double r = 1e6;
    const auto q = integrate_1d([&](double h) { return cap_area_satellite(g, h, r) * hd.pdf(h); }, 0, 1000);
    CounterStream rng(99, 0, 0, 0, StreamPurpose::Test);
    std::vector<double> x(10000000);
    for (auto& v : x) v = cap_area_satellite(g, hd.quantile(rng.uniform()), r);
    const auto m = mean_estimate(x);
    CHECK(std::abs(m.mean - q.value) <= 3 * m.std_error);
}

TEST_CASE("jet exp basics") {
    const Jet one = jet_exp(Jet::constant(0.0, 4));
    CHECK(one[0] == 1.0);
    for (int k = 1; k <= 4; ++k) CHECK(one[k] == 0.0);
    const Jet e = jet_exp(Jet::variable(1.0, 3));
    const double E = std::exp(1.0);
    CHECK(e[0] == doctest::Approx(E));
    CHECK(e[1] == doctest::Approx(E));
    CHECK(e[2] == doctest::Approx(E / 2));
    CHECK(e[3] == doctest::Approx(E / 6));
}

TEST_CASE("jet exp of a polynomial matches finite differences") {
    // p(x) = 0.3 - 0.2x + 0.5x^2 + 0.1x^3 - 0.05x^4 + 0.02x^5 around x0 = 0.4
    const double c[6] = {0.3, -0.2, 0.5, 0.1, -0.05, 0.02};
    auto p = [&](double x) {
        double s = 0.0;
        for (int k = 5; k >= 0; --k) s = s * x + c[k];
        return s;
    };
    const double x0 = 0.4;
    Jet x = Jet::variable(x0, 5);
    Jet poly = Jet::constant(c[5], 5);
    for (int k = 4; k >= 0; --k) poly = poly * x + Jet::constant(c[k], 5);
    const Jet ej = jet_exp(poly);
    auto f = [&](double t) { return std::exp(p(t)); };
    const double hs = 1e-3;
    const double d1 = (f(x0 + hs) - f(x0 - hs)) / (2 * hs);
    const double d2 = (f(x0 + hs) - 2 * f(x0) + f(x0 - hs)) / (hs * hs);
    const double d3 = (f(x0 + 2 * hs) - 2 * f(x0 + hs) + 2 * f(x0 - hs) - f(x0 - 2 * hs)) / (2 * hs * hs * hs);
    CHECK(ej[0] == doctest::Approx(f(x0)).epsilon(1e-14));
    CHECK(std::abs(ej[1] - d1) / std::abs(d1) < 1e-6);
    CHECK(std::abs(2 * ej[2] - d2) / std::abs(d2) < 1e-6);
    CHECK(std::abs(6 * ej[3] - d3) / std::abs(d3) < 1e-5);
}

TEST_CASE("jet algebra identities on random jets") {
    CounterStream rng(5, 0, 0, 0, StreamPurpose::Test);
    for (int t = 0; t < 200; ++t) {
        const int K = 1 + static_cast<int>(rng.uniform() * kMaxJetOrder);
        const Jet a = random_jet(rng, K), b = random_jet(rng, K), c = random_jet(rng, K);
        CHECK(jets_close((a * b) * c, a * (b * c), 1e-12));
        CHECK(jets_close(jet_exp(a + b), jet_exp(a) * jet_exp(b), 1e-12));
        CHECK(jets_close(a * b, b * a, 1e-15));
        Jet nz = a;
        nz[0] = 1.5 + std::abs(a[0]);
        CHECK(jets_close(nz * nz.reciprocal(), Jet::constant(1.0, K), 1e-12));
        CHECK(jets_close(nz.pow(3), nz * nz * nz, 1e-12));
        CHECK(jets_close(nz.pow(-2) * nz.pow(2), Jet::constant(1.0, K), 1e-12));
        // order-0 restriction is the scalar operation
        CHECK(jet_exp(a.truncated(0))[0] == doctest::Approx(std::exp(a[0])).epsilon(1e-15));
        CHECK((a * b).truncated(0)[0] == a[0] * b[0]);
    }
}

TEST_CASE("laplace derivatives") {
    const std::vector<double> flat = {0.7, 0, 0, 0, 0};
    const auto lc = laplace_derivatives(flat, 4);
    CHECK(lc[0] == doctest::Approx(std::exp(-0.7)));
    for (int k = 1; k <= 4; ++k) CHECK(lc[static_cast<std::size_t>(k)] == 0.0);

    const std::vector<double> lin = {0, 1, 0, 0, 0};
    const auto ll = laplace_derivatives(lin, 4);
    for (int k = 0; k <= 4; ++k) CHECK(ll[static_cast<std::size_t>(k)] == doctest::Approx(k % 2 ? -1.0 : 1.0));

    CHECK_THROWS(laplace_derivatives(lin, 5));

    CounterStream rng(17, 0, 0, 0, StreamPurpose::Test);
    for (int t = 0; t < 200; ++t) {
        const int K = 1 + static_cast<int>(rng.uniform() * 12);
        const Jet g = random_jet(rng, K);
        std::vector<double> gd(static_cast<std::size_t>(K + 1));
        double fact = 1.0;
        for (int k = 0; k <= K; ++k) {
            if (k > 0) fact *= k;
            gd[static_cast<std::size_t>(k)] = g[k] * fact;
        }
        const auto L = laplace_derivatives(gd, K);
        const Jet e = jet_exp(-g);
        fact = 1.0;
        for (int k = 0; k <= K; ++k) {
            if (k > 0) fact *= k;
            const double want = e[k] * fact;
            CHECK(std::abs(L[static_cast<std::size_t>(k)] - want) <= 1e-12 * std::max(std::abs(want), fact * std::abs(e[0])));
        }
    }
}

TEST_CASE("special functions") {
    CHECK(pochhammer(0.0, 0) == 1.0);
    for (int k = 1; k < 10; ++k) CHECK(pochhammer(0.0, k) == 0.0);
    CHECK(pochhammer(-9.0, 3) == -504.0);
    CHECK(pochhammer(10.0, 18) == doctest::Approx(std::tgamma(28.0) / std::tgamma(10.0)).epsilon(1e-13));
    CHECK(gamma_fn(5.0) == doctest::Approx(24.0).epsilon(1e-15));
    CHECK(binomial(5.0, 2) == 10.0);
    CHECK(binomial(-0.5, 2) == doctest::Approx(0.375));
    CHECK_THROWS_AS(pochhammer(1e10, 40), std::overflow_error);
    CHECK_THROWS_AS(gamma_fn(200.0), std::overflow_error);
}
