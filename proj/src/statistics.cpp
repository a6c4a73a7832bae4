#include "stin/statistics.hpp"

#include <algorithm>
#include <boost/math/distributions/chi_squared.hpp>
#include <boost/math/distributions/poisson.hpp>
#include <cmath>
#include <stdexcept>

namespace stin {

ChiSquareResult chi_square_poisson(std::span<const std::size_t> counts, double mean,
                                   double min_expected) {
    ChiSquareResult res;
    const auto n = static_cast<double>(counts.size());
    if (counts.empty() || !(mean > 0.0)) return res;
    const boost::math::poisson_distribution<double> pois(mean);
    const std::size_t max_obs = *std::max_element(counts.begin(), counts.end());

    // Bin edges: bin i is [edge_i, edge_{i+1}); the last bin is open-ended.
    std::vector<std::size_t> edges{0};
    double acc = 0.0;
    std::size_t k = 0;
    const auto k_hi = static_cast<std::size_t>(
        std::max<double>(static_cast<double>(max_obs), boost::math::quantile(pois, 1.0 - 1e-12)));
    for (; k <= k_hi; ++k) {
        acc += n * boost::math::pdf(pois, static_cast<double>(k));
        if (acc >= min_expected) {
            const double rest = n * boost::math::cdf(boost::math::complement(pois, static_cast<double>(k)));
            if (rest < min_expected) break;
            edges.push_back(k + 1);
            acc = 0.0;
        }
    }
    std::vector<double> expected;
    std::vector<double> observed(edges.size(), 0.0);
    for (std::size_t i = 0; i < edges.size(); ++i) {
        const double lo_cdf =
            edges[i] == 0 ? 0.0 : boost::math::cdf(pois, static_cast<double>(edges[i] - 1));
        const double hi_cdf = i + 1 < edges.size()
                                  ? boost::math::cdf(pois, static_cast<double>(edges[i + 1] - 1))
                                  : 1.0;
        expected.push_back(n * (hi_cdf - lo_cdf));
    }
    for (std::size_t c : counts) {
        const auto it = std::upper_bound(edges.begin(), edges.end(), c);
        observed[static_cast<std::size_t>(it - edges.begin()) - 1] += 1.0;
    }
    for (std::size_t i = 0; i < edges.size(); ++i) {
        const double d = observed[i] - expected[i];
        res.statistic += d * d / expected[i];
    }
    res.bins = static_cast<int>(edges.size());
    res.dof = res.bins - 1;
    if (res.dof >= 1) {
        const boost::math::chi_squared_distribution<double> chi(res.dof);
        res.p_value = boost::math::cdf(boost::math::complement(chi, res.statistic));
    }
    return res;
}

double ks_statistic(std::vector<double> samples, FunctionRef<double(double)> cdf) {
    if (samples.empty()) throw std::invalid_argument("ks_statistic: no samples");
    std::sort(samples.begin(), samples.end());
    const double n = static_cast<double>(samples.size());
    double d = 0.0;
    for (std::size_t i = 0; i < samples.size(); ++i) {
        const double f = cdf(samples[i]);
        d = std::max({d, (static_cast<double>(i) + 1.0) / n - f, f - static_cast<double>(i) / n});
    }
    return d;
}

double kolmogorov_pvalue(double d, std::size_t n) {
    const double sn = std::sqrt(static_cast<double>(n));
    const double lambda = (sn + 0.12 + 0.11 / sn) * d;
    if (lambda < 1e-3) return 1.0;
    double sum = 0.0;
    for (int j = 1; j <= 100; ++j) {
        const double term = std::exp(-2.0 * j * j * lambda * lambda);
        sum += (j % 2 == 1 ? term : -term);
        if (term < 1e-16) break;
    }
    return std::clamp(2.0 * sum, 0.0, 1.0);
}

KsResult ks_test(std::vector<double> samples, FunctionRef<double(double)> cdf) {
    const std::size_t n = samples.size();
    KsResult r;
    r.statistic = ks_statistic(std::move(samples), cdf);
    r.p_value = kolmogorov_pvalue(r.statistic, n);
    return r;
}

MeanEstimate mean_estimate(std::span<const double> x) {
    MeanEstimate m;
    if (x.empty()) return m;
    const double n = static_cast<double>(x.size());
    double s = 0.0;
    for (double v : x) s += v;
    m.mean = s / n;
    double ss = 0.0;
    for (double v : x) ss += (v - m.mean) * (v - m.mean);
    m.std_error = x.size() > 1 ? std::sqrt(ss / (n - 1) / n) : 0.0;
    return m;
}

}  // namespace stin
