#pragma once

#include <cstddef>
#include <span>
#include <vector>

#include "stin/function_ref.hpp"

namespace stin {

struct ChiSquareResult {
    double statistic = 0.0;
    int dof = 0;
    double p_value = 1.0;
    int bins = 0;
};

/// Goodness of fit of integer counts against Poisson(mean). Adjacent values
/// are merged until every bin expects at least `min_expected` observations;
/// the outer bins are open-ended tails.
ChiSquareResult chi_square_poisson(std::span<const std::size_t> counts, double mean,
                                   double min_expected = 5.0);

struct KsResult {
    double statistic = 0.0;
    double p_value = 1.0;
};

/// One-sample Kolmogorov-Smirnov statistic sup |F_n - F|.
double ks_statistic(std::vector<double> samples, FunctionRef<double(double)> cdf);

/// Asymptotic Kolmogorov tail with the Stephens small-sample correction.
double kolmogorov_pvalue(double d, std::size_t n);

KsResult ks_test(std::vector<double> samples, FunctionRef<double(double)> cdf);

/// Sample mean and standard error of the mean.
struct MeanEstimate {
    double mean = 0.0;
    double std_error = 0.0;
};
MeanEstimate mean_estimate(std::span<const double> x);

}  // namespace stin
