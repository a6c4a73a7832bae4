#pragma once

#include <span>
#include <vector>

#include "stin/function_ref.hpp"

namespace stin {

/// Tolerances for adaptive 21-point Gauss-Kronrod integration.
struct QuadratureSpec {
    double abs_tol = 1e-12;
    double rel_tol = 1e-8;
    int max_subdivisions = 400;
    /// Throw NonConvergence when the budget runs out above tolerance.
    bool throw_on_failure = true;
};

struct QuadResult {
    double value = 0.0;
    double error = 0.0;
    int evaluations = 0;
    bool converged = true;
};

struct VectorQuadResult {
    std::vector<double> values;
    std::vector<double> errors;
    int evaluations = 0;
    bool converged = true;

    /// Largest error relative to the requested tolerance; <= 1 when converged.
    double worst_ratio = 0.0;
};

/// Integrates f over [a, b]. Interior breakpoints (kinks, branch switches)
/// seed the initial partition; points outside (a, b) are ignored.
QuadResult integrate_1d(FunctionRef<double(double)> f, double a, double b,
                        const QuadratureSpec& spec = {},
                        std::span<const double> breakpoints = {});

/// Integrates an n-component integrand f(x, out[n]) over [a, b]. Each component
/// must meet max(abs_tol, rel_tol * |I_c|).
VectorQuadResult integrate_vector(FunctionRef<void(double, double*)> f, int n, double a,
                                  double b, const QuadratureSpec& spec = {},
                                  std::span<const double> breakpoints = {});

}  // namespace stin
