#pragma once

namespace stin {

/// Rising factorial (a)_k = a (a+1) ... (a+k-1); (a)_0 = 1.
/// Throws std::overflow_error if the result leaves double range.
double pochhammer(double a, int k);

/// Gamma function; throws std::overflow_error on overflow or a pole.
double gamma_fn(double x);

/// Generalized binomial coefficient C(n, k) for real n and integer k >= 0.
double binomial(double n, int k);

}  // namespace stin
