#include "stin/special.hpp"

#include <cmath>
#include <stdexcept>

namespace stin {

double pochhammer(double a, int k) {
    if (k < 0) throw std::domain_error("pochhammer: negative k");
    double p = 1.0;
    for (int i = 0; i < k; ++i) p *= a + i;
    if (!std::isfinite(p)) throw std::overflow_error("pochhammer: overflow");
    return p;
}

double gamma_fn(double x) {
    if (x <= 0.0 && x == std::floor(x)) throw std::overflow_error("gamma_fn: pole");
    const double g = std::tgamma(x);
    if (!std::isfinite(g)) throw std::overflow_error("gamma_fn: overflow");
    return g;
}

double binomial(double n, int k) {
    if (k < 0) return 0.0;
    // C(n, k) = prod_{i<k} (n - i) / (i + 1), interleaved to stay in range.
    double c = 1.0;
    for (int i = 0; i < k; ++i) c = c * (n - i) / (i + 1);
    if (!std::isfinite(c)) throw std::overflow_error("binomial: overflow");
    return c;
}

}  // namespace stin
