#include "stin/jet.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "stin/special.hpp"

namespace stin {

Jet::Jet(int order) : order_(order) {
    if (order < 0 || order > kMaxJetOrder) throw std::out_of_range("jet order out of range");
}

Jet Jet::constant(double value, int order) {
    Jet j(order);
    j.c_[0] = value;
    return j;
}

Jet Jet::variable(double x0, int order) {
    Jet j(order);
    j.c_[0] = x0;
    if (order >= 1) j.c_[1] = 1.0;
    return j;
}

Jet Jet::truncated(int order) const {
    Jet j(std::min(order, order_));
    for (int k = 0; k <= j.order_; ++k) j.c_[k] = c_[k];
    return j;
}

Jet& Jet::operator+=(const Jet& o) {
    order_ = std::min(order_, o.order_);
    for (int k = 0; k <= order_; ++k) c_[k] += o.c_[k];
    for (int k = order_ + 1; k <= kMaxJetOrder; ++k) c_[k] = 0.0;
    return *this;
}

Jet& Jet::operator-=(const Jet& o) {
    order_ = std::min(order_, o.order_);
    for (int k = 0; k <= order_; ++k) c_[k] -= o.c_[k];
    for (int k = order_ + 1; k <= kMaxJetOrder; ++k) c_[k] = 0.0;
    return *this;
}

Jet& Jet::operator*=(double s) {
    for (int k = 0; k <= order_; ++k) c_[k] *= s;
    return *this;
}

Jet operator*(const Jet& a, const Jet& b) {
    Jet r(std::min(a.order_, b.order_));
    for (int k = 0; k <= r.order_; ++k) {
        double s = 0.0;
        for (int j = 0; j <= k; ++j) s += a.c_[j] * b.c_[k - j];
        r.c_[k] = s;
    }
    return r;
}

Jet Jet::reciprocal() const {
    if (c_[0] == 0.0) throw std::domain_error("jet reciprocal of zero constant term");
    Jet r(order_);
    const double inv = 1.0 / c_[0];
    r.c_[0] = inv;
    for (int k = 1; k <= order_; ++k) {
        double s = 0.0;
        for (int j = 1; j <= k; ++j) s += c_[j] * r.c_[k - j];
        r.c_[k] = -inv * s;
    }
    return r;
}

Jet Jet::pow(int p) const {
    if (p < 0) return reciprocal().pow(-p);
    Jet result = constant(1.0, order_);
    Jet base = *this;
    while (p > 0) {
        if (p & 1) result = result * base;
        p >>= 1;
        if (p > 0) base = base * base;
    }
    return result;
}

Jet jet_exp(const Jet& x) {
    Jet e(x.order());
    e[0] = std::exp(x[0]);
    for (int k = 1; k <= x.order(); ++k) {
        double s = 0.0;
        for (int j = 1; j <= k; ++j) s += j * x[j] * e[k - j];
        e[k] = s / k;
    }
    return e;
}

std::vector<double> laplace_derivatives(std::span<const double> g_derivs, int K) {
    if (K < 0 || g_derivs.size() < static_cast<std::size_t>(K) + 1)
        throw std::invalid_argument("laplace_derivatives: need g derivatives 0..K");
    std::vector<double> L(static_cast<std::size_t>(K) + 1);
    L[0] = std::exp(-g_derivs[0]);
    for (int k = 1; k <= K; ++k) {
        double s = 0.0;
        for (int j = 0; j <= k - 1; ++j) s += binomial(k - 1, j) * g_derivs[j + 1] * L[k - 1 - j];
        L[k] = -s;
    }
    return L;
}

}  // namespace stin
