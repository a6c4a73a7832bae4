#pragma once

#include <array>
#include <span>
#include <vector>

namespace stin {

inline constexpr int kMaxJetOrder = 20;

/// Truncated Taylor series c_0 + c_1 e + ... + c_K e^K of a scalar function
/// around an expansion point; c_k = f^(k) / k! times step^k.
class Jet {
public:
    explicit Jet(int order = 0);

    static Jet constant(double value, int order);
    /// The identity x0 + e.
    static Jet variable(double x0, int order);

    int order() const noexcept { return order_; }
    double operator[](int k) const { return c_[static_cast<std::size_t>(k)]; }
    double& operator[](int k) { return c_[static_cast<std::size_t>(k)]; }
    std::span<const double> coefficients() const {
        return {c_.data(), static_cast<std::size_t>(order_ + 1)};
    }

    /// Same series truncated to a lower order.
    Jet truncated(int order) const;

    Jet& operator+=(const Jet& o);
    Jet& operator-=(const Jet& o);
    Jet& operator*=(double s);

    friend Jet operator+(Jet a, const Jet& b) { return a += b; }
    friend Jet operator-(Jet a, const Jet& b) { return a -= b; }
    friend Jet operator-(Jet a) { return a *= -1.0; }
    friend Jet operator*(Jet a, double s) { return a *= s; }
    friend Jet operator*(double s, Jet a) { return a *= s; }
    friend Jet operator*(const Jet& a, const Jet& b);

    /// 1/x; requires c_0 != 0.
    Jet reciprocal() const;
    /// x^p for integer p; negative p requires c_0 != 0.
    Jet pow(int p) const;

private:
    std::array<double, kMaxJetOrder + 1> c_{};
    int order_;
};

/// exp of a jet through the recurrence k e_k = sum_j j c_j e_{k-j}.
Jet jet_exp(const Jet& x);

/// Derivatives L^(0..K) of exp(-g) from derivatives g^(0..K) (plain
/// derivatives, not Taylor coefficients).
std::vector<double> laplace_derivatives(std::span<const double> g_derivs, int K);

}  // namespace stin
