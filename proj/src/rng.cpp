#include "stin/rng.hpp"

#include <cmath>

namespace stin {

namespace {

constexpr std::uint32_t kM0 = 0xD2511F53u;
constexpr std::uint32_t kM1 = 0xCD9E8D57u;
constexpr std::uint32_t kW0 = 0x9E3779B9u;
constexpr std::uint32_t kW1 = 0xBB67AE85u;

inline void mulhilo(std::uint32_t a, std::uint32_t b, std::uint32_t& hi, std::uint32_t& lo) {
    const std::uint64_t p = static_cast<std::uint64_t>(a) * b;
    hi = static_cast<std::uint32_t>(p >> 32);
    lo = static_cast<std::uint32_t>(p);
}

std::uint64_t poisson_inversion(CounterStream& s, double mean) {
    const double u = s.uniform();
    double p = std::exp(-mean);
    double F = p;
    std::uint64_t k = 0;
    while (u > F && k < 1000) {
        ++k;
        p *= mean / static_cast<double>(k);
        F += p;
    }
    return k;
}

// Hormann's transformed rejection with squeeze, constants as in numpy.
std::uint64_t poisson_ptrs(CounterStream& s, double lam) {
    const double slam = std::sqrt(lam);
    const double loglam = std::log(lam);
    const double b = 0.931 + 2.53 * slam;
    const double a = -0.059 + 0.02483 * b;
    const double invalpha = 1.1239 + 1.1328 / (b - 3.4);
    const double vr = 0.9277 - 3.6224 / (b - 2.0);
    for (;;) {
        const double U = s.uniform() - 0.5;
        const double V = s.uniform();
        const double us = 0.5 - std::abs(U);
        const double kf = std::floor((2.0 * a / us + b) * U + lam + 0.43);
        if (us >= 0.07 && V <= vr) return static_cast<std::uint64_t>(kf);
        if (kf < 0.0 || (us < 0.013 && V > us)) continue;
        if (std::log(V) + std::log(invalpha) - std::log(a / (us * us) + b) <=
            -lam + kf * loglam - std::lgamma(kf + 1.0)) {
            return static_cast<std::uint64_t>(kf);
        }
    }
}

}  // namespace

PhiloxCounter philox4x32_10(PhiloxCounter ctr, PhiloxKey key) noexcept {
    for (int round = 0; round < 10; ++round) {
        std::uint32_t hi0, lo0, hi1, lo1;
        mulhilo(kM0, ctr[0], hi0, lo0);
        mulhilo(kM1, ctr[2], hi1, lo1);
        ctr = {hi1 ^ ctr[1] ^ key[0], lo1, hi0 ^ ctr[3] ^ key[1], lo0};
        key[0] += kW0;
        key[1] += kW1;
    }
    return ctr;
}

CounterStream::CounterStream(std::uint64_t seed, std::uint32_t node, std::uint32_t trial,
                             std::uint32_t layer, StreamPurpose purpose) noexcept
    : key_{static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32)},
      ctr_{0u, node, trial, (layer << 8) | static_cast<std::uint32_t>(purpose)} {}

void CounterStream::refill() noexcept {
    buf_ = philox4x32_10(ctr_, key_);
    ++ctr_[0];
    pos_ = 0;
}

std::uint32_t CounterStream::next_u32() noexcept {
    if (pos_ == 4) refill();
    return buf_[static_cast<std::size_t>(pos_++)];
}

std::uint64_t CounterStream::next_u64() noexcept {
    const std::uint64_t hi = next_u32();
    return (hi << 32) | next_u32();
}

double CounterStream::uniform() noexcept {
    return static_cast<double>(next_u64() >> 11) * 0x1.0p-53;
}

double CounterStream::uniform_open() noexcept {
    return (static_cast<double>(next_u64() >> 11) + 0.5) * 0x1.0p-53;
}

double CounterStream::exponential() noexcept { return -std::log(uniform_open()); }

double CounterStream::gamma_integer(int shape) noexcept {
    double s = 0.0;
    for (int i = 0; i < shape; ++i) s += exponential();
    return s;
}

std::uint64_t CounterStream::poisson(double mean) noexcept {
    if (!(mean > 0.0)) return 0;
    if (mean < 10.0) return poisson_inversion(*this, mean);
    return poisson_ptrs(*this, mean);
}

}  // namespace stin
