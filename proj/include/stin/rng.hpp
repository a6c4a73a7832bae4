#pragma once

#include <array>
#include <cstdint>

namespace stin {

using PhiloxCounter = std::array<std::uint32_t, 4>;
using PhiloxKey = std::array<std::uint32_t, 2>;

/// Philox4x32 with 10 rounds (Salmon et al., SC'11).
PhiloxCounter philox4x32_10(PhiloxCounter ctr, PhiloxKey key) noexcept;

/// What a stream is used for; folded into the counter so streams never overlap.
enum class StreamPurpose : std::uint32_t { Count = 1, Node = 2, Sphere = 3, Fading = 4, Test = 5 };

/// Counter-based stream. The key is the master seed; counter words 1..3 are
/// (node, trial, layer<<8 | purpose) and word 0 counts 4-word blocks.
class CounterStream {
public:
    CounterStream(std::uint64_t seed, std::uint32_t node, std::uint32_t trial,
                  std::uint32_t layer, StreamPurpose purpose) noexcept;

    std::uint32_t next_u32() noexcept;
    std::uint64_t next_u64() noexcept;

    /// Uniform on [0, 1) with 53 random bits.
    double uniform() noexcept;
    /// Uniform on (0, 1).
    double uniform_open() noexcept;
    /// Exp(1).
    double exponential() noexcept;
    /// Gamma(shape, 1) for integer shape >= 1, as a sum of exponentials.
    double gamma_integer(int shape) noexcept;
    /// Poisson(mean): inversion below mean 10, PTRS rejection above.
    std::uint64_t poisson(double mean) noexcept;

private:
    void refill() noexcept;

    PhiloxKey key_;
    PhiloxCounter ctr_;
    PhiloxCounter buf_{};
    int pos_ = 4;
};

}  // namespace stin
