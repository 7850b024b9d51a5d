#pragma once

// SplitMix64: a counter-based generator (constant-increment state, bijective
// output mix), so a seed fully determines the stream on every platform.

#include <cstdint>

namespace momentmono::detail {

class SplitMix64 {
  public:
    explicit SplitMix64(std::uint64_t seed) : state_(seed) {}

    std::uint64_t next_u64() {
        std::uint64_t z = (state_ += 0x9E3779B97F4A7C15ull);
        z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ull;
        z = (z ^ (z >> 27)) * 0x94D049BB133111EBull;
        return z ^ (z >> 31);
    }

    // Uniform on the open interval (0,1): the half-offset keeps both
    // endpoints strictly excluded, so log(u) and log(1-u) stay finite.
    double next_unit() {
        return (static_cast<double>(next_u64() >> 11) + 0.5) * 0x1.0p-53;
    }

  private:
    std::uint64_t state_;
};

}  // namespace momentmono::detail
