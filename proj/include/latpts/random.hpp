#pragma once

#include <cstdint>
#include <stdexcept>

namespace latpts {

/// SplitMix64 (Steele, Lea, Flood 2014). The full algorithm is the three lines
/// in next(); streams are identical on every platform and compiler.
class SplitMix64 {
  public:
    explicit SplitMix64(std::uint64_t seed) : state_(seed) {}

    std::uint64_t next() {
        std::uint64_t z = (state_ += 0x9e3779b97f4a7c15ull);
        z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ull;
        z = (z ^ (z >> 27)) * 0x94d049bb133111ebull;
        return z ^ (z >> 31);
    }

    /// Uniform integer in [lo, hi], by rejection (no modulo bias).
    std::int64_t uniform(std::int64_t lo, std::int64_t hi) {
        if (hi < lo)
            throw std::invalid_argument("uniform: empty range");
        const std::uint64_t span = static_cast<std::uint64_t>(hi - lo) + 1;
        if (span == 0)
            return static_cast<std::int64_t>(next());
        const std::uint64_t limit = UINT64_MAX - UINT64_MAX % span;
        std::uint64_t x;
        do {
            x = next();
        } while (x >= limit);
        return lo + static_cast<std::int64_t>(x % span);
    }

  private:
    std::uint64_t state_;
};

}  // namespace latpts
