#pragma once

// Portable random stream. std::mt19937_64's state transition and seeding
// are fixed by the C++ standard; the mapping to [0, 1) below takes the top
// 53 bits of each draw, so sequences are identical on every platform
// (std::uniform_real_distribution is implementation-defined).

#include <cstdint>
#include <random>

namespace sharpe_bound {

class RandomStream {
public:
    explicit RandomStream(std::uint64_t seed) : engine_(seed) {}

    /// Uniform double in [0, 1) with 53 random bits.
    double uniform() { return static_cast<double>(engine_() >> 11) * 0x1.0p-53; }

    std::uint64_t bits() { return engine_(); }

private:
    std::mt19937_64 engine_;
};

}  // namespace sharpe_bound
