#pragma once

#include <cstdint>
#include <random>

namespace narm {

// Deterministic random stream. Every stochastic decision in the toolkit is
// funnelled through this wrapper, so a (seed, configuration, data) triple
// fully determines every output byte regardless of the standard library's
// distribution implementations.
class Rng {
public:
    explicit Rng(std::uint64_t seed) : engine_(seed) {}

    // Uniform draw from [0, 1).
    double uniform01() { return static_cast<double>(engine_() >> 11) * 0x1.0p-53; }

    // Uniform draw from {0, ..., n-1}; n must be positive.
    std::size_t below(std::size_t n) {
        return static_cast<std::size_t>(
            (static_cast<unsigned __int128>(engine_()) * static_cast<unsigned __int128>(n)) >> 64);
    }

private:
    std::mt19937_64 engine_;
};

}  // namespace narm
