#pragma once

#include <cstdint>
#include <random>

namespace koop {

// Seedable, portable RNG with documented stream splitting.  A (seed, stream)
// pair is mixed through splitmix64 into an mt19937_64 seed, so noise sources
// that must be independent draw from distinct streams of the same user seed.
//
// Stream assignment used by the simulators:
//   0 process noise, 1 observation noise, 2 Burgers forcing,
//   3 measurement corruption (snapshot noise injection).
//
// Uniform doubles take the top 53 bits of the engine output, so every value
// is exactly representable and the sequence is identical on any conforming
// platform.
class Rng {
public:
    static constexpr std::uint64_t kStreamProcess = 0;
    static constexpr std::uint64_t kStreamObservation = 1;
    static constexpr std::uint64_t kStreamForcing = 2;
    static constexpr std::uint64_t kStreamCorruption = 3;

    Rng(std::uint64_t seed, std::uint64_t stream)
        : eng_(mix_seed(seed, stream)) {}

    std::uint64_t next_u64() { return eng_(); }

    // Uniform on [0, 1): 53-bit mantissa, never returns 1.
    double uniform01() {
        return static_cast<double>(eng_() >> 11) * 0x1.0p-53;
    }

    // Uniform on [lo, hi).
    double uniform(double lo, double hi) {
        return lo + uniform01() * (hi - lo);
    }

    // Uniform on the symmetric interval [-halfwidth, halfwidth).
    double symmetric(double halfwidth) {
        return uniform(-halfwidth, halfwidth);
    }

    static std::uint64_t splitmix64(std::uint64_t& state) {
        state += 0x9e3779b97f4a7c15ULL;
        std::uint64_t z = state;
        z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
        z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
        return z ^ (z >> 31);
    }

private:
    static std::uint64_t mix_seed(std::uint64_t seed, std::uint64_t stream) {
        std::uint64_t s = seed;
        std::uint64_t a = splitmix64(s);
        s = a ^ (0xda3e39cb94b95bdbULL * (stream + 1));
        return splitmix64(s);
    }

    std::mt19937_64 eng_;
};

}  // namespace koop
