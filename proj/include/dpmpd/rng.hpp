#pragma once

#include <cstdint>
#include <random>

namespace dpmpd {

// Derives independent stream seeds from a master seed.  splitmix64 is used as
// the mixing function so that nearby (seed, stream) pairs land far apart in
// state space.
inline std::uint64_t mix_seed(std::uint64_t seed, std::uint64_t stream) {
    std::uint64_t z = seed + 0x9e3779b97f4a7c15ULL * (stream + 1);
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
}

// Deterministic random stream.  Wraps std::mt19937_64 but generates doubles
// and bounded integers by hand so that every platform produces bit-identical
// sequences (std::uniform_real_distribution is not portable across standard
// library implementations).
class Rng {
  public:
    explicit Rng(std::uint64_t seed) : engine_(seed) {}

    // Uniform double in [0, 1) with 53 random bits.
    double uniform() { return static_cast<double>(engine_() >> 11) * 0x1.0p-53; }

    // Uniform double in [lo, hi).
    double uniform(double lo, double hi) { return lo + (hi - lo) * uniform(); }

    // Uniform integer in [0, bound).  Rejection sampling keeps the result
    // exactly uniform and reproducible.
    std::uint64_t uniform_int(std::uint64_t bound) {
        const std::uint64_t limit = std::uint64_t(-1) - std::uint64_t(-1) % bound;
        std::uint64_t x;
        do {
            x = engine_();
        } while (x >= limit);
        return x % bound;
    }

    std::uint64_t raw() { return engine_(); }

  private:
    std::mt19937_64 engine_;
};

}  // namespace dpmpd
