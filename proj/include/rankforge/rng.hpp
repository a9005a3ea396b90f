#ifndef RANKFORGE_RNG_HPP
#define RANKFORGE_RNG_HPP

#include <cstdint>

namespace rankforge {

// splitmix64. Small, fully specified, and identical on every platform, which
// std::uniform_int_distribution is not. Simulation results depend on this
// generator being stable, so do not swap it out casually.
class SplitMix64 {
  public:
    explicit SplitMix64(std::uint64_t seed) : state_(seed) {}

    std::uint64_t next() {
        std::uint64_t z = (state_ += 0x9E3779B97F4A7C15ULL);
        z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
        z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
        return z ^ (z >> 31);
    }

    // Unbiased draw from [0, bound) by rejection.
    std::uint64_t below(std::uint64_t bound) {
        const std::uint64_t threshold = (0 - bound) % bound;
        for (;;) {
            const std::uint64_t r = next();
            if (r >= threshold) return r % bound;
        }
    }

    // Independent stream per trial: hash (seed, trial) into a start state so
    // streams neither overlap nor depend on how trials are scheduled.
    static SplitMix64 for_trial(std::uint64_t seed, std::uint64_t trial) {
        std::uint64_t z = seed ^ (0x9E3779B97F4A7C15ULL * (trial + 1));
        z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
        z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
        return SplitMix64(z ^ (z >> 31));
    }

  private:
    std::uint64_t state_;
};

} // namespace rankforge

#endif
