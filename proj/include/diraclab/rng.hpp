#ifndef DIRACLAB_RNG_HPP
#define DIRACLAB_RNG_HPP

#include <cstdint>

namespace diraclab {

// Small deterministic generator (splitmix64).  Used instead of <random> so
// that randomized tests produce the same draws on every platform and
// standard library.
struct SplitMix64 {
    std::uint64_t state;

    explicit SplitMix64(std::uint64_t seed) : state(seed) {}

    std::uint64_t next() {
        state += 0x9e3779b97f4a7c15ULL;
        std::uint64_t z = state;
        z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
        z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
        return z ^ (z >> 31);
    }

    // Uniform in [0, 1): top 53 bits mapped to the double mantissa.
    double uniform() { return static_cast<double>(next() >> 11) * 0x1.0p-53; }

    double uniform(double a, double b) { return a + (b - a) * uniform(); }
};

}  // namespace diraclab

#endif
