#pragma once

// Deterministic, platform-independent random streams.  The standard
// distributions are implementation-defined, so sampling is hand-rolled on top
// of splitmix64: identical seeds must give identical results everywhere.

#include <cstdint>

namespace nagata {

struct SplitMix64 {
    std::uint64_t state;

    explicit SplitMix64(std::uint64_t seed) : state(seed) {}

    std::uint64_t next() {
        std::uint64_t z = (state += 0x9e3779b97f4a7c15ULL);
        z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
        z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
        return z ^ (z >> 31);
    }

    // Uniform in [0, bound) by modulo; the bias is immaterial here, the
    // contract is determinism, not statistical perfection.
    std::uint64_t below(std::uint64_t bound) { return next() % bound; }

    // Uniform in [lo, hi] inclusive.
    long long range(long long lo, long long hi) {
        return lo + static_cast<long long>(below(static_cast<std::uint64_t>(hi - lo + 1)));
    }
};

// Derives the per-trial stream used by the interpolation oracle: trial i uses
// an independent stream split off the user seed.
inline SplitMix64 split_stream(std::uint64_t seed, std::uint64_t index) {
    SplitMix64 outer(seed ^ (0xa0761d6478bd642fULL * (index + 1)));
    return SplitMix64(outer.next());
}

}  // namespace nagata
