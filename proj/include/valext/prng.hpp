#pragma once

#include <cstdint>
#include <string>
#include <string_view>

#include "valext/rational.hpp"

namespace valext {

// splitmix64; fixed algorithm so streams are identical across platforms.
struct SplitMix64 {
    std::uint64_t state;

    explicit SplitMix64(std::uint64_t seed) : state(seed) {}

    std::uint64_t next() {
        std::uint64_t z = (state += 0x9e3779b97f4a7c15ULL);
        z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
        z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
        return z ^ (z >> 31);
    }

    // uniform in [0, n), n > 0; plain modulo, bias is irrelevant here
    std::uint64_t below(std::uint64_t n) { return next() % n; }

    long range(long lo, long hi) {  // inclusive
        return lo + static_cast<long>(below(static_cast<std::uint64_t>(hi - lo + 1)));
    }
};

inline std::uint64_t fnv1a(std::string_view s, std::uint64_t h = 0xcbf29ce484222325ULL) {
    for (unsigned char c : s) {
        h ^= c;
        h *= 0x100000001b3ULL;
    }
    return h;
}

// Index-addressable stream of nonzero rationals: numerator and denominator
// drawn from [1, 97], sign from a seeded bit.  Element i depends only on
// (seed, tag, i), so evaluation order never changes the sequence.
struct CoeffStream {
    std::uint64_t seed = 0;
    std::string tag = "c";
    bool all_ones = false;  // debugging preset

    Rat at(long i) const {
        if (all_ones) return rat(1);
        std::uint64_t h = fnv1a(tag, seed ^ 0x5851f42d4c957f2dULL);
        h ^= static_cast<std::uint64_t>(i) * 0xd6e8feb86659fd93ULL;
        SplitMix64 g(h);
        long num = g.range(1, 97);
        long den = g.range(1, 97);
        bool neg = (g.next() & 1) != 0;
        return rat(neg ? -num : num, den);
    }
};

}  // namespace valext
