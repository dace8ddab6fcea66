#pragma once

// SplitMix64 generator (Steele, Lea, Flood 2014; the reference stream from
// Vigna's xoshiro page). Chosen because its full output sequence is specified
// by the algorithm alone, so tables generated from a recorded seed are
// byte-identical on every platform. Sidecar files name it as "splitmix64".

#include <cmath>
#include <cstdint>

namespace gridjunta {

class SplitMix64 {
public:
    explicit SplitMix64(std::uint64_t seed) : state_(seed) {}

    std::uint64_t next() {
        std::uint64_t z = (state_ += 0x9E3779B97F4A7C15ULL);
        z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
        z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
        return z ^ (z >> 31);
    }

    // Uniform in [0, n) by rejection; no modulo bias.
    std::uint64_t below(std::uint64_t n) {
        const std::uint64_t limit = (~std::uint64_t{0} / n) * n;
        std::uint64_t u;
        do {
            u = next();
        } while (u >= limit);
        return u % n;
    }

    // One draw per call; accepts with probability round(p * 2^64) / 2^64.
    bool bernoulli(double p) {
        if (p <= 0.0) { next(); return false; }
        if (p >= 1.0) { next(); return true; }
        const double scaled = std::ldexp(p, 64);
        const std::uint64_t threshold =
            scaled >= 18446744073709551615.0 ? ~std::uint64_t{0}
                                             : static_cast<std::uint64_t>(scaled);
        return next() < threshold;
    }

    // Stable per-instance seed derivation for parallel suites.
    static std::uint64_t derive(std::uint64_t base, std::uint64_t index) {
        SplitMix64 g(base ^ (0x9E3779B97F4A7C15ULL * (index + 1)));
        return g.next();
    }

    static constexpr const char* name() { return "splitmix64"; }

private:
    std::uint64_t state_;
};

} // namespace gridjunta
