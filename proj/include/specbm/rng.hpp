#pragma once

#include <cmath>
#include <cstdint>
#include <limits>
#include <random>
#include <utility>
#include <vector>

namespace specbm {

/**
 * Deterministic random stream with portable output.
 *
 * The engine is std::mt19937_64, whose sequence is pinned by the C++
 * standard, and every distribution below is implemented by hand on top of
 * its raw 64-bit output. The std::*_distribution adaptors are deliberately
 * avoided: their algorithms are implementation-defined, so the same seed
 * could produce different samples under a different standard library. With
 * this class, a seed fully determines every downstream artifact on any
 * conforming platform.
 *
 * Independent substreams are derived with derive(tag): each pipeline stage
 * (edge sampling, edge coloring, vertex splitting, column sampling, ...)
 * draws from its own substream, so adding draws to one stage never perturbs
 * another. Derivation depends only on the originating seed and the tag, not
 * on how many values have been drawn, so substreams may be derived in any
 * order.
 */
class RngStream {
public:
    explicit RngStream(std::uint64_t seed) : engine_(seed), seed_(seed) {}

    /**
     * Derive an independent substream from (seed, tag).
     *
     * The derivation runs the SplitMix64 output mixer over seed and tag so
     * that related (seed, tag) pairs land far apart in seed space.
     */
    RngStream derive(std::uint64_t tag) const {
        std::uint64_t z = seed_ + 0x9e3779b97f4a7c15ULL * (tag + 1);
        z = mix64_(z);
        z = mix64_(z ^ mix64_(tag + 0x632be59bd9b4e019ULL));
        return RngStream(z);
    }

    /** Raw engine output: uniform over all 64-bit values. */
    std::uint64_t next_u64() { return engine_(); }

    /** Uniform double in [0, 1) with 53 random bits. */
    double uniform01() {
        return static_cast<double>(next_u64() >> 11) * 0x1.0p-53;
    }

    /** Bernoulli(p) for p in [0, 1]; p <= 0 is always false, p >= 1 true. */
    bool bernoulli(double p) { return uniform01() < p; }

    /** Unbiased uniform integer in [0, bound); bound must be positive. */
    std::uint64_t uniform_below(std::uint64_t bound) {
        // Rejection sampling on the top of the range keeps the result exact.
        const std::uint64_t max64 = std::numeric_limits<std::uint64_t>::max();
        const std::uint64_t limit = max64 - (max64 % bound);
        std::uint64_t x = next_u64();
        while (x >= limit) x = next_u64();
        return x % bound;
    }

    /**
     * Number of failures before the first success of a Bernoulli(p) process
     * (a Geometric(p) sample starting at 0), computed by inversion. Used to
     * skip directly between present edges when sampling sparse graphs.
     * Returns a saturated value for p <= 0 (the process never succeeds).
     */
    std::uint64_t skip_geometric(double p) {
        if (p >= 1.0) return 0;
        if (p <= 0.0) return std::numeric_limits<std::uint64_t>::max();
        const double u = uniform01();
        const double g = std::floor(std::log1p(-u) / std::log1p(-p));
        if (g >= 9.0e18) return std::numeric_limits<std::uint64_t>::max();
        return static_cast<std::uint64_t>(g);
    }

    /** Fisher-Yates shuffle, deterministic given the stream state. */
    template <class T>
    void shuffle(std::vector<T>& v) {
        for (std::size_t i = v.size(); i > 1; --i) {
            std::size_t j = static_cast<std::size_t>(uniform_below(i));
            std::swap(v[i - 1], v[j]);
        }
    }

private:
    static std::uint64_t mix64_(std::uint64_t z) {
        z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
        z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
        return z ^ (z >> 31);
    }

    std::mt19937_64 engine_;
    std::uint64_t seed_;
};

/** Substream tags used by the samplers and pipelines. */
namespace stream_tag {
inline constexpr std::uint64_t kEdgeSample = 1;
inline constexpr std::uint64_t kEdgeColor = 2;
inline constexpr std::uint64_t kVertexSplit = 3;
inline constexpr std::uint64_t kColumnSample = 4;
inline constexpr std::uint64_t kNoise = 5;
}  // namespace stream_tag

}  // namespace specbm
