#pragma once

#include <cstdint>

#include "specbm/clustering.hpp"
#include "specbm/graph.hpp"
#include "specbm/sparse.hpp"
#include "specbm/spectral.hpp"

namespace specbm {

/**
 * Constants of the two-class pipeline. The factories derive every threshold
 * from the model rates; individual fields may be overridden afterwards.
 */
struct TwoBlockConfig {
    double d = 0.0;                     ///< degree scale; rows above trim_factor * d are zeroed
    double trim_factor = 20.0;
    double correction_threshold = 0.0;  ///< opposite-class neighbor count that triggers a flip
    bool iterate_correction = false;    ///< repeat correction rounds until stable
    int max_correction_rounds = 100;
    EigenOptions eig;

    /** Constants for the spectral step on a full sample: d = a + b. */
    static TwoBlockConfig full_graph(double a, double b);

    /**
     * Constants for the split pipeline, where the spectral step sees one
     * random half of the edges: d = (a + b) / 2. The correction threshold
     * stays (a + b) / 4 in both variants.
     */
    static TwoBlockConfig half_graph(double a, double b);
};

/**
 * Spectral half of the two-class pipeline. Zeroes rows/columns with degree
 * above trim_factor * d, takes the top-2 algebraic eigenspace, removes the
 * direction aligned with the all-ones vector, and splits at the median of
 * the orthogonal in-subspace direction. The input dimension must be even;
 * the output classes have exactly equal sizes and the trimmed vertices are
 * recorded (they keep their spectral labels).
 */
Clustering spectral_partition_two(const SparseSym& adjacency, const TwoBlockConfig& cfg);

/**
 * One correction pass over an edge set held out from the spectral step:
 * every vertex with at least cfg.correction_threshold neighbors of the
 * opposite class flips, all flips computed from the input labels and applied
 * simultaneously. With cfg.iterate_correction the pass repeats until no
 * vertex flips or max_correction_rounds is reached.
 */
Clustering correction_two(const Clustering& clustering, const Graph& blue,
                          const TwoBlockConfig& cfg);

/**
 * Full two-class pipeline: color the edges red/blue by fair coins, run the
 * spectral step on the red half (trim scale (a+b)/2), then correct with the
 * blue half at threshold (a+b)/4. Deterministic in (g, a, b, seed); the
 * coloring uses its own substream of seed.
 */
Clustering partition_two(const Graph& g, double a, double b, std::uint64_t seed);

/** partition_two with every constant supplied by the caller. */
Clustering partition_two(const Graph& g, std::uint64_t seed, const TwoBlockConfig& cfg);

/**
 * Guarantee curve for the two-class pipeline: the fraction of vertices the
 * correction step can leave misplaced is at most 2 exp(-0.072 (a-b)^2 /
 * (a+b)), clamped to [0, 1].
 */
double gamma_bound_two(double a, double b);

}  // namespace specbm
