#pragma once

#include <cstdint>
#include <vector>

#include "specbm/clustering.hpp"
#include "specbm/graph.hpp"
#include "specbm/sparse.hpp"
#include "specbm/spectral.hpp"

namespace specbm {

/**
 * Constants of the k-class pipeline, all derived from the model rates by
 * defaults(); individual fields may be overridden afterwards.
 */
struct MultiBlockConfig {
    double a = 0.0;
    double b = 0.0;
    int k = 0;
    std::int64_t n = 0;               ///< total vertex count the constants refer to
    double d = 0.0;                   ///< degree scale a + (k-1) b; trim at trim_factor * d
    double trim_factor = 20.0;
    int num_columns = 0;              ///< candidate columns drawn: ceil(2 ln n)
    std::int64_t set_size = 0;        ///< candidate set size: floor(n / (2k))
    std::int64_t overlap_limit = 0;   ///< pairwise overlap bound: ceil(0.2 n / (2k))
    double merge_threshold = 0.0;     ///< cross-side assignment threshold: (a+b)/8
    double column_mean = 0.0;         ///< expected column entry: (a+b)/(2n)
    EigenOptions eig;

    static MultiBlockConfig defaults(std::int64_t n, int k, double a, double b);
};

/**
 * A candidate class: a sorted set of row-side (Z-local) vertices, tagged by
 * the column that produced it and by the number of held-out blue edges
 * inside it.
 */
struct CandidateSet {
    std::vector<VertexId> vertices;
    VertexId source_column = -1;       ///< column id in the full bipartite matrix
    std::int64_t blue_edge_count = 0;
};

/** Output of the spectral candidate stage, with diagnostics. */
struct MultiSpectralResult {
    std::vector<CandidateSet> candidates;
    Subspace w;                          ///< top-k left singular space of the trimmed half
    std::vector<VertexId> drawn_columns; ///< sampled column ids, in draw order
    std::vector<VertexId> trimmed_rows;  ///< Z-local rows zeroed by trimming
    std::vector<VertexId> trimmed_cols;  ///< column ids zeroed by trimming (first-half ids)
};

/**
 * Candidate stage of the k-class pipeline. Splits the columns of the red
 * bipartite matrix in half by fair coins, trims the first half at
 * trim_factor * d on both sides, and takes its top-k left singular space W.
 * From the second half it draws min(num_columns, available) columns without
 * replacement, centers each by column_mean, projects onto W, and keeps the
 * set_size largest coordinates (ties toward lower vertex id) as a candidate
 * set, scored by its internal blue edge count.
 *
 * Deterministic in (inputs, seed); the column split and the column draws use
 * separate substreams of seed.
 */
MultiSpectralResult spectral_partition_multi(const BipartiteSparse& red_zy,
                                             const Graph& blue_in_z, const MultiBlockConfig& cfg,
                                             std::uint64_t seed);

/**
 * Keep the better-connected half of the candidates: sort by blue edge count
 * descending (ties by source column ascending) and keep the top
 * ceil(count / 2).
 */
std::vector<CandidateSet> blue_density_filter(std::vector<CandidateSet> candidates);

/**
 * Greedily accept candidates, in the given order, whose overlap with every
 * already-accepted set stays below overlap_limit, until k sets are found.
 * Throws PipelineError (naming the accepted count) when the candidates
 * cannot supply k such sets.
 */
std::vector<CandidateSet> select_disjoint(const std::vector<CandidateSet>& candidates, int k,
                                          std::int64_t overlap_limit);

/**
 * Assign every row-side vertex to the seed set holding most of its red
 * neighbors (ties toward the lowest set index; vertices with no red neighbor
 * in any set land in set 0). Returns a k-clustering of the row side.
 */
Clustering correction_multi(const std::vector<std::vector<VertexId>>& sets, const Graph& red_in_z);

/**
 * Extend a row-side clustering to the full graph: column-side vertex u joins
 * the lowest class with at least merge_threshold blue edges from u into the
 * class, falling back to the class with the most such edges (ties toward the
 * lowest class). blue_yz has one row per column-side vertex, columns indexed
 * like z_clustering; y_vertices lists the column side's global ids, and the
 * row side's global ids are recovered as their sorted complement.
 */
Clustering merge_multi(const Clustering& z_clustering, const BipartiteSparse& blue_yz,
                       const std::vector<VertexId>& y_vertices, const MultiBlockConfig& cfg);

/**
 * Full k-class pipeline: color edges red/blue, split vertices into sides Y
 * and Z, build candidates from the red Z-Y matrix, filter by blue density,
 * select k nearly disjoint sets, reassign all of Z by red-neighbor counts,
 * and merge Y back by blue-neighbor counts. Deterministic in (g, a, b, k,
 * seed). Throws PipelineError when candidate selection falls short.
 */
Clustering partition_multi(const Graph& g, double a, double b, int k, std::uint64_t seed);

/** partition_multi with every constant supplied by the caller. */
Clustering partition_multi(const Graph& g, std::uint64_t seed, const MultiBlockConfig& cfg);

/** Guarantee components for the k-class pipeline (raw, possibly above 1). */
struct MultiBound {
    double correction = 1.0;  ///< 2k exp(-0.04 (a-b)^2 / (k (a+b)))
    double merge = 1.0;       ///< 2k exp(-0.0324 (a-b)^2 / (k (a+b)))
    double overall = 1.0;     ///< max of the components, clamped to [0, 1]
};

MultiBound gamma_bound_multi(double a, double b, int k);

}  // namespace specbm
