#pragma once

#include <cstdint>
#include <vector>

#include "specbm/clustering.hpp"

namespace specbm {

/**
 * Recovery quality of a predicted clustering against ground truth, under the
 * class matching that minimizes the worst per-block missing fraction.
 */
struct GammaReport {
    /// max over truth blocks of (block members outside the matched class) /
    /// (block size) — the quantity the guarantee curves bound.
    double gamma = 1.0;
    /// matching[t] = predicted class assigned to truth block t
    std::vector<int> matching;
    /// block_overlap[t] = |truth block t  intersect  matched class|
    std::vector<std::int64_t> block_overlap;
    /// fraction of all vertices outside their matched class, under the same
    /// matching (not separately minimized)
    double total_misclassified = 1.0;
};

/**
 * Compute the report. Requires equal lengths and equal class counts. For
 * k <= 8 every permutation is tried (ties resolved toward the
 * lexicographically smallest matching); for larger k the optimum is found by
 * a bottleneck assignment — binary search over the distinct per-pair miss
 * fractions with a bipartite-matching feasibility test — which returns one
 * deterministic optimal matching.
 */
GammaReport gamma_correctness(const Clustering& predicted, const Clustering& truth);

namespace detail {
/** Internal entry point that forces the bottleneck path; for cross-testing. */
GammaReport gamma_correctness_impl(const Clustering& predicted, const Clustering& truth,
                                   bool force_bottleneck);
}  // namespace detail

}  // namespace specbm
