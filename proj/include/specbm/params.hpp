#pragma once

#include <cstdint>

namespace specbm {

/**
 * Parameters of a planted equal-block random graph.
 *
 * The model has k blocks of block_size vertices each. Two vertices in the
 * same block are adjacent independently with probability a / n_ref, two
 * vertices in different blocks with probability b / n_ref, where n_ref is
 * the reference count the constructors fix:
 *
 *  - two_block(n, a, b): two blocks of n vertices (2n total), n_ref = n.
 *  - k_block(n, k, a, b): k blocks over n total vertices, n_ref = n.
 *
 * Both constructors require a > b > 0 and probabilities at most 1.
 */
struct SbmParams {
    std::int64_t n_ref = 0;       ///< denominator of the edge probabilities
    int k = 0;                    ///< number of blocks
    std::int64_t block_size = 0;  ///< vertices per block
    double a = 0.0;               ///< within-block rate: p_in = a / n_ref
    double b = 0.0;               ///< cross-block rate: p_out = b / n_ref

    /** Two blocks of n vertices each; edge probabilities a/n and b/n. */
    static SbmParams two_block(std::int64_t n, double a, double b);

    /**
     * k equal blocks over n total vertices (k must divide n); edge
     * probabilities a/n and b/n.
     */
    static SbmParams k_block(std::int64_t n, int k, double a, double b);

    std::int64_t num_vertices() const { return static_cast<std::int64_t>(k) * block_size; }
    double p_in() const { return a / static_cast<double>(n_ref); }
    double p_out() const { return b / static_cast<double>(n_ref); }

    /** Block index of a vertex (blocks are contiguous index ranges). */
    int block_of(std::int64_t v) const { return static_cast<int>(v / block_size); }
};

}  // namespace specbm
