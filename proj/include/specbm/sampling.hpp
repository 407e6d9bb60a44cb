#pragma once

#include <cstdint>
#include <utility>
#include <vector>

#include "specbm/clustering.hpp"
#include "specbm/graph.hpp"
#include "specbm/params.hpp"

namespace specbm {

/**
 * Sample a planted equal-block graph.
 *
 * Runs in O(vertices + edges) expected time: within each block pair the
 * present edges are located by geometric skipping over the canonical pair
 * enumeration, so the cost never scales with the number of vertex pairs.
 * The result is fully determined by (params, seed).
 */
Graph sample_sbm(const SbmParams& params, std::uint64_t seed);

/** Red/blue halves of a graph produced by independent fair edge coloring. */
struct EdgeColoring {
    Graph red;
    Graph blue;
};

/**
 * Color every edge of g red or blue independently with probability 1/2,
 * deterministic in (g, seed); edges are colored in ascending canonical
 * order. The two returned graphs partition the edge set of g.
 */
EdgeColoring color_edges(const Graph& g, std::uint64_t seed);

/**
 * Split vertex ids [0, num_vertices) into two sets by independent fair coin
 * flips, deterministic in seed. Returns (Y, Z), both ascending. Accepts any
 * num_vertices >= 0 (zero yields two empty sets).
 */
std::pair<std::vector<VertexId>, std::vector<VertexId>> split_vertices(std::int64_t num_vertices,
                                                                       std::uint64_t seed);

/**
 * A censored-parity observation instance.
 *
 * The carrier graph has 2n vertices split into two hidden sides (x = 0 on
 * the first n, x = 1 on the rest) and is Erdos-Renyi with edge probability
 * p. Each edge carries one observed bit y = x_u XOR x_v XOR z with
 * independent noise z ~ Bernoulli(epsilon). edge_labels is aligned with the
 * canonical edge order of graph.
 */
struct CensorInstance {
    Graph graph;
    std::vector<std::uint8_t> edge_labels;  ///< y per canonical edge
    std::vector<std::uint8_t> hidden_x;     ///< planted side bit per vertex
    double p = 0.0;
    double epsilon = 0.0;

    /** Ground truth as a 2-clustering (class = hidden side). */
    Clustering truth() const;
};

/**
 * Sample a censored-parity instance with n vertices per hidden side, edge
 * probability p, and noise rate epsilon. Deterministic in (n, p, epsilon,
 * seed); the carrier graph and the noise use independent substreams.
 */
CensorInstance sample_censor(std::int64_t n, double p, double epsilon, std::uint64_t seed);

}  // namespace specbm
