#pragma once

#include <cstdint>
#include <iosfwd>
#include <vector>

#include "specbm/clustering.hpp"
#include "specbm/graph.hpp"
#include "specbm/sampling.hpp"
#include "specbm/sparse.hpp"
#include "specbm/spectral.hpp"

namespace specbm {

/** Which degree the censor trim step measures. */
enum class CensorTrimMode {
    kCarrierDegree,      ///< degree in the carrier graph (default)
    kObservationDegree,  ///< number of 1-labeled incident edges
};

/** Constants of the censored-observation pipeline. */
struct CensorConfig {
    double p = 0.0;          ///< carrier edge probability
    double trim_factor = 20.0;
    CensorTrimMode trim_mode = CensorTrimMode::kCarrierDegree;
    EigenOptions eig;

    static CensorConfig defaults(double p);
};

/**
 * Observation matrix of a censored instance: entry (u, v) is 1 exactly when
 * the carrier graph has the edge and its observed bit is 1. Symmetric, zero
 * diagonal.
 */
SparseSym build_observation_matrix(const Graph& g, const std::vector<std::uint8_t>& edge_labels);

/**
 * Two-class partition from censored observations. Vertices whose degree
 * (per cfg.trim_mode) exceeds trim_factor * p * N are zeroed out of the
 * observation matrix; the top-2 eigenspace *by magnitude* is taken — the
 * informative structural eigenvalue of parity observations is negative, so
 * algebraic ordering would discard it — and the split mirrors the two-class
 * spectral step: remove the all-ones direction, cut the orthogonal
 * direction at its median. There is no correction stage.
 */
Clustering spectral_partition_censor(const Graph& g, const std::vector<std::uint8_t>& edge_labels,
                                     const CensorConfig& cfg);

/** Convenience overload running on a sampled instance with defaults. */
Clustering spectral_partition_censor(const CensorInstance& instance);

/**
 * Serialize a censored instance: the carrier graph in Graph::save format,
 * followed by one "u v y" line per edge in the same canonical order.
 */
void save_censor(std::ostream& out, const Graph& g, const std::vector<std::uint8_t>& edge_labels);

/** Parsed censored instance (no model parameters are stored in the file). */
struct CensorFile {
    Graph graph;
    std::vector<std::uint8_t> edge_labels;
};

/**
 * Parse the save_censor format; the label lines must repeat the edges in
 * exactly the graph section's order. Throws ConfigError with line numbers.
 */
CensorFile load_censor(std::istream& in);

}  // namespace specbm
