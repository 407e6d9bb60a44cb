#pragma once

#include <cstdint>
#include <iosfwd>
#include <vector>

#include "specbm/graph.hpp"
#include "specbm/params.hpp"

namespace specbm {

/**
 * An assignment of every vertex to one of k classes, with an optional record
 * of vertices that were zeroed out ("trimmed") by a preprocessing step.
 * Trimmed vertices still carry a class label; the trimmed set is metadata
 * for diagnostics and rendering.
 */
struct Clustering {
    std::vector<int> labels;          ///< labels[v] in [0, k)
    int k = 0;                        ///< number of classes
    std::vector<VertexId> trimmed;    ///< sorted ids of trimmed vertices

    std::int64_t num_vertices() const { return static_cast<std::int64_t>(labels.size()); }

    /** Vertex ids of each class, ascending. */
    std::vector<std::vector<VertexId>> classes() const;

    /** Sizes of each class. */
    std::vector<std::int64_t> class_sizes() const;

    /**
     * Serialize as text: one label per line, in vertex order; trimmed
     * vertices carry the suffix " *". LF line endings.
     */
    void save(std::ostream& out) const;

    /**
     * Parse the save() format. k is inferred as max(label) + 1. Throws
     * ConfigError with a line number on malformed input.
     */
    static Clustering load(std::istream& in);
};

/** Ground-truth clustering of a planted model: contiguous equal blocks. */
Clustering truth_clustering(const SbmParams& params);

}  // namespace specbm
