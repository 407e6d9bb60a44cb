#pragma once

#include <cstdint>
#include <iosfwd>
#include <span>
#include <utility>
#include <vector>

namespace specbm {

using VertexId = std::int32_t;

/**
 * Immutable simple undirected graph with 0-based contiguous vertex ids.
 *
 * Adjacency is stored in compressed sparse rows with sorted neighbor lists.
 * Self-loops and parallel edges are rejected at construction. Edges are
 * identified by their canonical form (u, v) with u < v, and every edge-order
 * dependent operation (file output, edge coloring, observation labels) uses
 * ascending canonical order.
 */
class Graph {
public:
    Graph() = default;

    /**
     * Build from an edge list. Pairs may arrive in any order and orientation;
     * they are canonicalized and sorted. Throws ConfigError on out-of-range
     * endpoints, self-loops, or duplicate edges.
     */
    Graph(VertexId num_vertices, std::vector<std::pair<VertexId, VertexId>> edges);

    VertexId num_vertices() const { return num_vertices_; }
    std::int64_t num_edges() const { return static_cast<std::int64_t>(edges_.size()); }

    /** Sorted neighbor list of u. */
    std::span<const VertexId> neighbors(VertexId u) const {
        return {adjacency_.data() + offsets_[u], adjacency_.data() + offsets_[u + 1]};
    }

    std::int64_t degree(VertexId u) const { return offsets_[u + 1] - offsets_[u]; }

    /** Canonical edge list: ascending (u, v) with u < v. */
    const std::vector<std::pair<VertexId, VertexId>>& edges() const { return edges_; }

    bool has_edge(VertexId u, VertexId v) const;

    /**
     * Serialize as text: a "N M" header line, then one "u v" line per edge
     * in ascending canonical order. LF line endings.
     */
    void save(std::ostream& out) const;

    /**
     * Parse the save() format. Validation is strict: exact field counts,
     * endpoints in range with u < v, edges strictly ascending (which also
     * rules out duplicates), exactly M edge lines. Throws ConfigError with
     * the offending line number.
     */
    static Graph load(std::istream& in);

private:
    VertexId num_vertices_ = 0;
    std::vector<std::int64_t> offsets_ = {0};
    std::vector<VertexId> adjacency_;
    std::vector<std::pair<VertexId, VertexId>> edges_;
};

}  // namespace specbm
