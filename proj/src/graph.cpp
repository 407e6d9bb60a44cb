#include "specbm/graph.hpp"

#include <algorithm>
#include <ostream>
#include <string>

#include "specbm/errors.hpp"
#include "text_io.hpp"

namespace specbm {

Graph::Graph(VertexId num_vertices, std::vector<std::pair<VertexId, VertexId>> edges)
    : num_vertices_(num_vertices) {
    if (num_vertices < 0) throw ConfigError("graph: negative vertex count");
    for (auto& [u, v] : edges) {
        if (u == v) throw ConfigError("graph: self-loop at vertex " + std::to_string(u));
        if (u > v) std::swap(u, v);
        if (u < 0 || v >= num_vertices)
            throw ConfigError("graph: edge (" + std::to_string(u) + ", " + std::to_string(v) +
                              ") out of range for " + std::to_string(num_vertices) + " vertices");
    }
    std::sort(edges.begin(), edges.end());
    if (std::adjacent_find(edges.begin(), edges.end()) != edges.end())
        throw ConfigError("graph: duplicate edge");
    edges_ = std::move(edges);

    offsets_.assign(static_cast<std::size_t>(num_vertices) + 1, 0);
    for (const auto& [u, v] : edges_) {
        ++offsets_[static_cast<std::size_t>(u) + 1];
        ++offsets_[static_cast<std::size_t>(v) + 1];
    }
    for (std::size_t i = 1; i < offsets_.size(); ++i) offsets_[i] += offsets_[i - 1];
    adjacency_.resize(static_cast<std::size_t>(offsets_.back()));
    std::vector<std::int64_t> cursor(offsets_.begin(), offsets_.end() - 1);
    for (const auto& [u, v] : edges_) {
        adjacency_[static_cast<std::size_t>(cursor[static_cast<std::size_t>(u)]++)] = v;
        adjacency_[static_cast<std::size_t>(cursor[static_cast<std::size_t>(v)]++)] = u;
    }
    // Neighbor lists come out sorted because the edge list is sorted on the
    // first endpoint; entries contributed via the second endpoint are sorted
    // among themselves but interleave, so sort each row once.
    for (VertexId u = 0; u < num_vertices; ++u) {
        auto begin = adjacency_.begin() + offsets_[u];
        auto end = adjacency_.begin() + offsets_[u + 1];
        std::sort(begin, end);
    }
}

bool Graph::has_edge(VertexId u, VertexId v) const {
    if (u == v) return false;
    if (degree(u) > degree(v)) std::swap(u, v);
    auto nb = neighbors(u);
    return std::binary_search(nb.begin(), nb.end(), v);
}

void Graph::save(std::ostream& out) const {
    out << num_vertices_ << ' ' << num_edges() << '\n';
    for (const auto& [u, v] : edges_) out << u << ' ' << v << '\n';
}

Graph Graph::load(std::istream& in) {
    detail::LineReader reader(in);
    std::string line;
    if (!reader.next(line)) throw ConfigError("graph: empty input");
    auto header = detail::split_fields(line);
    if (header.size() != 2) reader.fail("expected header 'N M'");
    const auto n = detail::parse_int<VertexId>(reader, header[0], "vertex count");
    const auto m = detail::parse_int<std::int64_t>(reader, header[1], "edge count");
    if (n < 0) reader.fail("negative vertex count");
    if (m < 0) reader.fail("negative edge count");

    std::vector<std::pair<VertexId, VertexId>> edges;
    edges.reserve(static_cast<std::size_t>(m));
    std::pair<VertexId, VertexId> prev{-1, -1};
    for (std::int64_t i = 0; i < m; ++i) {
        if (!reader.next(line)) throw ConfigError("graph: expected " + std::to_string(m) +
                                                  " edges, input ended after " + std::to_string(i));
        auto fields = detail::split_fields(line);
        if (fields.size() != 2) reader.fail("expected edge 'u v'");
        const auto u = detail::parse_int<VertexId>(reader, fields[0], "endpoint");
        const auto v = detail::parse_int<VertexId>(reader, fields[1], "endpoint");
        if (u < 0 || v >= n || u >= v)
            reader.fail("edge endpoints must satisfy 0 <= u < v < N");
        std::pair<VertexId, VertexId> cur{u, v};
        if (!(prev < cur)) reader.fail("edges must be strictly ascending");
        prev = cur;
        edges.push_back(cur);
    }
    while (reader.next(line)) {
        if (!detail::split_fields(line).empty()) reader.fail("unexpected content after edge list");
    }
    return Graph(n, std::move(edges));
}

}  // namespace specbm
