#include "specbm/sampling.hpp"

#include <limits>
#include <string>

#include "specbm/errors.hpp"
#include "specbm/rng.hpp"

namespace specbm {

namespace {

using EdgeList = std::vector<std::pair<VertexId, VertexId>>;

/**
 * Emit each pair (u, v), u < v, of a size-s vertex range independently with
 * probability p, walking the row-major pair enumeration with geometric
 * skips so the cost is O(s + produced edges).
 */
void sample_triangle(std::int64_t s, double p, std::uint64_t base, RngStream& rng, EdgeList& out) {
    if (s < 2 || p <= 0.0) return;
    std::int64_t u = 0, v = 1;
    // Advance the cursor by t pairs; returns false once past the end.
    auto advance = [&](std::uint64_t t) {
        while (u < s - 1) {
            const std::uint64_t rem = static_cast<std::uint64_t>(s - v);
            if (t < rem) {
                v += static_cast<std::int64_t>(t);
                return true;
            }
            t -= rem;
            ++u;
            v = u + 1;
        }
        return false;
    };
    for (;;) {
        const std::uint64_t gap = rng.skip_geometric(p);
        if (gap == std::numeric_limits<std::uint64_t>::max() || !advance(gap)) break;
        out.emplace_back(static_cast<VertexId>(base + static_cast<std::uint64_t>(u)),
                         static_cast<VertexId>(base + static_cast<std::uint64_t>(v)));
        if (!advance(1)) break;
    }
}

/**
 * Emit each pair of a rows x cols rectangle independently with probability
 * p, as edges (row_base + i, col_base + j).
 */
void sample_rectangle(std::int64_t rows, std::int64_t cols, double p, std::uint64_t row_base,
                      std::uint64_t col_base, RngStream& rng, EdgeList& out) {
    if (rows <= 0 || cols <= 0 || p <= 0.0) return;
    const std::uint64_t total = static_cast<std::uint64_t>(rows) * static_cast<std::uint64_t>(cols);
    std::uint64_t pos = 0;
    for (;;) {
        const std::uint64_t gap = rng.skip_geometric(p);
        if (gap == std::numeric_limits<std::uint64_t>::max() || gap >= total - pos) break;
        pos += gap;
        const std::uint64_t i = pos / static_cast<std::uint64_t>(cols);
        const std::uint64_t j = pos % static_cast<std::uint64_t>(cols);
        out.emplace_back(static_cast<VertexId>(row_base + i), static_cast<VertexId>(col_base + j));
        if (++pos >= total) break;
    }
}

}  // namespace

Graph sample_sbm(const SbmParams& params, std::uint64_t seed) {
    const std::int64_t total = params.num_vertices();
    if (total > std::numeric_limits<VertexId>::max())
        throw ConfigError("block model: vertex count too large");
    RngStream rng = RngStream(seed).derive(stream_tag::kEdgeSample);

    EdgeList edges;
    const double expected =
        0.5 * static_cast<double>(total) * (params.p_in() * static_cast<double>(params.block_size) +
                                            params.p_out() * static_cast<double>(total - params.block_size));
    edges.reserve(static_cast<std::size_t>(1.1 * expected) + 64);

    // Block pairs in ascending (i, j) order, i <= j, so the draw sequence is
    // canonical and reproducible.
    for (int i = 0; i < params.k; ++i) {
        const std::uint64_t base_i = static_cast<std::uint64_t>(i) * static_cast<std::uint64_t>(params.block_size);
        sample_triangle(params.block_size, params.p_in(), base_i, rng, edges);
        for (int j = i + 1; j < params.k; ++j) {
            const std::uint64_t base_j =
                static_cast<std::uint64_t>(j) * static_cast<std::uint64_t>(params.block_size);
            sample_rectangle(params.block_size, params.block_size, params.p_out(), base_i, base_j, rng,
                             edges);
        }
    }
    return Graph(static_cast<VertexId>(total), std::move(edges));
}

EdgeColoring color_edges(const Graph& g, std::uint64_t seed) {
    RngStream rng = RngStream(seed).derive(stream_tag::kEdgeColor);
    EdgeList red, blue;
    red.reserve(g.edges().size() / 2 + 16);
    blue.reserve(g.edges().size() / 2 + 16);
    for (const auto& e : g.edges()) {
        (rng.bernoulli(0.5) ? red : blue).push_back(e);
    }
    return EdgeColoring{Graph(g.num_vertices(), std::move(red)),
                        Graph(g.num_vertices(), std::move(blue))};
}

std::pair<std::vector<VertexId>, std::vector<VertexId>> split_vertices(std::int64_t num_vertices,
                                                                       std::uint64_t seed) {
    if (num_vertices < 0) throw ConfigError("split: negative vertex count");
    RngStream rng = RngStream(seed).derive(stream_tag::kVertexSplit);
    std::vector<VertexId> y, z;
    for (std::int64_t v = 0; v < num_vertices; ++v) {
        (rng.bernoulli(0.5) ? y : z).push_back(static_cast<VertexId>(v));
    }
    return {std::move(y), std::move(z)};
}

Clustering CensorInstance::truth() const {
    Clustering c;
    c.k = 2;
    c.labels.assign(hidden_x.begin(), hidden_x.end());
    return c;
}

CensorInstance sample_censor(std::int64_t n, double p, double epsilon, std::uint64_t seed) {
    if (n < 1) throw ConfigError("censor model: n must be positive");
    if (p <= 0.0 || p > 1.0) throw ConfigError("censor model: p must be in (0, 1]");
    if (epsilon < 0.0 || epsilon >= 0.5)
        throw ConfigError("censor model: epsilon must be in [0, 0.5)");
    if (2 * n > std::numeric_limits<VertexId>::max())
        throw ConfigError("censor model: vertex count too large");

    RngStream root(seed);
    RngStream graph_rng = root.derive(stream_tag::kEdgeSample);
    EdgeList edges;
    edges.reserve(static_cast<std::size_t>(1.1 * p * static_cast<double>(2 * n) *
                                           static_cast<double>(2 * n - 1) / 2.0) +
                  64);
    sample_triangle(2 * n, p, 0, graph_rng, edges);

    CensorInstance inst;
    inst.graph = Graph(static_cast<VertexId>(2 * n), std::move(edges));
    inst.p = p;
    inst.epsilon = epsilon;
    inst.hidden_x.assign(static_cast<std::size_t>(2 * n), 0);
    for (std::int64_t v = n; v < 2 * n; ++v) inst.hidden_x[static_cast<std::size_t>(v)] = 1;

    RngStream noise = root.derive(stream_tag::kNoise);
    inst.edge_labels.reserve(inst.graph.edges().size());
    for (const auto& [u, v] : inst.graph.edges()) {
        const std::uint8_t parity =
            inst.hidden_x[static_cast<std::size_t>(u)] ^ inst.hidden_x[static_cast<std::size_t>(v)];
        const std::uint8_t z = noise.bernoulli(epsilon) ? 1 : 0;
        inst.edge_labels.push_back(parity ^ z);
    }
    return inst;
}

}  // namespace specbm
