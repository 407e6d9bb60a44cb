#include "specbm/censor.hpp"

#include <ostream>
#include <sstream>
#include <string>
#include <tuple>

#include "specbm/errors.hpp"
#include "partition_common.hpp"
#include "text_io.hpp"

namespace specbm {

CensorConfig CensorConfig::defaults(double p) {
    if (p <= 0.0 || p > 1.0) throw ConfigError("censor config: p must be in (0, 1]");
    CensorConfig cfg;
    cfg.p = p;
    return cfg;
}

SparseSym build_observation_matrix(const Graph& g, const std::vector<std::uint8_t>& edge_labels) {
    if (edge_labels.size() != g.edges().size())
        throw ConfigError("observation matrix: label count does not match edge count");
    std::vector<std::tuple<VertexId, VertexId, double>> entries;
    for (std::size_t e = 0; e < edge_labels.size(); ++e) {
        if (edge_labels[e] > 1) throw ConfigError("observation matrix: labels must be 0 or 1");
        if (edge_labels[e] == 1)
            entries.emplace_back(g.edges()[e].first, g.edges()[e].second, 1.0);
    }
    return SparseSym::from_entries(g.num_vertices(), entries);
}

Clustering spectral_partition_censor(const Graph& g, const std::vector<std::uint8_t>& edge_labels,
                                     const CensorConfig& cfg) {
    const std::int64_t n_total = g.num_vertices();
    if (n_total < 2 || n_total % 2 != 0)
        throw ConfigError("censor spectral: vertex count must be even and at least 2");
    if (cfg.p <= 0.0 || cfg.p > 1.0) throw ConfigError("censor spectral: p must be in (0, 1]");

    const SparseSym observations = build_observation_matrix(g, edge_labels);
    const double threshold = cfg.trim_factor * cfg.p * static_cast<double>(n_total);
    std::vector<VertexId> over;
    for (VertexId v = 0; v < g.num_vertices(); ++v) {
        const std::int64_t degree = cfg.trim_mode == CensorTrimMode::kCarrierDegree
                                        ? g.degree(v)
                                        : observations.degree(v);
        if (static_cast<double>(degree) > threshold) over.push_back(v);
    }
    const SparseSym trimmed = observations.zero_out(over);

    EigenOptions eig = cfg.eig;
    eig.ordering = EigenOrdering::kMagnitude;
    const Subspace w = top_eigenspace(trimmed, 2, eig);

    Clustering c;
    c.k = 2;
    c.labels = detail::halve_by_projection(w);
    c.trimmed = trimmed.zeroed();
    return c;
}

Clustering spectral_partition_censor(const CensorInstance& instance) {
    return spectral_partition_censor(instance.graph, instance.edge_labels,
                                     CensorConfig::defaults(instance.p));
}

void save_censor(std::ostream& out, const Graph& g, const std::vector<std::uint8_t>& edge_labels) {
    if (edge_labels.size() != g.edges().size())
        throw ConfigError("censor save: label count does not match edge count");
    g.save(out);
    for (std::size_t e = 0; e < edge_labels.size(); ++e)
        out << g.edges()[e].first << ' ' << g.edges()[e].second << ' '
            << static_cast<int>(edge_labels[e]) << '\n';
}

CensorFile load_censor(std::istream& in) {
    // The graph section is parsed by re-reading its exact line span: first
    // load the header to learn M, then hand the graph lines to Graph::load.
    detail::LineReader reader(in);
    std::string line;
    if (!reader.next(line)) throw ConfigError("censor file: empty input");
    auto header = detail::split_fields(line);
    if (header.size() != 2) reader.fail("expected header 'N M'");
    const auto m = detail::parse_int<std::int64_t>(reader, header[1], "edge count");
    if (m < 0) reader.fail("negative edge count");

    std::ostringstream graph_text;
    graph_text << line << '\n';
    for (std::int64_t i = 0; i < m; ++i) {
        if (!reader.next(line))
            throw ConfigError("censor file: expected " + std::to_string(m) +
                              " edges, input ended after " + std::to_string(i));
        graph_text << line << '\n';
    }
    std::istringstream graph_in(graph_text.str());
    CensorFile file;
    file.graph = Graph::load(graph_in);

    file.edge_labels.reserve(static_cast<std::size_t>(m));
    for (std::int64_t i = 0; i < m; ++i) {
        if (!reader.next(line))
            throw ConfigError("censor file: expected " + std::to_string(m) +
                              " label lines, input ended after " + std::to_string(i));
        auto fields = detail::split_fields(line);
        if (fields.size() != 3) reader.fail("expected label line 'u v y'");
        const auto u = detail::parse_int<VertexId>(reader, fields[0], "endpoint");
        const auto v = detail::parse_int<VertexId>(reader, fields[1], "endpoint");
        const auto y = detail::parse_int<int>(reader, fields[2], "label");
        const auto& edge = file.graph.edges()[static_cast<std::size_t>(i)];
        if (u != edge.first || v != edge.second)
            reader.fail("label lines must repeat the edges in graph order");
        if (y != 0 && y != 1) reader.fail("labels must be 0 or 1");
        file.edge_labels.push_back(static_cast<std::uint8_t>(y));
    }
    while (reader.next(line)) {
        if (!detail::split_fields(line).empty()) reader.fail("unexpected content after labels");
    }
    return file;
}

}  // namespace specbm
