#include "specbm/twoblock.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "specbm/errors.hpp"
#include "specbm/sampling.hpp"
#include "partition_common.hpp"

namespace specbm {

namespace {

TwoBlockConfig make_config(double a, double b, double degree_scale) {
    if (!(a > b) || !(b > 0.0))
        throw ConfigError("two-block config: rates must satisfy a > b > 0");
    TwoBlockConfig cfg;
    cfg.d = degree_scale;
    cfg.correction_threshold = (a + b) / 4.0;
    return cfg;
}

}  // namespace

TwoBlockConfig TwoBlockConfig::full_graph(double a, double b) {
    return make_config(a, b, a + b);
}

TwoBlockConfig TwoBlockConfig::half_graph(double a, double b) {
    return make_config(a, b, (a + b) / 2.0);
}

Clustering spectral_partition_two(const SparseSym& adjacency, const TwoBlockConfig& cfg) {
    const std::int64_t n_total = adjacency.dim();
    if (n_total < 2 || n_total % 2 != 0)
        throw ConfigError("two-block spectral: dimension must be even and at least 2");

    std::vector<VertexId> newly_trimmed;
    const SparseSym trimmed = trim_high_degree(adjacency, cfg.trim_factor * cfg.d, &newly_trimmed);

    EigenOptions eig = cfg.eig;
    eig.ordering = EigenOrdering::kAlgebraic;
    const Subspace w = top_eigenspace(trimmed, 2, eig);

    Clustering c;
    c.k = 2;
    c.labels = detail::halve_by_projection(w);
    c.trimmed = trimmed.zeroed();
    return c;
}

Clustering correction_two(const Clustering& clustering, const Graph& blue,
                          const TwoBlockConfig& cfg) {
    if (clustering.k != 2) throw ConfigError("two-block correction: clustering must have 2 classes");
    if (clustering.num_vertices() != blue.num_vertices())
        throw ConfigError("two-block correction: clustering and graph sizes differ");

    Clustering out = clustering;
    const int rounds = cfg.iterate_correction ? cfg.max_correction_rounds : 1;
    for (int round = 0; round < rounds; ++round) {
        // All counts are taken against the labels entering the round, and
        // every flip is applied at once.
        std::vector<int> next = out.labels;
        bool changed = false;
        for (VertexId u = 0; u < blue.num_vertices(); ++u) {
            std::int64_t opposite = 0;
            for (VertexId v : blue.neighbors(u))
                if (out.labels[static_cast<std::size_t>(v)] != out.labels[static_cast<std::size_t>(u)])
                    ++opposite;
            if (static_cast<double>(opposite) >= cfg.correction_threshold) {
                next[static_cast<std::size_t>(u)] = 1 - out.labels[static_cast<std::size_t>(u)];
                changed = true;
            }
        }
        out.labels = std::move(next);
        if (!changed) break;
    }
    return out;
}

Clustering partition_two(const Graph& g, double a, double b, std::uint64_t seed) {
    return partition_two(g, seed, TwoBlockConfig::half_graph(a, b));
}

Clustering partition_two(const Graph& g, std::uint64_t seed, const TwoBlockConfig& cfg) {
    if (g.num_vertices() < 2 || g.num_vertices() % 2 != 0)
        throw ConfigError("two-block pipeline: vertex count must be even and at least 2");
    const EdgeColoring colored = color_edges(g, seed);
    const Clustering spectral = spectral_partition_two(SparseSym::from_graph(colored.red), cfg);
    return correction_two(spectral, colored.blue, cfg);
}

double gamma_bound_two(double a, double b) {
    if (!(a + b > 0.0)) return 1.0;
    const double raw = 2.0 * std::exp(-0.072 * (a - b) * (a - b) / (a + b));
    return std::clamp(raw, 0.0, 1.0);
}

}  // namespace specbm
