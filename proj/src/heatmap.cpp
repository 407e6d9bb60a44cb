#include "specbm/heatmap.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <ostream>

#include "specbm/errors.hpp"

namespace specbm {

void Heatmap::write_pgm(std::ostream& out) const {
    out << "P2\n" << bins << ' ' << bins << "\n255\n";
    for (int i = 0; i < bins; ++i) {
        for (int j = 0; j < bins; ++j) {
            if (j > 0) out << ' ';
            out << pixel_at(i, j);
        }
        out << '\n';
    }
}

Heatmap density_heatmap(const Graph& g, const Clustering& clustering, int bins) {
    const std::int64_t n = g.num_vertices();
    if (clustering.num_vertices() != n)
        throw ConfigError("heatmap: clustering and graph sizes differ");
    if (bins < 1) throw ConfigError("heatmap: bins must be positive");
    if (n < 1) throw ConfigError("heatmap: empty graph");

    // Reorder vertices by (class, id); each vertex's position determines its
    // bin via near-equal interval cuts.
    std::vector<VertexId> order(static_cast<std::size_t>(n));
    std::iota(order.begin(), order.end(), 0);
    std::stable_sort(order.begin(), order.end(), [&](VertexId x, VertexId y) {
        return clustering.labels[static_cast<std::size_t>(x)] <
               clustering.labels[static_cast<std::size_t>(y)];
    });
    std::vector<int> bin_of(static_cast<std::size_t>(n));
    std::vector<std::int64_t> bin_count(static_cast<std::size_t>(bins), 0);
    for (std::int64_t pos = 0; pos < n; ++pos) {
        const int bin = static_cast<int>(pos * bins / n);
        bin_of[static_cast<std::size_t>(order[static_cast<std::size_t>(pos)])] = bin;
        ++bin_count[static_cast<std::size_t>(bin)];
    }

    std::vector<std::int64_t> edge_count(static_cast<std::size_t>(bins) * static_cast<std::size_t>(bins), 0);
    for (const auto& [u, v] : g.edges()) {
        const int bu = bin_of[static_cast<std::size_t>(u)];
        const int bv = bin_of[static_cast<std::size_t>(v)];
        ++edge_count[static_cast<std::size_t>(bu) * static_cast<std::size_t>(bins) +
                     static_cast<std::size_t>(bv)];
        if (bu != bv)
            ++edge_count[static_cast<std::size_t>(bv) * static_cast<std::size_t>(bins) +
                         static_cast<std::size_t>(bu)];
    }

    Heatmap h;
    h.bins = bins;
    h.density.resize(edge_count.size());
    h.pixels.resize(edge_count.size());
    for (int i = 0; i < bins; ++i) {
        for (int j = 0; j < bins; ++j) {
            const std::size_t cell = static_cast<std::size_t>(i) * static_cast<std::size_t>(bins) +
                                     static_cast<std::size_t>(j);
            const std::int64_t pairs =
                i == j ? bin_count[static_cast<std::size_t>(i)] * (bin_count[static_cast<std::size_t>(i)] - 1) / 2
                       : bin_count[static_cast<std::size_t>(i)] * bin_count[static_cast<std::size_t>(j)];
            const double density =
                pairs == 0 ? 0.0
                           : static_cast<double>(edge_count[cell]) / static_cast<double>(pairs);
            h.density[cell] = density;
            h.pixels[cell] = static_cast<int>(std::llround(255.0 * (1.0 - density)));
        }
    }
    return h;
}

}  // namespace specbm
