#include "specbm/multiblock.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <string>

#include "specbm/errors.hpp"
#include "specbm/rng.hpp"
#include "specbm/sampling.hpp"

namespace specbm {

namespace {

// Substream tags local to the candidate stage.
constexpr std::uint64_t kColumnSplitTag = 6;

std::int64_t overlap_size(const std::vector<VertexId>& x, const std::vector<VertexId>& y) {
    std::int64_t count = 0;
    std::size_t i = 0, j = 0;
    while (i < x.size() && j < y.size()) {
        if (x[i] < y[j]) {
            ++i;
        } else if (y[j] < x[i]) {
            ++j;
        } else {
            ++count;
            ++i;
            ++j;
        }
    }
    return count;
}

std::int64_t internal_edge_count(const Graph& g, const std::vector<VertexId>& set) {
    std::vector<char> member(static_cast<std::size_t>(g.num_vertices()), 0);
    for (VertexId v : set) member[static_cast<std::size_t>(v)] = 1;
    std::int64_t count = 0;
    for (VertexId v : set)
        for (VertexId w : g.neighbors(v))
            if (w > v && member[static_cast<std::size_t>(w)]) ++count;
    return count;
}

}  // namespace

MultiBlockConfig MultiBlockConfig::defaults(std::int64_t n, int k, double a, double b) {
    if (n < 1) throw ConfigError("multi-block config: vertex count must be positive");
    if (k < 2) throw ConfigError("multi-block config: k must be at least 2");
    if (!(a > b) || !(b > 0.0))
        throw ConfigError("multi-block config: rates must satisfy a > b > 0");
    MultiBlockConfig cfg;
    cfg.a = a;
    cfg.b = b;
    cfg.k = k;
    cfg.n = n;
    cfg.d = a + static_cast<double>(k - 1) * b;
    cfg.num_columns = static_cast<int>(std::ceil(2.0 * std::log(static_cast<double>(n))));
    cfg.set_size = n / (2 * static_cast<std::int64_t>(k));
    cfg.overlap_limit =
        static_cast<std::int64_t>(std::ceil(0.2 * static_cast<double>(n) / (2.0 * k)));
    cfg.merge_threshold = (a + b) / 8.0;
    cfg.column_mean = (a + b) / (2.0 * static_cast<double>(n));
    return cfg;
}

MultiSpectralResult spectral_partition_multi(const BipartiteSparse& red_zy,
                                             const Graph& blue_in_z, const MultiBlockConfig& cfg,
                                             std::uint64_t seed) {
    if (blue_in_z.num_vertices() != red_zy.rows())
        throw ConfigError("multi-block spectral: row side and blue graph sizes differ");
    if (cfg.set_size < 1) throw ConfigError("multi-block spectral: set size must be positive");
    if (cfg.set_size > red_zy.rows())
        throw ConfigError("multi-block spectral: set size exceeds row side");

    RngStream root(seed);

    // Fair split of the columns; the first half feeds the singular solver,
    // the second supplies candidate columns (so no column influences both).
    RngStream split_rng = root.derive(kColumnSplitTag);
    std::vector<VertexId> first_half, second_half;
    for (std::int64_t j = 0; j < red_zy.cols(); ++j)
        (split_rng.bernoulli(0.5) ? first_half : second_half).push_back(static_cast<VertexId>(j));

    MultiSpectralResult result;
    const BipartiteSparse a1 = red_zy.select_columns(first_half);
    std::vector<VertexId> trimmed_cols_local;
    const BipartiteSparse a1_trimmed =
        trim_bipartite(a1, cfg.trim_factor * cfg.d, &result.trimmed_rows, &trimmed_cols_local);
    for (VertexId j : trimmed_cols_local)
        result.trimmed_cols.push_back(first_half[static_cast<std::size_t>(j)]);

    result.w = top_left_singular_space(a1_trimmed, cfg.k, cfg.eig);

    // Draw columns from the second half without replacement (partial
    // Fisher-Yates), preserving draw order.
    RngStream column_rng = root.derive(stream_tag::kColumnSample);
    const std::size_t available = second_half.size();
    const std::size_t draws = std::min<std::size_t>(static_cast<std::size_t>(cfg.num_columns), available);
    std::vector<VertexId> pool = second_half;
    for (std::size_t i = 0; i < draws; ++i) {
        const std::size_t j = i + static_cast<std::size_t>(column_rng.uniform_below(
                                      static_cast<std::uint64_t>(available - i)));
        std::swap(pool[i], pool[j]);
        result.drawn_columns.push_back(pool[i]);
    }

    const Eigen::VectorXd ones_coords =
        result.w.basis.transpose() * Eigen::VectorXd::Ones(red_zy.rows());
    for (VertexId col : result.drawn_columns) {
        // Centered column projected onto W, computed in subspace coordinates:
        // coords = W^T a - column_mean * (W^T 1).
        Eigen::VectorXd coords = -cfg.column_mean * ones_coords;
        for (VertexId row : red_zy.column(col)) coords += result.w.basis.row(row).transpose();
        const Eigen::VectorXd scores = result.w.basis * coords;

        std::vector<VertexId> order(static_cast<std::size_t>(red_zy.rows()));
        std::iota(order.begin(), order.end(), 0);
        std::sort(order.begin(), order.end(), [&](VertexId x, VertexId y) {
            if (scores[x] != scores[y]) return scores[x] > scores[y];
            return x < y;
        });
        CandidateSet cand;
        cand.source_column = col;
        cand.vertices.assign(order.begin(), order.begin() + cfg.set_size);
        std::sort(cand.vertices.begin(), cand.vertices.end());
        cand.blue_edge_count = internal_edge_count(blue_in_z, cand.vertices);
        result.candidates.push_back(std::move(cand));
    }
    return result;
}

std::vector<CandidateSet> blue_density_filter(std::vector<CandidateSet> candidates) {
    std::sort(candidates.begin(), candidates.end(), [](const CandidateSet& x, const CandidateSet& y) {
        if (x.blue_edge_count != y.blue_edge_count) return x.blue_edge_count > y.blue_edge_count;
        return x.source_column < y.source_column;
    });
    const std::size_t keep = (candidates.size() + 1) / 2;
    candidates.resize(keep);
    return candidates;
}

std::vector<CandidateSet> select_disjoint(const std::vector<CandidateSet>& candidates, int k,
                                          std::int64_t overlap_limit) {
    if (k < 1) throw ConfigError("disjoint selection: k must be positive");
    std::vector<CandidateSet> accepted;
    for (const CandidateSet& cand : candidates) {
        if (static_cast<int>(accepted.size()) == k) break;
        bool compatible = true;
        for (const CandidateSet& have : accepted) {
            if (overlap_size(cand.vertices, have.vertices) >= overlap_limit) {
                compatible = false;
                break;
            }
        }
        if (compatible) accepted.push_back(cand);
    }
    if (static_cast<int>(accepted.size()) < k)
        throw PipelineError("disjoint selection found only " + std::to_string(accepted.size()) +
                            " of " + std::to_string(k) + " sets (overlap limit " +
                            std::to_string(overlap_limit) + ", candidates " +
                            std::to_string(candidates.size()) + ")");
    return accepted;
}

Clustering correction_multi(const std::vector<std::vector<VertexId>>& sets, const Graph& red_in_z) {
    if (sets.empty()) throw ConfigError("multi-block correction: no seed sets");
    const int k = static_cast<int>(sets.size());
    std::vector<int> set_of(static_cast<std::size_t>(red_in_z.num_vertices()), -1);
    for (int s = 0; s < k; ++s) {
        for (VertexId v : sets[static_cast<std::size_t>(s)]) {
            if (v < 0 || v >= red_in_z.num_vertices())
                throw ConfigError("multi-block correction: seed vertex out of range");
            // Later sets do not overwrite earlier ones; counting below uses
            // this map only to attribute neighbors, and overlaps are small
            // by construction.
            if (set_of[static_cast<std::size_t>(v)] < 0) set_of[static_cast<std::size_t>(v)] = s;
        }
    }
    Clustering c;
    c.k = k;
    c.labels.assign(static_cast<std::size_t>(red_in_z.num_vertices()), 0);
    std::vector<std::int64_t> counts(static_cast<std::size_t>(k), 0);
    for (VertexId v = 0; v < red_in_z.num_vertices(); ++v) {
        std::fill(counts.begin(), counts.end(), 0);
        for (VertexId w : red_in_z.neighbors(v)) {
            const int s = set_of[static_cast<std::size_t>(w)];
            if (s >= 0) ++counts[static_cast<std::size_t>(s)];
        }
        int best = 0;
        for (int s = 1; s < k; ++s)
            if (counts[static_cast<std::size_t>(s)] > counts[static_cast<std::size_t>(best)]) best = s;
        c.labels[static_cast<std::size_t>(v)] = best;
    }
    return c;
}

Clustering merge_multi(const Clustering& z_clustering, const BipartiteSparse& blue_yz,
                       const std::vector<VertexId>& y_vertices, const MultiBlockConfig& cfg) {
    if (blue_yz.rows() != static_cast<std::int64_t>(y_vertices.size()))
        throw ConfigError("merge: row count does not match the column-side vertex list");
    if (blue_yz.cols() != z_clustering.num_vertices())
        throw ConfigError("merge: column count does not match the row-side clustering");
    const std::int64_t n_total = static_cast<std::int64_t>(y_vertices.size()) + z_clustering.num_vertices();

    // The row side's global ids are the complement of y_vertices.
    std::vector<char> is_y(static_cast<std::size_t>(n_total), 0);
    for (VertexId v : y_vertices) {
        if (v < 0 || v >= n_total) throw ConfigError("merge: column-side vertex out of range");
        if (is_y[static_cast<std::size_t>(v)]) throw ConfigError("merge: duplicate column-side vertex");
        is_y[static_cast<std::size_t>(v)] = 1;
    }
    std::vector<VertexId> z_vertices;
    z_vertices.reserve(static_cast<std::size_t>(z_clustering.num_vertices()));
    for (std::int64_t v = 0; v < n_total; ++v)
        if (!is_y[static_cast<std::size_t>(v)]) z_vertices.push_back(static_cast<VertexId>(v));

    Clustering full;
    full.k = z_clustering.k;
    full.labels.assign(static_cast<std::size_t>(n_total), 0);
    for (std::size_t zi = 0; zi < z_vertices.size(); ++zi)
        full.labels[static_cast<std::size_t>(z_vertices[zi])] = z_clustering.labels[zi];

    std::vector<std::int64_t> counts(static_cast<std::size_t>(z_clustering.k), 0);
    for (std::size_t yi = 0; yi < y_vertices.size(); ++yi) {
        std::fill(counts.begin(), counts.end(), 0);
        for (VertexId zj : blue_yz.row(static_cast<VertexId>(yi)))
            ++counts[static_cast<std::size_t>(z_clustering.labels[static_cast<std::size_t>(zj)])];
        // Prefer the lowest class meeting the threshold; otherwise fall back
        // to the most-connected class (ties toward the lowest).
        int chosen = -1;
        for (int s = 0; s < z_clustering.k; ++s) {
            if (static_cast<double>(counts[static_cast<std::size_t>(s)]) >= cfg.merge_threshold) {
                chosen = s;
                break;
            }
        }
        if (chosen < 0) {
            chosen = 0;
            for (int s = 1; s < z_clustering.k; ++s)
                if (counts[static_cast<std::size_t>(s)] > counts[static_cast<std::size_t>(chosen)])
                    chosen = s;
        }
        full.labels[static_cast<std::size_t>(y_vertices[yi])] = chosen;
    }

    for (VertexId zt : z_clustering.trimmed)
        full.trimmed.push_back(z_vertices[static_cast<std::size_t>(zt)]);
    std::sort(full.trimmed.begin(), full.trimmed.end());
    return full;
}

Clustering partition_multi(const Graph& g, double a, double b, int k, std::uint64_t seed) {
    return partition_multi(g, seed, MultiBlockConfig::defaults(g.num_vertices(), k, a, b));
}

Clustering partition_multi(const Graph& g, std::uint64_t seed, const MultiBlockConfig& cfg) {
    if (g.num_vertices() < 2 * cfg.k)
        throw ConfigError("multi-block pipeline: too few vertices for k classes");

    const EdgeColoring colored = color_edges(g, seed);
    auto [y_vertices, z_vertices] = split_vertices(g.num_vertices(), seed);
    if (y_vertices.empty() || z_vertices.empty())
        throw PipelineError("multi-block pipeline: vertex split left one side empty");

    const BipartiteSparse red_zy = bipartite_between(colored.red, z_vertices, y_vertices);
    const Graph blue_in_z = induced_subgraph(colored.blue, z_vertices);
    const Graph red_in_z = induced_subgraph(colored.red, z_vertices);
    const BipartiteSparse blue_yz = bipartite_between(colored.blue, y_vertices, z_vertices);

    MultiSpectralResult spectral = spectral_partition_multi(red_zy, blue_in_z, cfg, seed);
    const std::vector<CandidateSet> kept = blue_density_filter(std::move(spectral.candidates));
    const std::vector<CandidateSet> chosen = select_disjoint(kept, cfg.k, cfg.overlap_limit);

    std::vector<std::vector<VertexId>> seed_sets;
    seed_sets.reserve(chosen.size());
    for (const CandidateSet& c : chosen) seed_sets.push_back(c.vertices);

    Clustering z_clust = correction_multi(seed_sets, red_in_z);
    // Record the spectral trim (Z-side rows) so it survives into the final
    // clustering's metadata.
    for (VertexId row : spectral.trimmed_rows) z_clust.trimmed.push_back(row);
    std::sort(z_clust.trimmed.begin(), z_clust.trimmed.end());

    return merge_multi(z_clust, blue_yz, y_vertices, cfg);
}

MultiBound gamma_bound_multi(double a, double b, int k) {
    MultiBound bound;
    if (k < 1 || !(a + b > 0.0)) return bound;
    const double arg = (a - b) * (a - b) / (static_cast<double>(k) * (a + b));
    bound.correction = 2.0 * k * std::exp(-0.04 * arg);
    bound.merge = 2.0 * k * std::exp(-0.0324 * arg);
    bound.overall = std::clamp(std::max(bound.correction, bound.merge), 0.0, 1.0);
    return bound;
}

}  // namespace specbm
