#include "specbm/sparse.hpp"

#include <algorithm>
#include <string>
#include <tuple>

#include "specbm/errors.hpp"

namespace specbm {

namespace {

/** CSR assembly from (i, j, value) with both triangles already present. */
struct CsrParts {
    std::vector<std::int64_t> offsets;
    std::vector<VertexId> cols;
    std::vector<double> vals;
};

CsrParts assemble_rows(std::int64_t dim, std::vector<std::tuple<VertexId, VertexId, double>>& all) {
    std::sort(all.begin(), all.end(), [](const auto& x, const auto& y) {
        return std::tie(std::get<0>(x), std::get<1>(x)) < std::tie(std::get<0>(y), std::get<1>(y));
    });
    CsrParts parts;
    parts.offsets.assign(static_cast<std::size_t>(dim) + 1, 0);
    for (const auto& [i, j, v] : all) {
        (void)j;
        (void)v;
        ++parts.offsets[static_cast<std::size_t>(i) + 1];
    }
    for (std::size_t r = 1; r < parts.offsets.size(); ++r) parts.offsets[r] += parts.offsets[r - 1];
    parts.cols.reserve(all.size());
    parts.vals.reserve(all.size());
    for (const auto& [i, j, v] : all) {
        (void)i;
        parts.cols.push_back(j);
        parts.vals.push_back(v);
    }
    return parts;
}

}  // namespace

SparseSym SparseSym::from_graph(const Graph& g) {
    std::vector<std::tuple<VertexId, VertexId, double>> entries;
    entries.reserve(static_cast<std::size_t>(g.num_edges()));
    for (const auto& [u, v] : g.edges()) entries.emplace_back(u, v, 1.0);
    return from_entries(g.num_vertices(), entries);
}

SparseSym SparseSym::from_entries(std::int64_t dim,
                                  const std::vector<std::tuple<VertexId, VertexId, double>>& entries) {
    if (dim < 0) throw ConfigError("sparse: negative dimension");
    std::vector<std::tuple<VertexId, VertexId, double>> all;
    all.reserve(entries.size() * 2);
    for (const auto& [i, j, v] : entries) {
        if (i < 0 || j < 0 || i >= dim || j >= dim)
            throw ConfigError("sparse: entry out of range");
        if (i > j) throw ConfigError("sparse: entries must be given as upper triangle (i <= j)");
        all.emplace_back(i, j, v);
        if (i != j) all.emplace_back(j, i, v);
    }
    SparseSym m;
    m.dim_ = dim;
    auto parts = assemble_rows(dim, all);
    for (std::size_t r = 0; r < static_cast<std::size_t>(dim); ++r) {
        auto begin = parts.cols.begin() + parts.offsets[r];
        auto end = parts.cols.begin() + parts.offsets[r + 1];
        if (std::adjacent_find(begin, end) != end) throw ConfigError("sparse: duplicate entry");
    }
    m.offsets_ = std::move(parts.offsets);
    m.cols_ = std::move(parts.cols);
    m.vals_ = std::move(parts.vals);
    return m;
}

void SparseSym::multiply(const Eigen::Ref<const Eigen::VectorXd>& x,
                         Eigen::Ref<Eigen::VectorXd> y) const {
    for (std::int64_t i = 0; i < dim_; ++i) {
        double acc = 0.0;
        for (std::int64_t e = offsets_[i]; e < offsets_[i + 1]; ++e)
            acc += vals_[static_cast<std::size_t>(e)] * x[cols_[static_cast<std::size_t>(e)]];
        y[i] = acc;
    }
}

void SparseSym::apply(const Eigen::MatrixXd& x, Eigen::MatrixXd& y) const {
    y.resize(x.rows(), x.cols());
    for (Eigen::Index c = 0; c < x.cols(); ++c) multiply(x.col(c), y.col(c));
}

Eigen::MatrixXd SparseSym::to_dense() const {
    Eigen::MatrixXd d = Eigen::MatrixXd::Zero(dim_, dim_);
    for (std::int64_t i = 0; i < dim_; ++i)
        for (std::int64_t e = offsets_[i]; e < offsets_[i + 1]; ++e)
            d(i, cols_[static_cast<std::size_t>(e)]) = vals_[static_cast<std::size_t>(e)];
    return d;
}

SparseSym SparseSym::zero_out(const std::vector<VertexId>& to_zero) const {
    std::vector<char> gone(static_cast<std::size_t>(dim_), 0);
    for (VertexId v : to_zero) {
        if (v < 0 || v >= dim_) throw ConfigError("sparse: zero_out id out of range");
        gone[static_cast<std::size_t>(v)] = 1;
    }
    SparseSym m;
    m.dim_ = dim_;
    m.offsets_.assign(static_cast<std::size_t>(dim_) + 1, 0);
    for (std::int64_t i = 0; i < dim_; ++i) {
        std::int64_t kept = 0;
        if (!gone[static_cast<std::size_t>(i)]) {
            for (std::int64_t e = offsets_[i]; e < offsets_[i + 1]; ++e)
                if (!gone[static_cast<std::size_t>(cols_[static_cast<std::size_t>(e)])]) ++kept;
        }
        m.offsets_[static_cast<std::size_t>(i) + 1] = m.offsets_[static_cast<std::size_t>(i)] + kept;
    }
    m.cols_.reserve(static_cast<std::size_t>(m.offsets_.back()));
    m.vals_.reserve(static_cast<std::size_t>(m.offsets_.back()));
    for (std::int64_t i = 0; i < dim_; ++i) {
        if (gone[static_cast<std::size_t>(i)]) continue;
        for (std::int64_t e = offsets_[i]; e < offsets_[i + 1]; ++e) {
            const VertexId j = cols_[static_cast<std::size_t>(e)];
            if (gone[static_cast<std::size_t>(j)]) continue;
            m.cols_.push_back(j);
            m.vals_.push_back(vals_[static_cast<std::size_t>(e)]);
        }
    }
    // Keep the zeroed record cumulative so repeated trims compose.
    std::vector<VertexId> merged;
    merged.reserve(zeroed_.size() + to_zero.size());
    std::merge(zeroed_.begin(), zeroed_.end(), to_zero.begin(), to_zero.end(),
               std::back_inserter(merged));
    merged.erase(std::unique(merged.begin(), merged.end()), merged.end());
    m.zeroed_ = std::move(merged);
    return m;
}

double SparseSym::coeff(VertexId i, VertexId j) const {
    auto begin = cols_.begin() + offsets_[i];
    auto end = cols_.begin() + offsets_[i + 1];
    auto it = std::lower_bound(begin, end, j);
    if (it == end || *it != j) return 0.0;
    return vals_[static_cast<std::size_t>(it - cols_.begin())];
}

BipartiteSparse BipartiteSparse::from_entries(std::int64_t rows, std::int64_t cols,
                                              std::vector<std::pair<VertexId, VertexId>> entries) {
    if (rows < 0 || cols < 0) throw ConfigError("bipartite: negative dimension");
    for (const auto& [i, j] : entries)
        if (i < 0 || i >= rows || j < 0 || j >= cols)
            throw ConfigError("bipartite: entry out of range");
    std::sort(entries.begin(), entries.end());
    if (std::adjacent_find(entries.begin(), entries.end()) != entries.end())
        throw ConfigError("bipartite: duplicate entry");

    BipartiteSparse b;
    b.rows_ = rows;
    b.cols_ = cols;
    b.row_offsets_.assign(static_cast<std::size_t>(rows) + 1, 0);
    b.col_offsets_.assign(static_cast<std::size_t>(cols) + 1, 0);
    for (const auto& [i, j] : entries) {
        ++b.row_offsets_[static_cast<std::size_t>(i) + 1];
        ++b.col_offsets_[static_cast<std::size_t>(j) + 1];
    }
    for (std::size_t r = 1; r < b.row_offsets_.size(); ++r) b.row_offsets_[r] += b.row_offsets_[r - 1];
    for (std::size_t c = 1; c < b.col_offsets_.size(); ++c) b.col_offsets_[c] += b.col_offsets_[c - 1];
    b.col_ids_.resize(entries.size());
    b.row_ids_.resize(entries.size());
    std::vector<std::int64_t> rcur(b.row_offsets_.begin(), b.row_offsets_.end() - 1);
    std::vector<std::int64_t> ccur(b.col_offsets_.begin(), b.col_offsets_.end() - 1);
    for (const auto& [i, j] : entries) {
        b.col_ids_[static_cast<std::size_t>(rcur[static_cast<std::size_t>(i)]++)] = j;
        b.row_ids_[static_cast<std::size_t>(ccur[static_cast<std::size_t>(j)]++)] = i;
    }
    return b;
}

void BipartiteSparse::multiply(const Eigen::Ref<const Eigen::VectorXd>& x,
                               Eigen::Ref<Eigen::VectorXd> y) const {
    for (std::int64_t i = 0; i < rows_; ++i) {
        double acc = 0.0;
        for (std::int64_t e = row_offsets_[i]; e < row_offsets_[i + 1]; ++e)
            acc += x[col_ids_[static_cast<std::size_t>(e)]];
        y[i] = acc;
    }
}

void BipartiteSparse::multiply_transpose(const Eigen::Ref<const Eigen::VectorXd>& y,
                                         Eigen::Ref<Eigen::VectorXd> x) const {
    for (std::int64_t j = 0; j < cols_; ++j) {
        double acc = 0.0;
        for (std::int64_t e = col_offsets_[j]; e < col_offsets_[j + 1]; ++e)
            acc += y[row_ids_[static_cast<std::size_t>(e)]];
        x[j] = acc;
    }
}

BipartiteSparse BipartiteSparse::zero_out(const std::vector<VertexId>& rows_to_zero,
                                          const std::vector<VertexId>& cols_to_zero) const {
    std::vector<char> rgone(static_cast<std::size_t>(rows_), 0), cgone(static_cast<std::size_t>(cols_), 0);
    for (VertexId v : rows_to_zero) {
        if (v < 0 || v >= rows_) throw ConfigError("bipartite: zero_out row out of range");
        rgone[static_cast<std::size_t>(v)] = 1;
    }
    for (VertexId v : cols_to_zero) {
        if (v < 0 || v >= cols_) throw ConfigError("bipartite: zero_out col out of range");
        cgone[static_cast<std::size_t>(v)] = 1;
    }
    std::vector<std::pair<VertexId, VertexId>> kept;
    kept.reserve(col_ids_.size());
    for (std::int64_t i = 0; i < rows_; ++i) {
        if (rgone[static_cast<std::size_t>(i)]) continue;
        for (std::int64_t e = row_offsets_[i]; e < row_offsets_[i + 1]; ++e) {
            const VertexId j = col_ids_[static_cast<std::size_t>(e)];
            if (!cgone[static_cast<std::size_t>(j)])
                kept.emplace_back(static_cast<VertexId>(i), j);
        }
    }
    return from_entries(rows_, cols_, std::move(kept));
}

BipartiteSparse BipartiteSparse::select_columns(const std::vector<VertexId>& keep) const {
    std::vector<VertexId> new_id(static_cast<std::size_t>(cols_), -1);
    for (std::size_t p = 0; p < keep.size(); ++p) {
        const VertexId j = keep[p];
        if (j < 0 || j >= cols_) throw ConfigError("bipartite: select_columns id out of range");
        new_id[static_cast<std::size_t>(j)] = static_cast<VertexId>(p);
    }
    std::vector<std::pair<VertexId, VertexId>> kept;
    for (std::int64_t i = 0; i < rows_; ++i) {
        for (std::int64_t e = row_offsets_[i]; e < row_offsets_[i + 1]; ++e) {
            const VertexId j = col_ids_[static_cast<std::size_t>(e)];
            if (new_id[static_cast<std::size_t>(j)] >= 0)
                kept.emplace_back(static_cast<VertexId>(i), new_id[static_cast<std::size_t>(j)]);
        }
    }
    return from_entries(rows_, static_cast<std::int64_t>(keep.size()), std::move(kept));
}

Eigen::MatrixXd BipartiteSparse::to_dense() const {
    Eigen::MatrixXd d = Eigen::MatrixXd::Zero(rows_, cols_);
    for (std::int64_t i = 0; i < rows_; ++i)
        for (std::int64_t e = row_offsets_[i]; e < row_offsets_[i + 1]; ++e)
            d(i, col_ids_[static_cast<std::size_t>(e)]) = 1.0;
    return d;
}

void BipartiteGram::apply(const Eigen::MatrixXd& x, Eigen::MatrixXd& y) const {
    y.resize(x.rows(), x.cols());
    Eigen::VectorXd w(b_->cols());
    for (Eigen::Index c = 0; c < x.cols(); ++c) {
        b_->multiply_transpose(x.col(c), w);
        b_->multiply(w, y.col(c));
    }
}

Graph induced_subgraph(const Graph& g, const std::vector<VertexId>& vertices) {
    std::vector<VertexId> local(static_cast<std::size_t>(g.num_vertices()), -1);
    for (std::size_t p = 0; p < vertices.size(); ++p) {
        const VertexId v = vertices[p];
        if (v < 0 || v >= g.num_vertices()) throw ConfigError("subgraph: vertex out of range");
        if (local[static_cast<std::size_t>(v)] >= 0) throw ConfigError("subgraph: duplicate vertex");
        local[static_cast<std::size_t>(v)] = static_cast<VertexId>(p);
    }
    std::vector<std::pair<VertexId, VertexId>> edges;
    for (const auto& [u, v] : g.edges()) {
        const VertexId lu = local[static_cast<std::size_t>(u)];
        const VertexId lv = local[static_cast<std::size_t>(v)];
        if (lu >= 0 && lv >= 0) edges.emplace_back(lu, lv);
    }
    return Graph(static_cast<VertexId>(vertices.size()), std::move(edges));
}

BipartiteSparse bipartite_between(const Graph& g, const std::vector<VertexId>& row_vertices,
                                  const std::vector<VertexId>& col_vertices) {
    std::vector<VertexId> col_pos(static_cast<std::size_t>(g.num_vertices()), -1);
    for (std::size_t p = 0; p < col_vertices.size(); ++p) {
        const VertexId v = col_vertices[p];
        if (v < 0 || v >= g.num_vertices()) throw ConfigError("bipartite: vertex out of range");
        col_pos[static_cast<std::size_t>(v)] = static_cast<VertexId>(p);
    }
    std::vector<std::pair<VertexId, VertexId>> entries;
    for (std::size_t p = 0; p < row_vertices.size(); ++p) {
        const VertexId u = row_vertices[p];
        if (u < 0 || u >= g.num_vertices()) throw ConfigError("bipartite: vertex out of range");
        if (col_pos[static_cast<std::size_t>(u)] >= 0)
            throw ConfigError("bipartite: row and column sets overlap");
        for (VertexId w : g.neighbors(u)) {
            const VertexId j = col_pos[static_cast<std::size_t>(w)];
            if (j >= 0) entries.emplace_back(static_cast<VertexId>(p), j);
        }
    }
    return BipartiteSparse::from_entries(static_cast<std::int64_t>(row_vertices.size()),
                                         static_cast<std::int64_t>(col_vertices.size()),
                                         std::move(entries));
}

}  // namespace specbm
