#pragma once

#include <Eigen/Dense>
#include <cstdint>
#include <utility>
#include <vector>

#include "specbm/graph.hpp"

namespace specbm {

/**
 * Symmetric sparse matrix in compressed sparse rows, with both triangles
 * stored so that row scans give full matrix-vector products.
 *
 * Matrices derived from graphs follow the zero-diagonal convention (the
 * builders never emit diagonal entries); the type itself accepts any
 * symmetric pattern. A matrix remembers which rows/columns have been zeroed
 * out by trimming; zeroed rows simply have no stored entries.
 */
class SparseSym {
public:
    SparseSym() = default;

    /** Adjacency matrix of a graph: entry 1.0 for every edge, zero diagonal. */
    static SparseSym from_graph(const Graph& g);

    /**
     * Build from upper-triangle entries (i < j, arbitrary order, no
     * duplicates) plus optional diagonal entries (i == j). Each off-diagonal
     * entry is mirrored.
     */
    static SparseSym from_entries(std::int64_t dim,
                                  const std::vector<std::tuple<VertexId, VertexId, double>>& entries);

    std::int64_t dim() const { return dim_; }
    std::int64_t num_stored() const { return static_cast<std::int64_t>(cols_.size()); }

    /** Structural degree: number of stored entries in row i. */
    std::int64_t degree(VertexId i) const { return offsets_[i + 1] - offsets_[i]; }

    /** Sorted ids of rows/columns that have been zeroed out. */
    const std::vector<VertexId>& zeroed() const { return zeroed_; }

    /** y = M x. */
    void multiply(const Eigen::Ref<const Eigen::VectorXd>& x, Eigen::Ref<Eigen::VectorXd> y) const;

    /** Column-wise product for block iterations: Y = M X. */
    void apply(const Eigen::MatrixXd& x, Eigen::MatrixXd& y) const;

    /** Operator-concept alias for the iterative solvers. */
    Eigen::Index rows() const { return static_cast<Eigen::Index>(dim_); }

    /** Dense copy, for small oracles and tests. */
    Eigen::MatrixXd to_dense() const;

    /**
     * Copy with the given rows and matching columns zeroed out (entries
     * removed). to_zero must be sorted and in range; the zeroed record of
     * the result is the union with the existing one.
     */
    SparseSym zero_out(const std::vector<VertexId>& to_zero) const;

    /** Entry accessor for tests; O(log degree). */
    double coeff(VertexId i, VertexId j) const;

private:
    std::int64_t dim_ = 0;
    std::vector<std::int64_t> offsets_ = {0};
    std::vector<VertexId> cols_;
    std::vector<double> vals_;
    std::vector<VertexId> zeroed_;
};

/**
 * Rectangular 0/1 sparse matrix (a bipartite adjacency), compressed by rows
 * with a column index kept alongside for fast column extraction.
 */
class BipartiteSparse {
public:
    BipartiteSparse() = default;

    /** Build from (row, col) entry positions; duplicates are rejected. */
    static BipartiteSparse from_entries(std::int64_t rows, std::int64_t cols,
                                        std::vector<std::pair<VertexId, VertexId>> entries);

    std::int64_t rows() const { return rows_; }
    std::int64_t cols() const { return cols_; }
    std::int64_t num_stored() const { return static_cast<std::int64_t>(col_ids_.size()); }

    std::int64_t row_degree(VertexId i) const { return row_offsets_[i + 1] - row_offsets_[i]; }
    std::int64_t col_degree(VertexId j) const { return col_offsets_[j + 1] - col_offsets_[j]; }

    /** Sorted row ids of the entries in column j. */
    std::span<const VertexId> column(VertexId j) const {
        return {row_ids_.data() + col_offsets_[j], row_ids_.data() + col_offsets_[j + 1]};
    }

    /** Sorted column ids of the entries in row i. */
    std::span<const VertexId> row(VertexId i) const {
        return {col_ids_.data() + row_offsets_[i], col_ids_.data() + row_offsets_[i + 1]};
    }

    /** y = B x (x indexed by columns). */
    void multiply(const Eigen::Ref<const Eigen::VectorXd>& x, Eigen::Ref<Eigen::VectorXd> y) const;

    /** x = B^T y (y indexed by rows). */
    void multiply_transpose(const Eigen::Ref<const Eigen::VectorXd>& y,
                            Eigen::Ref<Eigen::VectorXd> x) const;

    /**
     * Copy with the given rows and columns zeroed out (entries removed).
     * Both lists must be sorted.
     */
    BipartiteSparse zero_out(const std::vector<VertexId>& rows_to_zero,
                             const std::vector<VertexId>& cols_to_zero) const;

    /** Keep only the columns in `keep` (sorted), renumbering them 0..|keep). */
    BipartiteSparse select_columns(const std::vector<VertexId>& keep) const;

    /** Dense copy, for small oracles and tests. */
    Eigen::MatrixXd to_dense() const;

private:
    std::int64_t rows_ = 0, cols_ = 0;
    std::vector<std::int64_t> row_offsets_ = {0};
    std::vector<VertexId> col_ids_;
    std::vector<std::int64_t> col_offsets_ = {0};
    std::vector<VertexId> row_ids_;
};

/**
 * Gram operator z -> B (B^T z) of a bipartite matrix, applied without ever
 * forming the product matrix.
 */
class BipartiteGram {
public:
    explicit BipartiteGram(const BipartiteSparse& b) : b_(&b) {}
    Eigen::Index rows() const { return static_cast<Eigen::Index>(b_->rows()); }
    void apply(const Eigen::MatrixXd& x, Eigen::MatrixXd& y) const;

private:
    const BipartiteSparse* b_;
};

/**
 * Induced subgraph on a sorted vertex subset, with vertices renumbered
 * 0..|subset) in subset order.
 */
Graph induced_subgraph(const Graph& g, const std::vector<VertexId>& vertices);

/**
 * Bipartite adjacency between two disjoint sorted vertex subsets of g: entry
 * (i, j) is set when g has an edge between row_vertices[i] and
 * col_vertices[j].
 */
BipartiteSparse bipartite_between(const Graph& g, const std::vector<VertexId>& row_vertices,
                                  const std::vector<VertexId>& col_vertices);

}  // namespace specbm
