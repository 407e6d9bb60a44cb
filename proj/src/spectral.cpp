#include "specbm/spectral.hpp"

#include <algorithm>
#include <cmath>

namespace specbm {

Subspace top_eigenspace(const SparseSym& m, int r, const EigenOptions& opts) {
    return top_eigenspace_op(m, r, opts);
}

double spectral_norm(const SparseSym& m, double tol, int max_iterations, std::uint64_t start_seed) {
    return spectral_norm_op(m, tol, max_iterations, start_seed);
}

Subspace top_left_singular_space(const BipartiteSparse& b, int r, const EigenOptions& opts) {
    if (r < 1) throw ConfigError("singular space: rank must be at least 1");
    if (r > b.rows())
        throw ConfigError("singular space: rank " + std::to_string(r) + " exceeds row count " +
                          std::to_string(b.rows()));
    EigenOptions gram_opts = opts;
    // The gram operator is positive semidefinite, so magnitude and algebraic
    // orderings agree; magnitude avoids the shift.
    gram_opts.ordering = EigenOrdering::kMagnitude;
    Subspace s = top_eigenspace_op(BipartiteGram(b), r, gram_opts);
    for (Eigen::Index i = 0; i < s.values.size(); ++i)
        s.values[i] = std::sqrt(std::max(s.values[i], 0.0));
    if (s.values[0] <= 0.0 || s.values[r - 1] <= s.values[0] * 1e-12)
        throw SolverError("singular space: matrix has fewer than " + std::to_string(r) +
                          " numerically nonzero singular values");
    return s;
}

Eigen::VectorXd project(const Subspace& w, const Eigen::Ref<const Eigen::VectorXd>& v) {
    if (w.basis.rows() != v.size()) throw ConfigError("project: dimension mismatch");
    return w.basis * (w.basis.transpose() * v);
}

double subspace_angle(const Eigen::Ref<const Eigen::MatrixXd>& basis1,
                      const Eigen::Ref<const Eigen::MatrixXd>& basis2) {
    if (basis1.rows() != basis2.rows()) throw ConfigError("subspace angle: dimension mismatch");
    if (basis1.cols() < 1 || basis2.cols() < 1)
        throw ConfigError("subspace angle: empty basis");
    auto check_orthonormal = [](const Eigen::Ref<const Eigen::MatrixXd>& b) {
        const Eigen::MatrixXd g =
            b.transpose() * b - Eigen::MatrixXd::Identity(b.cols(), b.cols());
        if (g.cwiseAbs().maxCoeff() > 1e-6)
            throw ConfigError("subspace angle: basis columns are not orthonormal");
    };
    check_orthonormal(basis1);
    check_orthonormal(basis2);

    // The projector difference vanishes outside span(B1) + span(B2), so it
    // can be diagonalized exactly on an orthonormal basis Z of the joint
    // span: ||P1 - P2|| = max |eig(C1 C1^T - C2 C2^T)| with Ci = Z^T Bi.
    Eigen::MatrixXd joint(basis1.rows(), basis1.cols() + basis2.cols());
    joint << basis1, basis2;
    const Eigen::MatrixXd z = detail::thin_q(joint);
    const Eigen::MatrixXd c1 = z.transpose() * basis1;
    const Eigen::MatrixXd c2 = z.transpose() * basis2;
    const Eigen::MatrixXd m = c1 * c1.transpose() - c2 * c2.transpose();
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(m);
    if (es.info() != Eigen::Success)
        throw SolverError("subspace angle: dense factorization failed");
    return std::max(std::abs(es.eigenvalues()[0]),
                    std::abs(es.eigenvalues()[es.eigenvalues().size() - 1]));
}

SparseSym trim_high_degree(const SparseSym& m, double max_degree,
                           std::vector<VertexId>* newly_trimmed) {
    std::vector<VertexId> over;
    for (std::int64_t i = 0; i < m.dim(); ++i)
        if (static_cast<double>(m.degree(static_cast<VertexId>(i))) > max_degree)
            over.push_back(static_cast<VertexId>(i));
    if (newly_trimmed) *newly_trimmed = over;
    return m.zero_out(over);
}

BipartiteSparse trim_bipartite(const BipartiteSparse& b, double max_degree,
                               std::vector<VertexId>* rows_trimmed,
                               std::vector<VertexId>* cols_trimmed) {
    std::vector<VertexId> rows_over, cols_over;
    for (std::int64_t i = 0; i < b.rows(); ++i)
        if (static_cast<double>(b.row_degree(static_cast<VertexId>(i))) > max_degree)
            rows_over.push_back(static_cast<VertexId>(i));
    for (std::int64_t j = 0; j < b.cols(); ++j)
        if (static_cast<double>(b.col_degree(static_cast<VertexId>(j))) > max_degree)
            cols_over.push_back(static_cast<VertexId>(j));
    if (rows_trimmed) *rows_trimmed = rows_over;
    if (cols_trimmed) *cols_trimmed = cols_over;
    return b.zero_out(rows_over, cols_over);
}

}  // namespace specbm
