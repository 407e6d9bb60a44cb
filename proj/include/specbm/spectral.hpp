#pragma once

#include <Eigen/Dense>
#include <cmath>
#include <cstdint>
#include <limits>
#include <string>
#include <vector>

#include "specbm/errors.hpp"
#include "specbm/rng.hpp"
#include "specbm/sparse.hpp"

namespace specbm {

/**
 * Which end of the spectrum "top r" refers to.
 *
 * kAlgebraic selects the largest eigenvalues; kMagnitude the largest in
 * absolute value. Assortative planted structure puts its signal at the
 * algebraic top; disassortative structure (such as parity observations,
 * whose informative eigenvalue is negative) requires magnitude ordering.
 */
enum class EigenOrdering { kAlgebraic, kMagnitude };

/** Fixed default seed for solver start vectors, independent of model seeds. */
inline constexpr std::uint64_t kDefaultStartSeed = 0x243f6a8885a308d3ULL;

struct EigenOptions {
    double tol = 1e-8;                ///< residual tolerance relative to the matrix norm
    int max_iterations = 10000;       ///< block-multiplication cap
    EigenOrdering ordering = EigenOrdering::kAlgebraic;
    std::uint64_t start_seed = kDefaultStartSeed;  ///< deterministic start vectors
    int check_interval = 5;           ///< convergence test cadence
};

/**
 * An r-dimensional invariant (or singular) subspace with its Ritz values.
 *
 * basis has orthonormal columns; values[i] is the eigenvalue (or singular
 * value) associated with column i, sorted by the requested ordering.
 * degenerate_gap reports that the r-th and (r+1)-th values coincide within
 * tolerance, in which case the subspace as a whole is well defined but its
 * boundary is arbitrary; callers are expected to proceed.
 */
struct Subspace {
    Eigen::MatrixXd basis;
    Eigen::VectorXd values;
    int iterations = 0;
    bool degenerate_gap = false;
};

namespace detail {

/** Deterministic standard-normal matrix via Box-Muller on the portable stream. */
inline Eigen::MatrixXd gaussian_matrix(Eigen::Index rows, Eigen::Index cols, RngStream& rng) {
    Eigen::MatrixXd m(rows, cols);
    double spare = 0.0;
    bool has_spare = false;
    for (Eigen::Index c = 0; c < cols; ++c) {
        for (Eigen::Index i = 0; i < rows; ++i) {
            if (has_spare) {
                m(i, c) = spare;
                has_spare = false;
                continue;
            }
            double u1 = rng.uniform01();
            while (u1 <= 0.0) u1 = rng.uniform01();
            const double u2 = rng.uniform01();
            const double mag = std::sqrt(-2.0 * std::log(u1));
            m(i, c) = mag * std::cos(2.0 * M_PI * u2);
            spare = mag * std::sin(2.0 * M_PI * u2);
            has_spare = true;
        }
    }
    return m;
}

/** Orthonormal basis of the column span (thin Q factor). */
inline Eigen::MatrixXd thin_q(const Eigen::MatrixXd& x) {
    Eigen::HouseholderQR<Eigen::MatrixXd> qr(x);
    return qr.householderQ() * Eigen::MatrixXd::Identity(x.rows(), x.cols());
}

inline double order_key(double value, EigenOrdering ordering) {
    return ordering == EigenOrdering::kMagnitude ? std::abs(value) : value;
}

}  // namespace detail

/**
 * Largest singular value (= largest |eigenvalue| for symmetric operators),
 * estimated by power iteration on M^T M = M^2 with a deterministic seeded
 * start vector. Iterating the square makes the estimate insensitive to
 * +/- pairs of extreme eigenvalues. Converges when the M^2 Rayleigh residual
 * drops below tol relative to the current estimate; throws SolverError at
 * the iteration cap.
 *
 * Op must provide rows() and apply(const MatrixXd&, MatrixXd&).
 */
template <class Op>
double spectral_norm_op(const Op& op, double tol = 1e-8, int max_iterations = 10000,
                        std::uint64_t start_seed = kDefaultStartSeed) {
    const Eigen::Index n = op.rows();
    if (n == 0) return 0.0;
    RngStream rng(start_seed);
    Eigen::MatrixXd z = detail::gaussian_matrix(n, 1, rng);
    z.col(0).normalize();
    Eigen::MatrixXd w(n, 1), y(n, 1);
    const double tiny = std::numeric_limits<double>::min();
    for (int iter = 1; iter <= max_iterations; ++iter) {
        op.apply(z, w);
        op.apply(w, y);
        const double lam2 = z.col(0).dot(y.col(0));  // Rayleigh quotient of M^2, >= 0
        const double resid = (y.col(0) - lam2 * z.col(0)).norm();
        if (resid <= tol * lam2 + tiny) return std::sqrt(std::max(lam2, 0.0));
        const double yn = y.col(0).norm();
        if (yn == 0.0) return 0.0;
        z.col(0) = y.col(0) / yn;
    }
    throw SolverError("spectral norm: no convergence within " + std::to_string(max_iterations) +
                      " iterations");
}

/**
 * Invariant subspace of the top r eigenvalues of a symmetric operator, by
 * block power iteration with per-step re-orthonormalization and periodic
 * Rayleigh-Ritz extraction.
 *
 * Algebraic ordering iterates the shifted operator M + s I (s = ||M||), so
 * the algebraically largest eigenvalues dominate; magnitude ordering
 * iterates M directly. One guard column beyond r is carried both to speed
 * convergence and to detect a degenerate boundary gap. Convergence requires
 * every kept Ritz pair's residual ||M y - theta y|| to fall below
 * tol * ||M||; the iteration cap raises SolverError.
 */
template <class Op>
Subspace top_eigenspace_op(const Op& op, int r, const EigenOptions& opts = {}) {
    const Eigen::Index n = op.rows();
    if (r < 1) throw ConfigError("eigenspace: rank must be at least 1");
    if (r > n) throw ConfigError("eigenspace: rank " + std::to_string(r) +
                                 " exceeds dimension " + std::to_string(n));
    if (opts.tol <= 0.0) throw ConfigError("eigenspace: tolerance must be positive");

    // A cheap norm estimate sets the shift and the residual scale; neither
    // needs high accuracy, and a slack tolerance avoids stalling on spectra
    // with a nearly degenerate extreme.
    const double norm_est =
        spectral_norm_op(op, std::max(opts.tol, 1.0e-3), opts.max_iterations, opts.start_seed);
    const double scale = std::max(norm_est, std::numeric_limits<double>::min());
    const bool shifted = opts.ordering == EigenOrdering::kAlgebraic;
    const double shift = 1.01 * norm_est;

    const Eigen::Index width = std::min<Eigen::Index>(n, r + 1);
    RngStream rng(opts.start_seed);
    Eigen::MatrixXd q = detail::thin_q(detail::gaussian_matrix(n, width, rng));
    Eigen::MatrixXd aq(n, width);
    op.apply(q, aq);
    int iters = 1;

    const int interval = std::max(1, opts.check_interval);
    for (;;) {
        const bool check = iters == 1 || iters % interval == 0 || iters >= opts.max_iterations;
        if (check) {
            Eigen::MatrixXd h = q.transpose() * aq;
            h = 0.5 * (h + h.transpose()).eval();
            Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(h);
            if (es.info() != Eigen::Success)
                throw SolverError("eigenspace: dense Rayleigh-Ritz factorization failed");

            // Sort Ritz values by the requested ordering, descending; break
            // magnitude ties toward the positive value for determinism.
            std::vector<int> idx(static_cast<std::size_t>(width));
            for (Eigen::Index i = 0; i < width; ++i) idx[static_cast<std::size_t>(i)] = static_cast<int>(i);
            std::sort(idx.begin(), idx.end(), [&](int x, int y) {
                const double kx = detail::order_key(es.eigenvalues()[x], opts.ordering);
                const double ky = detail::order_key(es.eigenvalues()[y], opts.ordering);
                if (kx != ky) return kx > ky;
                return es.eigenvalues()[x] > es.eigenvalues()[y];
            });
            Eigen::MatrixXd v(width, width);
            Eigen::VectorXd theta(width);
            for (Eigen::Index i = 0; i < width; ++i) {
                v.col(i) = es.eigenvectors().col(idx[static_cast<std::size_t>(i)]);
                theta[i] = es.eigenvalues()[idx[static_cast<std::size_t>(i)]];
            }

            const Eigen::MatrixXd ritz = q * v.leftCols(r);
            const Eigen::MatrixXd resid =
                aq * v.leftCols(r) - ritz * theta.head(r).asDiagonal();
            double worst = 0.0;
            for (int i = 0; i < r; ++i) worst = std::max(worst, resid.col(i).norm());
            if (worst <= opts.tol * scale) {
                Subspace out;
                out.basis = ritz;
                out.values = theta.head(r);
                out.iterations = iters;
                if (width > r) {
                    const double gap = detail::order_key(theta[r - 1], opts.ordering) -
                                       detail::order_key(theta[r], opts.ordering);
                    out.degenerate_gap = gap <= opts.tol * scale;
                }
                return out;
            }
            if (iters >= opts.max_iterations)
                throw SolverError("eigenspace: residual " + std::to_string(worst) +
                                  " above tolerance after " + std::to_string(iters) +
                                  " iterations");
        }
        Eigen::MatrixXd y = shifted ? Eigen::MatrixXd(aq + shift * q) : aq;
        q = detail::thin_q(y);
        op.apply(q, aq);
        ++iters;
    }
}

/** Top eigenspace of a symmetric sparse matrix. */
Subspace top_eigenspace(const SparseSym& m, int r, const EigenOptions& opts = {});

/** Spectral norm of a symmetric sparse matrix. */
double spectral_norm(const SparseSym& m, double tol = 1e-8, int max_iterations = 10000,
                     std::uint64_t start_seed = kDefaultStartSeed);

/**
 * Span of the top r left singular vectors of a bipartite matrix, computed by
 * subspace iteration on the gram operator z -> B(B^T z); the product matrix
 * is never formed. values holds singular values. Throws SolverError when B
 * has fewer than r numerically nonzero singular values.
 */
Subspace top_left_singular_space(const BipartiteSparse& b, int r, const EigenOptions& opts = {});

/** Orthogonal projection of v onto the subspace: basis (basis^T v). */
Eigen::VectorXd project(const Subspace& w, const Eigen::Ref<const Eigen::VectorXd>& v);

/**
 * Distance between two subspaces given by orthonormal bases: the spectral
 * norm of the difference of their orthogonal projectors, which equals the
 * sine of their largest principal angle when the subspaces have equal
 * dimension. Computed exactly from a small dense problem on the joint span.
 */
double subspace_angle(const Eigen::Ref<const Eigen::MatrixXd>& basis1,
                      const Eigen::Ref<const Eigen::MatrixXd>& basis2);

/**
 * Zero out every row/column whose structural degree exceeds max_degree.
 * Already-zeroed rows have degree 0, so trimming is idempotent. The newly
 * trimmed ids (ascending) are reported through newly_trimmed if given.
 */
SparseSym trim_high_degree(const SparseSym& m, double max_degree,
                           std::vector<VertexId>* newly_trimmed = nullptr);

/**
 * Zero out every row and every column of a bipartite matrix whose degree
 * exceeds max_degree; both sides are measured on the input, then zeroed
 * together.
 */
BipartiteSparse trim_bipartite(const BipartiteSparse& b, double max_degree,
                               std::vector<VertexId>* rows_trimmed = nullptr,
                               std::vector<VertexId>* cols_trimmed = nullptr);

}  // namespace specbm
