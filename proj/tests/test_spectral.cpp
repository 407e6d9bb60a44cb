#include "doctest.h"

#include <Eigen/Dense>
#include <algorithm>
#include <cmath>
#include <cstdint>
#include <numeric>
#include <tuple>
#include <vector>

#include "specbm/errors.hpp"
#include "specbm/rng.hpp"
#include "specbm/sparse.hpp"
#include "specbm/spectral.hpp"

using specbm::BipartiteSparse;
using specbm::EigenOptions;
using specbm::EigenOrdering;
using specbm::RngStream;
using specbm::SparseSym;
using specbm::Subspace;
using specbm::VertexId;

namespace {

SparseSym random_sym(std::int64_t dim, double density, std::uint64_t seed) {
    RngStream rng(seed);
    std::vector<std::tuple<VertexId, VertexId, double>> entries;
    for (VertexId i = 0; i < dim; ++i)
        for (VertexId j = i; j < dim; ++j)
            if (rng.bernoulli(density))
                entries.emplace_back(i, j, 2.0 * rng.uniform01() - 1.0);
    return SparseSym::from_entries(dim, entries);
}

/// Columns of the dense eigenbasis spanning the top-r space per ordering.
Eigen::MatrixXd dense_top_space(const Eigen::MatrixXd& d, int r, EigenOrdering ordering) {
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(d);
    std::vector<int> idx(static_cast<std::size_t>(d.rows()));
    std::iota(idx.begin(), idx.end(), 0);
    std::sort(idx.begin(), idx.end(), [&](int p, int q) {
        const double kp = ordering == EigenOrdering::kMagnitude ? std::abs(es.eigenvalues()[p])
                                                                : es.eigenvalues()[p];
        const double kq = ordering == EigenOrdering::kMagnitude ? std::abs(es.eigenvalues()[q])
                                                                : es.eigenvalues()[q];
        return kp > kq;
    });
    Eigen::MatrixXd basis(d.rows(), r);
    for (int c = 0; c < r; ++c) basis.col(c) = es.eigenvectors().col(idx[static_cast<std::size_t>(c)]);
    return basis;
}

}  // namespace

TEST_SUITE("spectral") {

TEST_CASE("spectral_norm matches the dense largest magnitude") {
    for (std::uint64_t seed : {11u, 12u, 13u, 14u, 15u}) {
        const SparseSym m = random_sym(30, 0.4, seed);
        const Eigen::MatrixXd d = m.to_dense();
        Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(d);
        const double oracle =
            std::max(std::abs(es.eigenvalues()[0]), std::abs(es.eigenvalues()[d.rows() - 1]));
        const double got = specbm::spectral_norm(m, 1e-10);
        CHECK(std::abs(got - oracle) <= 1e-7 * oracle);
    }
}

TEST_CASE("spectral_norm of the zero matrix is zero") {
    const SparseSym zero = SparseSym::from_entries(5, {});
    CHECK(specbm::spectral_norm(zero) == 0.0);
}

TEST_CASE("top eigenspace matches the dense algebraic one") {
    for (std::uint64_t seed : {21u, 22u, 23u, 24u}) {
        const SparseSym m = random_sym(26, 0.45, seed);
        const Eigen::MatrixXd d = m.to_dense();
        EigenOptions opts;
        opts.tol = 1e-10;
        const Subspace w = specbm::top_eigenspace(m, 2, opts);

        Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(d);
        const Eigen::Index n = d.rows();
        CHECK(std::abs(w.values[0] - es.eigenvalues()[n - 1]) < 1e-7);
        CHECK(std::abs(w.values[1] - es.eigenvalues()[n - 2]) < 1e-7);
        CHECK(specbm::subspace_angle(w.basis, dense_top_space(d, 2, EigenOrdering::kAlgebraic)) <
              1e-6);

        // The solver's own contract: small residual for every kept pair.
        for (int i = 0; i < 2; ++i) {
            Eigen::VectorXd my(n);
            m.multiply(w.basis.col(i), my);
            CHECK((my - w.values[i] * w.basis.col(i)).norm() <= 1e-8 * d.norm());
        }
    }
}

TEST_CASE("magnitude ordering keeps a dominant negative eigenvalue") {
    // diag(-5, 3, 1, -0.5): top-2 by magnitude are -5 and 3.
    const SparseSym m = SparseSym::from_entries(
        4, {{0, 0, -5.0}, {1, 1, 3.0}, {2, 2, 1.0}, {3, 3, -0.5}});
    EigenOptions opts;
    opts.ordering = EigenOrdering::kMagnitude;
    opts.tol = 1e-12;
    const Subspace w = specbm::top_eigenspace(m, 2, opts);
    CHECK(w.values[0] == doctest::Approx(-5.0).epsilon(1e-9));
    CHECK(w.values[1] == doctest::Approx(3.0).epsilon(1e-9));

    // Algebraic ordering on the same matrix picks 3 and 1 instead.
    EigenOptions alg;
    alg.tol = 1e-12;
    const Subspace wa = specbm::top_eigenspace(m, 2, alg);
    CHECK(wa.values[0] == doctest::Approx(3.0).epsilon(1e-9));
    CHECK(wa.values[1] == doctest::Approx(1.0).epsilon(1e-9));
}

TEST_CASE("degenerate boundary is flagged, not fatal") {
    const SparseSym m =
        SparseSym::from_entries(3, {{0, 0, 3.0}, {1, 1, 2.0}, {2, 2, 2.0}});
    const Subspace w = specbm::top_eigenspace(m, 2);
    CHECK(w.degenerate_gap);
    CHECK(w.values[0] == doctest::Approx(3.0).epsilon(1e-9));
    CHECK(w.values[1] == doctest::Approx(2.0).epsilon(1e-9));
}

TEST_CASE("top left singular space matches the dense SVD") {
    for (std::uint64_t seed : {31u, 32u, 33u}) {
        RngStream rng(seed);
        std::vector<std::pair<VertexId, VertexId>> entries;
        for (VertexId i = 0; i < 20; ++i)
            for (VertexId j = 0; j < 12; ++j)
                if (rng.bernoulli(0.35)) entries.emplace_back(i, j);
        const BipartiteSparse b = BipartiteSparse::from_entries(20, 12, entries);
        EigenOptions opts;
        opts.tol = 1e-10;
        const Subspace w = specbm::top_left_singular_space(b, 3, opts);

        Eigen::JacobiSVD<Eigen::MatrixXd> svd(b.to_dense(), Eigen::ComputeThinU);
        for (int i = 0; i < 3; ++i)
            CHECK(std::abs(w.values[i] - svd.singularValues()[i]) < 1e-7);
        CHECK(specbm::subspace_angle(w.basis, svd.matrixU().leftCols(3)) < 1e-6);
    }
}

TEST_CASE("subspace_angle identities") {
    Eigen::MatrixXd e01 = Eigen::MatrixXd::Zero(4, 2);
    e01(0, 0) = 1.0;
    e01(1, 1) = 1.0;
    Eigen::MatrixXd e23 = Eigen::MatrixXd::Zero(4, 2);
    e23(2, 0) = 1.0;
    e23(3, 1) = 1.0;
    CHECK(specbm::subspace_angle(e01, e01) <= 1e-12);
    CHECK(specbm::subspace_angle(e01, e23) == doctest::Approx(1.0).epsilon(1e-12));

    // Rotating one direction by theta inside a fixed plane: distance sin(theta).
    const double theta = 0.3;
    Eigen::MatrixXd rot = Eigen::MatrixXd::Zero(4, 2);
    rot(0, 0) = std::cos(theta);
    rot(2, 0) = std::sin(theta);
    rot(1, 1) = 1.0;
    CHECK(specbm::subspace_angle(e01, rot) == doctest::Approx(std::sin(theta)).epsilon(1e-10));

    // Order and basis choice inside the span must not matter.
    Eigen::MatrixXd swapped(4, 2);
    swapped.col(0) = e01.col(1);
    swapped.col(1) = e01.col(0);
    CHECK(specbm::subspace_angle(e01, swapped) <= 1e-12);
}

TEST_CASE("project drops the orthogonal component") {
    Eigen::MatrixXd basis = Eigen::MatrixXd::Zero(3, 1);
    basis(0, 0) = 1.0;
    Subspace w;
    w.basis = basis;
    w.values = Eigen::VectorXd::Ones(1);
    Eigen::VectorXd v(3);
    v << 2.0, 5.0, -1.0;
    const Eigen::VectorXd p = specbm::project(w, v);
    CHECK(p[0] == doctest::Approx(2.0));
    CHECK(p[1] == doctest::Approx(0.0));
    CHECK(p[2] == doctest::Approx(0.0));
}

TEST_CASE("trim_high_degree zeroes heavy rows and reports them") {
    // Star with center 0 of degree 5 plus one detached edge.
    const specbm::Graph g(8, {{0, 1}, {0, 2}, {0, 3}, {0, 4}, {0, 5}, {6, 7}});
    const SparseSym m = SparseSym::from_graph(g);
    std::vector<VertexId> newly;
    const SparseSym t = specbm::trim_high_degree(m, 4.0, &newly);
    REQUIRE(newly.size() == 1);
    CHECK(newly[0] == 0);
    CHECK(t.degree(0) == 0);
    CHECK(t.coeff(0, 1) == 0.0);
    CHECK(t.coeff(6, 7) == 1.0);
    REQUIRE(t.zeroed().size() == 1);

    // Second pass finds nothing new: remaining degrees are at most 1.
    std::vector<VertexId> newly2;
    const SparseSym t2 = specbm::trim_high_degree(t, 4.0, &newly2);
    CHECK(newly2.empty());
    CHECK((t2.to_dense() - t.to_dense()).norm() == 0.0);
}

TEST_CASE("trim_bipartite trims both sides") {
    // Row 0 has degree 3; column 2 has degree 2 after row 0 goes.
    const BipartiteSparse b = BipartiteSparse::from_entries(
        3, 3, {{0, 0}, {0, 1}, {0, 2}, {1, 2}, {2, 2}});
    std::vector<VertexId> rows_trimmed, cols_trimmed;
    const BipartiteSparse t = specbm::trim_bipartite(b, 2.0, &rows_trimmed, &cols_trimmed);
    REQUIRE(rows_trimmed.size() == 1);
    CHECK(rows_trimmed[0] == 0);
    REQUIRE(cols_trimmed.size() == 1);
    CHECK(cols_trimmed[0] == 2);
    CHECK(t.to_dense().norm() == 0.0);  // only (1,2) and (2,2) survived row 0, then col 2 goes
}

TEST_CASE("solver is deterministic") {
    const SparseSym m = random_sym(24, 0.4, 99);
    const Subspace w1 = specbm::top_eigenspace(m, 2);
    const Subspace w2 = specbm::top_eigenspace(m, 2);
    CHECK((w1.basis - w2.basis).norm() == 0.0);
    CHECK((w1.values - w2.values).norm() == 0.0);
    CHECK(w1.iterations == w2.iterations);
}

}  // TEST_SUITE
