#include "doctest.h"

#include <Eigen/Dense>
#include <cstdint>
#include <tuple>
#include <utility>
#include <vector>

#include "specbm/errors.hpp"
#include "specbm/graph.hpp"
#include "specbm/rng.hpp"
#include "specbm/sparse.hpp"

using specbm::BipartiteGram;
using specbm::BipartiteSparse;
using specbm::ConfigError;
using specbm::Graph;
using specbm::RngStream;
using specbm::SparseSym;
using specbm::VertexId;

namespace {

/// Random symmetric matrix with ~density filled upper entries, values in [-1, 1).
SparseSym random_sym(std::int64_t dim, double density, std::uint64_t seed) {
    RngStream rng(seed);
    std::vector<std::tuple<VertexId, VertexId, double>> entries;
    for (VertexId i = 0; i < dim; ++i)
        for (VertexId j = i; j < dim; ++j)
            if (rng.bernoulli(density))
                entries.emplace_back(i, j, 2.0 * rng.uniform01() - 1.0);
    return SparseSym::from_entries(dim, entries);
}

}  // namespace

TEST_SUITE("sparse") {

TEST_CASE("from_graph matches the dense adjacency matrix") {
    const Graph g(4, {{0, 1}, {1, 2}, {0, 3}});
    const SparseSym m = SparseSym::from_graph(g);
    Eigen::MatrixXd expect = Eigen::MatrixXd::Zero(4, 4);
    expect(0, 1) = expect(1, 0) = 1;
    expect(1, 2) = expect(2, 1) = 1;
    expect(0, 3) = expect(3, 0) = 1;
    CHECK((m.to_dense() - expect).norm() == 0.0);
    CHECK(m.dim() == 4);
    CHECK(m.degree(1) == 2);
    CHECK(m.degree(2) == 1);
    CHECK(m.num_stored() == 6);
}

TEST_CASE("from_entries mirrors the upper triangle and keeps the diagonal") {
    const SparseSym m = SparseSym::from_entries(3, {{0, 1, 2.5}, {1, 1, -1.0}, {0, 2, 0.5}});
    Eigen::MatrixXd expect = Eigen::MatrixXd::Zero(3, 3);
    expect(0, 1) = expect(1, 0) = 2.5;
    expect(1, 1) = -1.0;
    expect(0, 2) = expect(2, 0) = 0.5;
    CHECK((m.to_dense() - expect).norm() == 0.0);
    CHECK(m.coeff(1, 0) == 2.5);
    CHECK(m.coeff(1, 1) == -1.0);
    CHECK(m.coeff(2, 1) == 0.0);
}

TEST_CASE("from_entries rejects bad input") {
    using E = std::vector<std::tuple<VertexId, VertexId, double>>;
    CHECK_THROWS_AS(SparseSym::from_entries(3, E{{1, 0, 1.0}}), ConfigError);  // lower triangle
    CHECK_THROWS_AS(SparseSym::from_entries(3, E{{0, 3, 1.0}}), ConfigError);  // out of range
    CHECK_THROWS_AS(SparseSym::from_entries(3, E{{0, 1, 1.0}, {0, 1, 2.0}}), ConfigError);
}

TEST_CASE("multiply and apply agree with the dense product") {
    for (std::uint64_t seed : {1u, 2u, 3u}) {
        const SparseSym m = random_sym(23, 0.3, seed);
        const Eigen::MatrixXd d = m.to_dense();
        CHECK((d - d.transpose()).norm() == 0.0);

        RngStream rng(seed + 100);
        Eigen::VectorXd x(23);
        for (int i = 0; i < 23; ++i) x[i] = 2.0 * rng.uniform01() - 1.0;
        Eigen::VectorXd y(23);
        m.multiply(x, y);
        CHECK((y - d * x).norm() <= 1e-12 * (1.0 + y.norm()));

        Eigen::MatrixXd xs(23, 4);
        for (int c = 0; c < 4; ++c)
            for (int i = 0; i < 23; ++i) xs(i, c) = 2.0 * rng.uniform01() - 1.0;
        Eigen::MatrixXd ys(23, 4);
        m.apply(xs, ys);
        CHECK((ys - d * xs).norm() <= 1e-12 * (1.0 + ys.norm()));
    }
}

TEST_CASE("zero_out removes rows and columns and records them") {
    const SparseSym m = SparseSym::from_entries(
        4, {{0, 1, 1.0}, {1, 2, 1.0}, {2, 3, 1.0}, {0, 3, 1.0}});
    const SparseSym z = m.zero_out({1});
    Eigen::MatrixXd expect = Eigen::MatrixXd::Zero(4, 4);
    expect(2, 3) = expect(3, 2) = 1.0;
    expect(0, 3) = expect(3, 0) = 1.0;
    CHECK((z.to_dense() - expect).norm() == 0.0);
    REQUIRE(z.zeroed().size() == 1);
    CHECK(z.zeroed()[0] == 1);

    // A second trim unions the record and keeps it sorted.
    const SparseSym z2 = z.zero_out({0, 3});
    CHECK(z2.to_dense().norm() == 0.0);
    REQUIRE(z2.zeroed().size() == 3);
    CHECK(z2.zeroed()[0] == 0);
    CHECK(z2.zeroed()[1] == 1);
    CHECK(z2.zeroed()[2] == 3);

    // Zeroing the same row twice is idempotent.
    const SparseSym z3 = z.zero_out({1});
    CHECK((z3.to_dense() - z.to_dense()).norm() == 0.0);
    CHECK(z3.zeroed() == z.zeroed());
}

TEST_CASE("bipartite matrix round-trips through dense") {
    const BipartiteSparse b =
        BipartiteSparse::from_entries(3, 4, {{0, 1}, {2, 3}, {1, 0}, {2, 1}});
    Eigen::MatrixXd expect = Eigen::MatrixXd::Zero(3, 4);
    expect(0, 1) = expect(2, 3) = expect(1, 0) = expect(2, 1) = 1.0;
    CHECK((b.to_dense() - expect).norm() == 0.0);
    CHECK(b.rows() == 3);
    CHECK(b.cols() == 4);
    CHECK(b.num_stored() == 4);
    CHECK(b.row_degree(2) == 2);
    CHECK(b.col_degree(1) == 2);

    REQUIRE(b.row(2).size() == 2);
    CHECK(b.row(2)[0] == 1);
    CHECK(b.row(2)[1] == 3);
    REQUIRE(b.column(1).size() == 2);
    CHECK(b.column(1)[0] == 0);
    CHECK(b.column(1)[1] == 2);

    CHECK_THROWS_AS(BipartiteSparse::from_entries(2, 2, {{0, 0}, {0, 0}}), ConfigError);
    CHECK_THROWS_AS(BipartiteSparse::from_entries(2, 2, {{0, 2}}), ConfigError);
    CHECK_THROWS_AS(BipartiteSparse::from_entries(2, 2, {{2, 0}}), ConfigError);
}

TEST_CASE("bipartite products agree with the dense ones") {
    RngStream rng(17);
    std::vector<std::pair<VertexId, VertexId>> entries;
    for (VertexId i = 0; i < 15; ++i)
        for (VertexId j = 0; j < 9; ++j)
            if (rng.bernoulli(0.3)) entries.emplace_back(i, j);
    const BipartiteSparse b = BipartiteSparse::from_entries(15, 9, entries);
    const Eigen::MatrixXd d = b.to_dense();

    Eigen::VectorXd x(9), yt(15);
    for (int j = 0; j < 9; ++j) x[j] = 2.0 * rng.uniform01() - 1.0;
    b.multiply(x, yt);
    CHECK((yt - d * x).norm() <= 1e-12 * (1.0 + yt.norm()));

    Eigen::VectorXd y(15), xt(9);
    for (int i = 0; i < 15; ++i) y[i] = 2.0 * rng.uniform01() - 1.0;
    b.multiply_transpose(y, xt);
    CHECK((xt - d.transpose() * y).norm() <= 1e-12 * (1.0 + xt.norm()));

    // Gram operator: z -> B B^T z, as a block.
    Eigen::MatrixXd zs(15, 3), gs(15, 3);
    for (int c = 0; c < 3; ++c)
        for (int i = 0; i < 15; ++i) zs(i, c) = 2.0 * rng.uniform01() - 1.0;
    const BipartiteGram gram(b);
    CHECK(gram.rows() == 15);
    gram.apply(zs, gs);
    CHECK((gs - d * d.transpose() * zs).norm() <= 1e-12 * (1.0 + gs.norm()));
}

TEST_CASE("bipartite zero_out and select_columns") {
    const BipartiteSparse b =
        BipartiteSparse::from_entries(3, 3, {{0, 0}, {1, 1}, {2, 2}, {0, 2}});
    const BipartiteSparse z = b.zero_out({1}, {0});
    Eigen::MatrixXd expect = Eigen::MatrixXd::Zero(3, 3);
    expect(2, 2) = expect(0, 2) = 1.0;
    CHECK((z.to_dense() - expect).norm() == 0.0);

    const BipartiteSparse sel = b.select_columns({0, 2});
    Eigen::MatrixXd expect_sel = Eigen::MatrixXd::Zero(3, 2);
    expect_sel(0, 0) = 1.0;   // old column 0
    expect_sel(2, 1) = 1.0;   // old column 2
    expect_sel(0, 1) = 1.0;
    CHECK((sel.to_dense() - expect_sel).norm() == 0.0);
    CHECK(sel.cols() == 2);
    CHECK(sel.rows() == 3);
}

TEST_CASE("induced_subgraph renumbers in subset order") {
    const Graph g(6, {{0, 1}, {1, 4}, {4, 5}, {2, 3}});
    const Graph sub = specbm::induced_subgraph(g, {1, 4, 5});
    CHECK(sub.num_vertices() == 3);
    REQUIRE(sub.num_edges() == 2);
    CHECK(sub.has_edge(0, 1));  // old (1, 4)
    CHECK(sub.has_edge(1, 2));  // old (4, 5)
    CHECK(!sub.has_edge(0, 2));
}

TEST_CASE("bipartite_between extracts the cross block") {
    const Graph g(5, {{0, 3}, {1, 3}, {1, 4}, {0, 1}, {3, 4}});
    const BipartiteSparse b = specbm::bipartite_between(g, {0, 1}, {3, 4});
    Eigen::MatrixXd expect = Eigen::MatrixXd::Zero(2, 2);
    expect(0, 0) = 1.0;  // 0-3
    expect(1, 0) = 1.0;  // 1-3
    expect(1, 1) = 1.0;  // 1-4
    CHECK((b.to_dense() - expect).norm() == 0.0);

    CHECK_THROWS_AS(specbm::bipartite_between(g, {0, 1}, {1, 3}), ConfigError);
}

}  // TEST_SUITE
