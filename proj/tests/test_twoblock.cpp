#include "doctest.h"

#include <cstdint>
#include <vector>

#include "specbm/clustering.hpp"
#include "specbm/errors.hpp"
#include "specbm/gamma.hpp"
#include "specbm/graph.hpp"
#include "specbm/params.hpp"
#include "specbm/sampling.hpp"
#include "specbm/sparse.hpp"
#include "specbm/twoblock.hpp"

using specbm::Clustering;
using specbm::ConfigError;
using specbm::Graph;
using specbm::SbmParams;
using specbm::SparseSym;
using specbm::TwoBlockConfig;

TEST_SUITE("twoblock") {

TEST_CASE("guarantee curve: frozen values") {
    // 2 exp(-0.072 (a-b)^2/(a+b)), clamped into [0, 1].
    CHECK(specbm::gamma_bound_two(10, 3) == 1.0);  // raw value 1.5246... clamps
    CHECK(specbm::gamma_bound_two(100, 10) ==
          doctest::Approx(0.009965053054390596).epsilon(1e-9));
    CHECK(specbm::gamma_bound_two(50, 5) == doctest::Approx(0.1411740277415828).epsilon(1e-9));
    CHECK(specbm::gamma_bound_two(30, 3) == doctest::Approx(0.4076288198257699).epsilon(1e-9));
}

TEST_CASE("config factories derive the documented constants") {
    const TwoBlockConfig full = TwoBlockConfig::full_graph(30, 6);
    CHECK(full.d == doctest::Approx(36.0));
    CHECK(full.correction_threshold == doctest::Approx(9.0));
    const TwoBlockConfig half = TwoBlockConfig::half_graph(30, 6);
    CHECK(half.d == doctest::Approx(18.0));
    CHECK(half.correction_threshold == doctest::Approx(9.0));
    CHECK(half.trim_factor == 20.0);

    CHECK_THROWS_AS(TwoBlockConfig::half_graph(6, 30), ConfigError);  // need a > b
    CHECK_THROWS_AS(TwoBlockConfig::half_graph(6, 0), ConfigError);   // need b > 0
}

TEST_CASE("correction flips are simultaneous") {
    // Labels [0, 1] joined by one edge, threshold below 1: each vertex sees
    // its only neighbor in the opposite class, so both flip in the same
    // round, swapping the labels instead of collapsing them.
    Clustering c{{0, 1}, 2, {}};
    const Graph blue(2, {{0, 1}});
    TwoBlockConfig cfg;
    cfg.correction_threshold = 1.0;
    const Clustering fixed = specbm::correction_two(c, blue, cfg);
    REQUIRE(fixed.num_vertices() == 2);
    CHECK(fixed.labels[0] == 1);
    CHECK(fixed.labels[1] == 0);
}

TEST_CASE("correction respects the threshold") {
    // Vertex 2 sees two class-0 neighbors and flips at threshold 2; vertices
    // 0 and 1 see a single opposite neighbor each and stay put.
    Clustering c{{0, 0, 1, 1}, 2, {}};
    const Graph blue(4, {{0, 2}, {1, 2}});
    TwoBlockConfig cfg;
    cfg.correction_threshold = 2.0;
    const Clustering fixed = specbm::correction_two(c, blue, cfg);
    CHECK(fixed.labels == std::vector<int>{0, 0, 0, 1});
}

TEST_CASE("correction on an empty held-out graph changes nothing") {
    Clustering c{{0, 1, 0, 1}, 2, {}};
    const Graph blue(4, {});
    TwoBlockConfig cfg;
    cfg.correction_threshold = 1.0;
    const Clustering fixed = specbm::correction_two(c, blue, cfg);
    CHECK(fixed.labels == c.labels);
}

TEST_CASE("iterated correction runs to a fixed point") {
    // A two-level tree of wrong labels heals inward only when iteration is
    // on: round one flips vertices 1 and 2 (two class-0 neighbors each),
    // which only then gives vertex 0 two opposite neighbors.
    Clustering c{{1, 1, 1, 0, 0, 0, 0}, 2, {}};
    const Graph blue(7, {{0, 1}, {0, 2}, {1, 3}, {1, 4}, {2, 5}, {2, 6}});
    TwoBlockConfig cfg;
    cfg.correction_threshold = 2.0;

    const Clustering one = specbm::correction_two(c, blue, cfg);
    CHECK(one.labels == std::vector<int>{1, 0, 0, 0, 0, 0, 0});

    cfg.iterate_correction = true;
    const Clustering fixed = specbm::correction_two(c, blue, cfg);
    CHECK(fixed.labels == std::vector<int>{0, 0, 0, 0, 0, 0, 0});
}

TEST_CASE("correction validates its inputs") {
    Clustering c{{0, 1, 2}, 3, {}};
    const Graph blue(3, {});
    TwoBlockConfig cfg;
    CHECK_THROWS_AS(specbm::correction_two(c, blue, cfg), ConfigError);  // k != 2
    Clustering two{{0, 1}, 2, {}};
    CHECK_THROWS_AS(specbm::correction_two(two, blue, cfg), ConfigError);  // size mismatch
}

TEST_CASE("spectral step outputs balanced classes and requires even input") {
    const SbmParams params = SbmParams::two_block(300, 40, 4);
    const Graph g = specbm::sample_sbm(params, 4);
    const SparseSym m = SparseSym::from_graph(g);
    const Clustering c = specbm::spectral_partition_two(m, TwoBlockConfig::full_graph(40, 4));
    CHECK(c.k == 2);
    const auto sizes = c.class_sizes();
    CHECK(sizes[0] == 300);
    CHECK(sizes[1] == 300);

    const SparseSym odd = SparseSym::from_entries(3, {{0, 1, 1.0}});
    CHECK_THROWS_AS(specbm::spectral_partition_two(odd, TwoBlockConfig::full_graph(40, 4)),
                    ConfigError);
}

TEST_CASE("full pipeline recovers a strongly separated planted bisection") {
    const SbmParams params = SbmParams::two_block(1000, 50, 5);
    const Clustering truth = specbm::truth_clustering(params);
    for (std::uint64_t seed : {1u, 2u, 3u}) {
        const Graph g = specbm::sample_sbm(params, seed);
        const Clustering c = specbm::partition_two(g, 50, 5, seed);
        const double gamma = specbm::gamma_correctness(c, truth).gamma;
        CHECK(gamma <= 0.01);
    }
}

TEST_CASE("full pipeline is deterministic") {
    const SbmParams params = SbmParams::two_block(400, 30, 3);
    const Graph g = specbm::sample_sbm(params, 8);
    const Clustering c1 = specbm::partition_two(g, 30, 3, 8);
    const Clustering c2 = specbm::partition_two(g, 30, 3, 8);
    CHECK(c1.labels == c2.labels);
    CHECK(c1.trimmed == c2.trimmed);
}

TEST_CASE("pipeline rejects an odd vertex count") {
    const Graph g(5, {{0, 1}, {2, 3}});
    CHECK_THROWS_AS(specbm::partition_two(g, 10, 1, 1), ConfigError);
}

}  // TEST_SUITE
