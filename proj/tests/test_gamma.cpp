#include "doctest.h"

#include <cstdint>
#include <vector>

#include "specbm/clustering.hpp"
#include "specbm/errors.hpp"
#include "specbm/gamma.hpp"
#include "specbm/rng.hpp"

using specbm::Clustering;
using specbm::ConfigError;
using specbm::GammaReport;
using specbm::RngStream;

namespace {

Clustering make(std::vector<int> labels, int k) { return Clustering{std::move(labels), k, {}}; }

Clustering random_labels(std::int64_t n, int k, RngStream& rng) {
    std::vector<int> labels(static_cast<std::size_t>(n));
    for (auto& l : labels) l = static_cast<int>(rng.uniform_below(static_cast<std::uint64_t>(k)));
    return Clustering{std::move(labels), k, {}};
}

}  // namespace

TEST_SUITE("gamma") {

TEST_CASE("identical clusterings score zero") {
    const Clustering c = make({0, 0, 1, 1, 2, 2}, 3);
    const GammaReport r = specbm::gamma_correctness(c, c);
    CHECK(r.gamma == 0.0);
    CHECK(r.total_misclassified == 0.0);
    CHECK(r.matching == std::vector<int>{0, 1, 2});
}

TEST_CASE("a pure relabeling scores zero through the matching") {
    const Clustering truth = make({0, 0, 1, 1, 2, 2}, 3);
    const Clustering pred = make({2, 2, 0, 0, 1, 1}, 3);
    const GammaReport r = specbm::gamma_correctness(pred, truth);
    CHECK(r.gamma == 0.0);
    CHECK(r.matching == std::vector<int>{2, 0, 1});
    CHECK(r.block_overlap == std::vector<std::int64_t>{2, 2, 2});
}

TEST_CASE("gamma is the worst per-block missing fraction") {
    // Truth: two blocks of 4. Prediction misplaces 1 vertex of block 0 and
    // 2 vertices of block 1: gamma = 2/4, misclassified = 3/8.
    const Clustering truth = make({0, 0, 0, 0, 1, 1, 1, 1}, 2);
    const Clustering pred = make({0, 0, 0, 1, 0, 0, 1, 1}, 2);
    const GammaReport r = specbm::gamma_correctness(pred, truth);
    CHECK(r.gamma == doctest::Approx(0.5));
    CHECK(r.total_misclassified == doctest::Approx(3.0 / 8.0));
    CHECK(r.matching == std::vector<int>{0, 1});
    CHECK(r.block_overlap == std::vector<std::int64_t>{3, 2});
}

TEST_CASE("ties between optimal matchings break lexicographically") {
    // Every overlap is 2, so both matchings give gamma 1/2; the identity is
    // the lexicographically smaller one and must be reported.
    const Clustering truth = make({0, 0, 0, 0, 1, 1, 1, 1}, 2);
    const Clustering pred = make({0, 0, 1, 1, 0, 0, 1, 1}, 2);
    const GammaReport r = specbm::gamma_correctness(pred, truth);
    CHECK(r.gamma == doctest::Approx(0.5));
    CHECK(r.matching == std::vector<int>{0, 1});
}

TEST_CASE("empty truth blocks never dominate") {
    // Class 2 is empty in truth; its miss fraction counts as 0.
    const Clustering truth = make({0, 0, 1, 1}, 3);
    const Clustering pred = make({0, 0, 1, 2}, 3);
    const GammaReport r = specbm::gamma_correctness(pred, truth);
    CHECK(r.gamma == doctest::Approx(0.5));  // block 1 lost one of two
}

TEST_CASE("exhaustive and bottleneck routes agree") {
    RngStream rng(2024);
    for (int trial = 0; trial < 200; ++trial) {
        const int k = 2 + static_cast<int>(rng.uniform_below(4));  // 2..5
        const std::int64_t n =
            static_cast<std::int64_t>(k) + static_cast<std::int64_t>(rng.uniform_below(9));
        const Clustering truth = random_labels(n, k, rng);
        const Clustering pred = random_labels(n, k, rng);
        const GammaReport ex = specbm::detail::gamma_correctness_impl(pred, truth, false);
        const GammaReport bn = specbm::detail::gamma_correctness_impl(pred, truth, true);
        REQUIRE(ex.gamma == doctest::Approx(bn.gamma).epsilon(1e-12));
    }
}

TEST_CASE("large class counts use the bottleneck route") {
    // k = 10 exceeds the exhaustive cutoff; a pure relabeling must still
    // score zero and invert the permutation.
    std::vector<int> truth_labels, pred_labels;
    for (int b = 0; b < 10; ++b)
        for (int i = 0; i < 5; ++i) {
            truth_labels.push_back(b);
            pred_labels.push_back((b + 7) % 10);
        }
    const GammaReport r =
        specbm::gamma_correctness(make(pred_labels, 10), make(truth_labels, 10));
    CHECK(r.gamma == 0.0);
    for (int b = 0; b < 10; ++b) CHECK(r.matching[static_cast<std::size_t>(b)] == (b + 7) % 10);
}

TEST_CASE("report internals are consistent") {
    RngStream rng(7);
    const Clustering truth = random_labels(40, 4, rng);
    const Clustering pred = random_labels(40, 4, rng);
    const GammaReport r = specbm::gamma_correctness(pred, truth);
    REQUIRE(r.matching.size() == 4);
    REQUIRE(r.block_overlap.size() == 4);

    const auto sizes = truth.class_sizes();
    std::int64_t hits = 0;
    double worst = 0.0;
    for (int b = 0; b < 4; ++b) {
        hits += r.block_overlap[static_cast<std::size_t>(b)];
        if (sizes[static_cast<std::size_t>(b)] > 0) {
            const double miss =
                1.0 - static_cast<double>(r.block_overlap[static_cast<std::size_t>(b)]) /
                          static_cast<double>(sizes[static_cast<std::size_t>(b)]);
            worst = std::max(worst, miss);
        }
    }
    CHECK(r.gamma == doctest::Approx(worst).epsilon(1e-12));
    CHECK(r.total_misclassified ==
          doctest::Approx(1.0 - static_cast<double>(hits) / 40.0).epsilon(1e-12));

    // The matching is a permutation of the classes.
    std::vector<int> sorted = r.matching;
    std::sort(sorted.begin(), sorted.end());
    CHECK(sorted == std::vector<int>{0, 1, 2, 3});
}

TEST_CASE("input validation") {
    const Clustering a = make({0, 1}, 2);
    const Clustering b = make({0, 1, 1}, 2);
    const Clustering c = make({0, 1, 2}, 3);
    CHECK_THROWS_AS(specbm::gamma_correctness(a, b), ConfigError);  // length mismatch
    CHECK_THROWS_AS(specbm::gamma_correctness(b, c), ConfigError);  // class count mismatch
}

}  // TEST_SUITE
