#include "specbm/gamma.hpp"

#include <algorithm>
#include <numeric>
#include <string>

#include "specbm/errors.hpp"

namespace specbm {

namespace {

struct Overlaps {
    int k = 0;
    std::int64_t n = 0;
    std::vector<std::int64_t> counts;      // k*k, counts[t*k+p]
    std::vector<std::int64_t> block_size;  // per truth block
    std::vector<double> miss;              // k*k miss fractions

    std::int64_t count(int t, int p) const { return counts[static_cast<std::size_t>(t * k + p)]; }
    double miss_at(int t, int p) const { return miss[static_cast<std::size_t>(t * k + p)]; }
};

Overlaps build_overlaps(const Clustering& predicted, const Clustering& truth) {
    if (predicted.num_vertices() != truth.num_vertices())
        throw ConfigError("gamma: clusterings have different sizes");
    if (predicted.num_vertices() == 0) throw ConfigError("gamma: empty clusterings");
    if (predicted.k != truth.k)
        throw ConfigError("gamma: class counts differ (" + std::to_string(predicted.k) + " vs " +
                          std::to_string(truth.k) + ")");
    if (predicted.k < 1) throw ConfigError("gamma: class count must be positive");

    Overlaps o;
    o.k = truth.k;
    o.n = truth.num_vertices();
    o.counts.assign(static_cast<std::size_t>(o.k) * static_cast<std::size_t>(o.k), 0);
    o.block_size.assign(static_cast<std::size_t>(o.k), 0);
    for (std::int64_t v = 0; v < o.n; ++v) {
        const int t = truth.labels[static_cast<std::size_t>(v)];
        const int p = predicted.labels[static_cast<std::size_t>(v)];
        if (t < 0 || t >= o.k || p < 0 || p >= o.k)
            throw ConfigError("gamma: label out of range at vertex " + std::to_string(v));
        ++o.counts[static_cast<std::size_t>(t * o.k + p)];
        ++o.block_size[static_cast<std::size_t>(t)];
    }
    o.miss.resize(o.counts.size());
    for (int t = 0; t < o.k; ++t) {
        for (int p = 0; p < o.k; ++p) {
            const std::int64_t size = o.block_size[static_cast<std::size_t>(t)];
            // An empty truth block is vacuously recovered by any class.
            o.miss[static_cast<std::size_t>(t * o.k + p)] =
                size == 0 ? 0.0
                          : 1.0 - static_cast<double>(o.count(t, p)) / static_cast<double>(size);
        }
    }
    return o;
}

GammaReport report_from_matching(const Overlaps& o, const std::vector<int>& matching) {
    GammaReport r;
    r.matching = matching;
    r.block_overlap.resize(static_cast<std::size_t>(o.k));
    r.gamma = 0.0;
    std::int64_t hit = 0;
    for (int t = 0; t < o.k; ++t) {
        const int p = matching[static_cast<std::size_t>(t)];
        r.block_overlap[static_cast<std::size_t>(t)] = o.count(t, p);
        hit += o.count(t, p);
        r.gamma = std::max(r.gamma, o.miss_at(t, p));
    }
    r.total_misclassified = 1.0 - static_cast<double>(hit) / static_cast<double>(o.n);
    return r;
}

GammaReport exhaustive_best(const Overlaps& o) {
    std::vector<int> perm(static_cast<std::size_t>(o.k));
    std::iota(perm.begin(), perm.end(), 0);
    std::vector<int> best;
    double best_value = 2.0;
    do {
        double value = 0.0;
        for (int t = 0; t < o.k && value < best_value; ++t)
            value = std::max(value, o.miss_at(t, perm[static_cast<std::size_t>(t)]));
        // Strict improvement keeps the lexicographically smallest optimum,
        // since next_permutation enumerates in lexicographic order.
        if (value < best_value) {
            best_value = value;
            best = perm;
        }
    } while (std::next_permutation(perm.begin(), perm.end()));
    return report_from_matching(o, best);
}

/** Kuhn's augmenting-path matching over pairs with miss <= threshold. */
bool try_augment(const Overlaps& o, double threshold, int t, std::vector<char>& visited,
                 std::vector<int>& matched_truth_of) {
    for (int p = 0; p < o.k; ++p) {
        if (o.miss_at(t, p) > threshold || visited[static_cast<std::size_t>(p)]) continue;
        visited[static_cast<std::size_t>(p)] = 1;
        if (matched_truth_of[static_cast<std::size_t>(p)] < 0 ||
            try_augment(o, threshold, matched_truth_of[static_cast<std::size_t>(p)], visited,
                        matched_truth_of)) {
            matched_truth_of[static_cast<std::size_t>(p)] = t;
            return true;
        }
    }
    return false;
}

bool feasible(const Overlaps& o, double threshold, std::vector<int>* matching_out) {
    std::vector<int> matched_truth_of(static_cast<std::size_t>(o.k), -1);
    for (int t = 0; t < o.k; ++t) {
        std::vector<char> visited(static_cast<std::size_t>(o.k), 0);
        if (!try_augment(o, threshold, t, visited, matched_truth_of)) return false;
    }
    if (matching_out) {
        matching_out->assign(static_cast<std::size_t>(o.k), -1);
        for (int p = 0; p < o.k; ++p)
            (*matching_out)[static_cast<std::size_t>(matched_truth_of[static_cast<std::size_t>(p)])] = p;
    }
    return true;
}

GammaReport bottleneck_best(const Overlaps& o) {
    std::vector<double> values = o.miss;
    std::sort(values.begin(), values.end());
    values.erase(std::unique(values.begin(), values.end()), values.end());
    // Find the smallest threshold admitting a perfect matching; feasibility
    // is monotone in the threshold and always holds at the maximum value.
    std::size_t lo = 0, hi = values.size() - 1;
    while (lo < hi) {
        const std::size_t mid = (lo + hi) / 2;
        if (feasible(o, values[mid], nullptr)) {
            hi = mid;
        } else {
            lo = mid + 1;
        }
    }
    std::vector<int> matching;
    feasible(o, values[lo], &matching);
    return report_from_matching(o, matching);
}

}  // namespace

namespace detail {

GammaReport gamma_correctness_impl(const Clustering& predicted, const Clustering& truth,
                                   bool force_bottleneck) {
    const Overlaps o = build_overlaps(predicted, truth);
    if (!force_bottleneck && o.k <= 8) return exhaustive_best(o);
    return bottleneck_best(o);
}

}  // namespace detail

GammaReport gamma_correctness(const Clustering& predicted, const Clustering& truth) {
    return detail::gamma_correctness_impl(predicted, truth, false);
}

}  // namespace specbm
