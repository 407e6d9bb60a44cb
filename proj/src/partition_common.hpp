#pragma once

// Internal helper shared by the two-class spectral partitioners. Not installed.

#include <Eigen/Dense>
#include <algorithm>
#include <cmath>
#include <numeric>
#include <vector>

#include "specbm/spectral.hpp"

namespace specbm::detail {

/**
 * Split N vertices into two equal classes from a 2-dimensional spectral
 * subspace: project the all-ones vector into the subspace to isolate the
 * non-informative direction, take the orthogonal in-subspace direction, and
 * cut at the median of its coordinates.
 *
 * When the ones-projection is numerically zero (below 1e-8 * sqrt(N)) the
 * first basis vector stands in for it. Sorting is by second-direction value
 * descending with index-ascending tie-breaks, so the result is fully
 * deterministic; the top half gets label 0.
 */
inline std::vector<int> halve_by_projection(const Subspace& w) {
    const Eigen::Index n_total = w.basis.rows();
    Eigen::Vector2d ones_coords = w.basis.transpose() * Eigen::VectorXd::Ones(n_total);
    Eigen::Vector2d dir1;
    if (ones_coords.norm() < 1e-8 * std::sqrt(static_cast<double>(n_total))) {
        dir1 << 1.0, 0.0;
    } else {
        dir1 = ones_coords.normalized();
    }
    // The second direction is the 90-degree rotation of the first inside the
    // subspace; with an orthonormal basis this is exact.
    const Eigen::Vector2d dir2(-dir1[1], dir1[0]);
    const Eigen::VectorXd score = w.basis * dir2;

    std::vector<int> order(static_cast<std::size_t>(n_total));
    std::iota(order.begin(), order.end(), 0);
    std::sort(order.begin(), order.end(), [&](int x, int y) {
        if (score[x] != score[y]) return score[x] > score[y];
        return x < y;
    });
    std::vector<int> labels(static_cast<std::size_t>(n_total), 1);
    for (Eigen::Index i = 0; i < n_total / 2; ++i)
        labels[static_cast<std::size_t>(order[static_cast<std::size_t>(i)])] = 0;
    return labels;
}

}  // namespace specbm::detail
