#pragma once

#include <cstdint>
#include <iosfwd>
#include <vector>

#include "specbm/clustering.hpp"
#include "specbm/graph.hpp"

namespace specbm {

/**
 * Block-density rendering of a graph under a clustering: vertices are
 * reordered by (class, id), the reordered index range is cut into bins
 * near-equal intervals, and each cell holds the edge density between two
 * intervals (within-interval cells use the pair count m(m-1)/2). Cells with
 * no vertex pairs report density 0.
 */
struct Heatmap {
    int bins = 0;
    std::vector<double> density;  ///< row-major bins x bins, each in [0, 1]
    std::vector<int> pixels;      ///< round(255 * (1 - density)): 0 = dense

    double density_at(int i, int j) const {
        return density[static_cast<std::size_t>(i) * static_cast<std::size_t>(bins) +
                       static_cast<std::size_t>(j)];
    }
    int pixel_at(int i, int j) const {
        return pixels[static_cast<std::size_t>(i) * static_cast<std::size_t>(bins) +
                      static_cast<std::size_t>(j)];
    }

    /** Plain-text PGM ("P2"), one raster row per line, LF endings. */
    void write_pgm(std::ostream& out) const;
};

Heatmap density_heatmap(const Graph& g, const Clustering& clustering, int bins);

}  // namespace specbm
