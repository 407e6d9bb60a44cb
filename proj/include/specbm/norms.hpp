#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "specbm/spectral.hpp"

namespace specbm {

/** Knobs of the matrix-concentration suite. */
struct NormOptions {
    double trim_factor = 20.0;
    double norm_tol = 1e-5;          ///< relative tolerance of the norm estimates
    int norm_max_iterations = 50000;
    EigenOptions eig;                ///< options for the empirical eigenspace
};

/** One sampled instance's measurements. */
struct NormTrialRecord {
    std::uint64_t seed = 0;
    std::int64_t trimmed_count = 0;
    double delta_norm = 0.0;   ///< || trimmed ideal - ideal ||
    double e_norm = 0.0;       ///< || trimmed sample - trimmed ideal ||
    double e_ratio = 0.0;      ///< e_norm / sqrt(d)
    double sin_angle = 0.0;    ///< distance of computed 2-space from the ideal one
    double dk_bound = 0.0;     ///< (e_norm + delta_norm) / spectral gap
    double dk_slack = 0.0;     ///< dk_bound - sin_angle (>= 0 when the bound holds)
};

/** Aggregated suite outcome. */
struct NormReport {
    std::vector<NormTrialRecord> trials;
    bool dk_applicable = true;  ///< false when a == b leaves no signal gap
    std::string notice;         ///< set when parts of the suite were skipped

    double max_delta() const;
    double max_e_ratio() const;
    double min_slack() const;
    std::int64_t count_delta_at_most(double x) const;
};

/**
 * One instance of the concentration measurements on a two-sided planted
 * graph with blocks of n vertices and rates a/n, b/n (a >= b > 0 here; equal
 * rates are allowed for null-model runs).
 *
 * The sample's adjacency is trimmed at trim_factor * (a + b); the ideal
 * matrix is the zero-diagonal expectation, whose top-2 eigenvectors are the
 * constant vector and the two-sided sign pattern. delta measures what
 * trimming removes from the ideal matrix, e measures the trimmed sample's
 * deviation from the trimmed ideal, and the subspace distance between the
 * computed and ideal 2-spaces is compared against (e + delta) / gap, the
 * perturbation bound with gap = a - b. All norms are evaluated by seeded
 * power iteration on structured operators; nothing dense is formed.
 */
NormTrialRecord norm_bounds_trial(std::int64_t n, double a, double b, std::uint64_t seed,
                                  const NormOptions& opts = {});

/** Run num_trials instances with seeds seed0 .. seed0 + num_trials - 1. */
NormReport verify_norm_bounds(std::int64_t n, double a, double b, int num_trials,
                              std::uint64_t seed0, const NormOptions& opts = {});

}  // namespace specbm
