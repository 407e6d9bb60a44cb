#pragma once

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "specbm/norms.hpp"

namespace specbm {

enum class PipelineKind { kTwoBlock, kMultiBlock, kCensor, kNormBounds };

/**
 * A parsed experiment description. Model parameters may be swept by a grid;
 * every (combo, trial) pair runs independently and trial t always uses seed
 * `seed + t`, so results are comparable across combos and invariant to the
 * thread count.
 */
struct ExperimentConfig {
    PipelineKind pipeline = PipelineKind::kTwoBlock;
    int trials = 10;
    std::uint64_t seed = 1;
    int threads = 0;               ///< 0 = hardware concurrency
    bool timing = false;           ///< adds wall-time columns (breaks byte-reproducibility)
    int heatmap_bins = 0;          ///< when > 0, writes one PGM per trial
    bool save_clusterings = false; ///< when set, writes one clustering file per trial
    double gamma_threshold = 1.0;  ///< success marker used in summaries
    std::string output_dir = ".";
    std::string report_name = "report.txt";

    // Model parameters. n follows the samplers' conventions: vertices per
    // side for two-block and censor, total vertices for multi-block.
    std::int64_t n = 0;
    double a = 0.0;
    double b = 0.0;
    int k = 2;
    double p = 0.0;
    double epsilon = 0.0;

    // Optional overrides of pipeline constants.
    std::optional<double> trim_factor;
    std::optional<double> correction_threshold;
    std::optional<bool> iterate_correction;
    std::optional<int> num_columns;
    std::optional<std::int64_t> set_size;
    std::optional<std::int64_t> overlap_limit;
    std::optional<double> merge_threshold;
    std::optional<double> eig_tol;
    std::optional<int> eig_max_iterations;
    std::optional<std::string> censor_trim_mode;  ///< "carrier" or "observation"

    struct GridEntry {
        std::string key;  ///< one of n, a, b, k, p, epsilon
        std::vector<double> values;
    };
    /// Cartesian product, first entry outermost; empty = single combo.
    std::vector<GridEntry> grid;
};

/** Parse the INI-style config format; throws ConfigError with line numbers. */
ExperimentConfig parse_experiment_config(std::istream& in);

/** Model parameters of one grid combination. */
struct ComboSpec {
    std::int64_t n = 0;
    double a = 0.0;
    double b = 0.0;
    int k = 2;
    double p = 0.0;
    double epsilon = 0.0;
};

struct TrialResult {
    int combo = 0;
    int index = 0;
    std::uint64_t seed = 0;
    bool ok = false;
    std::string error;       ///< set when !ok
    double gamma = 0.0;      ///< gamma pipelines
    double bound = 0.0;      ///< guarantee value (two/multi pipelines)
    NormTrialRecord norm;    ///< norm-bounds pipeline
    double millis = 0.0;     ///< wall time; written only with config.timing
};

struct ExperimentReport {
    ExperimentConfig config;
    std::vector<ComboSpec> combos;
    std::vector<TrialResult> results;  ///< ordered by (combo, index)

    /**
     * Deterministic text report: config echo, one trial line per result,
     * one summary line per combo. Byte-identical across reruns and thread
     * counts unless config.timing is set.
     */
    void write(std::ostream& out) const;
};

/** Run all trials (in config.threads workers) without touching the filesystem. */
ExperimentReport run_experiment(const ExperimentConfig& cfg);

/**
 * Run and write the report (and any per-trial artifacts) into
 * config.output_dir. Returns the report.
 */
ExperimentReport run_experiment_to_files(const ExperimentConfig& cfg);

}  // namespace specbm
