#include "specbm/experiment.hpp"

#include <algorithm>
#include <atomic>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <istream>
#include <limits>
#include <ostream>
#include <thread>

#include "specbm/censor.hpp"
#include "specbm/errors.hpp"
#include "specbm/gamma.hpp"
#include "specbm/heatmap.hpp"
#include "specbm/multiblock.hpp"
#include "specbm/params.hpp"
#include "specbm/sampling.hpp"
#include "specbm/twoblock.hpp"
#include "text_io.hpp"

namespace specbm {

namespace {

std::string fmt(double v) {
    if (std::isnan(v)) return "na";
    char buf[48];
    std::snprintf(buf, sizeof buf, "%.10g", v);
    return buf;
}

double parse_double_field(const detail::LineReader& reader, const std::string& value,
                          const char* what) {
    char* end = nullptr;
    const double v = std::strtod(value.c_str(), &end);
    if (end != value.c_str() + value.size() || value.empty())
        reader.fail(std::string("expected number for ") + what + ", got '" + value + "'");
    return v;
}

bool parse_bool_field(const detail::LineReader& reader, const std::string& value, const char* what) {
    if (value == "on" || value == "true" || value == "1") return true;
    if (value == "off" || value == "false" || value == "0") return false;
    reader.fail(std::string("expected on/off for ") + what + ", got '" + value + "'");
    return false;
}

std::int64_t to_integer(const detail::LineReader& reader, double v, const char* what) {
    const double r = std::round(v);
    if (std::abs(v - r) > 1e-9 || std::abs(r) > 9.0e15)
        reader.fail(std::string(what) + " must be an integer");
    return static_cast<std::int64_t>(r);
}

const char* pipeline_name(PipelineKind kind) {
    switch (kind) {
        case PipelineKind::kTwoBlock: return "two-block";
        case PipelineKind::kMultiBlock: return "multi-block";
        case PipelineKind::kCensor: return "censor";
        case PipelineKind::kNormBounds: return "norm-bounds";
    }
    return "?";
}

bool is_model_key(const std::string& key) {
    return key == "n" || key == "a" || key == "b" || key == "k" || key == "p" || key == "epsilon";
}

void apply_model_value(ComboSpec& combo, const std::string& key, double value,
                       const detail::LineReader& reader) {
    if (key == "n") {
        combo.n = to_integer(reader, value, "n");
    } else if (key == "a") {
        combo.a = value;
    } else if (key == "b") {
        combo.b = value;
    } else if (key == "k") {
        combo.k = static_cast<int>(to_integer(reader, value, "k"));
    } else if (key == "p") {
        combo.p = value;
    } else {
        combo.epsilon = value;
    }
}

}  // namespace

ExperimentConfig parse_experiment_config(std::istream& in) {
    ExperimentConfig cfg;
    detail::LineReader reader(in);
    std::string line, section;
    bool pipeline_seen = false;
    while (reader.next(line)) {
        // Strip comments and surrounding whitespace.
        const std::size_t hash = line.find_first_of("#;");
        if (hash != std::string::npos) line.resize(hash);
        std::size_t begin = line.find_first_not_of(" \t");
        if (begin == std::string::npos) continue;
        std::size_t end = line.find_last_not_of(" \t");
        line = line.substr(begin, end - begin + 1);

        if (line.front() == '[') {
            if (line.back() != ']') reader.fail("unterminated section header");
            section = line.substr(1, line.size() - 2);
            if (section != "experiment" && section != "model" && section != "overrides" &&
                section != "grid")
                reader.fail("unknown section [" + section + "]");
            continue;
        }
        const std::size_t eq = line.find('=');
        if (eq == std::string::npos) reader.fail("expected 'key = value'");
        auto trim = [](std::string s) {
            const std::size_t b = s.find_first_not_of(" \t");
            if (b == std::string::npos) return std::string();
            const std::size_t e = s.find_last_not_of(" \t");
            return s.substr(b, e - b + 1);
        };
        const std::string key = trim(line.substr(0, eq));
        const std::string value = trim(line.substr(eq + 1));
        if (key.empty() || value.empty()) reader.fail("expected 'key = value'");
        if (section.empty()) reader.fail("key outside any section");

        if (section == "experiment") {
            if (key == "pipeline") {
                pipeline_seen = true;
                if (value == "two-block") {
                    cfg.pipeline = PipelineKind::kTwoBlock;
                } else if (value == "multi-block") {
                    cfg.pipeline = PipelineKind::kMultiBlock;
                } else if (value == "censor") {
                    cfg.pipeline = PipelineKind::kCensor;
                } else if (value == "norm-bounds") {
                    cfg.pipeline = PipelineKind::kNormBounds;
                } else {
                    reader.fail("unknown pipeline '" + value + "'");
                }
            } else if (key == "trials") {
                cfg.trials = static_cast<int>(
                    to_integer(reader, parse_double_field(reader, value, "trials"), "trials"));
                if (cfg.trials < 1) reader.fail("trials must be positive");
            } else if (key == "seed") {
                const std::int64_t s =
                    to_integer(reader, parse_double_field(reader, value, "seed"), "seed");
                if (s < 0) reader.fail("seed must be non-negative");
                cfg.seed = static_cast<std::uint64_t>(s);
            } else if (key == "threads") {
                cfg.threads = static_cast<int>(
                    to_integer(reader, parse_double_field(reader, value, "threads"), "threads"));
                if (cfg.threads < 0) reader.fail("threads must be non-negative");
            } else if (key == "timing") {
                cfg.timing = parse_bool_field(reader, value, "timing");
            } else if (key == "heatmap_bins") {
                cfg.heatmap_bins = static_cast<int>(to_integer(
                    reader, parse_double_field(reader, value, "heatmap_bins"), "heatmap_bins"));
                if (cfg.heatmap_bins < 0) reader.fail("heatmap_bins must be non-negative");
            } else if (key == "save_clusterings") {
                cfg.save_clusterings = parse_bool_field(reader, value, "save_clusterings");
            } else if (key == "gamma_threshold") {
                cfg.gamma_threshold = parse_double_field(reader, value, "gamma_threshold");
            } else if (key == "output_dir") {
                cfg.output_dir = value;
            } else if (key == "report_name") {
                cfg.report_name = value;
            } else {
                reader.fail("unknown key '" + key + "' in [experiment]");
            }
        } else if (section == "model") {
            if (!is_model_key(key)) reader.fail("unknown key '" + key + "' in [model]");
            ComboSpec tmp{cfg.n, cfg.a, cfg.b, cfg.k, cfg.p, cfg.epsilon};
            apply_model_value(tmp, key, parse_double_field(reader, value, key.c_str()), reader);
            cfg.n = tmp.n;
            cfg.a = tmp.a;
            cfg.b = tmp.b;
            cfg.k = tmp.k;
            cfg.p = tmp.p;
            cfg.epsilon = tmp.epsilon;
        } else if (section == "overrides") {
            if (key == "trim_factor") {
                cfg.trim_factor = parse_double_field(reader, value, key.c_str());
            } else if (key == "correction_threshold") {
                cfg.correction_threshold = parse_double_field(reader, value, key.c_str());
            } else if (key == "iterate_correction") {
                cfg.iterate_correction = parse_bool_field(reader, value, key.c_str());
            } else if (key == "num_columns") {
                cfg.num_columns = static_cast<int>(
                    to_integer(reader, parse_double_field(reader, value, key.c_str()), key.c_str()));
            } else if (key == "set_size") {
                cfg.set_size =
                    to_integer(reader, parse_double_field(reader, value, key.c_str()), key.c_str());
            } else if (key == "overlap_limit") {
                cfg.overlap_limit =
                    to_integer(reader, parse_double_field(reader, value, key.c_str()), key.c_str());
            } else if (key == "merge_threshold") {
                cfg.merge_threshold = parse_double_field(reader, value, key.c_str());
            } else if (key == "eig_tol") {
                cfg.eig_tol = parse_double_field(reader, value, key.c_str());
            } else if (key == "eig_max_iterations") {
                cfg.eig_max_iterations = static_cast<int>(
                    to_integer(reader, parse_double_field(reader, value, key.c_str()), key.c_str()));
            } else if (key == "censor_trim_mode") {
                if (value != "carrier" && value != "observation")
                    reader.fail("censor_trim_mode must be carrier or observation");
                cfg.censor_trim_mode = value;
            } else {
                reader.fail("unknown key '" + key + "' in [overrides]");
            }
        } else {  // grid
            if (!is_model_key(key)) reader.fail("grid keys must be model keys, got '" + key + "'");
            ExperimentConfig::GridEntry entry;
            entry.key = key;
            std::size_t pos = 0;
            while (pos <= value.size()) {
                std::size_t comma = value.find(',', pos);
                if (comma == std::string::npos) comma = value.size();
                const std::string item = trim(value.substr(pos, comma - pos));
                if (item.empty()) reader.fail("empty grid value for '" + key + "'");
                entry.values.push_back(parse_double_field(reader, item, key.c_str()));
                pos = comma + 1;
            }
            for (const auto& existing : cfg.grid)
                if (existing.key == key) reader.fail("duplicate grid key '" + key + "'");
            cfg.grid.push_back(std::move(entry));
        }
    }
    if (!pipeline_seen) throw ConfigError("config: missing required key 'pipeline'");
    return cfg;
}

namespace {

std::vector<ComboSpec> expand_combos(const ExperimentConfig& cfg) {
    const ComboSpec base{cfg.n, cfg.a, cfg.b, cfg.k, cfg.p, cfg.epsilon};
    if (cfg.grid.empty()) return {base};
    std::vector<std::size_t> idx(cfg.grid.size(), 0);
    std::vector<ComboSpec> combos;
    for (;;) {
        ComboSpec combo = base;
        for (std::size_t g = 0; g < cfg.grid.size(); ++g) {
            const auto& entry = cfg.grid[g];
            const double value = entry.values[idx[g]];
            // Re-validate integrality outside the parser context.
            if ((entry.key == "n" || entry.key == "k") &&
                std::abs(value - std::round(value)) > 1e-9)
                throw ConfigError("grid: " + entry.key + " must be integer");
            if (entry.key == "n") {
                combo.n = static_cast<std::int64_t>(std::llround(value));
            } else if (entry.key == "a") {
                combo.a = value;
            } else if (entry.key == "b") {
                combo.b = value;
            } else if (entry.key == "k") {
                combo.k = static_cast<int>(std::llround(value));
            } else if (entry.key == "p") {
                combo.p = value;
            } else {
                combo.epsilon = value;
            }
        }
        combos.push_back(combo);
        // Odometer: last grid entry advances fastest (first entry outermost).
        std::size_t g = cfg.grid.size();
        for (;;) {
            if (g == 0) return combos;
            --g;
            if (++idx[g] < cfg.grid[g].values.size()) break;
            idx[g] = 0;
        }
    }
}

/// Reject invalid model parameters before any trial starts, so a bad config
/// fails as a configuration error instead of producing per-trial failures.
void validate_combo(PipelineKind pipeline, const ComboSpec& s, std::size_t index) {
    const std::string where = "config: combo " + std::to_string(index) + ": ";
    try {
        switch (pipeline) {
            case PipelineKind::kTwoBlock:
                (void)SbmParams::two_block(s.n, s.a, s.b);
                break;
            case PipelineKind::kMultiBlock:
                (void)SbmParams::k_block(s.n, s.k, s.a, s.b);
                break;
            case PipelineKind::kCensor:
                if (s.n < 1) throw ConfigError("n must be positive");
                if (!(s.p > 0.0) || s.p > 1.0) throw ConfigError("p must be in (0, 1]");
                if (s.epsilon < 0.0 || s.epsilon >= 0.5)
                    throw ConfigError("epsilon must be in [0, 0.5)");
                break;
            case PipelineKind::kNormBounds:
                if (s.n < 1) throw ConfigError("n must be positive");
                if (!(s.b > 0.0) || s.a < s.b) throw ConfigError("need a >= b > 0");
                if (s.a > static_cast<double>(s.n)) throw ConfigError("need a <= n");
                break;
        }
    } catch (const ConfigError& e) {
        throw ConfigError(where + e.what());
    }
}

struct ArtifactContext {
    std::string dir;  // empty = no artifacts
    int heatmap_bins = 0;
    bool save_clusterings = false;
};

void write_artifacts(const ArtifactContext& ctx, const Graph& g, const Clustering& c, int combo,
                     int index) {
    namespace fs = std::filesystem;
    if (ctx.save_clusterings) {
        std::ofstream out(fs::path(ctx.dir) /
                          ("clustering_c" + std::to_string(combo) + "_t" + std::to_string(index) +
                           ".txt"));
        c.save(out);
    }
    if (ctx.heatmap_bins > 0) {
        std::ofstream out(fs::path(ctx.dir) /
                          ("heatmap_c" + std::to_string(combo) + "_t" + std::to_string(index) +
                           ".pgm"));
        density_heatmap(g, c, ctx.heatmap_bins).write_pgm(out);
    }
}

TrialResult run_one(const ExperimentConfig& cfg, const ComboSpec& combo, int combo_idx, int index,
                    const ArtifactContext& artifacts) {
    TrialResult r;
    r.combo = combo_idx;
    r.index = index;
    r.seed = cfg.seed + static_cast<std::uint64_t>(index);
    const auto t0 = std::chrono::steady_clock::now();
    try {
        EigenOptions eig;
        if (cfg.eig_tol) eig.tol = *cfg.eig_tol;
        if (cfg.eig_max_iterations) eig.max_iterations = *cfg.eig_max_iterations;

        switch (cfg.pipeline) {
            case PipelineKind::kTwoBlock: {
                const SbmParams params = SbmParams::two_block(combo.n, combo.a, combo.b);
                const Graph g = sample_sbm(params, r.seed);
                TwoBlockConfig pipe = TwoBlockConfig::half_graph(combo.a, combo.b);
                pipe.eig = eig;
                if (cfg.trim_factor) pipe.trim_factor = *cfg.trim_factor;
                if (cfg.correction_threshold) pipe.correction_threshold = *cfg.correction_threshold;
                if (cfg.iterate_correction) pipe.iterate_correction = *cfg.iterate_correction;
                const Clustering c = partition_two(g, r.seed, pipe);
                r.gamma = gamma_correctness(c, truth_clustering(params)).gamma;
                r.bound = gamma_bound_two(combo.a, combo.b);
                if (!artifacts.dir.empty()) write_artifacts(artifacts, g, c, combo_idx, index);
                break;
            }
            case PipelineKind::kMultiBlock: {
                const SbmParams params = SbmParams::k_block(combo.n, combo.k, combo.a, combo.b);
                const Graph g = sample_sbm(params, r.seed);
                MultiBlockConfig pipe = MultiBlockConfig::defaults(combo.n, combo.k, combo.a, combo.b);
                pipe.eig = eig;
                if (cfg.trim_factor) pipe.trim_factor = *cfg.trim_factor;
                if (cfg.num_columns) pipe.num_columns = *cfg.num_columns;
                if (cfg.set_size) pipe.set_size = *cfg.set_size;
                if (cfg.overlap_limit) pipe.overlap_limit = *cfg.overlap_limit;
                if (cfg.merge_threshold) pipe.merge_threshold = *cfg.merge_threshold;
                const Clustering c = partition_multi(g, r.seed, pipe);
                r.gamma = gamma_correctness(c, truth_clustering(params)).gamma;
                r.bound = gamma_bound_multi(combo.a, combo.b, combo.k).overall;
                if (!artifacts.dir.empty()) write_artifacts(artifacts, g, c, combo_idx, index);
                break;
            }
            case PipelineKind::kCensor: {
                const CensorInstance inst = sample_censor(combo.n, combo.p, combo.epsilon, r.seed);
                CensorConfig pipe = CensorConfig::defaults(combo.p);
                pipe.eig = eig;
                if (cfg.trim_factor) pipe.trim_factor = *cfg.trim_factor;
                if (cfg.censor_trim_mode)
                    pipe.trim_mode = *cfg.censor_trim_mode == "carrier"
                                         ? CensorTrimMode::kCarrierDegree
                                         : CensorTrimMode::kObservationDegree;
                const Clustering c = spectral_partition_censor(inst.graph, inst.edge_labels, pipe);
                r.gamma = gamma_correctness(c, inst.truth()).gamma;
                r.bound = 1.0;
                if (!artifacts.dir.empty())
                    write_artifacts(artifacts, inst.graph, c, combo_idx, index);
                break;
            }
            case PipelineKind::kNormBounds: {
                NormOptions opts;
                opts.eig = eig;
                if (cfg.trim_factor) opts.trim_factor = *cfg.trim_factor;
                r.norm = norm_bounds_trial(combo.n, combo.a, combo.b, r.seed, opts);
                break;
            }
        }
        r.ok = true;
    } catch (const Error& e) {
        r.error = e.what();
    } catch (const std::exception& e) {
        r.error = std::string("unexpected: ") + e.what();
    }
    r.millis = std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - t0).count();
    return r;
}

ExperimentReport run_impl(const ExperimentConfig& cfg, const ArtifactContext& artifacts) {
    ExperimentReport report;
    report.config = cfg;
    report.combos = expand_combos(cfg);
    for (std::size_t c = 0; c < report.combos.size(); ++c)
        validate_combo(cfg.pipeline, report.combos[c], c);

    const std::size_t total = report.combos.size() * static_cast<std::size_t>(cfg.trials);
    report.results.resize(total);
    std::atomic<std::size_t> next{0};
    int nthreads = cfg.threads > 0 ? cfg.threads
                                   : static_cast<int>(std::thread::hardware_concurrency());
    nthreads = std::max(1, std::min<int>(nthreads, static_cast<int>(total)));

    auto worker = [&]() {
        for (;;) {
            const std::size_t task = next.fetch_add(1);
            if (task >= total) return;
            const int combo_idx = static_cast<int>(task / static_cast<std::size_t>(cfg.trials));
            const int index = static_cast<int>(task % static_cast<std::size_t>(cfg.trials));
            report.results[task] =
                run_one(cfg, report.combos[static_cast<std::size_t>(combo_idx)], combo_idx, index,
                        artifacts);
        }
    };
    std::vector<std::thread> pool;
    pool.reserve(static_cast<std::size_t>(nthreads));
    for (int t = 0; t < nthreads; ++t) pool.emplace_back(worker);
    for (auto& th : pool) th.join();
    return report;
}

}  // namespace

ExperimentReport run_experiment(const ExperimentConfig& cfg) {
    return run_impl(cfg, ArtifactContext{});
}

ExperimentReport run_experiment_to_files(const ExperimentConfig& cfg) {
    namespace fs = std::filesystem;
    fs::create_directories(cfg.output_dir);
    ArtifactContext ctx;
    if (cfg.heatmap_bins > 0 || cfg.save_clusterings) {
        ctx.dir = cfg.output_dir;
        ctx.heatmap_bins = cfg.heatmap_bins;
        ctx.save_clusterings = cfg.save_clusterings;
    }
    ExperimentReport report = run_impl(cfg, ctx);
    std::ofstream out(fs::path(cfg.output_dir) / cfg.report_name);
    if (!out) throw ConfigError("experiment: cannot write report to " + cfg.output_dir);
    report.write(out);
    return report;
}

void ExperimentReport::write(std::ostream& out) const {
    const bool gamma_pipeline = config.pipeline != PipelineKind::kNormBounds;
    const bool has_bound = config.pipeline == PipelineKind::kTwoBlock ||
                           config.pipeline == PipelineKind::kMultiBlock;

    out << "# experiment report\n";
    out << "pipeline " << pipeline_name(config.pipeline) << '\n';
    out << "trials " << config.trials << '\n';
    out << "seed " << config.seed << '\n';
    out << "gamma_threshold " << fmt(config.gamma_threshold) << '\n';
    out << "model n=" << config.n << " a=" << fmt(config.a) << " b=" << fmt(config.b)
        << " k=" << config.k << " p=" << fmt(config.p) << " epsilon=" << fmt(config.epsilon)
        << '\n';
    if (config.trim_factor) out << "override trim_factor=" << fmt(*config.trim_factor) << '\n';
    if (config.correction_threshold)
        out << "override correction_threshold=" << fmt(*config.correction_threshold) << '\n';
    if (config.iterate_correction)
        out << "override iterate_correction=" << (*config.iterate_correction ? "on" : "off") << '\n';
    if (config.num_columns) out << "override num_columns=" << *config.num_columns << '\n';
    if (config.set_size) out << "override set_size=" << *config.set_size << '\n';
    if (config.overlap_limit) out << "override overlap_limit=" << *config.overlap_limit << '\n';
    if (config.merge_threshold)
        out << "override merge_threshold=" << fmt(*config.merge_threshold) << '\n';
    if (config.eig_tol) out << "override eig_tol=" << fmt(*config.eig_tol) << '\n';
    if (config.eig_max_iterations)
        out << "override eig_max_iterations=" << *config.eig_max_iterations << '\n';
    if (config.censor_trim_mode) out << "override censor_trim_mode=" << *config.censor_trim_mode << '\n';
    out << "combos " << combos.size() << '\n';
    for (std::size_t c = 0; c < combos.size(); ++c) {
        const ComboSpec& s = combos[c];
        out << "combo " << c << " n=" << s.n << " a=" << fmt(s.a) << " b=" << fmt(s.b)
            << " k=" << s.k << " p=" << fmt(s.p) << " epsilon=" << fmt(s.epsilon) << '\n';
    }

    for (std::size_t c = 0; c < combos.size(); ++c) {
        std::int64_t ok = 0, error = 0, within = 0;
        double gamma_sum = 0.0, gamma_min = std::numeric_limits<double>::infinity(),
               gamma_max = -std::numeric_limits<double>::infinity();
        double delta_max = 0.0, ratio_max = 0.0,
               slack_min = std::numeric_limits<double>::infinity();
        for (int t = 0; t < config.trials; ++t) {
            const TrialResult& r =
                results[c * static_cast<std::size_t>(config.trials) + static_cast<std::size_t>(t)];
            out << "trial combo=" << r.combo << " index=" << r.index << " seed=" << r.seed;
            if (r.ok) {
                out << " status=ok";
                if (gamma_pipeline) {
                    out << " gamma=" << fmt(r.gamma);
                    if (has_bound) out << " bound=" << fmt(r.bound);
                    ++ok;
                    gamma_sum += r.gamma;
                    gamma_min = std::min(gamma_min, r.gamma);
                    gamma_max = std::max(gamma_max, r.gamma);
                    if (r.gamma <= config.gamma_threshold) ++within;
                } else {
                    out << " trimmed=" << r.norm.trimmed_count << " delta=" << fmt(r.norm.delta_norm)
                        << " e_ratio=" << fmt(r.norm.e_ratio) << " sin=" << fmt(r.norm.sin_angle)
                        << " slack=" << fmt(r.norm.dk_slack);
                    ++ok;
                    delta_max = std::max(delta_max, r.norm.delta_norm);
                    ratio_max = std::max(ratio_max, r.norm.e_ratio);
                    slack_min = std::min(slack_min, r.norm.dk_slack);
                }
            } else {
                out << " status=error message=" << r.error;
                ++error;
            }
            if (config.timing) out << " time_ms=" << fmt(r.millis);
            out << '\n';
        }
        out << "summary combo=" << c << " ok=" << ok << " error=" << error;
        if (gamma_pipeline) {
            out << " gamma_mean=" << (ok > 0 ? fmt(gamma_sum / static_cast<double>(ok)) : "na")
                << " gamma_min=" << (ok > 0 ? fmt(gamma_min) : "na")
                << " gamma_max=" << (ok > 0 ? fmt(gamma_max) : "na") << " within_threshold=" << within;
        } else {
            out << " delta_max=" << (ok > 0 ? fmt(delta_max) : "na")
                << " e_ratio_max=" << (ok > 0 ? fmt(ratio_max) : "na")
                << " slack_min=" << (ok > 0 ? fmt(slack_min) : "na");
        }
        out << '\n';
    }
    out << "end\n";
}

}  // namespace specbm
