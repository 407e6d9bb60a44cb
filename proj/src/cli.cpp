#include "specbm/cli.hpp"

#include <algorithm>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <optional>

#include "CLI11.hpp"
#include "specbm/censor.hpp"
#include "specbm/clustering.hpp"
#include "specbm/errors.hpp"
#include "specbm/experiment.hpp"
#include "specbm/gamma.hpp"
#include "specbm/graph.hpp"
#include "specbm/heatmap.hpp"
#include "specbm/multiblock.hpp"
#include "specbm/sampling.hpp"
#include "specbm/twoblock.hpp"

namespace specbm {

namespace {

std::ifstream open_input(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ConfigError("cannot open " + path + " for reading");
    return in;
}

std::ofstream open_output(const std::string& path) {
    std::ofstream out(path);
    if (!out) throw ConfigError("cannot open " + path + " for writing");
    return out;
}

Graph load_graph_file(const std::string& path) {
    std::ifstream in = open_input(path);
    return Graph::load(in);
}

Clustering load_clustering_file(const std::string& path) {
    std::ifstream in = open_input(path);
    return Clustering::load(in);
}

std::string fmt(double v) {
    char buf[48];
    std::snprintf(buf, sizeof buf, "%.10g", v);
    return buf;
}

}  // namespace

int run_cli(std::vector<std::string> args) {
    CLI::App app{"Spectral partitioning of sparse block-structured graphs"};
    app.require_subcommand(1);

    // ---- generate ----------------------------------------------------------
    struct {
        std::string model;
        std::int64_t n = 0;
        double a = 0.0, b = 0.0, p = 0.0, epsilon = 0.0;
        int k = 2;
        std::uint64_t seed = 1;
        std::string out, truth_out;
    } gen;
    auto* generate = app.add_subcommand("generate", "Sample a planted instance");
    generate->add_option("--model", gen.model, "two | multi | censor")
        ->required()
        ->check(CLI::IsMember({"two", "multi", "censor"}));
    generate->add_option("--n", gen.n, "vertices per side (two, censor) or total (multi)")
        ->required();
    auto* gen_a = generate->add_option("--a", gen.a, "within-block rate");
    auto* gen_b = generate->add_option("--b", gen.b, "between-block rate");
    auto* gen_k = generate->add_option("--k", gen.k, "number of blocks (multi)");
    auto* gen_p = generate->add_option("--p", gen.p, "edge probability (censor)");
    generate->add_option("--epsilon", gen.epsilon, "label noise rate (censor)");
    generate->add_option("--seed", gen.seed, "random seed");
    generate->add_option("--out", gen.out, "output instance file")->required();
    generate->add_option("--truth-out", gen.truth_out, "write the planted clustering here");
    generate->callback([&] {
        std::ofstream out = open_output(gen.out);
        Clustering truth{{}, 1, {}};
        if (gen.model == "censor") {
            if (!*gen_p) throw ConfigError("generate: --p is required for --model censor");
            const CensorInstance inst = sample_censor(gen.n, gen.p, gen.epsilon, gen.seed);
            save_censor(out, inst.graph, inst.edge_labels);
            truth = inst.truth();
        } else {
            if (!*gen_a || !*gen_b)
                throw ConfigError("generate: --a and --b are required for this model");
            const SbmParams params = gen.model == "two"
                                         ? SbmParams::two_block(gen.n, gen.a, gen.b)
                                         : SbmParams::k_block(gen.n, *gen_k ? gen.k : 2, gen.a, gen.b);
            if (gen.model == "two" && *gen_k)
                throw ConfigError("generate: --k applies only to --model multi");
            sample_sbm(params, gen.seed).save(out);
            truth = truth_clustering(params);
        }
        if (!gen.truth_out.empty()) {
            std::ofstream tout = open_output(gen.truth_out);
            truth.save(tout);
        }
    });

    // ---- partition2 --------------------------------------------------------
    struct {
        std::string in, out;
        double a = 0.0, b = 0.0;
        std::uint64_t seed = 1;
        std::optional<double> trim_factor;
        bool iterate = false;
    } p2;
    auto* partition2 = app.add_subcommand("partition2", "Two-class spectral partition");
    partition2->add_option("--in", p2.in, "graph file")->required();
    partition2->add_option("--a", p2.a, "within-block rate")->required();
    partition2->add_option("--b", p2.b, "between-block rate")->required();
    partition2->add_option("--seed", p2.seed, "random seed");
    partition2->add_option("--trim-factor", p2.trim_factor, "degree-trim multiplier");
    partition2->add_flag("--iterate-correction", p2.iterate,
                         "repeat the correction step until it stabilizes");
    partition2->add_option("--out", p2.out, "clustering output file")->required();
    partition2->callback([&] {
        const Graph g = load_graph_file(p2.in);
        TwoBlockConfig cfg = TwoBlockConfig::half_graph(p2.a, p2.b);
        if (p2.trim_factor) cfg.trim_factor = *p2.trim_factor;
        cfg.iterate_correction = p2.iterate;
        const Clustering c = partition_two(g, p2.seed, cfg);
        std::ofstream out = open_output(p2.out);
        c.save(out);
    });

    // ---- partitionk --------------------------------------------------------
    struct {
        std::string in, out;
        double a = 0.0, b = 0.0;
        int k = 0;
        std::uint64_t seed = 1;
        std::optional<double> trim_factor, merge_threshold;
        std::optional<int> num_columns;
        std::optional<std::int64_t> set_size, overlap_limit;
    } pk;
    auto* partitionk = app.add_subcommand("partitionk", "k-class spectral partition");
    partitionk->add_option("--in", pk.in, "graph file")->required();
    partitionk->add_option("--k", pk.k, "number of classes")->required();
    partitionk->add_option("--a", pk.a, "within-block rate")->required();
    partitionk->add_option("--b", pk.b, "between-block rate")->required();
    partitionk->add_option("--seed", pk.seed, "random seed");
    partitionk->add_option("--trim-factor", pk.trim_factor, "degree-trim multiplier");
    partitionk->add_option("--num-columns", pk.num_columns, "projected columns per trial");
    partitionk->add_option("--set-size", pk.set_size, "candidate set size");
    partitionk->add_option("--overlap-limit", pk.overlap_limit,
                           "max overlap between selected sets");
    partitionk->add_option("--merge-threshold", pk.merge_threshold,
                           "neighbor count needed to adopt a class");
    partitionk->add_option("--out", pk.out, "clustering output file")->required();
    partitionk->callback([&] {
        const Graph g = load_graph_file(pk.in);
        MultiBlockConfig cfg = MultiBlockConfig::defaults(g.num_vertices(), pk.k, pk.a, pk.b);
        if (pk.trim_factor) cfg.trim_factor = *pk.trim_factor;
        if (pk.num_columns) cfg.num_columns = *pk.num_columns;
        if (pk.set_size) cfg.set_size = *pk.set_size;
        if (pk.overlap_limit) cfg.overlap_limit = *pk.overlap_limit;
        if (pk.merge_threshold) cfg.merge_threshold = *pk.merge_threshold;
        const Clustering c = partition_multi(g, pk.seed, cfg);
        std::ofstream out = open_output(pk.out);
        c.save(out);
    });

    // ---- censor ------------------------------------------------------------
    struct {
        std::string in, out, trim_mode;
        double p = 0.0;
        std::optional<double> trim_factor;
    } cz;
    auto* censor = app.add_subcommand("censor", "Two-class partition from censored edge labels");
    censor->add_option("--in", cz.in, "censored instance file")->required();
    censor->add_option("--p", cz.p, "edge probability of the carrier graph")->required();
    censor->add_option("--trim-factor", cz.trim_factor, "degree-trim multiplier");
    censor->add_option("--trim-mode", cz.trim_mode, "carrier | observation")
        ->check(CLI::IsMember({"carrier", "observation"}));
    censor->add_option("--out", cz.out, "clustering output file")->required();
    censor->callback([&] {
        std::ifstream in = open_input(cz.in);
        const CensorFile f = load_censor(in);
        CensorConfig cfg = CensorConfig::defaults(cz.p);
        if (cz.trim_factor) cfg.trim_factor = *cz.trim_factor;
        if (cz.trim_mode == "observation") cfg.trim_mode = CensorTrimMode::kObservationDegree;
        if (cz.trim_mode == "carrier") cfg.trim_mode = CensorTrimMode::kCarrierDegree;
        const Clustering c = spectral_partition_censor(f.graph, f.edge_labels, cfg);
        std::ofstream out = open_output(cz.out);
        c.save(out);
    });

    // ---- eval --------------------------------------------------------------
    struct {
        std::string pred, truth;
    } ev;
    auto* eval = app.add_subcommand("eval", "Score a clustering against ground truth");
    eval->add_option("--pred", ev.pred, "predicted clustering file")->required();
    eval->add_option("--truth", ev.truth, "ground-truth clustering file")->required();
    eval->callback([&] {
        const Clustering pred = load_clustering_file(ev.pred);
        const Clustering truth = load_clustering_file(ev.truth);
        const GammaReport r = gamma_correctness(pred, truth);
        const std::vector<std::int64_t> sizes = truth.class_sizes();
        std::cout << "gamma " << fmt(r.gamma) << '\n';
        std::cout << "misclassified " << fmt(r.total_misclassified) << '\n';
        for (std::size_t t = 0; t < r.matching.size(); ++t)
            std::cout << "block " << t << " class=" << r.matching[t]
                      << " overlap=" << r.block_overlap[t] << " size=" << sizes[t] << '\n';
    });

    // ---- heatmap -----------------------------------------------------------
    struct {
        std::string in, clustering, out;
        int bins = 0;
    } hm;
    auto* heatmap = app.add_subcommand("heatmap", "Block-structure image of a clustered graph");
    heatmap->add_option("--in", hm.in, "graph file")->required();
    heatmap->add_option("--clustering", hm.clustering, "clustering file")->required();
    heatmap->add_option("--bins", hm.bins, "image side length in cells")->required();
    heatmap->add_option("--out", hm.out, "PGM output file")->required();
    heatmap->callback([&] {
        const Graph g = load_graph_file(hm.in);
        const Clustering c = load_clustering_file(hm.clustering);
        const Heatmap h = density_heatmap(g, c, hm.bins);
        std::ofstream out = open_output(hm.out);
        h.write_pgm(out);
    });

    // ---- experiment --------------------------------------------------------
    struct {
        std::string config, output_dir;
    } ex;
    auto* experiment = app.add_subcommand("experiment", "Run a configured batch of trials");
    experiment->add_option("--config", ex.config, "experiment config file")->required();
    experiment->add_option("--output-dir", ex.output_dir, "overrides output_dir from the config");
    experiment->callback([&] {
        std::ifstream in = open_input(ex.config);
        ExperimentConfig cfg = parse_experiment_config(in);
        if (!ex.output_dir.empty()) cfg.output_dir = ex.output_dir;
        run_experiment_to_files(cfg);
        std::cout << "wrote " << cfg.output_dir << "/" << cfg.report_name << '\n';
    });

    try {
        std::reverse(args.begin(), args.end());
        app.parse(args);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : 2;
    } catch (const ConfigError& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 2;
    } catch (const Error& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 1;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 1;
    }
    return 0;
}

}  // namespace specbm
