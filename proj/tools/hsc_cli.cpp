// Experiment harness: generation, solving, scoring, and Monte-Carlo sweeps.

#include <cstdio>
#include <fstream>
#include <iostream>
#include <sstream>

#include <CLI11.hpp>

#include "hsc/combinatorics.hpp"
#include "hsc/errors.hpp"
#include "hsc/experiment.hpp"
#include "hsc/io.hpp"
#include "hsc/metrics.hpp"
#include "hsc/rng.hpp"

namespace {

struct CommonFlags {
    std::uint64_t seed = 1;
    double c_thr = 0.0;
    double beta = 0.0;
    std::uint32_t restarts = 5;
    std::string eigen_mode = "assortative";
};

void add_common(CLI::App* cmd, CommonFlags& f) {
    cmd->add_option("--seed", f.seed, "Base seed");
    cmd->add_option("--c-thr", f.c_thr, "Trimming constant (0 = d-dependent default)");
    cmd->add_option("--beta", f.beta, "Edge-split rate (0 = log log n / log n)");
    cmd->add_option("--restarts", f.restarts, "k-means restarts");
    cmd->add_option("--eigen-mode", f.eigen_mode, "assortative | disassortative")
        ->check(CLI::IsMember({"assortative", "disassortative"}));
}

hsc::HsclrConfig to_alg_config(const CommonFlags& f, std::uint32_t k) {
    hsc::HsclrConfig cfg;
    cfg.hsc.k = k;
    cfg.hsc.c_thr = f.c_thr;
    cfg.hsc.restarts = f.restarts;
    cfg.hsc.eigen_mode = f.eigen_mode == "disassortative" ? hsc::EigenMode::Disassortative
                                                          : hsc::EigenMode::Assortative;
    cfg.beta = f.beta;
    return cfg;
}

double sub_budget_to_rate(const hsc::SubspaceParams& p, double budget) {
    if (budget <= 0.0) return hsc::default_sketch_rate(p);
    return std::min(1.0, budget / hsc::binom(p.n(), p.d));
}

std::ofstream open_out(const std::string& path) {
    std::ofstream out(path);
    if (!out) throw hsc::ParseError("cannot open output file: " + path);
    return out;
}

void write_file(const std::string& path, const std::string& content) {
    std::ofstream out = open_out(path);
    out << content;
}

int run(int argc, char** argv) {
    CLI::App app{"Hypergraph spectral clustering experiment harness"};
    app.require_subcommand(1);

    // generate: model -> edge-list + ground-truth partition files
    auto* gen = app.add_subcommand("generate", "Sample a model instance");
    std::string gen_model, gen_out;
    hsc::ExperimentConfig gcfg;
    std::uint64_t gen_seed = 1;
    double gen_alpha_scale = 0.0, gen_budget = 0.0;
    std::string weight_kind = "bernoulli";
    bool disassortative = false;
    gen->add_option("--model", gen_model, "sbm | cbm | clique | subspace")
        ->required()
        ->check(CLI::IsMember({"sbm", "cbm", "clique", "subspace"}));
    gen->add_option("--out", gen_out, "Output path prefix (.edges, .truth)")->required();
    gen->add_option("--seed", gen_seed, "Base seed");
    gen->add_option("--n", gcfg.sbm.n, "Node count");
    gen->add_option("--d", gcfg.sbm.d, "Edge size");
    gen->add_option("--k", gcfg.sbm.k, "Cluster count");
    gen->add_option("--p", gcfg.sbm.p, "Homogeneous mean parameter");
    gen->add_option("--q", gcfg.sbm.q, "Heterogeneous mean parameter");
    gen->add_option("--alpha", gcfg.sbm.alpha, "Sparsity / observation rate");
    gen->add_option("--alpha-scale", gen_alpha_scale,
                    "Set alpha via C(n,d) alpha = scale * n * log n");
    gen->add_option("--weight-kind", weight_kind, "bernoulli | uniform")
        ->check(CLI::IsMember({"bernoulli", "uniform"}));
    gen->add_flag("--disassortative", disassortative, "Heterogeneous edges are heavier");
    gen->add_option("--theta", gcfg.cbm.theta, "Censored-model corruption rate");
    gen->add_option("--s", gcfg.clique.s, "Planted clique size");
    gen->add_option("--sigma", gcfg.subspace.sigma, "Subspace noise std");
    gen->add_option("--m", gcfg.subspace.m, "Subspace dimension");
    gen->add_option("--ell", gcfg.subspace.ell, "Ambient dimension");
    gen->add_option("--points-per-cluster", gcfg.subspace.points_per_cluster,
                    "Points per subspace");
    gen->add_option("--budget", gen_budget, "Expected sketch size C(n,d) s_n");
    gen->add_option("--tau", gcfg.subspace.tau, "Fitting scale (0 = auto)");

    // solve subcommands: edge-list -> partition file
    struct SolveCmd {
        CLI::App* cmd;
        std::string in, out;
        std::uint32_t k = 2;
        CommonFlags flags;
    };
    SolveCmd solve_hsc, solve_hsclr, solve_cbm;
    const auto add_solver = [&](SolveCmd& s, const char* name, const char* desc, bool with_k) {
        s.cmd = app.add_subcommand(name, desc);
        s.cmd->add_option("input", s.in, "Edge-list file")->required();
        s.cmd->add_option("--out", s.out, "Partition output file")->required();
        if (with_k) s.cmd->add_option("--k", s.k, "Cluster count")->required();
        add_common(s.cmd, s.flags);
    };
    add_solver(solve_hsc, "hsc", "Spectral clustering", true);
    add_solver(solve_hsclr, "hsclr", "Spectral clustering with local refinement", true);
    add_solver(solve_cbm, "cbm-refine",
               "Spectral clustering with likelihood refinement (censored data, k = 2)", false);

    // score: two partitions -> one CSV line
    auto* score = app.add_subcommand("score", "Score an estimate against ground truth");
    std::string score_est, score_truth, score_out;
    score->add_option("estimate", score_est, "Estimated partition file")->required();
    score->add_option("truth", score_truth, "Ground-truth partition file")->required();
    score->add_option("--out", score_out, "Output file (default stdout)");

    // sweep: config file -> CSV
    auto* sweep = app.add_subcommand("sweep", "Run a Monte-Carlo sweep from a config file");
    std::string sweep_config, sweep_out;
    std::uint32_t sweep_jobs = 0;
    std::uint64_t sweep_seed = 0;
    bool sweep_seed_set = false;
    sweep->add_option("config", sweep_config, "INI config file")->required();
    sweep->add_option("--out", sweep_out, "CSV output file (default stdout)");
    sweep->add_option("--jobs", sweep_jobs, "Worker count override");
    sweep->add_option("--seed", sweep_seed, "Base seed override")
        ->each([&](const std::string&) { sweep_seed_set = true; });

    // subspace: end-to-end synthetic subspace-clustering trials
    auto* sub = app.add_subcommand("subspace", "Subspace-clustering sketch trials");
    hsc::ExperimentConfig scfg;
    scfg.model = hsc::Model::Subspace;
    scfg.subspace.k = 3;
    scfg.subspace.m = 3;
    scfg.subspace.ell = 50;
    scfg.subspace.points_per_cluster = 100;
    scfg.subspace.sigma = 0.05;
    scfg.subspace.d = 5;
    scfg.subspace.s_n = 0.0; // resolved to the default budget
    CommonFlags sub_flags;
    double sub_budget = 0.0;
    std::string sub_out;
    sub->add_option("--k", scfg.subspace.k, "Subspace count");
    sub->add_option("--m", scfg.subspace.m, "Subspace dimension");
    sub->add_option("--ell", scfg.subspace.ell, "Ambient dimension");
    sub->add_option("--points-per-cluster", scfg.subspace.points_per_cluster,
                    "Points per subspace");
    sub->add_option("--sigma", scfg.subspace.sigma, "Noise std");
    sub->add_option("--d", scfg.subspace.d, "Edge size");
    sub->add_option("--budget", sub_budget, "Expected sketch size C(n,d) s_n (0 = default)");
    sub->add_option("--tau", scfg.subspace.tau, "Fitting scale (0 = auto)");
    sub->add_option("--trials", scfg.trials, "Trials");
    sub->add_option("--jobs", scfg.jobs, "Worker count");
    sub->add_option("--out", sub_out, "CSV output file (default stdout)");
    add_common(sub, sub_flags);

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : 2;
    }

    if (gen->parsed()) {
        gcfg.cbm.n = gcfg.sbm.n;
        gcfg.cbm.d = gcfg.sbm.d;
        gcfg.clique.n = gcfg.sbm.n;
        gcfg.clique.d = gcfg.sbm.d;
        gcfg.cbm.alpha = gcfg.sbm.alpha;
        gcfg.sbm.weight_kind = weight_kind == "uniform" ? hsc::WeightKind::UniformMixture
                                                        : hsc::WeightKind::Bernoulli;
        gcfg.sbm.assortative = !disassortative;
        if (gen_alpha_scale > 0.0) {
            const double alpha = gen_alpha_scale * gcfg.sbm.n * std::log(gcfg.sbm.n) /
                                 hsc::binom(gcfg.sbm.n, gcfg.sbm.d);
            gcfg.sbm.alpha = alpha;
            gcfg.cbm.alpha = alpha;
        }
        auto [h, truth] = [&]() -> std::pair<hsc::WeightedHypergraph, hsc::Partition> {
            if (gen_model == "sbm") {
                gcfg.sbm.cluster_sizes =
                    hsc::balanced_partition(gcfg.sbm.n, gcfg.sbm.k).group_sizes();
                gcfg.sbm.validate();
                return hsc::sample_weighted_sbm(gcfg.sbm, gen_seed);
            }
            if (gen_model == "cbm") {
                gcfg.cbm.validate();
                hsc::Partition t = hsc::balanced_partition(gcfg.cbm.n, 2);
                return {hsc::sample_censored_bm(gcfg.cbm, t, gen_seed), std::move(t)};
            }
            if (gen_model == "clique") {
                return hsc::sample_planted_clique(gcfg.clique.n, gcfg.clique.d, gcfg.clique.s,
                                                  gen_seed);
            }
            if (gen->count("--d") > 0) gcfg.subspace.d = gcfg.sbm.d;
            if (gen->count("--k") > 0) gcfg.subspace.k = gcfg.sbm.k;
            gcfg.subspace.s_n = sub_budget_to_rate(gcfg.subspace, gen_budget);
            gcfg.subspace.validate();
            auto [cloud, t] = hsc::sample_subspace_points(gcfg.subspace, gen_seed);
            return {hsc::sketch_hypergraph(cloud, gcfg.subspace,
                                           hsc::hash_combine(gen_seed, 1)),
                    std::move(t)};
        }();
        write_file(gen_out + ".edges", hsc::serialize_hypergraph(h));
        std::ofstream tf = open_out(gen_out + ".truth");
        hsc::serialize_partition(truth, tf);
        return 0;
    }

    for (SolveCmd* s : {&solve_hsc, &solve_hsclr, &solve_cbm}) {
        if (!s->cmd->parsed()) continue;
        const hsc::WeightedHypergraph h = hsc::parse_hypergraph_file(s->in);
        const hsc::HsclrConfig cfg = to_alg_config(s->flags, s->k);
        hsc::PipelineResult res = [&] {
            if (s == &solve_hsc) return hsc::run_hsc(h, cfg.hsc, s->flags.seed);
            if (s == &solve_cbm) return hsc::run_hsclr_ml(h, cfg, s->flags.seed);
            const auto denom = h.has_erasures() ? hsc::RefineDenominator::ObservedOnly
                                                : hsc::RefineDenominator::AllCandidateEdges;
            return hsc::run_hsclr(h, cfg, s->flags.seed, denom);
        }();
        std::ofstream out = open_out(s->out);
        hsc::serialize_partition(res.partition, out);
        return 0;
    }

    if (score->parsed()) {
        const hsc::Partition est = hsc::parse_partition_file(score_est);
        const hsc::Partition truth = hsc::parse_partition_file(score_truth);
        const hsc::AlignmentResult a = hsc::error_fraction(est, truth);
        const double wce = hsc::worst_cluster_error(est, truth);
        char line[128];
        std::snprintf(line, sizeof(line), "%.17g,%.17g,%d\n", a.error_fraction, wce,
                      a.error_fraction == 0.0 ? 1 : 0);
        if (score_out.empty()) {
            std::cout << "error_fraction,worst_cluster_error,exact\n" << line;
        } else {
            std::ofstream out = open_out(score_out);
            out << "error_fraction,worst_cluster_error,exact\n" << line;
        }
        return 0;
    }

    const auto emit_sweep = [](const hsc::ExperimentConfig& cfg, const std::string& path) {
        const std::vector<hsc::TrialReport> rows = hsc::run_sweep(cfg);
        if (path.empty()) {
            hsc::write_reports_csv(std::cout, cfg, rows);
        } else {
            std::ofstream out = open_out(path);
            hsc::write_reports_csv(out, cfg, rows);
        }
    };

    if (sweep->parsed()) {
        std::ifstream in(sweep_config);
        if (!in) throw hsc::ParseError("cannot open config file: " + sweep_config);
        hsc::ExperimentConfig cfg = hsc::parse_experiment_config(in);
        if (sweep_jobs > 0) cfg.jobs = sweep_jobs;
        if (sweep_seed_set) cfg.base_seed = sweep_seed;
        emit_sweep(cfg, sweep_out);
        return 0;
    }

    if (sub->parsed()) {
        scfg.alg = to_alg_config(sub_flags, scfg.subspace.k);
        scfg.base_seed = sub_flags.seed;
        scfg.subspace.s_n = sub_budget_to_rate(scfg.subspace, sub_budget);
        emit_sweep(scfg, sub_out);
        return 0;
    }
    return 0;
}

} // namespace

int main(int argc, char** argv) {
    try {
        return run(argc, argv);
    } catch (const std::invalid_argument& e) {
        std::cerr << "config error: " << e.what() << "\n";
        return 2;
    } catch (const hsc::ParseError& e) {
        std::cerr << "config error: " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 3;
    }
}
