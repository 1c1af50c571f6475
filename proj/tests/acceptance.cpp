// Acceptance gate. Each invocation runs one named criterion and prints a
// single "[PASS] <name>" or "[FAIL] <name>" line; diagnostics go to stderr.
// Usage: acceptance <criterion> [--cli <path-to-hsc-tools>]

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdint>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <functional>
#include <iostream>
#include <map>
#include <numeric>
#include <sstream>
#include <string>
#include <vector>

#include <Eigen/Eigenvalues>

#include "hsc/combinatorics.hpp"
#include "hsc/experiment.hpp"
#include "hsc/generators.hpp"
#include "hsc/metrics.hpp"
#include "hsc/pipeline.hpp"
#include "hsc/rng.hpp"
#include "hsc/spectral.hpp"

namespace {

using namespace hsc;

// Pinned thresholds. The subspace bound is a pilot-calibrated fixture:
// twenty pilot trials of the same configuration landed near 0.09 mean
// error fraction, and 0.15 leaves margin for seed-to-seed variation.
constexpr double kSubspaceMeanErrorBound = 0.15;
constexpr double kOracleGridSeconds = 30.0;
constexpr double kStrongConsistencySeconds = 600.0;
constexpr double kCensoredSeconds = 600.0;
constexpr double kSubspaceSeconds = 900.0;

double now_s() {
    return std::chrono::duration<double>(
               std::chrono::steady_clock::now().time_since_epoch())
        .count();
}

struct Context {
    std::string cli; // path to the hsc-tools binary, for the CLI criterion
};

bool note(bool ok, const std::string& what) {
    if (!ok) std::cerr << "  failed: " << what << "\n";
    return ok;
}

// ---------------------------------------------------------------- oracle

SbmParams grid_params(std::uint32_t n, std::uint32_t d, std::uint32_t k) {
    SbmParams p;
    p.n = n;
    p.d = d;
    p.k = k;
    p.p = 0.9;
    p.q = 0.1;
    p.alpha = 1.0;
    p.cluster_sizes = balanced_partition(n, k).group_sizes();
    // Tilt the balanced split so the grid also covers unequal sizes.
    p.cluster_sizes.front() -= 1;
    p.cluster_sizes.back() += 1;
    return p;
}

bool oracle_exactness(const Context&) {
    const double t0 = now_s();
    bool ok = true;
    for (std::uint32_t n : {20u, 40u, 60u}) {
        for (std::uint32_t d : {2u, 3u}) {
            for (std::uint32_t k : {2u, 3u, 4u}) {
                const SbmParams params = grid_params(n, d, k);
                const auto [p, b] = expected_similarity(params);
                const Embedding emb = top_k_eigenvectors(p, k);
                const ClusterResult r = cluster_rows(emb.vectors, k, 8, 1);
                const double err =
                    error_fraction(r.partition, params.ground_truth()).error_fraction;
                ok &= note(err == 0.0, "nonzero error at n=" + std::to_string(n) +
                                           " d=" + std::to_string(d) +
                                           " k=" + std::to_string(k));
            }
        }
    }
    ok &= note(now_s() - t0 < kOracleGridSeconds, "oracle grid exceeded 30 s");
    return ok;
}

// ------------------------------------------------- strong consistency

struct PairedTrial {
    double hsc_err = 0.0;
    double hsclr_err = 0.0;
};

// n = 200, d = 3, k = 2 equal clusters, p = 0.9, q = 0.1; alpha set so
// (p-q)^2/p * C(n,d) alpha = 9 (n/n_min)^(d-1) / d * n log n.
std::vector<PairedTrial> strong_regime_trials(double alpha_factor) {
    SbmParams p;
    p.n = 200;
    p.d = 3;
    p.k = 2;
    p.cluster_sizes = {100, 100};
    p.p = 0.9;
    p.q = 0.1;
    const double snr = (p.p - p.q) * (p.p - p.q) / p.p;
    const double required =
        9.0 * std::pow(200.0 / 100.0, 2.0) / 3.0 * 200.0 * std::log(200.0) / snr;
    p.alpha = alpha_factor * required / binom(p.n, p.d);

    std::vector<PairedTrial> out;
    for (std::uint64_t t = 0; t < 20; ++t) {
        const std::uint64_t seed = hash_combine(0x5c0515, t);
        auto [h, truth] = sample_weighted_sbm(p, seed);
        HsclrConfig cfg;
        cfg.hsc.k = 2;
        PairedTrial r;
        // Starved instances can defeat the eigensolver outright; that is
        // a failed recovery, not an aborted criterion.
        try {
            r.hsclr_err =
                error_fraction(run_hsclr(h, cfg, seed).partition, truth).error_fraction;
            r.hsc_err =
                error_fraction(run_hsc(h, cfg.hsc, seed).partition, truth).error_fraction;
        } catch (const EigenNoConvergence&) {
            r.hsclr_err = 1.0;
            r.hsc_err = 1.0;
        }
        out.push_back(r);
    }
    return out;
}

bool strong_consistency(const Context&) {
    const double t0 = now_s();
    int exact_hi = 0, exact_lo = 0;
    for (const PairedTrial& r : strong_regime_trials(1.0)) exact_hi += r.hsclr_err == 0.0;
    for (const PairedTrial& r : strong_regime_trials(0.1)) exact_lo += r.hsclr_err == 0.0;
    bool ok = note(exact_hi >= 18, "above threshold: " + std::to_string(exact_hi) +
                                       "/20 exact, need >= 18");
    ok &= note(exact_lo <= 4,
               "below threshold: " + std::to_string(exact_lo) + "/20 exact, need <= 4");
    ok &= note(now_s() - t0 < kStrongConsistencySeconds, "runtime exceeded 10 min");
    return ok;
}

bool refinement_helps(const Context&) {
    const std::vector<PairedTrial> trials = strong_regime_trials(1.0);
    double mean_hsc = 0.0, mean_hsclr = 0.0;
    int improved = 0;
    for (const PairedTrial& r : trials) {
        mean_hsc += r.hsc_err;
        mean_hsclr += r.hsclr_err;
        improved += r.hsc_err - r.hsclr_err >= 0.0;
    }
    mean_hsc /= trials.size();
    mean_hsclr /= trials.size();
    bool ok = note(mean_hsclr <= mean_hsc,
                   "mean hsclr " + std::to_string(mean_hsclr) + " > mean hsc " +
                       std::to_string(mean_hsc));
    ok &= note(improved >= 16, "refinement non-worsening in only " +
                                   std::to_string(improved) + "/20 trials");
    return ok;
}

// ------------------------------------------------ weak consistency trend

bool weak_consistency_trend(const Context&) {
    const std::vector<std::uint32_t> ns = {100, 200, 400};
    std::vector<double> means, ses;
    for (std::uint32_t n : ns) {
        SbmParams p;
        p.n = n;
        p.d = 3;
        p.k = 2;
        p.cluster_sizes = balanced_partition(n, 2).group_sizes();
        // Moderate signal: with C(n,d) alpha = 20 n the error fraction sits
        // in the few-percent range and shrinks with n instead of pinning
        // to zero.
        p.p = 0.75;
        p.q = 0.25;
        p.alpha = 20.0 * n / binom(n, 3);
        std::vector<double> errs;
        for (std::uint64_t t = 0; t < 30; ++t) {
            const std::uint64_t seed = hash_combine(hash_combine(0x3ea1, n), t);
            auto [h, truth] = sample_weighted_sbm(p, seed);
            HscConfig cfg;
            cfg.k = 2;
            errs.push_back(
                error_fraction(run_hsc(h, cfg, seed).partition, truth).error_fraction);
        }
        const double mean = std::accumulate(errs.begin(), errs.end(), 0.0) / errs.size();
        double var = 0.0;
        for (double e : errs) var += (e - mean) * (e - mean);
        means.push_back(mean);
        ses.push_back(std::sqrt(var / (errs.size() - 1) / errs.size()));
    }
    std::cerr << "  means:";
    for (double m : means) std::cerr << ' ' << m;
    std::cerr << "\n";
    int inversions = 0;
    bool within_se = true;
    for (std::size_t i = 1; i < means.size(); ++i) {
        if (means[i] > means[i - 1]) {
            ++inversions;
            const double slack = std::sqrt(ses[i] * ses[i] + ses[i - 1] * ses[i - 1]);
            within_se &= means[i] - means[i - 1] <= slack;
        }
    }
    bool ok = note(inversions <= 1 && within_se, "trend not non-increasing");
    ok &= note(means.back() <= 0.15,
               "mean at n=400 is " + std::to_string(means.back()) + ", need <= 0.15");
    return ok;
}

// ---------------------------------------------------- concentration probe

bool concentration_probe(const Context&) {
    std::vector<double> means;
    for (std::uint32_t n : {60u, 120u, 240u}) {
        SbmParams p;
        p.n = n;
        p.d = 3;
        p.k = 2;
        p.cluster_sizes = balanced_partition(n, 2).group_sizes();
        p.p = 0.9;
        p.q = 0.1;
        p.alpha = 20.0 * n / binom(n, 3);
        const auto [expected, b] = expected_similarity(p);
        const double scale = std::sqrt(n * (n - 2.0) * p.alpha);
        double mean = 0.0;
        for (std::uint64_t t = 0; t < 10; ++t) {
            const std::uint64_t seed = hash_combine(hash_combine(0xc0c0, n), t);
            auto [h, truth] = sample_weighted_sbm(p, seed);
            const TrimResult trimmed = trim(similarity_matrix(h), default_c_thr(3));
            Eigen::MatrixXd diff = trimmed.matrix - expected;
            for (NodeId removed : trimmed.removed) {
                diff.row(removed - 1).setZero();
                diff.col(removed - 1).setZero();
            }
            // Dense reference norm: this is a measurement, not the solver
            // under test, and the noise spectrum is nearly symmetric.
            const Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(
                diff, Eigen::EigenvaluesOnly);
            mean += es.eigenvalues().cwiseAbs().maxCoeff() / scale;
        }
        means.push_back(mean / 10.0);
    }
    std::cerr << "  normalized norms:";
    for (double m : means) std::cerr << ' ' << m;
    std::cerr << "\n";
    return note(means.back() <= 1.1 * means.front(),
                "final mean " + std::to_string(means.back()) + " > 1.1 * initial " +
                    std::to_string(means.front()));
}

// --------------------------------------------------------- censored model

bool censored_model(const Context&) {
    const double t0 = now_s();
    CbmParams p;
    p.n = 300;
    p.d = 3;
    p.theta = 0.1;
    const double gap = std::sqrt(1.0 - p.theta) - std::sqrt(p.theta);
    const double limit =
        std::pow(2.0, p.d - 2.0) / p.d * p.n * std::log(p.n) / (gap * gap);
    const Partition truth = balanced_partition(p.n, 2);
    const auto exact_count = [&](double factor) {
        CbmParams scaled = p;
        scaled.alpha = factor * limit / binom(p.n, p.d);
        int exact = 0;
        for (std::uint64_t t = 0; t < 20; ++t) {
            const std::uint64_t seed = hash_combine(0xcb5d, t);
            const WeightedHypergraph h = sample_censored_bm(scaled, truth, seed);
            HsclrConfig cfg;
            cfg.hsc.k = 2;
            const PipelineResult r = run_hsclr_ml(h, cfg, seed);
            exact += error_fraction(r.partition, truth).error_fraction == 0.0;
        }
        return exact;
    };
    const int hi = exact_count(1.5);
    const int lo = exact_count(0.5);
    bool ok = note(hi >= 17,
                   "1.5x limit: " + std::to_string(hi) + "/20 exact, need >= 17");
    ok &= note(lo <= 3, "0.5x limit: " + std::to_string(lo) + "/20 exact, need <= 3");
    ok &= note(now_s() - t0 < kCensoredSeconds, "runtime exceeded 10 min");
    return ok;
}

// --------------------------------------------------------- planted clique

bool planted_clique(const Context&) {
    int detected = 0;
    for (std::uint64_t t = 0; t < 20; ++t) {
        const std::uint64_t seed = hash_combine(0xc11e, t);
        auto [h, truth] = sample_planted_clique(400, 3, 80, seed);
        HscConfig cfg;
        cfg.k = 2;
        const PipelineResult r = run_hsc(h, cfg, seed);
        detected += worst_cluster_error(r.partition, truth) <= 0.3;
    }
    return note(detected >= 16,
                "clique located in " + std::to_string(detected) + "/20 trials, need >= 16");
}

// ----------------------------------------------------------- metric oracle

Partition random_partition(Rng& rng, std::uint32_t n, std::uint32_t k) {
    Partition p;
    p.k = k;
    p.labels.resize(n);
    for (std::uint32_t i = 0; i < n; ++i) {
        p.labels[i] = i < k ? i + 1 : 1 + static_cast<std::uint32_t>(rng.next_below(k));
    }
    for (std::size_t i = n; i > 1; --i) {
        std::swap(p.labels[i - 1], p.labels[rng.next_below(i)]);
    }
    return p;
}

bool metric_oracle(const Context&) {
    Rng rng(0x3e721c);
    for (int rep = 0; rep < 1000; ++rep) {
        const std::uint32_t k = 2 + static_cast<std::uint32_t>(rng.next_below(4));
        const std::uint32_t n = k + 4 + static_cast<std::uint32_t>(rng.next_below(40));
        const Partition phi = random_partition(rng, n, k);
        const Partition psi = random_partition(rng, n, k);
        const AlignmentResult bf = align_brute_force(phi, psi);
        const AlignmentResult as = align_assignment(phi, psi);
        if (bf.error_fraction != as.error_fraction) {
            return note(false, "assignment disagrees with brute force at rep " +
                                   std::to_string(rep));
        }
    }
    return true;
}

// ------------------------------------------------------- refinement oracle

// Literal enumeration of every candidate edge average, replicating the
// documented tie rule: keep the current label when it attains the
// maximum, otherwise take the lowest label.
Partition refine_reference(const WeightedHypergraph& h2, const Partition& phi,
                           RefineDenominator denom) {
    const std::uint32_t n = phi.n();
    const std::uint32_t d = h2.edge_size();
    Partition out = phi;
    for (NodeId i = 1; i <= n; ++i) {
        const std::uint32_t current = phi.labels[i - 1];
        double best = 0.0;
        std::uint32_t best_label = current;
        bool any = false;
        for (std::uint32_t j = 1; j <= phi.k; ++j) {
            std::vector<NodeId> members;
            for (NodeId v = 1; v <= n; ++v) {
                if (v != i && phi.labels[v - 1] == j) members.push_back(v);
            }
            if (members.size() < d - 1) continue;
            double num = 0.0, den = 0.0;
            std::vector<std::uint32_t> pick(d - 1);
            std::iota(pick.begin(), pick.end(), 0);
            while (true) {
                std::vector<NodeId> edge{i};
                for (std::uint32_t idx : pick) edge.push_back(members[idx]);
                std::sort(edge.begin(), edge.end());
                const auto idx = h2.find(edge);
                const bool present = idx.has_value() && h2.observed(*idx);
                if (denom == RefineDenominator::AllCandidateEdges) {
                    den += 1.0;
                    if (present) num += h2.weight(*idx);
                } else if (present) {
                    den += 1.0;
                    num += h2.weight(*idx);
                }
                std::int32_t t = static_cast<std::int32_t>(d) - 2;
                while (t >= 0 && pick[t] == members.size() - (d - 1 - t)) --t;
                if (t < 0) break;
                ++pick[t];
                for (std::uint32_t u = t + 1; u < d - 1; ++u) pick[u] = pick[u - 1] + 1;
            }
            if (den <= 0.0) continue;
            const double avg = num / den;
            if (!any || avg > best || (avg == best && j == current)) {
                best = avg;
                best_label = j;
            }
            any = true;
        }
        out.labels[i - 1] = best_label;
    }
    return out;
}

bool refinement_oracle(const Context&) {
    Rng rng(0x9ef11e);
    for (int rep = 0; rep < 200; ++rep) {
        const std::uint32_t n = 6 + static_cast<std::uint32_t>(rng.next_below(5));
        const bool censored = rep % 2 == 1;
        WeightedHypergraph h(n, 3);
        for (NodeId a = 1; a + 2 <= n; ++a) {
            for (NodeId b = a + 1; b + 1 <= n; ++b) {
                for (NodeId c = b + 1; c <= n; ++c) {
                    const double u = rng.next_double();
                    const std::vector<NodeId> e{a, b, c};
                    if (u < 0.4) {
                        h.add_edge(e, rng.next_double());
                    } else if (censored && u < 0.55) {
                        h.add_edge(e, 0.0, /*observed=*/false);
                    }
                }
            }
        }
        h.freeze();
        const Partition phi = random_partition(rng, n, 2);
        const RefineDenominator denom = censored ? RefineDenominator::ObservedOnly
                                                 : RefineDenominator::AllCandidateEdges;
        const Partition got = refine(h, phi, 2, denom);
        const Partition want = refine_reference(h, phi, denom);
        if (got.labels != want.labels) {
            return note(false, "refine mismatch at rep " + std::to_string(rep));
        }
    }
    return true;
}

// ----------------------------------------------------------- subspace sketch

bool subspace_sketch(const Context&) {
    const double t0 = now_s();
    SubspaceParams p;
    p.k = 3;
    p.m = 3;
    p.ell = 50;
    p.points_per_cluster = 100;
    p.sigma = 0.05;
    p.d = 5;
    p.s_n = default_sketch_rate(p);
    HsclrConfig cfg;
    cfg.hsc.k = 3;
    double mean = 0.0;
    int errored = 0;
    for (std::uint64_t t = 0; t < 20; ++t) {
        const TrialReport r = run_subspace_trial(p, cfg, 42 + t);
        if (!r.error.empty()) {
            ++errored;
            continue;
        }
        mean += r.error_fraction;
    }
    mean /= 20.0 - errored;
    std::cerr << "  mean error fraction: " << mean << "\n";
    bool ok = note(errored == 0, std::to_string(errored) + " trials raised");
    ok &= note(mean <= kSubspaceMeanErrorBound,
               "mean " + std::to_string(mean) + " > bound " +
                   std::to_string(kSubspaceMeanErrorBound));
    ok &= note(now_s() - t0 < kSubspaceSeconds, "runtime exceeded 15 min");
    return ok;
}

// -------------------------------------------------------------- determinism

std::string slurp(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    std::ostringstream out;
    out << in.rdbuf();
    return out.str();
}

std::string strip_timing_columns(const std::string& csv) {
    // The four timing columns come last in every row by design.
    std::istringstream in(csv);
    std::string line, out;
    while (std::getline(in, line)) {
        if (!line.empty() && line.front() != '#') {
            for (int cut = 0; cut < 4; ++cut) {
                const auto pos = line.find_last_of(',');
                if (pos != std::string::npos) line.erase(pos);
            }
        }
        out += line;
        out += '\n';
    }
    return out;
}

bool determinism(const Context& ctx) {
    if (ctx.cli.empty()) return note(false, "missing --cli <path-to-hsc-tools>");
    char tmpl[] = "/tmp/hsc_acceptance_XXXXXX";
    const char* dir_c = mkdtemp(tmpl);
    if (dir_c == nullptr) return note(false, "mkdtemp failed");
    const std::string dir = dir_c;

    const auto sh = [&](const std::string& args) {
        const std::string cmd = ctx.cli + " " + args + " >/dev/null 2>&1";
        return std::system(cmd.c_str()) == 0;
    };
    const auto same = [&](const std::string& a, const std::string& b) {
        const std::string ca = slurp(dir + "/" + a);
        return !ca.empty() && ca == slurp(dir + "/" + b);
    };

    bool ok = true;

    // Generators: identical seed, byte-identical instance files.
    const std::vector<std::pair<std::string, std::string>> gens = {
        {"sbm", "--model sbm --n 40 --d 3 --k 2 --p 0.9 --q 0.1 --alpha-scale 3 --seed 7"},
        {"cbm", "--model cbm --n 40 --d 3 --theta 0.1 --alpha-scale 3 --seed 9"},
        {"clique", "--model clique --n 60 --d 3 --s 20 --seed 11"},
        {"subspace", "--model subspace --k 2 --m 1 --ell 3 --points-per-cluster 20 "
                     "--d 3 --sigma 0.05 --budget 2000 --seed 13"},
    };
    for (const auto& [name, args] : gens) {
        for (const char* run : {"a", "b"}) {
            ok &= note(sh("generate " + args + " --out " + dir + "/" + name + run),
                       "generate " + name + " failed");
        }
        ok &= note(same(name + "a.edges", name + "b.edges"), name + " edges differ");
        ok &= note(same(name + "a.truth", name + "b.truth"), name + " truth differ");
    }

    // Solvers and scoring on the sbm instance.
    for (const std::string solver : {"hsc", "hsclr"}) {
        for (const char* run : {"a", "b"}) {
            ok &= note(sh(solver + " " + dir + "/sbma.edges --k 2 --seed 5 --out " + dir +
                          "/" + solver + run),
                       solver + " failed");
        }
        ok &= note(same(solver + "a", solver + "b"), solver + " partitions differ");
    }
    for (const char* run : {"a", "b"}) {
        ok &= note(sh("cbm-refine " + dir + "/cbma.edges --seed 5 --out " + dir +
                      "/cbmref" + run),
                   "cbm-refine failed");
        ok &= note(sh("score " + dir + "/hsca " + dir + "/sbma.truth --out " + dir +
                      "/score" + run),
                   "score failed");
    }
    ok &= note(same("cbmrefa", "cbmrefb"), "cbm-refine partitions differ");
    ok &= note(same("scorea", "scoreb"), "score outputs differ");

    // Sweep: identical science columns across reruns and worker counts.
    {
        std::ofstream cfg(dir + "/sweep.ini");
        cfg << "[model]\nkind = sbm\nn = 30\nd = 3\nk = 2\np = 0.9\nq = 0.1\n"
               "[algorithm]\nkind = hsclr\nrestarts = 3\n"
               "[sweep]\nalpha_scale = 2, 4\n"
               "[run]\ntrials = 3\nseed = 11\n";
    }
    ok &= note(sh("sweep " + dir + "/sweep.ini --jobs 1 --out " + dir + "/sw1.csv"),
               "sweep run 1 failed");
    ok &= note(sh("sweep " + dir + "/sweep.ini --jobs 1 --out " + dir + "/sw2.csv"),
               "sweep run 2 failed");
    ok &= note(sh("sweep " + dir + "/sweep.ini --jobs 8 --out " + dir + "/sw8.csv"),
               "sweep run with 8 jobs failed");
    const std::string sw1 = strip_timing_columns(slurp(dir + "/sw1.csv"));
    ok &= note(!sw1.empty() && sw1 == strip_timing_columns(slurp(dir + "/sw2.csv")),
               "sweep reruns differ");
    ok &= note(sw1 == strip_timing_columns(slurp(dir + "/sw8.csv")),
               "sweep science output depends on --jobs");

    // Subspace trials subcommand.
    for (const char* run : {"a", "b"}) {
        ok &= note(sh("subspace --k 2 --m 1 --ell 3 --points-per-cluster 15 --d 3 "
                      "--budget 400 --trials 2 --seed 3 --out " +
                      dir + "/sub" + std::string(run) + ".csv"),
                   "subspace run failed");
    }
    const std::string suba = strip_timing_columns(slurp(dir + "/suba.csv"));
    ok &= note(!suba.empty() && suba == strip_timing_columns(slurp(dir + "/subb.csv")),
               "subspace reruns differ");

    std::system(("rm -rf " + dir).c_str());
    return ok;
}

} // namespace

int main(int argc, char** argv) {
    if (argc < 2) {
        std::cerr << "usage: acceptance <criterion> [--cli <path>]\n";
        return 2;
    }
    Context ctx;
    for (int i = 2; i + 1 < argc; ++i) {
        if (std::string(argv[i]) == "--cli") ctx.cli = argv[i + 1];
    }
    const std::map<std::string, std::function<bool(const Context&)>> criteria = {
        {"oracle_exactness", oracle_exactness},
        {"strong_consistency", strong_consistency},
        {"weak_consistency_trend", weak_consistency_trend},
        {"refinement_helps", refinement_helps},
        {"concentration_probe", concentration_probe},
        {"censored_model", censored_model},
        {"planted_clique", planted_clique},
        {"metric_oracle", metric_oracle},
        {"refinement_oracle", refinement_oracle},
        {"subspace_sketch", subspace_sketch},
        {"determinism", determinism},
    };
    const std::string name = argv[1];
    const auto it = criteria.find(name);
    if (it == criteria.end()) {
        std::cerr << "unknown criterion: " << name << "\n";
        return 2;
    }
    bool ok = false;
    try {
        ok = it->second(ctx);
    } catch (const std::exception& e) {
        std::cerr << "  exception: " << e.what() << "\n";
    }
    std::printf("[%s] %s\n", ok ? "PASS" : "FAIL", name.c_str());
    return ok ? 0 : 1;
}
