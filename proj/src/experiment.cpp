#include "hsc/experiment.hpp"

#include <algorithm>
#include <atomic>
#include <bit>
#include <cmath>
#include <cstdio>
#include <istream>
#include <ostream>
#include <sstream>
#include <thread>

#include "hsc/combinatorics.hpp"
#include "hsc/errors.hpp"
#include "hsc/metrics.hpp"
#include "hsc/rng.hpp"

namespace hsc {

namespace {

constexpr std::uint64_t kGenKey = 0x67656e;
constexpr std::uint64_t kSolveKey = 0x736f6c;

using GridPoint = std::vector<std::pair<std::string, double>>;

std::string fmt_double(double v, const char* spec = "%.17g") {
    char buf[64];
    std::snprintf(buf, sizeof(buf), spec, v);
    return buf;
}

std::string format_point(const GridPoint& point) {
    std::string out;
    for (const auto& [name, value] : point) {
        if (!out.empty()) out += ';';
        out += name;
        out += '=';
        out += fmt_double(value, "%g");
    }
    return out;
}

std::vector<GridPoint> expand_axes(
    const std::vector<std::pair<std::string, std::vector<double>>>& axes) {
    std::vector<GridPoint> points{GridPoint{}};
    for (const auto& [name, values] : axes) {
        std::vector<GridPoint> next;
        next.reserve(points.size() * values.size());
        for (const GridPoint& base : points) {
            for (double v : values) {
                GridPoint p = base;
                p.emplace_back(name, v);
                next.push_back(std::move(p));
            }
        }
        points = std::move(next);
    }
    return points;
}

void apply_value(ExperimentConfig& c, const std::string& name, double v) {
    const auto u32 = [&] { return static_cast<std::uint32_t>(std::llround(v)); };
    if (name == "n") {
        switch (c.model) {
            case Model::Sbm: c.sbm.n = u32(); break;
            case Model::Cbm: c.cbm.n = u32(); break;
            case Model::Clique: c.clique.n = u32(); break;
            case Model::Subspace: c.subspace.points_per_cluster = u32() / c.subspace.k; break;
        }
    } else if (name == "d") {
        switch (c.model) {
            case Model::Sbm: c.sbm.d = u32(); break;
            case Model::Cbm: c.cbm.d = u32(); break;
            case Model::Clique: c.clique.d = u32(); break;
            case Model::Subspace: c.subspace.d = u32(); break;
        }
    } else if (name == "k") {
        if (c.model == Model::Subspace) {
            c.subspace.k = u32();
        } else {
            c.sbm.k = u32();
        }
    } else if (name == "p") {
        c.sbm.p = v;
    } else if (name == "q") {
        c.sbm.q = v;
    } else if (name == "alpha") {
        (c.model == Model::Cbm ? c.cbm.alpha : c.sbm.alpha) = v;
    } else if (name == "theta") {
        c.cbm.theta = v;
    } else if (name == "s") {
        c.clique.s = u32();
    } else if (name == "sigma") {
        c.subspace.sigma = v;
    } else if (name == "m") {
        c.subspace.m = u32();
    } else if (name == "ell") {
        c.subspace.ell = u32();
    } else if (name == "points_per_cluster") {
        c.subspace.points_per_cluster = u32();
    } else if (name == "s_n") {
        c.subspace.s_n = v;
    } else if (name == "tau") {
        c.subspace.tau = v;
    } else if (name == "beta") {
        c.alg.beta = v;
    } else if (name == "restarts") {
        c.alg.hsc.restarts = u32();
    } else if (name == "c_thr") {
        c.alg.hsc.c_thr = v;
    } else if (name != "alpha_scale") {
        throw InvalidParams("unknown parameter: " + name);
    }
}

// Second pass: alpha_scale c means C(n,d) * alpha = c * n * log n.
void apply_alpha_scale(ExperimentConfig& c, double scale) {
    const std::uint32_t n = c.model == Model::Cbm ? c.cbm.n : c.sbm.n;
    const std::uint32_t d = c.model == Model::Cbm ? c.cbm.d : c.sbm.d;
    const double alpha = scale * n * std::log(n) / binom(n, d);
    (c.model == Model::Cbm ? c.cbm.alpha : c.sbm.alpha) = alpha;
}

ExperimentConfig resolve_point(const ExperimentConfig& base, const GridPoint& point) {
    ExperimentConfig c = base;
    for (const auto& [name, value] : point) apply_value(c, name, value);
    for (const auto& [name, value] : point) {
        if (name == "alpha_scale") apply_alpha_scale(c, value);
    }
    switch (c.model) {
        case Model::Sbm: {
            std::uint64_t total = 0;
            for (std::uint32_t s : c.sbm.cluster_sizes) total += s;
            if (total != c.sbm.n || c.sbm.cluster_sizes.size() != c.sbm.k) {
                c.sbm.cluster_sizes = balanced_partition(c.sbm.n, c.sbm.k).group_sizes();
            }
            c.alg.hsc.k = c.sbm.k;
            c.sbm.validate();
            break;
        }
        case Model::Cbm:
            c.alg.hsc.k = 2;
            c.cbm.validate();
            break;
        case Model::Clique:
            c.alg.hsc.k = 2;
            if (c.clique.s == 0 || c.clique.s >= c.clique.n) {
                throw InvalidParams("clique size must lie in [1, n)");
            }
            break;
        case Model::Subspace:
            c.alg.hsc.k = c.subspace.k;
            if (c.subspace.s_n <= 0.0) c.subspace.s_n = default_sketch_rate(c.subspace);
            c.subspace.validate();
            break;
    }
    c.alg.validate();
    return c;
}

void score_against(TrialReport& r, const Partition& estimate, const Partition& truth) {
    const AlignmentResult a = error_fraction(estimate, truth);
    r.error_fraction = a.error_fraction;
    r.worst_cluster = worst_cluster_error(estimate, truth);
    r.exact = a.error_fraction == 0.0;
}

TrialReport run_point_trial(const ExperimentConfig& c, std::uint64_t seed) {
    if (c.model == Model::Subspace) return run_subspace_trial(c.subspace, c.alg, seed);
    TrialReport r;
    try {
        auto [h, truth] = [&]() -> std::pair<WeightedHypergraph, Partition> {
            const std::uint64_t gen = hash_combine(seed, kGenKey);
            switch (c.model) {
                case Model::Sbm:
                    return sample_weighted_sbm(c.sbm, gen);
                case Model::Cbm: {
                    Partition t = balanced_partition(c.cbm.n, 2);
                    return {sample_censored_bm(c.cbm, t, gen), std::move(t)};
                }
                default:
                    return sample_planted_clique(c.clique.n, c.clique.d, c.clique.s, gen);
            }
        }();
        const std::uint64_t solve = hash_combine(seed, kSolveKey);
        const RefineDenominator denom = h.has_erasures()
                                            ? RefineDenominator::ObservedOnly
                                            : RefineDenominator::AllCandidateEdges;
        PipelineResult res = [&] {
            switch (c.algorithm) {
                case Algorithm::Hsc: return run_hsc(h, c.alg.hsc, solve);
                case Algorithm::Hsclr: return run_hsclr(h, c.alg, solve, denom);
                default: return run_hsclr_ml(h, c.alg, solve);
            }
        }();
        score_against(r, res.partition, truth);
        r.timings = res.timings;
    } catch (const std::exception& e) {
        r.error = e.what();
    }
    return r;
}

double wilson_low(double phat, double n, double z) {
    const double denom = 1.0 + z * z / n;
    const double center = phat + z * z / (2.0 * n);
    const double margin = z * std::sqrt(phat * (1.0 - phat) / n + z * z / (4.0 * n * n));
    // The Wilson bound brackets phat analytically; clamp away rounding jitter.
    return std::clamp((center - margin) / denom, 0.0, phat);
}

double wilson_high(double phat, double n, double z) {
    const double denom = 1.0 + z * z / n;
    const double center = phat + z * z / (2.0 * n);
    const double margin = z * std::sqrt(phat * (1.0 - phat) / n + z * z / (4.0 * n * n));
    return std::clamp((center + margin) / denom, phat, 1.0);
}

std::string csv_escape(const std::string& s) {
    std::string out = s;
    for (char& ch : out) {
        if (ch == ',' || ch == '\n' || ch == '"') ch = ';';
    }
    return out;
}

std::uint64_t fnv1a(const std::string& s) {
    std::uint64_t h = 0xcbf29ce484222325ull;
    for (unsigned char ch : s) {
        h ^= ch;
        h *= 0x100000001b3ull;
    }
    return h;
}

const char* model_name(Model m) {
    switch (m) {
        case Model::Sbm: return "sbm";
        case Model::Cbm: return "cbm";
        case Model::Clique: return "clique";
        default: return "subspace";
    }
}

const char* algorithm_name(Algorithm a) {
    switch (a) {
        case Algorithm::Hsc: return "hsc";
        case Algorithm::Hsclr: return "hsclr";
        default: return "hsclr-ml";
    }
}

} // namespace

void ExperimentConfig::validate() const {
    if (trials < 1) throw InvalidParams("trials must be >= 1");
    for (const auto& [name, values] : axes) {
        if (values.empty()) throw InvalidParams("empty sweep axis: " + name);
        ExperimentConfig probe = *this;
        probe.axes.clear();
        apply_value(probe, name, values.front()); // throws on unknown names
    }
}

Partition balanced_partition(std::uint32_t n, std::uint32_t k) {
    if (k == 0 || n < k) throw InvalidParams("need n >= k >= 1");
    Partition p;
    p.k = k;
    p.labels.resize(n);
    const std::uint32_t base = n / k, extra = n % k;
    std::uint32_t i = 0;
    for (std::uint32_t g = 1; g <= k; ++g) {
        const std::uint32_t size = base + (g <= extra ? 1 : 0);
        for (std::uint32_t j = 0; j < size; ++j) p.labels[i++] = g;
    }
    return p;
}

double default_sketch_rate(const SubspaceParams& params) {
    const double n = params.n();
    const double budget =
        5.0 * std::pow(params.k, params.d - 1) * n * std::log(n) / params.d;
    return std::min(1.0, budget / binom(params.n(), params.d));
}

std::uint64_t trial_seed(std::uint64_t base, const GridPoint& point, std::uint32_t trial) {
    std::uint64_t h = splitmix64(base);
    for (const auto& [name, value] : point) {
        h = hash_combine(h, fnv1a(name));
        h = hash_combine(h, std::bit_cast<std::uint64_t>(value));
    }
    return hash_combine(h, trial);
}

TrialReport run_subspace_trial(const SubspaceParams& params, const HsclrConfig& cfg,
                               std::uint64_t seed) {
    TrialReport r;
    try {
        SubspaceParams p = params;
        if (p.s_n <= 0.0) throw InvalidParams("degenerate sketch: sampling rate is zero");
        p.validate();
        auto [cloud, truth] = sample_subspace_points(p, hash_combine(seed, kGenKey));
        const WeightedHypergraph h =
            sketch_hypergraph(cloud, p, hash_combine(seed, hash_combine(kGenKey, 1)));
        if (h.stored_edge_count() == 0) throw InvalidParams("degenerate sketch: no edges stored");
        HsclrConfig alg = cfg;
        alg.hsc.k = p.k;
        const PipelineResult res = run_hsclr(h, alg, hash_combine(seed, kSolveKey));
        score_against(r, res.partition, truth);
        r.timings = res.timings;
    } catch (const std::exception& e) {
        r.error = e.what();
    }
    r.seed = seed;
    return r;
}

std::vector<TrialReport> run_sweep(const ExperimentConfig& cfg) {
    cfg.validate();
    const std::vector<GridPoint> points = expand_axes(cfg.axes);
    std::vector<ExperimentConfig> resolved;
    resolved.reserve(points.size());
    for (const GridPoint& p : points) resolved.push_back(resolve_point(cfg, p));

    const std::size_t total = points.size() * cfg.trials;
    std::vector<TrialReport> rows(total);
    std::atomic<std::size_t> next{0};
    const auto worker = [&] {
        for (std::size_t i = next.fetch_add(1); i < total; i = next.fetch_add(1)) {
            const std::size_t gp = i / cfg.trials;
            const std::uint32_t t = static_cast<std::uint32_t>(i % cfg.trials);
            const std::uint64_t seed = trial_seed(cfg.base_seed, points[gp], t);
            rows[i] = run_point_trial(resolved[gp], seed);
            rows[i].grid = format_point(points[gp]);
            rows[i].trial = t;
            rows[i].seed = seed;
        }
    };
    const std::uint32_t jobs = std::max<std::uint32_t>(1, cfg.jobs);
    if (jobs == 1) {
        worker();
    } else {
        std::vector<std::thread> pool;
        for (std::uint32_t j = 0; j < jobs; ++j) pool.emplace_back(worker);
        for (std::thread& th : pool) th.join();
    }

    // Interleave one summary row after each grid point's trials.
    std::vector<TrialReport> out;
    out.reserve(total + points.size());
    constexpr double z = 1.959963984540054;
    for (std::size_t gp = 0; gp < points.size(); ++gp) {
        double err_sum = 0.0;
        std::uint32_t ok = 0, exact = 0;
        for (std::uint32_t t = 0; t < cfg.trials; ++t) {
            const TrialReport& r = rows[gp * cfg.trials + t];
            out.push_back(r);
            if (!r.error.empty()) continue;
            err_sum += r.error_fraction;
            exact += r.exact ? 1 : 0;
            ++ok;
        }
        TrialReport summary;
        summary.summary = true;
        summary.grid = format_point(points[gp]);
        if (ok > 0) {
            summary.mean_error = err_sum / ok;
            summary.exact_rate = static_cast<double>(exact) / ok;
            summary.ci_low = wilson_low(summary.exact_rate, ok, z);
            summary.ci_high = wilson_high(summary.exact_rate, ok, z);
        } else {
            summary.error = "all trials failed";
        }
        out.push_back(std::move(summary));
    }
    return out;
}

std::string config_digest(const ExperimentConfig& cfg) {
    // jobs is excluded: it must not change the science output.
    std::ostringstream os;
    os << model_name(cfg.model) << '|' << algorithm_name(cfg.algorithm) << '|';
    os << cfg.sbm.n << ' ' << cfg.sbm.d << ' ' << cfg.sbm.k << ' ' << fmt_double(cfg.sbm.p) << ' '
       << fmt_double(cfg.sbm.q) << ' ' << fmt_double(cfg.sbm.alpha) << ' '
       << static_cast<int>(cfg.sbm.weight_kind) << ' ' << cfg.sbm.assortative;
    for (std::uint32_t s : cfg.sbm.cluster_sizes) os << ' ' << s;
    for (double m : cfg.sbm.hom_means) os << ' ' << fmt_double(m);
    os << '|' << cfg.cbm.n << ' ' << cfg.cbm.d << ' ' << fmt_double(cfg.cbm.theta) << ' '
       << fmt_double(cfg.cbm.alpha);
    os << '|' << cfg.clique.n << ' ' << cfg.clique.d << ' ' << cfg.clique.s;
    os << '|' << cfg.subspace.k << ' ' << cfg.subspace.m << ' ' << cfg.subspace.ell << ' '
       << cfg.subspace.points_per_cluster << ' ' << fmt_double(cfg.subspace.sigma) << ' '
       << cfg.subspace.d << ' ' << fmt_double(cfg.subspace.s_n) << ' '
       << fmt_double(cfg.subspace.tau) << ' ' << cfg.subspace.affine_offset;
    os << '|' << cfg.alg.hsc.k << ' ' << fmt_double(cfg.alg.hsc.c_thr) << ' '
       << cfg.alg.hsc.restarts << ' ' << static_cast<int>(cfg.alg.hsc.eigen_mode) << ' '
       << fmt_double(cfg.alg.beta);
    os << '|';
    for (const auto& [name, values] : cfg.axes) {
        os << name << '=';
        for (double v : values) os << fmt_double(v) << ',';
        os << ';';
    }
    os << '|' << cfg.trials << ' ' << cfg.base_seed;
    char buf[32];
    std::snprintf(buf, sizeof(buf), "%016llx",
                  static_cast<unsigned long long>(fnv1a(os.str())));
    return buf;
}

void write_reports_csv(std::ostream& os, const ExperimentConfig& cfg,
                       const std::vector<TrialReport>& rows) {
    os << "# hsc-tools " << kToolVersion << "\n";
    os << "# config " << config_digest(cfg) << "\n";
    os << "kind,model,algorithm,grid,trial,seed,error_fraction,worst_cluster_error,exact,"
          "mean_error_fraction,exact_rate,ci_low,ci_high,error,"
          "build_ms,eigen_ms,kmeans_ms,refine_ms\n";
    for (const TrialReport& r : rows) {
        os << (r.summary ? "summary" : "trial") << ',' << model_name(cfg.model) << ','
           << algorithm_name(cfg.algorithm) << ',' << r.grid << ',';
        if (r.summary) {
            os << ",,,,,";
            if (r.error.empty()) {
                os << fmt_double(r.mean_error) << ',' << fmt_double(r.exact_rate) << ','
                   << fmt_double(r.ci_low) << ',' << fmt_double(r.ci_high) << ',';
            } else {
                os << ",,,," << csv_escape(r.error);
            }
            os << ",,,,\n";
            continue;
        }
        os << r.trial << ',' << r.seed << ',';
        if (r.error.empty()) {
            os << fmt_double(r.error_fraction) << ',' << fmt_double(r.worst_cluster) << ','
               << (r.exact ? 1 : 0);
        } else {
            os << ",,";
        }
        os << ",,,,," << csv_escape(r.error) << ',' << fmt_double(r.timings.build_ms) << ','
           << fmt_double(r.timings.eigen_ms) << ',' << fmt_double(r.timings.kmeans_ms) << ','
           << fmt_double(r.timings.refine_ms) << "\n";
    }
}

namespace {

std::string trim(const std::string& s) {
    const auto begin = s.find_first_not_of(" \t\r");
    if (begin == std::string::npos) return "";
    const auto end = s.find_last_not_of(" \t\r");
    return s.substr(begin, end - begin + 1);
}

std::vector<double> parse_list(const std::string& value, std::size_t line) {
    std::vector<double> out;
    std::stringstream ss(value);
    std::string item;
    while (std::getline(ss, item, ',')) {
        item = trim(item);
        if (item.empty()) continue;
        try {
            std::size_t used = 0;
            out.push_back(std::stod(item, &used));
            if (used != item.size()) throw std::invalid_argument(item);
        } catch (const std::exception&) {
            throw ParseError("line " + std::to_string(line) + ": bad number '" + item + "'");
        }
    }
    if (out.empty()) throw ParseError("line " + std::to_string(line) + ": empty value list");
    return out;
}

double parse_number(const std::string& value, std::size_t line) {
    const std::vector<double> v = parse_list(value, line);
    if (v.size() != 1) throw ParseError("line " + std::to_string(line) + ": expected one value");
    return v.front();
}

bool parse_bool(const std::string& value, std::size_t line) {
    if (value == "true" || value == "1" || value == "yes") return true;
    if (value == "false" || value == "0" || value == "no") return false;
    throw ParseError("line " + std::to_string(line) + ": bad boolean '" + value + "'");
}

} // namespace

ExperimentConfig parse_experiment_config(std::istream& is) {
    ExperimentConfig cfg;
    std::string section, line;
    std::size_t lineno = 0;
    double model_alpha_scale = 0.0;
    while (std::getline(is, line)) {
        ++lineno;
        line = trim(line);
        if (line.empty() || line.front() == '#' || line.front() == ';') continue;
        if (line.front() == '[') {
            if (line.back() != ']') throw ParseError("line " + std::to_string(lineno) +
                                                     ": unterminated section header");
            section = trim(line.substr(1, line.size() - 2));
            if (section != "model" && section != "algorithm" && section != "sweep" &&
                section != "run") {
                throw ParseError("line " + std::to_string(lineno) + ": unknown section [" +
                                 section + "]");
            }
            continue;
        }
        const auto eq = line.find('=');
        if (eq == std::string::npos) {
            throw ParseError("line " + std::to_string(lineno) + ": expected key = value");
        }
        const std::string key = trim(line.substr(0, eq));
        const std::string value = trim(line.substr(eq + 1));
        if (section == "sweep") {
            cfg.axes.emplace_back(key, parse_list(value, lineno));
            continue;
        }
        const auto bad_key = [&]() -> ParseError {
            return ParseError("line " + std::to_string(lineno) + ": unknown key '" + key +
                              "' in [" + section + "]");
        };
        if (section == "model") {
            if (key == "kind") {
                if (value == "sbm") cfg.model = Model::Sbm;
                else if (value == "cbm") cfg.model = Model::Cbm;
                else if (value == "clique") cfg.model = Model::Clique;
                else if (value == "subspace") cfg.model = Model::Subspace;
                else throw ParseError("line " + std::to_string(lineno) + ": unknown model '" +
                                      value + "'");
            } else if (key == "weight_kind") {
                if (value == "bernoulli") cfg.sbm.weight_kind = WeightKind::Bernoulli;
                else if (value == "uniform") cfg.sbm.weight_kind = WeightKind::UniformMixture;
                else throw ParseError("line " + std::to_string(lineno) +
                                      ": unknown weight kind '" + value + "'");
            } else if (key == "assortative") {
                cfg.sbm.assortative = parse_bool(value, lineno);
            } else if (key == "affine_offset") {
                cfg.subspace.affine_offset = parse_bool(value, lineno);
            } else if (key == "hom_means") {
                cfg.sbm.hom_means = parse_list(value, lineno);
            } else if (key == "cluster_sizes") {
                cfg.sbm.cluster_sizes.clear();
                for (double v : parse_list(value, lineno)) {
                    cfg.sbm.cluster_sizes.push_back(static_cast<std::uint32_t>(std::llround(v)));
                }
            } else if (key == "alpha_scale") {
                model_alpha_scale = parse_number(value, lineno);
            } else {
                try {
                    apply_value(cfg, key, parse_number(value, lineno));
                } catch (const InvalidParams&) {
                    throw bad_key();
                }
            }
        } else if (section == "algorithm") {
            if (key == "kind") {
                if (value == "hsc") cfg.algorithm = Algorithm::Hsc;
                else if (value == "hsclr") cfg.algorithm = Algorithm::Hsclr;
                else if (value == "hsclr-ml") cfg.algorithm = Algorithm::HsclrMl;
                else throw ParseError("line " + std::to_string(lineno) + ": unknown algorithm '" +
                                      value + "'");
            } else if (key == "eigen_mode") {
                if (value == "assortative") cfg.alg.hsc.eigen_mode = EigenMode::Assortative;
                else if (value == "disassortative")
                    cfg.alg.hsc.eigen_mode = EigenMode::Disassortative;
                else throw ParseError("line " + std::to_string(lineno) + ": unknown eigen mode '" +
                                      value + "'");
            } else if (key == "beta" || key == "restarts" || key == "c_thr") {
                apply_value(cfg, key, parse_number(value, lineno));
            } else {
                throw bad_key();
            }
        } else if (section == "run") {
            if (key == "trials") {
                cfg.trials = static_cast<std::uint32_t>(parse_number(value, lineno));
            } else if (key == "seed") {
                cfg.base_seed = static_cast<std::uint64_t>(parse_number(value, lineno));
            } else if (key == "jobs") {
                cfg.jobs = static_cast<std::uint32_t>(parse_number(value, lineno));
            } else {
                throw bad_key();
            }
        } else {
            throw ParseError("line " + std::to_string(lineno) + ": key outside any section");
        }
    }
    if (model_alpha_scale > 0.0) apply_alpha_scale(cfg, model_alpha_scale);
    return cfg;
}

} // namespace hsc
