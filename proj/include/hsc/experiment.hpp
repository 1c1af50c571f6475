#pragma once

#include <cstdint>
#include <iosfwd>
#include <string>
#include <utility>
#include <vector>

#include "hsc/generators.hpp"
#include "hsc/pipeline.hpp"

namespace hsc {

inline constexpr const char* kToolVersion = "0.1.0";

enum class Model { Sbm, Cbm, Clique, Subspace };
enum class Algorithm { Hsc, Hsclr, HsclrMl };

struct CliqueParams {
    std::uint32_t n = 0;
    std::uint32_t d = 3;
    std::uint32_t s = 0;
};

struct ExperimentConfig {
    Model model = Model::Sbm;
    SbmParams sbm;
    CbmParams cbm;
    CliqueParams clique;
    SubspaceParams subspace;

    Algorithm algorithm = Algorithm::Hsclr;
    HsclrConfig alg;

    // Named sweep axes; the cartesian product defines the grid.
    std::vector<std::pair<std::string, std::vector<double>>> axes;
    std::uint32_t trials = 1;
    std::uint64_t base_seed = 1;
    std::uint32_t jobs = 1;

    void validate() const;
};

struct TrialReport {
    std::string grid;      // "name=value;..." or empty without axes
    std::int64_t trial = -1; // -1 marks a summary row
    std::uint64_t seed = 0;
    double error_fraction = 0.0;
    double worst_cluster = 0.0;
    bool exact = false;
    bool summary = false;
    // Summary-only aggregates over the grid point's trials.
    double mean_error = 0.0;
    double exact_rate = 0.0;
    double ci_low = 0.0;
    double ci_high = 0.0;
    StageTimings timings;
    std::string error; // nonempty when the trial raised
};

/// All (grid point, trial) rows plus one summary row per grid point, in
/// deterministic order independent of the worker count.
std::vector<TrialReport> run_sweep(const ExperimentConfig& cfg);

/// Points -> sketch -> hsclr -> score, one trial.
TrialReport run_subspace_trial(const SubspaceParams& params, const HsclrConfig& cfg,
                               std::uint64_t seed);

/// Seed for one trial; depends only on (base, axis values, trial index).
std::uint64_t trial_seed(std::uint64_t base,
                         const std::vector<std::pair<std::string, double>>& point,
                         std::uint32_t trial);

/// Stable hex digest of the fully resolved configuration.
std::string config_digest(const ExperimentConfig& cfg);

/// Versioned CSV with a header comment; timing columns come last so
/// determinism checks can strip them.
void write_reports_csv(std::ostream& os, const ExperimentConfig& cfg,
                       const std::vector<TrialReport>& rows);

/// INI-style config: [model], [algorithm], [sweep], [run] sections.
ExperimentConfig parse_experiment_config(std::istream& is);

/// Balanced block labeling; used as censored-model ground truth.
Partition balanced_partition(std::uint32_t n, std::uint32_t k);

/// min(1, 5 k^{d-1} n log n / d / C(n,d)); the default sketch rate.
double default_sketch_rate(const SubspaceParams& params);

} // namespace hsc
