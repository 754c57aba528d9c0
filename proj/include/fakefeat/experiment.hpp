#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "fakefeat/bound.hpp"
#include "fakefeat/datagen.hpp"
#include "fakefeat/metrics.hpp"
#include "fakefeat/model.hpp"

namespace fakefeat {

// A full sweep: a base config swept over (p_fake, lambda) cells with nested
// Monte Carlo averaging (m_features feature realizations, m_noise noise draws
// per realization).
struct ExperimentPlan {
    ProblemConfig base;
    std::vector<double> lambda_grid; // sorted ascending, no duplicates
    std::vector<Index> p_f_list;     // no duplicates
    int m_features = 100;
    int m_noise = 100;
    Index n_test = 20000;
    std::uint64_t master_seed = 0;
    std::optional<BoundParams> bound_params;
};

// Throws ConfigError on any violated plan invariant.
void validate_plan(const ExperimentPlan& plan);

// Diagnostics recorded per trial when bound parameters are supplied.
struct TrialDiagnostics {
    double s_min = 0.0;
    double s_max = 0.0;
    bool chi2_event = false;
    bool singular_event = false;
};

struct TrialResult {
    ErrorReport report;
    std::optional<TrialDiagnostics> diagnostics;
};

// One aggregated (p_fake, lambda) cell.
struct SweepRow {
    Index p_fake = 0;
    double lambda = 0.0;
    double jy_analytic_mean = 0.0;
    double jy_analytic_std = 0.0; // between-realization std of per-realization means
    double jy_empirical_mean = 0.0;
    double train_err_mean = 0.0;
    std::optional<double> bound_value;
    std::optional<double> prob_floor;
    std::optional<double> coverage; // fraction of trials with J_y < bound_value
    long trials = 0;
};

struct SweepResult {
    std::vector<SweepRow> rows;
};

struct CoverageResult {
    double coverage = 0.0;
    double prob_floor = 0.0;
    double bound_value = 0.0;
    bool vacuous = false;
    long trials = 0;
};

// Runs one complete trial: draws training features and noise, solves, extends
// the estimate, and evaluates analytic, empirical (on a fresh test set of
// n_test rows) and training errors. Diagnostics (singular extremes and
// proof-event checks) are computed when bound_params is non-null.
TrialResult run_trial(const ProblemConfig& cfg, const GroundTruth& truth,
                      const SeedSpec& feature_seed, const SeedSpec& noise_seed,
                      Index n_test, const BoundParams* bound_params = nullptr);

// Nested Monte Carlo average for a single (p_fake, lambda) cell: inner mean
// over m_noise noise draws per feature realization, outer mean over
// m_features realizations. Feature streams are keyed by (p_fake, realization),
// noise streams by (p_fake, realization, noise index); lambda never enters
// seed derivation, so realizations are shared across a lambda grid.
SweepRow run_monte_carlo(const ProblemConfig& cell, int m_features, int m_noise,
                         Index n_test, std::uint64_t master_seed,
                         const BoundParams* bound_params = nullptr);

// Runs every (p_fake, lambda) cell of the plan. Deterministic for a fixed
// master seed regardless of worker count or p_f_list order; rows are emitted
// in plan order (p_f_list outer, lambda_grid inner). Throws instead of
// emitting partial results.
SweepResult sweep(const ExperimentPlan& plan, int workers = 1);

// Empirical verification of the probability statement: fraction of
// independent trials whose generalization error stays below the (fixed,
// deterministic) bound value. Requires lambda > 0.
CoverageResult coverage_estimate(const ProblemConfig& cfg, const BoundParams& params,
                                 long trials, std::uint64_t master_seed);

// True iff the min-norm solution interpolates the training data
// (residual <= 1e-8 * ||y||). Requires n < p_model strictly.
bool interpolation_check(const ProblemConfig& cfg, std::uint64_t master_seed);

} // namespace fakefeat
