#include "fakefeat/experiment.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <exception>
#include <mutex>
#include <set>
#include <thread>

#include "fakefeat/estimator.hpp"

namespace fakefeat {

namespace {

// Context tags keep the command-level stream families disjoint.
constexpr std::uint64_t kCoverageContext = 0x636f766572ULL;
constexpr std::uint64_t kInterpolateContext = 0x696e747270ULL;

struct TrialStats {
    double jy_analytic = 0.0;
    double jy_empirical = 0.0;
    double train_err = 0.0;
};

// stats for one feature realization: [lambda index][noise index]
using RealizationSlab = std::vector<std::vector<TrialStats>>;

Matrix assemble_model_matrix(const Matrix& a_fake, const Matrix& a_included) {
    Matrix a_bar(a_fake.rows(), a_fake.cols() + a_included.cols());
    a_bar.leftCols(a_fake.cols()) = a_fake;
    a_bar.rightCols(a_included.cols()) = a_included;
    return a_bar;
}

// All trials sharing one feature realization: features and test set are drawn
// once, the m_noise responses are solved per lambda with one factorization.
RealizationSlab run_realization(const ProblemConfig& cell, const GroundTruth& truth,
                                const std::vector<double>& lambda_grid, int m_noise,
                                Index n_test, std::uint64_t master_seed, int realization) {
    SeedSpec base;
    base.master_seed = master_seed;
    base.context = static_cast<std::uint64_t>(cell.p_fake);
    base.realization = static_cast<std::uint64_t>(realization);

    const SeedSpec train = base.with_phase(StreamPhase::train);
    const SeedSpec test = base.with_phase(StreamPhase::test);
    const Matrix a_fake = gen_features(cell.n, cell.p_fake, train.with_role(StreamRole::fake_block));
    const Matrix a_included =
        gen_features(cell.n, cell.p_included, train.with_role(StreamRole::included_block));
    const Matrix a_missing =
        gen_features(cell.n, cell.p_missing, train.with_role(StreamRole::missing_block));
    const Matrix a_fake_test =
        gen_features(n_test, cell.p_fake, test.with_role(StreamRole::fake_block));
    const Matrix a_included_test =
        gen_features(n_test, cell.p_included, test.with_role(StreamRole::included_block));
    const Matrix a_missing_test =
        gen_features(n_test, cell.p_missing, test.with_role(StreamRole::missing_block));

    const Vector signal = a_included * truth.x_included + a_missing * truth.x_missing;
    const Vector signal_test =
        a_included_test * truth.x_included + a_missing_test * truth.x_missing;

    Matrix responses(cell.n, m_noise);
    Matrix responses_test(n_test, m_noise);
    for (int j = 0; j < m_noise; ++j) {
        SeedSpec noise_seed = train.with_role(StreamRole::noise);
        noise_seed.noise_index = static_cast<std::uint64_t>(j);
        responses.col(j) = signal + gen_noise(cell.n, cell.sigma_v, noise_seed);
        SeedSpec noise_seed_test = test.with_role(StreamRole::noise);
        noise_seed_test.noise_index = static_cast<std::uint64_t>(j);
        responses_test.col(j) = signal_test + gen_noise(n_test, cell.sigma_v, noise_seed_test);
    }

    const Matrix a_bar = assemble_model_matrix(a_fake, a_included);
    const Matrix a_bar_test = assemble_model_matrix(a_fake_test, a_included_test);

    RealizationSlab slab(lambda_grid.size());
    for (std::size_t li = 0; li < lambda_grid.size(); ++li) {
        const double lambda = lambda_grid[li];
        const BatchSolver solver(a_bar, lambda);
        const Matrix x_hats = solver.solve_many(responses); // p_model x m_noise
        const Matrix y_hats = a_bar * x_hats;
        const Matrix y_hats_test = a_bar_test * x_hats;
        slab[li].resize(m_noise);
        for (int j = 0; j < m_noise; ++j) {
            const Estimate est =
                extend_estimate(x_hats.col(j), cell.p_fake, cell.p_included, cell.p_missing);
            TrialStats& stats = slab[li][j];
            stats.jy_analytic =
                gen_error_analytic(truth, est, cell.sigma_v).jy_analytic;
            stats.jy_empirical = (responses_test.col(j) - y_hats_test.col(j)).squaredNorm() /
                                 static_cast<double>(n_test);
            stats.train_err = (responses.col(j) - y_hats.col(j)).squaredNorm();
        }
    }
    return slab;
}

SweepRow reduce_cell(const ProblemConfig& cell, const GroundTruth& truth,
                     const std::vector<RealizationSlab>& slabs, std::size_t lambda_index,
                     int m_features, int m_noise, const BoundParams* bound_params) {
    SweepRow row;
    row.p_fake = cell.p_fake;
    row.lambda = cell.lambda;
    row.trials = static_cast<long>(m_features) * m_noise;

    std::optional<BoundReport> bound;
    if (bound_params != nullptr && cell.lambda > 0.0)
        bound = error_bound(truth, cell, *bound_params);

    double analytic_sum = 0.0;
    double empirical_sum = 0.0;
    double train_sum = 0.0;
    long covered = 0;
    std::vector<double> realization_means(m_features, 0.0);
    for (int i = 0; i < m_features; ++i) {
        const std::vector<TrialStats>& trials = slabs[i][lambda_index];
        double inner_sum = 0.0;
        for (int j = 0; j < m_noise; ++j) {
            const TrialStats& stats = trials[j];
            inner_sum += stats.jy_analytic;
            empirical_sum += stats.jy_empirical;
            train_sum += stats.train_err;
            if (bound && stats.jy_analytic < bound->bound_value)
                ++covered;
        }
        realization_means[i] = inner_sum / m_noise;
        analytic_sum += realization_means[i];
    }
    row.jy_analytic_mean = analytic_sum / m_features;
    row.jy_empirical_mean = empirical_sum / static_cast<double>(row.trials);
    row.train_err_mean = train_sum / static_cast<double>(row.trials);

    if (m_features > 1) {
        double ss = 0.0;
        for (double m : realization_means) {
            const double d = m - row.jy_analytic_mean;
            ss += d * d;
        }
        row.jy_analytic_std = std::sqrt(ss / (m_features - 1));
    }
    if (bound) {
        row.bound_value = bound->bound_value;
        row.prob_floor = bound->prob_floor;
        row.coverage = static_cast<double>(covered) / static_cast<double>(row.trials);
    }
    return row;
}

} // namespace

void validate_plan(const ExperimentPlan& plan) {
    if (plan.lambda_grid.empty())
        throw ConfigError("plan: lambda_grid must not be empty");
    for (double l : plan.lambda_grid)
        if (!(l >= 0.0))
            throw ConfigError("plan: lambda_grid entries must be >= 0");
    if (!std::is_sorted(plan.lambda_grid.begin(), plan.lambda_grid.end()))
        throw ConfigError("plan: lambda_grid must be sorted ascending");
    if (std::adjacent_find(plan.lambda_grid.begin(), plan.lambda_grid.end()) !=
        plan.lambda_grid.end())
        throw ConfigError("plan: lambda_grid must not contain duplicates");
    if (plan.p_f_list.empty())
        throw ConfigError("plan: p_f_list must not be empty");
    std::set<Index> seen(plan.p_f_list.begin(), plan.p_f_list.end());
    if (seen.size() != plan.p_f_list.size())
        throw ConfigError("plan: p_f_list must not contain duplicates");
    for (Index p : plan.p_f_list)
        if (p < 0)
            throw ConfigError("plan: p_f_list entries must be >= 0");
    if (plan.m_features < 1 || plan.m_noise < 1)
        throw ConfigError("plan: m_features and m_noise must be >= 1");
    if (plan.n_test < 1)
        throw ConfigError("plan: n_test must be >= 1");
    // every cell must be a valid config on its own
    for (Index p : plan.p_f_list) {
        ProblemConfig cell = plan.base;
        cell.p_fake = p;
        validate_config(cell);
    }
    if (plan.bound_params &&
        (!(plan.bound_params->t1 >= 0.0) || !(plan.bound_params->t2 >= 0.0)))
        throw ConfigError("plan: t1 and t2 must be >= 0");
}

TrialResult run_trial(const ProblemConfig& cfg, const GroundTruth& truth,
                      const SeedSpec& feature_seed, const SeedSpec& noise_seed,
                      Index n_test, const BoundParams* bound_params) {
    validate_config(cfg);
    const SeedSpec train_features = feature_seed.with_phase(StreamPhase::train);
    const SeedSpec test_features = feature_seed.with_phase(StreamPhase::test);
    const Matrix a_fake =
        gen_features(cfg.n, cfg.p_fake, train_features.with_role(StreamRole::fake_block));
    const Matrix a_included =
        gen_features(cfg.n, cfg.p_included, train_features.with_role(StreamRole::included_block));
    const Matrix a_missing =
        gen_features(cfg.n, cfg.p_missing, train_features.with_role(StreamRole::missing_block));
    const Vector noise = gen_noise(
        cfg.n, cfg.sigma_v, noise_seed.with_phase(StreamPhase::train).with_role(StreamRole::noise));
    const Vector y = gen_response(a_included, a_missing, truth, noise);

    const Matrix a_bar = assemble_model_matrix(a_fake, a_included);
    const Vector x_bar_hat = BatchSolver(a_bar, cfg.lambda).solve(y);
    const Estimate est = extend_estimate(x_bar_hat, cfg.p_fake, cfg.p_included, cfg.p_missing);

    TrialResult result;
    result.report = gen_error_analytic(truth, est, cfg.sigma_v);
    result.report.training_error = training_error(y, a_bar * x_bar_hat);

    Dataset test_set;
    test_set.a_fake =
        gen_features(n_test, cfg.p_fake, test_features.with_role(StreamRole::fake_block));
    test_set.a_included =
        gen_features(n_test, cfg.p_included, test_features.with_role(StreamRole::included_block));
    test_set.a_missing =
        gen_features(n_test, cfg.p_missing, test_features.with_role(StreamRole::missing_block));
    test_set.noise = gen_noise(
        n_test, cfg.sigma_v, noise_seed.with_phase(StreamPhase::test).with_role(StreamRole::noise));
    test_set.response =
        gen_response(test_set.a_included, test_set.a_missing, truth, test_set.noise);
    result.report.jy_empirical = gen_error_empirical(test_set, est);

    if (bound_params != nullptr) {
        TrialDiagnostics diag;
        Eigen::BDCSVD<Matrix> svd(a_bar); // singular values only
        const Vector s = svd.singularValues();
        diag.s_min = s.size() > 0 ? s(s.size() - 1) : 0.0;
        diag.s_max = s.size() > 0 ? s(0) : 0.0;
        diag.singular_event =
            singular_event_check(diag.s_min, diag.s_max, cfg.n, cfg.p_model(), bound_params->t2);
        const Vector g = g_coefficients(s, cfg.lambda);
        const Vector z = a_missing * truth.x_missing + noise;
        diag.chi2_event = chi2_event_check(g, z.head(g.size()),
                                           effective_noise_variance(truth, cfg), bound_params->t1);
        result.diagnostics = diag;
    }
    return result;
}

SweepRow run_monte_carlo(const ProblemConfig& cell, int m_features, int m_noise,
                         Index n_test, std::uint64_t master_seed,
                         const BoundParams* bound_params) {
    validate_config(cell);
    if (m_features < 1 || m_noise < 1)
        throw ConfigError("run_monte_carlo: m_features and m_noise must be >= 1");
    const GroundTruth truth = make_ground_truth(cell);
    const std::vector<double> grid{cell.lambda};
    std::vector<RealizationSlab> slabs(m_features);
    for (int i = 0; i < m_features; ++i)
        slabs[i] = run_realization(cell, truth, grid, m_noise, n_test, master_seed, i);
    return reduce_cell(cell, truth, slabs, 0, m_features, m_noise, bound_params);
}

SweepResult sweep(const ExperimentPlan& plan, int workers) {
    validate_plan(plan);
    const int worker_count = std::max(workers, 1);
    const std::size_t groups = plan.p_f_list.size();

    // One task per (p_fake group, feature realization); results land in
    // preallocated slots so the later reduction order is fixed.
    std::vector<ProblemConfig> cells(groups, plan.base);
    std::vector<GroundTruth> truths(groups);
    for (std::size_t g = 0; g < groups; ++g) {
        cells[g].p_fake = plan.p_f_list[g];
        truths[g] = make_ground_truth(cells[g]);
    }

    std::vector<std::vector<RealizationSlab>> slabs(groups);
    for (auto& s : slabs)
        s.resize(plan.m_features);

    const std::size_t task_count = groups * static_cast<std::size_t>(plan.m_features);
    std::atomic<std::size_t> next_task{0};
    std::mutex error_mutex;
    std::exception_ptr first_error;

    auto work = [&]() {
        for (;;) {
            const std::size_t task = next_task.fetch_add(1);
            if (task >= task_count)
                return;
            {
                std::lock_guard<std::mutex> lock(error_mutex);
                if (first_error)
                    return;
            }
            const std::size_t g = task / plan.m_features;
            const int i = static_cast<int>(task % plan.m_features);
            try {
                slabs[g][i] = run_realization(cells[g], truths[g], plan.lambda_grid,
                                              plan.m_noise, plan.n_test, plan.master_seed, i);
            } catch (...) {
                std::lock_guard<std::mutex> lock(error_mutex);
                if (!first_error)
                    first_error = std::current_exception();
                return;
            }
        }
    };

    if (worker_count == 1) {
        work();
    } else {
        std::vector<std::thread> threads;
        threads.reserve(worker_count);
        for (int w = 0; w < worker_count; ++w)
            threads.emplace_back(work);
        for (auto& t : threads)
            t.join();
    }
    if (first_error)
        std::rethrow_exception(first_error);

    const BoundParams* bp = plan.bound_params ? &*plan.bound_params : nullptr;
    SweepResult result;
    result.rows.reserve(groups * plan.lambda_grid.size());
    for (std::size_t g = 0; g < groups; ++g) {
        for (std::size_t li = 0; li < plan.lambda_grid.size(); ++li) {
            ProblemConfig cell = cells[g];
            cell.lambda = plan.lambda_grid[li];
            result.rows.push_back(reduce_cell(cell, truths[g], slabs[g], li,
                                              plan.m_features, plan.m_noise, bp));
        }
    }
    return result;
}

CoverageResult coverage_estimate(const ProblemConfig& cfg, const BoundParams& params,
                                 long trials, std::uint64_t master_seed) {
    validate_config(cfg);
    if (!(cfg.lambda > 0.0))
        throw LambdaZeroError("coverage_estimate requires lambda > 0");
    if (trials < 1)
        throw ConfigError("coverage_estimate: trials must be >= 1");
    const GroundTruth truth = make_ground_truth(cfg);
    const BoundReport bound = error_bound(truth, cfg, params);

    long covered = 0;
    for (long t = 0; t < trials; ++t) {
        SeedSpec seed;
        seed.master_seed = master_seed;
        seed.context = kCoverageContext;
        seed.realization = static_cast<std::uint64_t>(t);
        const SeedSpec train = seed.with_phase(StreamPhase::train);
        const Matrix a_fake =
            gen_features(cfg.n, cfg.p_fake, train.with_role(StreamRole::fake_block));
        const Matrix a_included =
            gen_features(cfg.n, cfg.p_included, train.with_role(StreamRole::included_block));
        const Matrix a_missing =
            gen_features(cfg.n, cfg.p_missing, train.with_role(StreamRole::missing_block));
        const Vector noise = gen_noise(cfg.n, cfg.sigma_v, train.with_role(StreamRole::noise));
        const Vector y = gen_response(a_included, a_missing, truth, noise);
        const Matrix a_bar = assemble_model_matrix(a_fake, a_included);
        const Vector x_bar_hat = BatchSolver(a_bar, cfg.lambda).solve(y);
        const Estimate est =
            extend_estimate(x_bar_hat, cfg.p_fake, cfg.p_included, cfg.p_missing);
        const double jy = gen_error_analytic(truth, est, cfg.sigma_v).jy_analytic;
        if (jy < bound.bound_value)
            ++covered;
    }

    CoverageResult result;
    result.coverage = static_cast<double>(covered) / static_cast<double>(trials);
    result.prob_floor = bound.prob_floor;
    result.bound_value = bound.bound_value;
    result.vacuous = bound.vacuous;
    result.trials = trials;
    return result;
}

bool interpolation_check(const ProblemConfig& cfg, std::uint64_t master_seed) {
    validate_config(cfg);
    if (cfg.n >= cfg.p_model())
        throw ConfigError("interpolation_check requires n < p_fake + p_included strictly");
    const GroundTruth truth = make_ground_truth(cfg);
    SeedSpec seed;
    seed.master_seed = master_seed;
    seed.context = kInterpolateContext;
    const Dataset data = gen_dataset(cfg, truth, cfg.n, seed);
    const Matrix a_bar = assemble_model_matrix(data.a_fake, data.a_included);
    const Vector x_bar_hat = min_norm_solve(a_bar, data.response);
    const double residual = (data.response - a_bar * x_bar_hat).norm();
    return residual <= 1e-8 * data.response.norm();
}

} // namespace fakefeat
