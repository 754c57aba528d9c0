#include <cmath>
#include <cstdint>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <nlohmann/json.hpp>

#include "fakefeat/experiment.hpp"
#include "fakefeat/plan_io.hpp"
#include "fakefeat/svg_plot.hpp"

namespace {

constexpr int kExitRuntime = 1;
constexpr int kExitConfig = 2;
constexpr int kExitCheckFailed = 3;

int cmd_sweep(const std::string& plan_path, const std::string& out_dir,
              std::optional<std::uint64_t> seed, int workers) {
    fakefeat::ExperimentPlan plan = fakefeat::load_plan(plan_path);
    if (seed)
        plan.master_seed = *seed;
    else if (plan.master_seed == 0)
        throw fakefeat::ConfigError(
            "no seed: pass --seed or set 'master_seed' in the plan file");
    std::cerr << "running sweep: " << plan.p_f_list.size() << " p_fake values x "
              << plan.lambda_grid.size() << " lambdas, " << plan.m_features << "x"
              << plan.m_noise << " trials per cell, workers=" << workers << "\n";
    const fakefeat::SweepResult result = fakefeat::sweep(plan, workers);
    fakefeat::write_sweep_outputs(result, plan, out_dir);
    std::cerr << "wrote " << out_dir << "/sweep.csv and " << out_dir << "/plan.json\n";
    return 0;
}

int cmd_coverage(const std::string& config_path, double t1, double t2, long trials,
                 std::uint64_t seed, std::optional<double> lambda_override) {
    fakefeat::ProblemConfig cfg = fakefeat::load_config(config_path);
    if (lambda_override) {
        cfg.lambda = *lambda_override;
        fakefeat::validate_config(cfg);
    }
    if (!(cfg.lambda > 0.0))
        throw fakefeat::LambdaZeroError(
            "coverage requires lambda > 0 (the bound is stated for nonzero ridge parameters)");
    const fakefeat::CoverageResult res =
        fakefeat::coverage_estimate(cfg, fakefeat::BoundParams{t1, t2}, trials, seed);
    nlohmann::json j{
        {"coverage", res.coverage},   {"prob_floor", res.prob_floor},
        {"bound_value", res.bound_value}, {"vacuous", res.vacuous},
        {"trials", res.trials},
    };
    std::cout << j.dump() << "\n";
    if (res.vacuous)
        return 0; // the bound asserts nothing, so there is nothing to fail
    const double slack =
        3.0 * std::sqrt(res.prob_floor * (1.0 - res.prob_floor) / static_cast<double>(trials));
    return res.coverage >= res.prob_floor - slack ? 0 : kExitCheckFailed;
}

int cmd_interpolate(const std::string& config_path, std::uint64_t seed) {
    const fakefeat::ProblemConfig cfg = fakefeat::load_config(config_path);
    const bool ok = fakefeat::interpolation_check(cfg, seed);
    nlohmann::json j{{"interpolates", ok}};
    std::cout << j.dump() << "\n";
    return ok ? 0 : kExitCheckFailed;
}

int cmd_bound_table(const std::string& config_path, const std::vector<double>& t1s,
                    const std::vector<double>& t2s) {
    const fakefeat::ProblemConfig cfg = fakefeat::load_config(config_path);
    const fakefeat::GroundTruth truth = fakefeat::make_ground_truth(cfg);
    std::cout << "t1,t2," << fakefeat::BoundReport::csv_header() << "\n";
    for (double t1 : t1s)
        for (double t2 : t2s) {
            const fakefeat::BoundReport report =
                fakefeat::error_bound(truth, cfg, fakefeat::BoundParams{t1, t2});
            char prefix[64];
            std::snprintf(prefix, sizeof(prefix), "%.17g,%.17g,", t1, t2);
            std::cout << prefix << report.to_csv_row() << "\n";
        }
    return 0;
}

int cmd_plot(const std::string& csv_path, const std::string& out_path) {
    const fakefeat::CsvTable table = fakefeat::read_csv(csv_path);
    const std::string svg = fakefeat::render_sweep_svg(table);
    std::ofstream out(out_path, std::ios::binary);
    if (!out)
        throw fakefeat::Error("cannot open " + out_path + " for writing");
    out << svg;
    std::cerr << "wrote " << out_path << "\n";
    return 0;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"ridge regression with fake and missing features: sweeps, bound "
                 "evaluation and coverage checks"};
    app.require_subcommand(1);

    std::string plan_path, out_dir, config_path, csv_path, out_path;
    std::optional<std::uint64_t> seed_opt;
    std::uint64_t seed = 0;
    int workers = 1;
    double t1 = 0.0, t2 = 0.0;
    long trials = 500;
    std::optional<double> lambda_override;
    std::vector<double> t1s, t2s;

    auto* sweep = app.add_subcommand("sweep", "run a (p_fake, lambda) sweep from a plan file");
    sweep->add_option("--plan", plan_path, "plan JSON file")->required();
    sweep->add_option("--out", out_dir, "output directory")->required();
    sweep->add_option("--seed", seed_opt, "master seed (overrides the plan)");
    sweep->add_option("--workers", workers, "worker threads (does not change results)")
        ->check(CLI::PositiveNumber);

    auto* coverage =
        app.add_subcommand("coverage", "estimate empirical coverage of the error bound");
    coverage->add_option("--config", config_path, "problem config JSON file")->required();
    coverage->add_option("--t1", t1, "probability parameter t1")->required();
    coverage->add_option("--t2", t2, "probability parameter t2")->required();
    coverage->add_option("--trials", trials, "independent trials")->check(CLI::PositiveNumber);
    coverage->add_option("--seed", seed, "master seed")->required();
    coverage->add_option("--lambda", lambda_override, "override the config's ridge parameter");

    auto* interpolate =
        app.add_subcommand("interpolate", "check training-data interpolation at lambda = 0");
    interpolate->add_option("--config", config_path, "problem config JSON file")->required();
    interpolate->add_option("--seed", seed, "master seed")->required();

    auto* bound_table =
        app.add_subcommand("bound-table", "print bound values for (t1, t2) combinations");
    bound_table->add_option("--config", config_path, "problem config JSON file")->required();
    bound_table->add_option("--t1", t1s, "t1 values")->required();
    bound_table->add_option("--t2", t2s, "t2 values")->required();

    auto* plot = app.add_subcommand("plot", "render a sweep CSV as an SVG line chart");
    plot->add_option("--csv", csv_path, "sweep CSV file")->required();
    plot->add_option("--out", out_path, "output SVG path")->required();

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : kExitConfig;
    }

    try {
        if (sweep->parsed())
            return cmd_sweep(plan_path, out_dir, seed_opt, workers);
        if (coverage->parsed())
            return cmd_coverage(config_path, t1, t2, trials, seed, lambda_override);
        if (interpolate->parsed())
            return cmd_interpolate(config_path, seed);
        if (bound_table->parsed())
            return cmd_bound_table(config_path, t1s, t2s);
        if (plot->parsed())
            return cmd_plot(csv_path, out_path);
    } catch (const fakefeat::LambdaZeroError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitConfig;
    } catch (const fakefeat::ConfigError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitConfig;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitRuntime;
    }
    return kExitConfig;
}
