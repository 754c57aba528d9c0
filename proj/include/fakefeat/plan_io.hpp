#pragma once

#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "fakefeat/experiment.hpp"

namespace fakefeat {

// Parses a ProblemConfig from a flat JSON object with keys
// n, p_fake, p_included, p_missing, sigma_v, power, r_s, lambda.
// Missing numeric keys default to the field defaults; type errors and
// violated invariants raise ConfigError naming the field.
ProblemConfig config_from_json(const nlohmann::json& j);
ProblemConfig load_config(const std::string& path);

// Plan files are the config keys plus lambda_grid, p_f_list, m_features,
// m_noise, n_test, master_seed and optional t1/t2 (both or neither).
ExperimentPlan plan_from_json(const nlohmann::json& j);
ExperimentPlan load_plan(const std::string& path);
nlohmann::json plan_to_json(const ExperimentPlan& plan);

// Deterministic CSV serialization of a sweep (schema: p_fake, lambda,
// jy_analytic_mean, jy_analytic_std, jy_empirical_mean, train_err_mean,
// bound_value, prob_floor, coverage, trials). Optional fields serialize as
// empty cells.
std::string sweep_to_csv(const SweepResult& result);

// Writes sweep.csv and the plan.json metadata sidecar under out_dir.
void write_sweep_outputs(const SweepResult& result, const ExperimentPlan& plan,
                         const std::string& out_dir);

struct CsvTable {
    std::vector<std::string> header;
    std::vector<std::vector<std::string>> rows;
};

CsvTable read_csv(const std::string& path);
CsvTable parse_csv(const std::string& text);

} // namespace fakefeat
