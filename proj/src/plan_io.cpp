#include "fakefeat/plan_io.hpp"

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>

namespace fakefeat {

namespace {

using nlohmann::json;

double get_number(const json& j, const char* key, double fallback) {
    if (!j.contains(key))
        return fallback;
    if (!j.at(key).is_number())
        throw ConfigError(std::string("field '") + key + "' must be a number");
    return j.at(key).get<double>();
}

Index get_index(const json& j, const char* key, Index fallback) {
    if (!j.contains(key))
        return fallback;
    if (!j.at(key).is_number_integer())
        throw ConfigError(std::string("field '") + key + "' must be an integer");
    return j.at(key).get<Index>();
}

std::string format_double(double v) {
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%.17g", v);
    return buf;
}

std::string format_optional(const std::optional<double>& v) {
    return v ? format_double(*v) : std::string();
}

} // namespace

ProblemConfig config_from_json(const json& j) {
    if (!j.is_object())
        throw ConfigError("config must be a JSON object");
    ProblemConfig cfg;
    cfg.n = get_index(j, "n", cfg.n);
    cfg.p_fake = get_index(j, "p_fake", cfg.p_fake);
    cfg.p_included = get_index(j, "p_included", cfg.p_included);
    cfg.p_missing = get_index(j, "p_missing", cfg.p_missing);
    cfg.sigma_v = get_number(j, "sigma_v", cfg.sigma_v);
    cfg.power = get_number(j, "power", cfg.power);
    cfg.r_s = get_number(j, "r_s", cfg.r_s);
    cfg.lambda = get_number(j, "lambda", cfg.lambda);
    return validate_config(cfg);
}

ProblemConfig load_config(const std::string& path) {
    std::ifstream in(path);
    if (!in)
        throw ConfigError("cannot open config file: " + path);
    json j;
    try {
        in >> j;
    } catch (const json::parse_error& e) {
        throw ConfigError("config parse error in " + path + ": " + e.what());
    }
    return config_from_json(j);
}

ExperimentPlan plan_from_json(const json& j) {
    if (!j.is_object())
        throw ConfigError("plan must be a JSON object");
    ExperimentPlan plan;
    // base config lambda is irrelevant for a sweep; the grid drives it
    json base = j;
    base.erase("lambda");
    plan.base = config_from_json(base);

    if (!j.contains("lambda_grid") || !j.at("lambda_grid").is_array())
        throw ConfigError("field 'lambda_grid' must be an array of numbers");
    for (const auto& v : j.at("lambda_grid")) {
        if (!v.is_number())
            throw ConfigError("field 'lambda_grid' must contain only numbers");
        plan.lambda_grid.push_back(v.get<double>());
    }
    if (!j.contains("p_f_list") || !j.at("p_f_list").is_array())
        throw ConfigError("field 'p_f_list' must be an array of integers");
    for (const auto& v : j.at("p_f_list")) {
        if (!v.is_number_integer())
            throw ConfigError("field 'p_f_list' must contain only integers");
        plan.p_f_list.push_back(v.get<Index>());
    }
    plan.m_features = static_cast<int>(get_index(j, "m_features", plan.m_features));
    plan.m_noise = static_cast<int>(get_index(j, "m_noise", plan.m_noise));
    plan.n_test = get_index(j, "n_test", plan.n_test);
    if (j.contains("master_seed")) {
        if (!j.at("master_seed").is_number_unsigned() && !j.at("master_seed").is_number_integer())
            throw ConfigError("field 'master_seed' must be an unsigned integer");
        plan.master_seed = j.at("master_seed").get<std::uint64_t>();
    }
    const bool has_t1 = j.contains("t1");
    const bool has_t2 = j.contains("t2");
    if (has_t1 != has_t2)
        throw ConfigError("fields 't1' and 't2' must be given together");
    if (has_t1) {
        BoundParams bp;
        bp.t1 = get_number(j, "t1", 0.0);
        bp.t2 = get_number(j, "t2", 0.0);
        plan.bound_params = bp;
    }
    validate_plan(plan);
    return plan;
}

ExperimentPlan load_plan(const std::string& path) {
    std::ifstream in(path);
    if (!in)
        throw ConfigError("cannot open plan file: " + path);
    json j;
    try {
        in >> j;
    } catch (const json::parse_error& e) {
        throw ConfigError("plan parse error in " + path + ": " + e.what());
    }
    return plan_from_json(j);
}

json plan_to_json(const ExperimentPlan& plan) {
    json j{
        {"n", plan.base.n},
        {"p_fake", plan.base.p_fake},
        {"p_included", plan.base.p_included},
        {"p_missing", plan.base.p_missing},
        {"sigma_v", plan.base.sigma_v},
        {"power", plan.base.power},
        {"r_s", plan.base.r_s},
        {"lambda_grid", plan.lambda_grid},
        {"p_f_list", plan.p_f_list},
        {"m_features", plan.m_features},
        {"m_noise", plan.m_noise},
        {"n_test", plan.n_test},
        {"master_seed", plan.master_seed},
        // the empirical column is the per-sample mean squared test residual
        {"jy_empirical_normalization", "per_sample_mean"},
    };
    if (plan.bound_params) {
        j["t1"] = plan.bound_params->t1;
        j["t2"] = plan.bound_params->t2;
    }
    return j;
}

std::string sweep_to_csv(const SweepResult& result) {
    std::string out = "p_fake,lambda,jy_analytic_mean,jy_analytic_std,jy_empirical_mean,"
                      "train_err_mean,bound_value,prob_floor,coverage,trials\n";
    for (const SweepRow& row : result.rows) {
        out += std::to_string(row.p_fake);
        out += ',';
        out += format_double(row.lambda);
        out += ',';
        out += format_double(row.jy_analytic_mean);
        out += ',';
        out += format_double(row.jy_analytic_std);
        out += ',';
        out += format_double(row.jy_empirical_mean);
        out += ',';
        out += format_double(row.train_err_mean);
        out += ',';
        out += format_optional(row.bound_value);
        out += ',';
        out += format_optional(row.prob_floor);
        out += ',';
        out += format_optional(row.coverage);
        out += ',';
        out += std::to_string(row.trials);
        out += '\n';
    }
    return out;
}

void write_sweep_outputs(const SweepResult& result, const ExperimentPlan& plan,
                         const std::string& out_dir) {
    std::filesystem::create_directories(out_dir);
    const std::filesystem::path base(out_dir);
    {
        std::ofstream csv(base / "sweep.csv", std::ios::binary);
        if (!csv)
            throw Error("cannot write " + (base / "sweep.csv").string());
        csv << sweep_to_csv(result);
    }
    {
        std::ofstream meta(base / "plan.json", std::ios::binary);
        if (!meta)
            throw Error("cannot write " + (base / "plan.json").string());
        meta << plan_to_json(plan).dump(2) << '\n';
    }
}

CsvTable parse_csv(const std::string& text) {
    CsvTable table;
    std::istringstream in(text);
    std::string line;
    bool first = true;
    while (std::getline(in, line)) {
        if (!line.empty() && line.back() == '\r')
            line.pop_back();
        if (line.empty())
            continue;
        std::vector<std::string> cells;
        std::string cell;
        std::istringstream ls(line);
        while (std::getline(ls, cell, ','))
            cells.push_back(cell);
        if (line.back() == ',')
            cells.emplace_back();
        if (first) {
            table.header = std::move(cells);
            first = false;
        } else {
            cells.resize(table.header.size());
            table.rows.push_back(std::move(cells));
        }
    }
    return table;
}

CsvTable read_csv(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in)
        throw ConfigError("cannot open CSV file: " + path);
    std::ostringstream buf;
    buf << in.rdbuf();
    return parse_csv(buf.str());
}

} // namespace fakefeat
