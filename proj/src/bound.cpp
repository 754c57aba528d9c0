#include "fakefeat/bound.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>

#include <nlohmann/json.hpp>

namespace fakefeat {

namespace {

void require_positive_lambda(double lambda) {
    if (!(lambda > 0.0))
        throw LambdaZeroError("the high-probability bound requires lambda > 0");
}

double clamp_pos(double x) {
    return std::max(x, 0.0);
}

} // namespace

double f_g(Index n, Index p_bar, double lambda, double t2) {
    require_positive_lambda(lambda);
    const double r_max = static_cast<double>(std::max(n, p_bar));
    const double r_min = static_cast<double>(std::min(n, p_bar));
    const double numerator_root =
        std::sqrt(static_cast<double>(n)) + std::sqrt(static_cast<double>(p_bar)) + t2;
    const double gap = clamp_pos(std::sqrt(r_max) - std::sqrt(r_min) - t2);
    const double denominator_root = gap * gap + lambda;
    return (numerator_root * numerator_root) / (denominator_root * denominator_root);
}

double f_g_bar(Index n, Index p_bar, double lambda, double t2) {
    require_positive_lambda(lambda);
    if (n < p_bar)
        return 1.0;
    const double gap = clamp_pos(std::sqrt(static_cast<double>(n)) -
                                 std::sqrt(static_cast<double>(p_bar)) - t2);
    const double denominator_root = gap * gap + lambda;
    return (lambda * lambda) / (denominator_root * denominator_root);
}

double prob_floor(double t1, double t2) {
    if (!(t1 >= 0.0) || !(t2 >= 0.0))
        throw NegativeParameterError("prob_floor: t1 and t2 must be >= 0");
    return 1.0 - std::exp(-t1) - 2.0 * std::exp(-t2 * t2 / 2.0);
}

double effective_noise_variance(const GroundTruth& truth, const ProblemConfig& cfg) {
    return truth.missing_power() + cfg.sigma_v * cfg.sigma_v;
}

BoundReport error_bound(const GroundTruth& truth, const ProblemConfig& cfg,
                          const BoundParams& params) {
    require_positive_lambda(cfg.lambda);
    if (!(params.t1 >= 0.0) || !(params.t2 >= 0.0))
        throw NegativeParameterError("error_bound: t1 and t2 must be >= 0");
    BoundReport report;
    const Index p_bar = cfg.p_model();
    report.r_min = std::min(cfg.n, p_bar);
    report.r_max = std::max(cfg.n, p_bar);
    report.f_g = f_g(cfg.n, p_bar, cfg.lambda, params.t2);
    report.f_g_bar = f_g_bar(cfg.n, p_bar, cfg.lambda, params.t2);
    report.prob_floor = prob_floor(params.t1, params.t2);
    report.vacuous = !(report.prob_floor > 0.0);

    const double omega_z2 = effective_noise_variance(truth, cfg);
    const double r_min = static_cast<double>(report.r_min);
    report.signal_term = truth.included_power() * report.f_g_bar;
    report.noise_gain_term =
        omega_z2 * report.f_g * (r_min + 2.0 * std::sqrt(r_min * params.t1) + 2.0 * params.t1);
    report.base_term = omega_z2;
    report.bound_value = report.signal_term + report.noise_gain_term + report.base_term;
    return report;
}

Vector g_coefficients(const Vector& singular_values, double lambda) {
    require_positive_lambda(lambda);
    Vector g(singular_values.size());
    for (Index i = 0; i < singular_values.size(); ++i) {
        const double s2 = singular_values(i) * singular_values(i);
        const double denom = s2 + lambda;
        g(i) = s2 / (denom * denom);
    }
    return g;
}

bool chi2_event_check(const Vector& g, const Vector& z, double omega_z2, double t1) {
    if (g.size() != z.size())
        throw DimensionError("chi2_event_check: g and z lengths differ");
    if (g.size() == 0)
        return true;
    const double lhs = (g.array() * z.array().square()).sum();
    const double rhs =
        omega_z2 * (g.sum() + 2.0 * g.norm() * std::sqrt(t1) + 2.0 * g.maxCoeff() * t1);
    return lhs < rhs;
}

bool singular_event_check(double s_min, double s_max, Index n, Index p_bar, double t2) {
    const double r_max = static_cast<double>(std::max(n, p_bar));
    const double r_min = static_cast<double>(std::min(n, p_bar));
    const double lower = std::sqrt(r_max) - std::sqrt(r_min) - t2;
    const double upper =
        std::sqrt(static_cast<double>(n)) + std::sqrt(static_cast<double>(p_bar)) + t2;
    return lower <= s_min && s_max <= upper;
}

std::string BoundReport::to_json_string() const {
    nlohmann::json j{
        {"f_g", f_g},
        {"f_g_bar", f_g_bar},
        {"bound_value", bound_value},
        {"prob_floor", prob_floor},
        {"r_min", r_min},
        {"r_max", r_max},
        {"signal_term", signal_term},
        {"noise_gain_term", noise_gain_term},
        {"base_term", base_term},
        {"vacuous", vacuous},
    };
    return j.dump();
}

std::string BoundReport::csv_header() {
    return "f_g,f_g_bar,bound_value,prob_floor,r_min,r_max,signal_term,"
           "noise_gain_term,base_term,vacuous";
}

std::string BoundReport::to_csv_row() const {
    char buf[512];
    std::snprintf(buf, sizeof(buf), "%.17g,%.17g,%.17g,%.17g,%lld,%lld,%.17g,%.17g,%.17g,%d",
                  f_g, f_g_bar, bound_value, prob_floor, static_cast<long long>(r_min),
                  static_cast<long long>(r_max), signal_term, noise_gain_term, base_term,
                  vacuous ? 1 : 0);
    return buf;
}

} // namespace fakefeat
