#pragma once

#include <string>

#include "fakefeat/model.hpp"

namespace fakefeat {

// Probability parameters of the high-probability bound.
struct BoundParams {
    double t1 = 0.0;
    double t2 = 0.0;
};

// Evaluated bound for one (config, truth, params) triple. The bound value
// decomposes as signal_term + noise_gain_term + base_term; prob_floor may be
// negative, in which case the bound asserts nothing (vacuous = true).
struct BoundReport {
    double f_g = 0.0;
    double f_g_bar = 0.0;
    double bound_value = 0.0;
    double prob_floor = 0.0;
    Index r_min = 0;
    Index r_max = 0;
    double signal_term = 0.0;     // ||x_included||^2 * f_g_bar
    double noise_gain_term = 0.0; // omega_z^2 * f_g * (r_min + 2 sqrt(r_min t1) + 2 t1)
    double base_term = 0.0;       // omega_z^2
    bool vacuous = false;

    std::string to_json_string() const;
    static std::string csv_header();
    std::string to_csv_row() const;
};

// (sqrt(n) + sqrt(p_bar) + t2)^2 /
//   (((sqrt(r_max) - sqrt(r_min) - t2)_+)^2 + lambda)^2,
// where (.)_+ clamps at zero before squaring. Requires lambda > 0.
double f_g(Index n, Index p_bar, double lambda, double t2);

// lambda^2 / (((sqrt(n) - sqrt(p_bar) - t2)_+)^2 + lambda)^2 when n >= p_bar,
// and exactly 1 when n < p_bar. Requires lambda > 0.
double f_g_bar(Index n, Index p_bar, double lambda, double t2);

// 1 - exp(-t1) - 2 exp(-t2^2 / 2). Negative values are returned as-is.
double prob_floor(double t1, double t2);

// Assembles the full high-probability bound for the generalization error.
BoundReport error_bound(const GroundTruth& truth, const ProblemConfig& cfg,
                          const BoundParams& params);

// g_i = s_i^2 / (s_i^2 + lambda)^2 for each singular value. Requires lambda > 0.
Vector g_coefficients(const Vector& singular_values, double lambda);

// True iff sum_i g_i z_i^2 <
//   omega_z2 * (sum_i g_i + 2 ||g|| sqrt(t1) + 2 max_i(g_i) t1).
bool chi2_event_check(const Vector& g, const Vector& z, double omega_z2, double t1);

// True iff sqrt(r_max) - sqrt(r_min) - t2 <= s_min and
//          s_max <= sqrt(n) + sqrt(p_bar) + t2.
bool singular_event_check(double s_min, double s_max, Index n, Index p_bar, double t2);

// omega_z^2 = ||x_missing||^2 + sigma_v^2, the effective noise variance.
double effective_noise_variance(const GroundTruth& truth, const ProblemConfig& cfg);

} // namespace fakefeat
