#pragma once

#include <optional>

#include "fakefeat/model.hpp"

namespace fakefeat {

// Blockwise generalization-error decomposition for one estimate.
// jy_analytic = err_fake + err_included + err_missing + sigma_v^2.
struct ErrorReport {
    double jy_analytic = 0.0;
    std::optional<double> jy_empirical; // per-sample mean squared test residual
    double training_error = 0.0;        // unnormalized squared training residual
    double err_fake = 0.0;              // ||x_hat_fake||^2
    double err_included = 0.0;          // ||x_included - x_hat_included||^2
    double err_missing = 0.0;           // ||x_missing||^2
};

// Exact expected squared prediction error on a fresh sample, given the
// estimate: computed blockwise, no sampling involved.
ErrorReport gen_error_analytic(const GroundTruth& truth, const Estimate& est,
                               double sigma_v);

// Mean squared prediction residual on a test set: ||y - y_hat||^2 / rows.
double gen_error_empirical(const Dataset& test, const Estimate& est);

// Squared residual norm ||y - y_hat||^2 (unnormalized).
double training_error(const Vector& y, const Vector& y_hat);

} // namespace fakefeat
