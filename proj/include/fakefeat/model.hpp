#pragma once

#include <Eigen/Dense>

#include "fakefeat/errors.hpp"

namespace fakefeat {

using Matrix = Eigen::MatrixXd;
using Vector = Eigen::VectorXd;
using Index = Eigen::Index;

// Dimensions and scalar parameters of one problem instance.
//
// The underlying system has p_included + p_missing features; the model used
// for estimation has p_fake + p_included features. The signal power `power`
// is split between the included and missing blocks by the ratio r_s.
struct ProblemConfig {
    Index n = 0;          // training sample count
    Index p_fake = 0;     // features in the model but not in the data
    Index p_included = 0; // features in both
    Index p_missing = 0;  // features in the data but not in the model
    double sigma_v = 0.0; // noise standard deviation
    double power = 0.0;   // total signal power of the underlying unknowns
    double r_s = 1.0;     // fraction of `power` carried by the included block
    double lambda = 0.0;  // ridge parameter; 0 selects the min-norm solution

    Index p_model() const { return p_fake + p_included; }
    Index p_system() const { return p_included + p_missing; }
    Index p_total() const { return p_fake + p_included + p_missing; }
};

// The unknown coefficient vectors the data is generated from.
struct GroundTruth {
    Vector x_included; // length p_included
    Vector x_missing;  // length p_missing

    double included_power() const { return x_included.squaredNorm(); }
    double missing_power() const { return x_missing.squaredNorm(); }
    double total_power() const { return included_power() + missing_power(); }
};

// Feature blocks, noise and response for a training or test set.
// All blocks share the same row count; the response never involves a_fake.
struct Dataset {
    Matrix a_fake;
    Matrix a_included;
    Matrix a_missing;
    Vector noise;
    Vector response;

    Index rows() const { return response.size(); }
};

// Solved coefficients split back into blocks. The missing block is always
// identically zero: it is never estimated.
struct Estimate {
    Vector x_fake;
    Vector x_included;
    Vector x_missing;
};

// Checks every ProblemConfig invariant; returns the config unchanged on
// success, throws a ConfigError subclass naming the offending field otherwise.
ProblemConfig validate_config(const ProblemConfig& cfg);

// Builds the deterministic constant-vector ground truth: each included entry
// is sqrt(r_s * power / p_included), each missing entry is
// sqrt((1 - r_s) * power / p_missing). Empty blocks yield empty vectors.
GroundTruth make_ground_truth(const ProblemConfig& cfg);

} // namespace fakefeat
