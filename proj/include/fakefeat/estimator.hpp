#pragma once

#include "fakefeat/model.hpp"

namespace fakefeat {

// Full singular value decomposition of the model feature matrix.
struct SvdFactors {
    Matrix u;              // n x n orthogonal
    Vector singular_values; // length min(n, p_model), non-increasing
    Matrix v;              // p_model x p_model orthogonal

    double s_min() const {
        return singular_values.size() > 0 ? singular_values(singular_values.size() - 1) : 0.0;
    }
    double s_max() const {
        return singular_values.size() > 0 ? singular_values(0) : 0.0;
    }
};

// Factors the model matrix once so many right-hand sides can be solved at the
// cost of one factorization. lambda > 0 uses a Cholesky factorization of the
// n x n shifted Gram matrix A A^T + lambda I (dual form); lambda = 0 uses an
// SVD-based pseudoinverse with singular values below
// 1e-12 * max(n, p_model) * s_max truncated to zero.
class BatchSolver {
public:
    BatchSolver(const Matrix& a_bar, double lambda);

    Vector solve(const Vector& y) const;
    Matrix solve_many(const Matrix& ys) const; // one column per right-hand side

private:
    Matrix a_bar_;
    double lambda_;
    Eigen::LLT<Matrix> gram_llt_;       // valid iff lambda > 0
    Eigen::BDCSVD<Matrix> svd_;         // valid iff lambda == 0
};

// Ridge solution A^T (A A^T + lambda I)^{-1} y. Requires lambda > 0.
Vector ridge_solve(const Matrix& a_bar, const Vector& y, double lambda);

// Minimum l2-norm least-squares solution via the pseudoinverse.
Vector min_norm_solve(const Matrix& a_bar, const Vector& y);

// Dispatch: min_norm_solve when lambda = 0, ridge_solve otherwise.
Vector solve(const Matrix& a_bar, const Vector& y, double lambda);

// Splits the solved coefficient vector into (fake, included) by position and
// appends an all-zero missing block of length p_missing.
Estimate extend_estimate(const Vector& x_bar_hat, Index p_fake, Index p_included,
                         Index p_missing);

// a_fake * x_fake + a_included * x_included.
Vector predict(const Matrix& a_fake, const Matrix& a_included, const Estimate& est);

// Full SVD with shape and ordering guarantees per SvdFactors.
SvdFactors svd_factor(const Matrix& a_bar);

} // namespace fakefeat
