#include "fakefeat/estimator.hpp"

#include <algorithm>
#include <string>

namespace fakefeat {

namespace {

double pinv_threshold(Index rows, Index cols) {
    return 1e-12 * static_cast<double>(std::max(rows, cols));
}

} // namespace

BatchSolver::BatchSolver(const Matrix& a_bar, double lambda)
    : a_bar_(a_bar), lambda_(lambda) {
    if (!(lambda >= 0.0))
        throw NegativeParameterError("BatchSolver: lambda must be >= 0");
    if (a_bar_.cols() == 0)
        return; // degenerate width, solves return empty vectors
    if (lambda_ > 0.0) {
        Matrix gram = a_bar_ * a_bar_.transpose();
        gram.diagonal().array() += lambda_;
        if (!gram.allFinite())
            throw SolveError("shifted Gram matrix has non-finite entries");
        gram_llt_.compute(gram);
        if (gram_llt_.info() != Eigen::Success)
            throw SolveError("Cholesky factorization of the shifted Gram matrix failed");
    } else {
        svd_.compute(a_bar_, Eigen::ComputeThinU | Eigen::ComputeThinV);
        svd_.setThreshold(pinv_threshold(a_bar_.rows(), a_bar_.cols()));
        if (svd_.info() != Eigen::Success)
            throw ConvergenceError("SVD failed to converge");
    }
}

Vector BatchSolver::solve(const Vector& y) const {
    if (y.size() != a_bar_.rows())
        throw DimensionError("solve: response length " + std::to_string(y.size()) +
                             " does not match row count " + std::to_string(a_bar_.rows()));
    if (a_bar_.cols() == 0)
        return Vector(0);
    if (lambda_ > 0.0)
        return a_bar_.transpose() * gram_llt_.solve(y);
    return svd_.solve(y);
}

Matrix BatchSolver::solve_many(const Matrix& ys) const {
    if (ys.rows() != a_bar_.rows())
        throw DimensionError("solve_many: row count mismatch");
    if (a_bar_.cols() == 0)
        return Matrix(0, ys.cols());
    if (lambda_ > 0.0)
        return a_bar_.transpose() * gram_llt_.solve(ys);
    return svd_.solve(ys);
}

Vector ridge_solve(const Matrix& a_bar, const Vector& y, double lambda) {
    if (!(lambda > 0.0))
        throw LambdaZeroError("ridge_solve requires lambda > 0");
    return BatchSolver(a_bar, lambda).solve(y);
}

Vector min_norm_solve(const Matrix& a_bar, const Vector& y) {
    return BatchSolver(a_bar, 0.0).solve(y);
}

Vector solve(const Matrix& a_bar, const Vector& y, double lambda) {
    if (!(lambda >= 0.0))
        throw NegativeParameterError("solve: lambda must be >= 0");
    return lambda == 0.0 ? min_norm_solve(a_bar, y) : ridge_solve(a_bar, y, lambda);
}

Estimate extend_estimate(const Vector& x_bar_hat, Index p_fake, Index p_included,
                         Index p_missing) {
    if (p_fake < 0 || p_included < 0 || p_missing < 0)
        throw DimensionError("extend_estimate: negative block width");
    if (x_bar_hat.size() != p_fake + p_included)
        throw DimensionError("extend_estimate: solution length " +
                             std::to_string(x_bar_hat.size()) + " != p_fake + p_included");
    Estimate est;
    est.x_fake = x_bar_hat.head(p_fake);
    est.x_included = x_bar_hat.tail(p_included);
    est.x_missing = Vector::Zero(p_missing);
    return est;
}

Vector predict(const Matrix& a_fake, const Matrix& a_included, const Estimate& est) {
    if (a_fake.cols() != est.x_fake.size())
        throw DimensionError("predict: fake block width mismatch");
    if (a_included.cols() != est.x_included.size())
        throw DimensionError("predict: included block width mismatch");
    if (a_fake.rows() != a_included.rows())
        throw DimensionError("predict: row counts disagree");
    return a_fake * est.x_fake + a_included * est.x_included;
}

SvdFactors svd_factor(const Matrix& a_bar) {
    SvdFactors f;
    if (a_bar.cols() == 0) {
        f.u = Matrix::Identity(a_bar.rows(), a_bar.rows());
        f.singular_values = Vector(0);
        f.v = Matrix(0, 0);
        return f;
    }
    Eigen::BDCSVD<Matrix> svd(a_bar, Eigen::ComputeFullU | Eigen::ComputeFullV);
    if (svd.info() != Eigen::Success)
        throw ConvergenceError("svd_factor: decomposition did not converge");
    f.u = svd.matrixU();
    f.singular_values = svd.singularValues();
    f.v = svd.matrixV();
    return f;
}

} // namespace fakefeat
