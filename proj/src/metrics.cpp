#include "fakefeat/metrics.hpp"

#include "fakefeat/estimator.hpp"

namespace fakefeat {

ErrorReport gen_error_analytic(const GroundTruth& truth, const Estimate& est,
                               double sigma_v) {
    if (truth.x_included.size() != est.x_included.size())
        throw DimensionError("gen_error_analytic: included block length mismatch");
    if (truth.x_missing.size() != est.x_missing.size())
        throw DimensionError("gen_error_analytic: missing block length mismatch");
    ErrorReport report;
    report.err_fake = est.x_fake.squaredNorm();
    report.err_included = (truth.x_included - est.x_included).squaredNorm();
    report.err_missing = (truth.x_missing - est.x_missing).squaredNorm();
    report.jy_analytic =
        report.err_fake + report.err_included + report.err_missing + sigma_v * sigma_v;
    return report;
}

double gen_error_empirical(const Dataset& test, const Estimate& est) {
    if (test.rows() < 1)
        throw DimensionError("gen_error_empirical: test set is empty");
    const Vector y_hat = predict(test.a_fake, test.a_included, est);
    return (test.response - y_hat).squaredNorm() / static_cast<double>(test.rows());
}

double training_error(const Vector& y, const Vector& y_hat) {
    if (y.size() != y_hat.size())
        throw DimensionError("training_error: length mismatch");
    return (y - y_hat).squaredNorm();
}

} // namespace fakefeat
