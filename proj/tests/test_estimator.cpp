#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "fakefeat/datagen.hpp"
#include "fakefeat/estimator.hpp"

using namespace fakefeat;

namespace {

// Test oracle: the primal closed form (A^T A + lambda I)^{-1} A^T y.
Vector primal_ridge(const Matrix& a, const Vector& y, double lambda) {
    Matrix gram = a.transpose() * a;
    gram.diagonal().array() += lambda;
    return gram.ldlt().solve(a.transpose() * y);
}

// Test oracle: operator norm by power iteration.
double power_iteration_norm(const Matrix& a, int iters = 2000) {
    Vector v = Vector::Ones(a.cols()).normalized();
    for (int i = 0; i < iters; ++i)
        v = (a.transpose() * (a * v)).normalized();
    return (a * v).norm();
}

Matrix random_matrix(Index rows, Index cols, std::uint64_t seed) {
    SeedSpec s;
    s.master_seed = seed;
    return gen_features(rows, cols, s);
}

Vector random_vector(Index n, std::uint64_t seed) {
    SeedSpec s;
    s.master_seed = seed;
    s.role = StreamRole::noise;
    return gen_noise(n, 1.0, s);
}

} // namespace

TEST_CASE("ridge_solve on small hand-checked instances") {
    SUBCASE("identity") {
        const Vector x = ridge_solve(Matrix::Identity(2, 2), Vector{{1.0, 2.0}}, 1.0);
        CHECK(x(0) == doctest::Approx(0.5).epsilon(1e-12));
        CHECK(x(1) == doctest::Approx(1.0).epsilon(1e-12));
    }
    SUBCASE("1x2 wide system") {
        Matrix a(1, 2);
        a << 1.0, 1.0;
        const Vector x = ridge_solve(a, Vector{{2.0}}, 2.0);
        CHECK(x(0) == doctest::Approx(0.5).epsilon(1e-12));
        CHECK(x(1) == doctest::Approx(0.5).epsilon(1e-12));
    }
    SUBCASE("huge lambda shrinks toward zero") {
        const Matrix a = random_matrix(10, 6, 17);
        const Vector y = random_vector(10, 18);
        const double lambda = 1e12;
        const Vector x = ridge_solve(a, y, lambda);
        CHECK(x.norm() <= (a.transpose() * y).norm() / lambda * (1.0 + 1e-10));
    }
    SUBCASE("lambda = 0 is rejected") {
        CHECK_THROWS_AS(ridge_solve(Matrix::Identity(2, 2), Vector{{1.0, 1.0}}, 0.0),
                        LambdaZeroError);
    }
    SUBCASE("dimension mismatch") {
        CHECK_THROWS_AS(ridge_solve(Matrix::Identity(2, 2), Vector::Ones(3), 1.0),
                        DimensionError);
    }
}

TEST_CASE("min_norm_solve") {
    SUBCASE("symmetric wide system") {
        Matrix a(1, 2);
        a << 1.0, 1.0;
        const Vector x = min_norm_solve(a, Vector{{2.0}});
        CHECK(x(0) == doctest::Approx(1.0).epsilon(1e-12));
        CHECK(x(1) == doctest::Approx(1.0).epsilon(1e-12));
    }
    SUBCASE("identity") {
        const Vector y{{1.0, 2.0, 3.0}};
        CHECK((min_norm_solve(Matrix::Identity(3, 3), y) - y).norm() < 1e-12);
    }
    SUBCASE("small-lambda ridge converges to the min-norm solution") {
        const Matrix a = random_matrix(5, 8, 21);
        const Vector y = random_vector(5, 22);
        const Vector mn = min_norm_solve(a, y);
        const Vector ridge = ridge_solve(a, y, 1e-10);
        CHECK((ridge - mn).norm() <= 1e-5 * mn.norm());
    }
}

TEST_CASE("solve dispatches on lambda") {
    const Matrix a = random_matrix(6, 4, 31);
    const Vector y = random_vector(6, 32);
    CHECK((solve(a, y, 0.0) - min_norm_solve(a, y)).norm() == 0.0);
    CHECK((solve(a, y, 1.0) - ridge_solve(a, y, 1.0)).norm() == 0.0);
    SUBCASE("zero model width gives an empty solution") {
        CHECK(solve(Matrix(6, 0), y, 1.0).size() == 0);
        CHECK(solve(Matrix(6, 0), y, 0.0).size() == 0);
    }
}

TEST_CASE("dual and primal ridge forms agree") {
    const double lambdas[] = {1e-3, 1.0, 1e3};
    int instance = 0;
    for (auto [rows, cols] : {std::pair<Index, Index>{20, 8}, {8, 20}, {15, 15}}) {
        const Matrix a = random_matrix(rows, cols, 100 + instance);
        const Vector y = random_vector(rows, 200 + instance);
        ++instance;
        for (double lambda : lambdas) {
            const Vector dual = ridge_solve(a, y, lambda);
            const Vector primal = primal_ridge(a, y, lambda);
            CHECK((dual - primal).norm() <= 1e-8 * primal.norm());
        }
    }
}

TEST_CASE("shrinkage is monotone in lambda") {
    const Matrix a = random_matrix(12, 9, 41);
    const Vector y = random_vector(12, 42);
    double prev = ridge_solve(a, y, 1e-4).norm();
    for (double lambda : {1e-2, 1.0, 1e2, 1e4}) {
        const double cur = ridge_solve(a, y, lambda).norm();
        CHECK(cur <= prev * (1.0 + 1e-12));
        prev = cur;
    }
}

TEST_CASE("interpolation in the overparameterized regime") {
    // n < model width: the min-norm solution fits the data exactly,
    // including the pure-fake-features case.
    for (auto [rows, cols] : {std::pair<Index, Index>{10, 25}, {30, 31}}) {
        const Matrix a = random_matrix(rows, cols, 300 + cols);
        const Vector y = random_vector(rows, 400 + cols);
        const Vector x = min_norm_solve(a, y);
        CHECK((y - a * x).norm() <= 1e-8 * y.norm());
    }
}

TEST_CASE("extend_estimate splits and zero-pads") {
    SUBCASE("blockwise split") {
        const Estimate est = extend_estimate(Vector{{1.0, 2.0, 3.0}}, 1, 2, 2);
        CHECK(est.x_fake == Vector{{1.0}});
        CHECK(est.x_included == Vector{{2.0, 3.0}});
        CHECK(est.x_missing.isZero(0.0));
        CHECK(est.x_missing.size() == 2);
    }
    SUBCASE("all blocks may be empty except the missing tail") {
        const Estimate est = extend_estimate(Vector(0), 0, 0, 3);
        CHECK(est.x_fake.size() == 0);
        CHECK(est.x_included.size() == 0);
        CHECK(est.x_missing == Vector::Zero(3));
    }
    SUBCASE("round trip") {
        const Vector x{{4.0, 5.0, 6.0, 7.0}};
        const Estimate est = extend_estimate(x, 3, 1, 5);
        Vector rebuilt(4);
        rebuilt << est.x_fake, est.x_included;
        CHECK(rebuilt == x);
    }
    SUBCASE("length mismatch") {
        CHECK_THROWS_AS(extend_estimate(Vector::Zero(3), 1, 1, 0), DimensionError);
    }
}

TEST_CASE("predict") {
    const Matrix a_fake = random_matrix(7, 2, 51);
    const Matrix a_included = random_matrix(7, 3, 52);
    SUBCASE("zero estimate predicts zero") {
        Estimate est;
        est.x_fake = Vector::Zero(2);
        est.x_included = Vector::Zero(3);
        CHECK(predict(a_fake, a_included, est).isZero(0.0));
    }
    SUBCASE("empty fake block") {
        Estimate est;
        est.x_fake = Vector(0);
        est.x_included = Vector::Ones(3);
        const Vector y = predict(Matrix(7, 0), a_included, est);
        CHECK((y - a_included * est.x_included).norm() == 0.0);
    }
    SUBCASE("training predictions interpolate for n < model width, lambda = 0") {
        const Matrix af = random_matrix(6, 8, 53);
        const Matrix ai = random_matrix(6, 4, 54);
        Matrix a_bar(6, 12);
        a_bar << af, ai;
        const Vector y = random_vector(6, 55);
        const Estimate est = extend_estimate(min_norm_solve(a_bar, y), 8, 4, 0);
        CHECK((y - predict(af, ai, est)).norm() <= 1e-8 * y.norm());
    }
}

TEST_CASE("svd_factor") {
    SUBCASE("diagonal") {
        Matrix a = Matrix::Zero(2, 2);
        a(0, 0) = 3.0;
        a(1, 1) = 2.0;
        const SvdFactors f = svd_factor(a);
        CHECK(f.singular_values(0) == doctest::Approx(3.0).epsilon(1e-12));
        CHECK(f.singular_values(1) == doctest::Approx(2.0).epsilon(1e-12));
    }
    SUBCASE("zero matrix") {
        const SvdFactors f = svd_factor(Matrix::Zero(3, 2));
        CHECK(f.singular_values.isZero(0.0));
    }
    SUBCASE("reconstruction and ordering on a random 6x4") {
        const Matrix a = random_matrix(6, 4, 61);
        const SvdFactors f = svd_factor(a);
        REQUIRE(f.u.rows() == 6);
        REQUIRE(f.u.cols() == 6);
        REQUIRE(f.v.rows() == 4);
        REQUIRE(f.v.cols() == 4);
        Matrix s = Matrix::Zero(6, 4);
        for (Index i = 0; i < f.singular_values.size(); ++i)
            s(i, i) = f.singular_values(i);
        CHECK((a - f.u * s * f.v.transpose()).norm() <= 1e-10 * a.norm());
        for (Index i = 1; i < f.singular_values.size(); ++i)
            CHECK(f.singular_values(i) <= f.singular_values(i - 1));
        CHECK(f.singular_values.minCoeff() >= 0.0);
        // largest singular value equals the operator norm from power iteration
        CHECK(f.s_max() == doctest::Approx(power_iteration_norm(a)).epsilon(1e-8));
    }
}
