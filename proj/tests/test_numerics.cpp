#include <cmath>
#include <numbers>
#include <random>

#include "doctest.h"
#include "rumkit/numerics.hpp"

using namespace rumkit;

namespace {

Eigen::MatrixXcd random_matrix(int rows, int cols, unsigned seed) {
    std::mt19937_64 rng(seed);
    std::normal_distribution<double> gauss(0.0, 1.0);
    Eigen::MatrixXcd m(rows, cols);
    for (int r = 0; r < rows; ++r)
        for (int c = 0; c < cols; ++c) m(r, c) = std::complex<double>(gauss(rng), gauss(rng));
    return m;
}

}  // namespace

TEST_CASE("svd reconstructs the matrix with unitary factors") {
    Eigen::MatrixXcd m = random_matrix(5, 3, 11);
    SvdResult s = svd(m);
    Eigen::MatrixXcd rebuilt =
        s.U.leftCols(3) * s.sigma.asDiagonal() * s.V.adjoint();
    CHECK((m - rebuilt).cwiseAbs().maxCoeff() < 1e-12 * s.sigma(0) * 5);
    CHECK((s.U.adjoint() * s.U - Eigen::MatrixXcd::Identity(5, 5)).cwiseAbs().maxCoeff() < 1e-11);
    CHECK((s.V.adjoint() * s.V - Eigen::MatrixXcd::Identity(3, 3)).cwiseAbs().maxCoeff() < 1e-11);
    for (int i = 1; i < s.sigma.size(); ++i) CHECK(s.sigma(i - 1) >= s.sigma(i));
}

TEST_CASE("svd output is reproducible and phase-fixed") {
    Eigen::MatrixXcd m = random_matrix(4, 4, 7);
    SvdResult a = svd(m);
    SvdResult b = svd(m);
    CHECK((a.U - b.U).cwiseAbs().maxCoeff() == 0.0);
    CHECK((a.V - b.V).cwiseAbs().maxCoeff() == 0.0);
    for (int c = 0; c < a.V.cols(); ++c) {
        for (int r = 0; r < a.V.rows(); ++r) {
            if (std::abs(a.V(r, c)) > 1e-14) {
                CHECK(a.V(r, c).real() > 0.0);
                CHECK(std::abs(a.V(r, c).imag()) < 1e-13);
                break;
            }
        }
    }
}

TEST_CASE("svd rejects empty and non-finite input") {
    CHECK_THROWS_AS(svd(Eigen::MatrixXcd()), std::invalid_argument);
    Eigen::MatrixXcd bad = Eigen::MatrixXcd::Zero(2, 2);
    bad(0, 0) = std::numeric_limits<double>::quiet_NaN();
    CHECK_THROWS_AS(svd(bad), std::invalid_argument);
}

TEST_CASE("rank honors the relative threshold") {
    Eigen::MatrixXcd m = Eigen::MatrixXcd::Zero(3, 3);
    m(0, 0) = 3.0;
    m(1, 1) = 1e-3;
    m(2, 2) = 1e-12;
    CHECK(rank_with_tol(m, 1e-10) == 2);
    CHECK(rank_with_tol(m, 1e-2) == 1);
    CHECK(rank_with_tol(m, 1e-14) == 3);
    CHECK(rank_with_tol(Eigen::MatrixXcd::Identity(4, 4), 1e-10) == 4);
}

TEST_CASE("singular multisets compare as sorted padded lists") {
    CHECK(singular_multiset_equal({3.0, 1.0}, {1.0, 3.0}, 1e-9));
    CHECK(singular_multiset_equal({3.0, 1.0, 0.0}, {3.0, 1.0}, 1e-9));
    CHECK(singular_multiset_equal({3.0, 1.0, 1e-12}, {3.0, 1.0}, 1e-9));
    std::string report;
    CHECK_FALSE(singular_multiset_equal({3.0, 1.0}, {3.0, 1.001}, 1e-9, &report));
    CHECK_FALSE(report.empty());
    CHECK(singular_multiset_equal({}, {}, 1e-9));
}

TEST_CASE("principal angles measure span mismatch") {
    Eigen::MatrixXcd a = Eigen::MatrixXcd::Zero(3, 2);
    a(0, 0) = 1.0;
    a(1, 1) = 1.0;
    Eigen::MatrixXcd b(3, 2);
    b.setZero();
    b(0, 0) = 1.0;
    b(1, 0) = 1.0;
    b(0, 1) = 1.0;
    b(1, 1) = -1.0;
    CHECK(max_principal_angle(a, b) < 1e-12);

    Eigen::MatrixXcd e1 = Eigen::MatrixXcd::Zero(3, 1);
    e1(0, 0) = 1.0;
    Eigen::MatrixXcd e2 = Eigen::MatrixXcd::Zero(3, 1);
    e2(1, 0) = 1.0;
    CHECK(max_principal_angle(e1, e2) == doctest::Approx(std::numbers::pi / 2));
    CHECK(max_principal_angle(a, e1) == doctest::Approx(std::numbers::pi / 2));

    const double theta = 0.01;
    Eigen::MatrixXcd tilted = Eigen::MatrixXcd::Zero(3, 1);
    tilted(1, 0) = std::cos(theta);
    tilted(2, 0) = std::sin(theta);
    CHECK(max_principal_angle(e2, tilted) == doctest::Approx(theta).epsilon(1e-6));
}

TEST_CASE("threshold scales with the matrix size and largest value") {
    Eigen::MatrixXcd m = Eigen::MatrixXcd::Identity(4, 6);
    CHECK(singular_threshold(m, 1e-10, 2.0) == doctest::Approx(1e-10 * 6 * 2.0));
}
