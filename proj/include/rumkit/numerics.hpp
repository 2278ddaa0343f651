#pragma once

#include <Eigen/Dense>
#include <string>
#include <vector>

namespace rumkit {

// Full SVD m = U diag(sigma) V^*, sigma descending. Phases are fixed so the
// factors are reproducible run to run: the first nonzero component of every
// column of V (and of the unpaired columns of U) is made real positive.
struct SvdResult {
    Eigen::MatrixXcd U;
    Eigen::VectorXd sigma;
    Eigen::MatrixXcd V;
};

// Throws std::invalid_argument on empty or non-finite input.
SvdResult svd(const Eigen::MatrixXcd& m);

// Relative threshold shared by rank and kernel extraction.
double singular_threshold(const Eigen::MatrixXcd& m, double tol, double sigma_max);

// Count of singular values above tol*max(rows,cols)*sigma_max.
int rank_with_tol(const Eigen::MatrixXcd& m, double tol);

// Sorts both lists (padding the shorter with zeros) and compares elementwise
// with tolerance rtol relative to the largest singular value present. A report
// string describing the first mismatch is appended when a pointer is given.
bool singular_multiset_equal(std::vector<double> a, std::vector<double> b, double rtol,
                             std::string* report = nullptr);

// Largest principal angle (radians) between the column spans of a and b.
// Returns pi/2 immediately when the spans have different dimensions.
double max_principal_angle(const Eigen::MatrixXcd& a, const Eigen::MatrixXcd& b);

}  // namespace rumkit
