#include "rumkit/numerics.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <sstream>
#include <stdexcept>

namespace rumkit {

namespace {

// Rotate a column so its first nonzero entry is real positive; returns the
// applied phase so the paired factor can be rotated identically.
std::complex<double> fix_column_phase(Eigen::MatrixXcd& m, int col) {
    for (int r = 0; r < m.rows(); ++r) {
        std::complex<double> x = m(r, col);
        double a = std::abs(x);
        if (a > 1e-14) {
            std::complex<double> phase = std::conj(x) / a;
            m.col(col) *= phase;
            return phase;
        }
    }
    return {1.0, 0.0};
}

}  // namespace

SvdResult svd(const Eigen::MatrixXcd& m) {
    if (m.rows() == 0 || m.cols() == 0)
        throw std::invalid_argument("svd: empty matrix");
    if (!m.allFinite())
        throw std::invalid_argument("svd: non-finite entries");

    Eigen::JacobiSVD<Eigen::MatrixXcd> solver(m, Eigen::ComputeFullU | Eigen::ComputeFullV);
    SvdResult out;
    out.U = solver.matrixU();
    out.sigma = solver.singularValues();
    out.V = solver.matrixV();

    const int paired = static_cast<int>(out.sigma.size());
    for (int c = 0; c < out.V.cols(); ++c) {
        std::complex<double> phase = fix_column_phase(out.V, c);
        if (c < paired && c < out.U.cols()) out.U.col(c) *= phase;
    }
    for (int c = paired; c < out.U.cols(); ++c) fix_column_phase(out.U, c);
    return out;
}

double singular_threshold(const Eigen::MatrixXcd& m, double tol, double sigma_max) {
    return tol * static_cast<double>(std::max(m.rows(), m.cols())) * sigma_max;
}

int rank_with_tol(const Eigen::MatrixXcd& m, double tol) {
    SvdResult s = svd(m);
    double sigma_max = s.sigma.size() > 0 ? s.sigma(0) : 0.0;
    double threshold = singular_threshold(m, tol, sigma_max);
    int rank = 0;
    for (int i = 0; i < s.sigma.size(); ++i)
        if (s.sigma(i) > threshold) ++rank;
    return rank;
}

bool singular_multiset_equal(std::vector<double> a, std::vector<double> b, double rtol,
                             std::string* report) {
    size_t n = std::max(a.size(), b.size());
    a.resize(n, 0.0);
    b.resize(n, 0.0);
    std::sort(a.begin(), a.end(), std::greater<>());
    std::sort(b.begin(), b.end(), std::greater<>());
    double scale = 0.0;
    for (double x : a) scale = std::max(scale, x);
    for (double x : b) scale = std::max(scale, x);
    for (size_t i = 0; i < n; ++i) {
        if (std::abs(a[i] - b[i]) > rtol * scale) {
            if (report) {
                std::ostringstream os;
                os << "singular values differ at position " << i << ": " << a[i] << " vs " << b[i]
                   << " (scale " << scale << ")";
                *report += os.str();
            }
            return false;
        }
    }
    return true;
}

double max_principal_angle(const Eigen::MatrixXcd& a, const Eigen::MatrixXcd& b) {
    if (a.cols() != b.cols() || a.rows() != b.rows()) return std::numbers::pi / 2.0;
    if (a.cols() == 0) return 0.0;
    // Orthonormalize both spans, then the singular values of Qa^* Qb are the
    // cosines of the principal angles.
    Eigen::HouseholderQR<Eigen::MatrixXcd> qra(a), qrb(b);
    Eigen::MatrixXcd qa = qra.householderQ() * Eigen::MatrixXcd::Identity(a.rows(), a.cols());
    Eigen::MatrixXcd qb = qrb.householderQ() * Eigen::MatrixXcd::Identity(b.rows(), b.cols());
    Eigen::MatrixXcd cross = qa.adjoint() * qb;
    Eigen::JacobiSVD<Eigen::MatrixXcd> s(cross);
    double cmin = std::clamp(s.singularValues().minCoeff(), 0.0, 1.0);
    if (cmin * cmin < 0.5) return std::acos(cmin);
    // acos resolves nothing below ~1e-8; for small angles the singular values
    // of (I - Qa Qa^*) Qb are the sines, and asin keeps full precision there.
    Eigen::JacobiSVD<Eigen::MatrixXcd> sines(qb - qa * cross);
    double smax = std::clamp(sines.singularValues().maxCoeff(), 0.0, 1.0);
    return std::asin(smax);
}

}  // namespace rumkit
