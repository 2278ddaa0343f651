#pragma once

#include <Eigen/Dense>
#include <vector>

#include "rumkit/coboundary.hpp"
#include "rumkit/symbol.hpp"

namespace rumkit {

inline constexpr double kDefaultKernelTol = 1e-10;

struct KernelResult {
    int kernel_dim = 0;
    Eigen::MatrixXcd basis;  // orthonormal columns, deterministic phases
    double sigma_min = 0.0;
};

// SVD-based kernel: threshold tol*max(rows,cols)*sigma_max, kernel dimension
// cols - rank, basis = trailing right singular vectors. A matrix with no rows
// has a full kernel and sigma_min 0.
KernelResult kernel_basis(const Eigen::MatrixXcd& m, double tol = kDefaultKernelTol);

struct SpectrumSample {
    Character chi;
    int kernel_dim = 0;
    double sigma_min = 0.0;
    Eigen::MatrixXcd kernel;  // orthonormal basis
    bool in_spectrum = false;  // kernel_dim >= 1
};

// Evaluates the symbol at every character (parallel map, deterministic order)
// and reports every sample, member of the spectrum or not.
std::vector<SpectrumSample> rum_spectrum(const SymmetricFramework& fw,
                                         const std::vector<Character>& characters,
                                         double tol = kDefaultKernelTol);
std::vector<SpectrumSample> rum_spectrum_grid(const SymmetricFramework& fw, long long grid,
                                              double tol = kDefaultKernelTol);

// z at (gamma, [v]) is chi(gamma) dtau(gamma) a_[v]; stored per covering
// vertex in window-major order.
struct FlexField {
    Window window;
    int dim_x = 0;
    std::vector<Eigen::VectorXcd> values;  // parallel to covering vertices

    Eigen::VectorXcd stacked() const;
    double max_abs() const;
};

FlexField build_flex(const SymmetricFramework& fw, const Character& chi,
                     const Eigen::VectorXcd& a, const Window& w);

struct FlexReport {
    double max_residual = 0.0;       // over interior rows
    double boundary_residual = 0.0;  // over non-interior rows, informational
    int worst_edge_instance = -1;
    double atol = 0.0;
    int interior_rows = 0;
    bool pass = false;
};

// Applies the windowed coboundary to the flex and checks the interior rows
// against atol = 1e-9 (1 + ||flex||_inf * max block norm).
FlexReport verify_flex(const SymmetricFramework& fw, const FlexField& flex);
// Same check against a coboundary already assembled on the flex's window.
FlexReport verify_flex(const CoboundaryMatrix& c, const FlexField& flex);

// Coarse grid over the free torus, then re-samples a symmetric neighborhood
// (offsets j/(grid*factor), |j| <= factor) of every coarse sample whose
// sigma_min is within 10x of its kernel threshold. Free rank must be >= 1.
// Returns the refined samples, deduplicated and deterministically ordered.
std::vector<SpectrumSample> spectrum_scan_refine(const SymmetricFramework& fw, long long grid,
                                                 long long factor, double tol = kDefaultKernelTol);

}  // namespace rumkit
