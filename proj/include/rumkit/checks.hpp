#pragma once

#include <string>
#include <vector>

#include "rumkit/rum.hpp"

namespace rumkit {

// Max entrywise deviation between the evaluated symbol polynomial and the
// directly assembled orbit matrix over the given characters.
double symbol_oracle_deviation(const SymmetricFramework& fw, const std::vector<Character>& chars);

// Max deviation of the coefficient formula: for every nonzero gain gamma and
// every block, hat(gamma)[e][v] must equal the coboundary entry at row
// (e, shift 0), column (gamma, [v]), composed with dtau(gamma). The window is
// a box just large enough to contain 0 and every gain.
double fourier_formula_deviation(const SymmetricFramework& fw);

// Finite groups: singular multiset equality between the full coboundary and
// the direct sum of the character blocks.
bool finite_blockdiag_check(const SymmetricFramework& fw, double rtol, std::string* report = nullptr);

struct NormBoundResult {
    double window_norm = 0.0;
    double grid_max = 0.0;
    bool pass = false;  // window_norm <= grid_max + 1e-9
};
NormBoundResult norm_bound_check(const SymmetricFramework& fw, long long window_radius,
                                 long long grid);

struct FlexSuiteResult {
    int characters_in_spectrum = 0;
    int flexes_checked = 0;
    double worst_residual = 0.0;
    double worst_atol = 0.0;
    bool pass = true;
};
// Builds and verifies the flex of every kernel vector at every in-spectrum
// sample of the given characters, over a box window of the given radius.
FlexSuiteResult flex_suite(const SymmetricFramework& fw, const std::vector<Character>& chars,
                           long long window_radius, double tol = kDefaultKernelTol);

struct CheckResult {
    std::string name;
    bool pass = false;
    std::string detail;
};

// The full invariant battery behind `verify`: equivariance, the symbol oracle,
// the coefficient formula, block diagonalization (finite groups), flex
// verification, and the operator norm bound.
std::vector<CheckResult> run_invariant_suite(const SymmetricFramework& fw,
                                             long long window_radius, long long grid);

}  // namespace rumkit
