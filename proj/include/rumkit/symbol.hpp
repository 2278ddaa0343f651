#pragma once

#include <Eigen/Dense>
#include <utility>
#include <vector>

#include "rumkit/framework.hpp"

namespace rumkit {

// Finitely supported map gamma -> coefficient matrix; the symbol is
// Phi(chi) = hat(0) + sum_{gamma != 0} hat(gamma) chi(gamma), with support
// inside {0} union the set of nonzero gains.
struct SymbolPolynomial {
    GroupSpec group;
    int rows = 0;
    int cols = 0;
    // Sorted by group element (deterministic support order).
    std::vector<std::pair<GroupElement, Eigen::MatrixXcd>> coefficients;

    const Eigen::MatrixXcd* coefficient(const GroupElement& gamma) const;
};

// Orbit matrix at chi: block row per edge orbit with A at the tail column
// block and chi(gain) B at the head column block (loops collapse to a single
// summed block). Row order follows the edge orbit list, columns the vertex
// orbit list.
Eigen::MatrixXcd orbit_matrix(const SymmetricFramework& fw, const Character& chi);

// hat(0) collects every A plus the B of gain-0 edges; hat(gamma) for each
// nonzero gain collects the B blocks at their head columns.
SymbolPolynomial fourier_coefficients(const SymmetricFramework& fw);

Eigen::MatrixXcd eval_symbol(const SymbolPolynomial& p, const Character& chi);

// Finite groups only: one (chi, orbit matrix) pair per torsion-dual character.
// Throws std::invalid_argument("infinite group") when free_rank > 0.
std::vector<std::pair<Character, Eigen::MatrixXcd>> block_diagonalize(const SymmetricFramework& fw);

}  // namespace rumkit
