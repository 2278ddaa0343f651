#pragma once

#include <Eigen/Dense>
#include <vector>

#include "rumkit/gain_graph.hpp"
#include "rumkit/group.hpp"

namespace rumkit {

// Affine isometry x -> Q x + t with Q orthogonal.
struct AffineMap {
    Eigen::MatrixXd linear;
    Eigen::VectorXd translation;

    static AffineMap identity(int dim);
    Eigen::VectorXd apply(const Eigen::VectorXd& x) const;
    AffineMap compose(const AffineMap& other) const;  // this after other
    AffineMap inverse() const;                        // assumes orthogonal linear part
    AffineMap pow(const BigInt& e) const;
};

// tau: Gamma -> Isom(X), given by one affine generator per free and per
// torsion coordinate. dtau(gamma) is the linear part of tau(gamma).
struct Representation {
    int dim = 0;
    std::vector<AffineMap> free_gens;
    std::vector<AffineMap> torsion_gens;

    AffineMap tau(const GroupSpec& spec, const GroupElement& gamma) const;
    Eigen::MatrixXd dtau(const GroupSpec& spec, const GroupElement& gamma) const;
};

// Checks generator orthogonality (1e-12), torsion orders (gen_j^{n_j} = id
// within 1e-10) and pairwise commutation as affine maps (1e-10).
std::vector<ValidationIssue> validate_representation(const GroupSpec& spec, const Representation& rep);

}  // namespace rumkit
