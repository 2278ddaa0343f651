#pragma once

#include <Eigen/Dense>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "rumkit/gain_graph.hpp"
#include "rumkit/representation.hpp"

namespace rumkit {

// Per-edge-orbit constraint blocks. A acts on the tail orbit vector, B on the
// head; equivariance plus antisymmetry force B = -A * dtau(gain).
struct BlockPair {
    Eigen::MatrixXcd A;
    Eigen::MatrixXcd B;
};

enum class ConstraintKind { euclidean, direction, length, l2q, explicit_blocks };
const char* constraint_kind_name(ConstraintKind k);

// The recipe an orbit's blocks were built from; kept so files round-trip.
struct ConstraintSpec {
    ConstraintKind kind = ConstraintKind::explicit_blocks;
    double q = 0.0;        // l2q only
    bool b_given = false;  // explicit only: B was supplied, not derived
};

struct SymmetricFramework {
    GainGraph graph;
    int dim_x = 0;
    int dim_y = 0;
    Representation rep;
    std::vector<BlockPair> blocks;        // parallel to graph.edge_orbits
    std::vector<ConstraintSpec> recipes;  // parallel to graph.edge_orbits
    std::vector<Eigen::VectorXd> placements;  // parallel to vertex_orbits; empty if absent

    bool has_placements() const { return !placements.empty(); }
    const Eigen::VectorXd& placement(int vertex_orbit) const { return placements[vertex_orbit]; }
};

// Thrown by builders on degenerate geometry or inconsistent dimensions; the
// message names the offending orbit.
struct BuildError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

using PlacementMap = std::map<std::string, Eigen::VectorXd>;

// Bar constraints: A = (p_tail - tau(gain) p_head)^T as a 1 x d row.
SymmetricFramework build_euclidean(const GainGraph& g, const PlacementMap& placements,
                                   const Representation& rep);

// Direction / length constraints in dimension d, d_Y = d-1. Length rows all
// equal the edge covector; direction rows span the edge vector's orthogonal
// complement (d=2: the counterclockwise perp (-y, x); d>2: Gram-Schmidt of the
// standard basis against the edge vector, dropping the most-aligned vector).
SymmetricFramework build_direction_length(const GainGraph& g, const PlacementMap& placements,
                                          const Representation& rep,
                                          const std::map<std::string, ConstraintKind>& edge_kinds);

// Smooth (2,q)-norm constraints in dimension 3, q > 1:
// A = (d^q+|z|^q)^{1/q-1} (d^{q-2}x, d^{q-2}y, sgn(z)|z|^{q-1}), d = hypot(x,y).
SymmetricFramework build_l2q(const GainGraph& g, const PlacementMap& placements,
                             const Representation& rep, double q);

struct ExplicitBlocks {
    Eigen::MatrixXcd A;
    std::optional<Eigen::MatrixXcd> B;  // derived as -A*dtau(gain) when absent
};

SymmetricFramework build_explicit(const GainGraph& g, const Representation& rep, int dim_y,
                                  const std::map<std::string, ExplicitBlocks>& blocks,
                                  const PlacementMap& placements = {});

struct EquivarianceReport {
    std::vector<ValidationIssue> issues;
    double max_deviation = 0.0;
    bool ok() const { return issues.empty(); }
};

// Re-checks representation invariants, B = -A*dtau(gain) within 1e-10, and,
// for placement-built recipes, that A matches a rebuild from the placements.
EquivarianceReport validate_equivariance(const SymmetricFramework& fw);

// Central finite difference of t -> ||e + t x||_{2,q}; test oracle for build_l2q.
double directional_derivative_oracle(const Eigen::Vector3d& edge_vector, const Eigen::Vector3d& x,
                                     double q, double step);

// ||(x,y,z)||_{2,q} = (hypot(x,y)^q + |z|^q)^{1/q}.
double l2q_norm(const Eigen::Vector3d& v, double q);

}  // namespace rumkit
