#pragma once

#include <Eigen/Dense>
#include <iosfwd>
#include <vector>

#include "rumkit/framework.hpp"

namespace rumkit {

// Brute-force truncation of the coboundary operator. Row blocks follow the
// covering edge order (edge-orbit-major), column blocks the covering vertex
// order (window-major). Stored as a block coordinate list; densify on demand.
struct CoboundaryMatrix {
    CoveringGraph covering;
    int dim_x = 0;
    int dim_y = 0;

    struct Block {
        int edge_instance;   // row block
        int vertex_index;    // column block
        Eigen::MatrixXcd value;
    };
    std::vector<Block> blocks;

    int rows() const { return dim_y * static_cast<int>(covering.edges.size()); }
    int cols() const { return dim_x * static_cast<int>(covering.vertices.size()); }
    Eigen::MatrixXcd dense() const;
    bool row_block_interior(int edge_instance) const { return covering.edges[edge_instance].interior; }
    // Largest Frobenius norm over stored blocks (used to scale flex tolerances).
    double max_block_norm() const;
};

// Row blocks for the gamma' instance of orbit ([v] -> [w], gain psi):
// +A dtau(-gamma') at column (gamma', [v]), -A dtau(-gamma') at column
// (gamma' + psi, [w]) when that vertex lies in the window; rows whose head
// escapes the window keep only the tail block and are flagged non-interior.
CoboundaryMatrix coboundary_window(const SymmetricFramework& fw, const Window& w);

// Finite groups: window = all of Gamma; every row interior.
CoboundaryMatrix coboundary_finite(const SymmetricFramework& fw);

// Largest singular value of the assembled matrix.
double operator_norm_estimate(const CoboundaryMatrix& c);

// Sparse CSV export: header row,col,re,im then one line per stored entry.
void write_coboundary_csv(std::ostream& os, const CoboundaryMatrix& c);

}  // namespace rumkit
