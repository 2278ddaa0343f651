#include "rumkit/coboundary.hpp"

#include <ostream>
#include <stdexcept>

#include "rumkit/numerics.hpp"

namespace rumkit {

Eigen::MatrixXcd CoboundaryMatrix::dense() const {
    Eigen::MatrixXcd m = Eigen::MatrixXcd::Zero(rows(), cols());
    for (const Block& b : blocks)
        m.block(b.edge_instance * dim_y, b.vertex_index * dim_x, dim_y, dim_x) += b.value;
    return m;
}

double CoboundaryMatrix::max_block_norm() const {
    double out = 0.0;
    for (const Block& b : blocks) out = std::max(out, b.value.norm());
    return out;
}

CoboundaryMatrix coboundary_window(const SymmetricFramework& fw, const Window& w) {
    CoboundaryMatrix c;
    c.covering = expand_window(fw.graph, w);
    c.dim_x = fw.dim_x;
    c.dim_y = fw.dim_y;
    c.blocks.reserve(2 * c.covering.edges.size());
    for (size_t i = 0; i < c.covering.edges.size(); ++i) {
        const CoveringEdge& e = c.covering.edges[i];
        // phi at the shifted edge is the orbit block composed with tau(-gamma');
        // only the linear part acts on velocity vectors.
        Eigen::MatrixXcd tail_block =
            fw.blocks[e.orbit].A *
            fw.rep.dtau(fw.graph.group, elem_neg(fw.graph.group, e.shift)).cast<std::complex<double>>();
        c.blocks.push_back({static_cast<int>(i), e.tail_vertex, tail_block});
        if (e.interior)
            c.blocks.push_back({static_cast<int>(i), e.head_vertex, -tail_block});
    }
    return c;
}

CoboundaryMatrix coboundary_finite(const SymmetricFramework& fw) {
    if (fw.graph.group.free_rank > 0)
        throw std::invalid_argument("infinite group");
    return coboundary_window(fw, Window::box(fw.graph.group, std::vector<long long>{}));
}

double operator_norm_estimate(const CoboundaryMatrix& c) {
    if (c.rows() == 0 || c.cols() == 0) return 0.0;
    Eigen::MatrixXcd m = c.dense();
    if (m.cwiseAbs().maxCoeff() == 0.0) return 0.0;
    return svd(m).sigma(0);
}

void write_coboundary_csv(std::ostream& os, const CoboundaryMatrix& c) {
    os << "row,col,re,im\n";
    os.precision(17);
    for (const auto& b : c.blocks) {
        for (int r = 0; r < c.dim_y; ++r) {
            for (int k = 0; k < c.dim_x; ++k) {
                const std::complex<double> v = b.value(r, k);
                if (v == std::complex<double>(0.0, 0.0)) continue;
                os << b.edge_instance * c.dim_y + r << "," << b.vertex_index * c.dim_x + k << ","
                   << v.real() << "," << v.imag() << "\n";
            }
        }
    }
}

}  // namespace rumkit
