#include "rumkit/symbol.hpp"

#include <map>
#include <stdexcept>

namespace rumkit {

const Eigen::MatrixXcd* SymbolPolynomial::coefficient(const GroupElement& gamma) const {
    for (const auto& [g, m] : coefficients)
        if (g == gamma) return &m;
    return nullptr;
}

Eigen::MatrixXcd orbit_matrix(const SymmetricFramework& fw, const Character& chi) {
    if (!char_conforms(fw.graph.group, chi))
        throw std::invalid_argument("orbit_matrix: character does not match the group");
    const int ne = static_cast<int>(fw.graph.edge_orbits.size());
    const int nv = static_cast<int>(fw.graph.vertex_orbits.size());
    Eigen::MatrixXcd m = Eigen::MatrixXcd::Zero(fw.dim_y * ne, fw.dim_x * nv);
    for (int e = 0; e < ne; ++e) {
        const auto& orbit = fw.graph.edge_orbits[e];
        const int tail = fw.graph.vertex_index(orbit.tail);
        const int head = fw.graph.vertex_index(orbit.head);
        m.block(e * fw.dim_y, tail * fw.dim_x, fw.dim_y, fw.dim_x) += fw.blocks[e].A;
        m.block(e * fw.dim_y, head * fw.dim_x, fw.dim_y, fw.dim_x) +=
            char_eval(fw.graph.group, chi, orbit.gain) * fw.blocks[e].B;
    }
    return m;
}

SymbolPolynomial fourier_coefficients(const SymmetricFramework& fw) {
    const int ne = static_cast<int>(fw.graph.edge_orbits.size());
    const int nv = static_cast<int>(fw.graph.vertex_orbits.size());
    const int rows = fw.dim_y * ne;
    const int cols = fw.dim_x * nv;

    std::map<GroupElement, Eigen::MatrixXcd, ElemLess> coeffs;
    auto at = [&](const GroupElement& g) -> Eigen::MatrixXcd& {
        auto it = coeffs.find(g);
        if (it == coeffs.end())
            it = coeffs.emplace(g, Eigen::MatrixXcd::Zero(rows, cols)).first;
        return it->second;
    };

    const GroupElement zero = elem_zero(fw.graph.group);
    at(zero);  // hat(0) always present, even for an empty edge list
    for (int e = 0; e < ne; ++e) {
        const auto& orbit = fw.graph.edge_orbits[e];
        const int tail = fw.graph.vertex_index(orbit.tail);
        const int head = fw.graph.vertex_index(orbit.head);
        at(zero).block(e * fw.dim_y, tail * fw.dim_x, fw.dim_y, fw.dim_x) += fw.blocks[e].A;
        const GroupElement& target = elem_is_zero(orbit.gain) ? zero : orbit.gain;
        at(target).block(e * fw.dim_y, head * fw.dim_x, fw.dim_y, fw.dim_x) += fw.blocks[e].B;
    }

    SymbolPolynomial p;
    p.group = fw.graph.group;
    p.rows = rows;
    p.cols = cols;
    p.coefficients.assign(coeffs.begin(), coeffs.end());
    return p;
}

Eigen::MatrixXcd eval_symbol(const SymbolPolynomial& p, const Character& chi) {
    if (!char_conforms(p.group, chi))
        throw std::invalid_argument("eval_symbol: character does not match the group");
    Eigen::MatrixXcd m = Eigen::MatrixXcd::Zero(p.rows, p.cols);
    for (const auto& [gamma, coeff] : p.coefficients) {
        if (elem_is_zero(gamma))
            m += coeff;
        else
            m += char_eval(p.group, chi, gamma) * coeff;
    }
    return m;
}

std::vector<std::pair<Character, Eigen::MatrixXcd>> block_diagonalize(const SymmetricFramework& fw) {
    if (fw.graph.group.free_rank > 0)
        throw std::invalid_argument("infinite group");
    std::vector<std::pair<Character, Eigen::MatrixXcd>> out;
    for (const Character& chi : enumerate_torsion_dual(fw.graph.group))
        out.emplace_back(chi, orbit_matrix(fw, chi));
    return out;
}

}  // namespace rumkit
