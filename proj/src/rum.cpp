#include "rumkit/rum.hpp"

#include <algorithm>
#include <cmath>
#include <set>
#include <stdexcept>

#include "rumkit/numerics.hpp"
#include "rumkit/parallel.hpp"

namespace rumkit {

KernelResult kernel_basis(const Eigen::MatrixXcd& m, double tol) {
    KernelResult out;
    if (m.cols() == 0) return out;
    if (m.rows() == 0) {
        // No constraints: everything is in the kernel.
        out.kernel_dim = static_cast<int>(m.cols());
        out.basis = Eigen::MatrixXcd::Identity(m.cols(), m.cols());
        out.sigma_min = 0.0;
        return out;
    }
    SvdResult s = svd(m);
    const double sigma_max = s.sigma(0);
    const double threshold = singular_threshold(m, tol, sigma_max);
    int rank = 0;
    for (int i = 0; i < s.sigma.size(); ++i)
        if (s.sigma(i) > threshold) ++rank;
    out.kernel_dim = static_cast<int>(m.cols()) - rank;
    out.basis = s.V.rightCols(out.kernel_dim);
    out.sigma_min = s.sigma(s.sigma.size() - 1);
    return out;
}

std::vector<SpectrumSample> rum_spectrum(const SymmetricFramework& fw,
                                         const std::vector<Character>& characters, double tol) {
    SymbolPolynomial poly = fourier_coefficients(fw);
    std::vector<SpectrumSample> out(characters.size());
    parallel_for(static_cast<int>(characters.size()), [&](int i) {
        SpectrumSample& s = out[i];
        s.chi = characters[i];
        KernelResult k = kernel_basis(eval_symbol(poly, characters[i]), tol);
        s.kernel_dim = k.kernel_dim;
        s.sigma_min = k.sigma_min;
        s.kernel = std::move(k.basis);
        s.in_spectrum = s.kernel_dim >= 1;
    });
    return out;
}

std::vector<SpectrumSample> rum_spectrum_grid(const SymmetricFramework& fw, long long grid,
                                              double tol) {
    return rum_spectrum(fw, sample_dual_grid(fw.graph.group, grid), tol);
}

Eigen::VectorXcd FlexField::stacked() const {
    Eigen::VectorXcd v(dim_x * static_cast<long>(values.size()));
    for (size_t i = 0; i < values.size(); ++i) v.segment(i * dim_x, dim_x) = values[i];
    return v;
}

double FlexField::max_abs() const {
    double out = 0.0;
    for (const auto& v : values)
        if (v.size() > 0) out = std::max(out, v.cwiseAbs().maxCoeff());
    return out;
}

FlexField build_flex(const SymmetricFramework& fw, const Character& chi,
                     const Eigen::VectorXcd& a, const Window& w) {
    const int nv = static_cast<int>(fw.graph.vertex_orbits.size());
    if (a.size() != static_cast<long>(fw.dim_x) * nv)
        throw std::invalid_argument("build_flex: coefficient vector must have length dim_x * |V_0|");
    if (!char_conforms(fw.graph.group, chi))
        throw std::invalid_argument("build_flex: character does not match the group");

    FlexField flex;
    flex.window = w;
    flex.dim_x = fw.dim_x;
    flex.values.reserve(static_cast<size_t>(w.size()) * nv);
    for (const GroupElement& gamma : w.elements()) {
        const std::complex<double> phase = char_eval(fw.graph.group, chi, gamma);
        const Eigen::MatrixXcd rot =
            fw.rep.dtau(fw.graph.group, gamma).cast<std::complex<double>>();
        for (int v = 0; v < nv; ++v)
            flex.values.push_back(phase * (rot * a.segment(v * fw.dim_x, fw.dim_x)));
    }
    return flex;
}

FlexReport verify_flex(const CoboundaryMatrix& c, const FlexField& flex) {
    if (c.cols() != flex.dim_x * static_cast<int>(flex.values.size()))
        throw std::invalid_argument("verify_flex: flex does not match the coboundary window");
    FlexReport report;
    report.atol = 1e-9 * (1.0 + flex.max_abs() * c.max_block_norm());

    Eigen::VectorXcd residual = c.dense() * flex.stacked();
    for (size_t e = 0; e < c.covering.edges.size(); ++e) {
        double r = residual.segment(e * c.dim_y, c.dim_y).cwiseAbs().maxCoeff();
        if (c.covering.edges[e].interior) {
            ++report.interior_rows;
            if (r > report.max_residual) {
                report.max_residual = r;
                report.worst_edge_instance = static_cast<int>(e);
            }
        } else {
            report.boundary_residual = std::max(report.boundary_residual, r);
        }
    }
    report.pass = report.max_residual <= report.atol;
    return report;
}

FlexReport verify_flex(const SymmetricFramework& fw, const FlexField& flex) {
    return verify_flex(coboundary_window(fw, flex.window), flex);
}

std::vector<SpectrumSample> spectrum_scan_refine(const SymmetricFramework& fw, long long grid,
                                                 long long factor, double tol) {
    const GroupSpec& spec = fw.graph.group;
    if (spec.free_rank < 1)
        throw std::invalid_argument("spectrum_scan_refine: needs free rank >= 1");
    if (grid < 1 || factor < 1)
        throw std::invalid_argument("spectrum_scan_refine: grid and factor must be >= 1");

    SymbolPolynomial poly = fourier_coefficients(fw);
    std::vector<SpectrumSample> coarse = rum_spectrum(fw, sample_dual_grid(spec, grid), tol);

    // Characters are exact grid fractions, so dedup by (turns, torsion).
    auto char_less = [](const Character& a, const Character& b) {
        for (size_t i = 0; i < a.free_turns.size(); ++i) {
            if (!turn_equal(a.free_turns[i], b.free_turns[i]))
                return turn_less(a.free_turns[i], b.free_turns[i]);
        }
        return a.torsion_indices < b.torsion_indices;
    };
    std::set<Character, decltype(char_less)> refined_chars(char_less);

    const long long fine_den = grid * factor;
    for (const SpectrumSample& s : coarse) {
        Eigen::MatrixXcd m = eval_symbol(poly, s.chi);
        double sigma_max = 0.0;
        if (m.rows() > 0 && m.cols() > 0) sigma_max = svd(m).sigma(0);
        const double threshold = singular_threshold(m, tol, sigma_max);
        if (s.sigma_min >= 10.0 * threshold && !s.in_spectrum) continue;

        // Symmetric neighborhood at factor-times resolution on each free axis.
        std::vector<std::vector<Turn>> axis_turns(spec.free_rank);
        for (int i = 0; i < spec.free_rank; ++i) {
            const Turn& t = s.chi.free_turns[i];
            // Grid turns are exact with a denominator dividing the grid size.
            const long long num_over_grid = t.num * (grid / t.den);
            for (long long j = -factor; j <= factor; ++j)
                axis_turns[i].push_back(Turn::from_fraction(num_over_grid * factor + j, fine_den));
        }
        std::vector<size_t> idx(spec.free_rank, 0);
        while (true) {
            Character chi;
            chi.free_turns.reserve(spec.free_rank);
            for (int i = 0; i < spec.free_rank; ++i) chi.free_turns.push_back(axis_turns[i][idx[i]]);
            chi.torsion_indices = s.chi.torsion_indices;
            refined_chars.insert(std::move(chi));
            int a = spec.free_rank - 1;
            for (; a >= 0; --a) {
                if (++idx[a] < axis_turns[a].size()) break;
                idx[a] = 0;
            }
            if (a < 0) break;
        }
    }

    std::vector<Character> chars(refined_chars.begin(), refined_chars.end());
    return rum_spectrum(fw, chars, tol);
}

}  // namespace rumkit
