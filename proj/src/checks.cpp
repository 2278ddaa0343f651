#include "rumkit/checks.hpp"

#include <random>
#include <sstream>

#include "rumkit/numerics.hpp"

namespace rumkit {

double symbol_oracle_deviation(const SymmetricFramework& fw, const std::vector<Character>& chars) {
    SymbolPolynomial poly = fourier_coefficients(fw);
    double dev = 0.0;
    for (const Character& chi : chars) {
        Eigen::MatrixXcd direct = orbit_matrix(fw, chi);
        Eigen::MatrixXcd evaluated = eval_symbol(poly, chi);
        if (direct.size() > 0)
            dev = std::max(dev, (direct - evaluated).cwiseAbs().maxCoeff());
    }
    return dev;
}

double fourier_formula_deviation(const SymmetricFramework& fw) {
    const GroupSpec& spec = fw.graph.group;
    SymbolPolynomial poly = fourier_coefficients(fw);

    long long radius = 1;
    for (const auto& e : fw.graph.edge_orbits)
        for (const BigInt& x : e.gain.free)
            radius = std::max(radius, (x < 0 ? -x : x).convert_to<long long>());
    Window w = Window::box(spec, radius);
    CoboundaryMatrix c = coboundary_window(fw, w);
    Eigen::MatrixXcd dense = c.dense();

    const GroupElement zero = elem_zero(spec);
    const int zero_index = w.index_of(zero);
    const int nv = static_cast<int>(fw.graph.vertex_orbits.size());
    const int ne = static_cast<int>(fw.graph.edge_orbits.size());

    double dev = 0.0;
    for (const auto& [gamma, coeff] : poly.coefficients) {
        if (elem_is_zero(gamma)) continue;
        Eigen::MatrixXcd rot = fw.rep.dtau(spec, gamma).cast<std::complex<double>>();
        const int col_window = w.index_of(gamma);
        for (int e = 0; e < ne; ++e) {
            // Row of the shift-0 instance of orbit e.
            const int row = (e * w.size() + zero_index) * fw.dim_y;
            for (int v = 0; v < nv; ++v) {
                const int col = (col_window * nv + v) * fw.dim_x;
                Eigen::MatrixXcd rhs =
                    dense.block(row, col, fw.dim_y, fw.dim_x) * rot;
                Eigen::MatrixXcd lhs = coeff.block(e * fw.dim_y, v * fw.dim_x, fw.dim_y, fw.dim_x);
                dev = std::max(dev, (lhs - rhs).cwiseAbs().maxCoeff());
            }
        }
    }
    return dev;
}

bool finite_blockdiag_check(const SymmetricFramework& fw, double rtol, std::string* report) {
    CoboundaryMatrix c = coboundary_finite(fw);
    std::vector<double> full;
    if (c.rows() > 0 && c.cols() > 0) {
        Eigen::VectorXd sigma = svd(c.dense()).sigma;
        full.assign(sigma.data(), sigma.data() + sigma.size());
    }
    std::vector<double> blocks;
    for (const auto& [chi, m] : block_diagonalize(fw)) {
        if (m.rows() == 0 || m.cols() == 0) continue;
        Eigen::VectorXd sigma = svd(m).sigma;
        blocks.insert(blocks.end(), sigma.data(), sigma.data() + sigma.size());
    }
    return singular_multiset_equal(full, blocks, rtol, report);
}

NormBoundResult norm_bound_check(const SymmetricFramework& fw, long long window_radius,
                                 long long grid) {
    NormBoundResult out;
    Window w = fw.graph.group.is_finite() ? Window::box(fw.graph.group, std::vector<long long>{})
                                          : Window::box(fw.graph.group, window_radius);
    out.window_norm = operator_norm_estimate(coboundary_window(fw, w));
    SymbolPolynomial poly = fourier_coefficients(fw);
    for (const Character& chi : sample_dual_grid(fw.graph.group, grid)) {
        Eigen::MatrixXcd m = eval_symbol(poly, chi);
        if (m.rows() == 0 || m.cols() == 0 || m.cwiseAbs().maxCoeff() == 0.0) continue;
        out.grid_max = std::max(out.grid_max, svd(m).sigma(0));
    }
    out.pass = out.window_norm <= out.grid_max + 1e-9;
    return out;
}

FlexSuiteResult flex_suite(const SymmetricFramework& fw, const std::vector<Character>& chars,
                           long long window_radius, double tol) {
    FlexSuiteResult out;
    Window w = fw.graph.group.is_finite() ? Window::box(fw.graph.group, std::vector<long long>{})
                                          : Window::box(fw.graph.group, window_radius);
    CoboundaryMatrix c = coboundary_window(fw, w);
    for (const SpectrumSample& s : rum_spectrum(fw, chars, tol)) {
        if (!s.in_spectrum) continue;
        ++out.characters_in_spectrum;
        for (int k = 0; k < s.kernel_dim; ++k) {
            FlexField flex = build_flex(fw, s.chi, s.kernel.col(k), w);
            FlexReport report = verify_flex(c, flex);
            ++out.flexes_checked;
            if (report.max_residual > out.worst_residual) {
                out.worst_residual = report.max_residual;
                out.worst_atol = report.atol;
            }
            if (!report.pass) out.pass = false;
        }
    }
    return out;
}

std::vector<CheckResult> run_invariant_suite(const SymmetricFramework& fw,
                                             long long window_radius, long long grid) {
    std::vector<CheckResult> results;
    auto add = [&](const std::string& name, bool pass, const std::string& detail) {
        results.push_back({name, pass, detail});
    };
    std::ostringstream os;
    os.precision(6);

    EquivarianceReport eq = validate_equivariance(fw);
    os.str("");
    os << "max deviation " << eq.max_deviation;
    if (!eq.ok()) {
        os << "; first issue: " << eq.issues.front().where << ": " << eq.issues.front().message;
    }
    add("equivariance B = -A dtau(gain)", eq.ok(), os.str());

    // Deterministic character sample: the grid plus a few pseudo-random points.
    std::vector<Character> chars = sample_dual_grid(fw.graph.group, std::min<long long>(grid, 16));
    std::mt19937_64 rng(20260819);
    std::uniform_real_distribution<double> unif(0.0, 1.0);
    std::vector<Character> torsion_dual = enumerate_torsion_dual(fw.graph.group);
    for (int i = 0; i < 8; ++i) {
        Character chi = torsion_dual[i % torsion_dual.size()];
        for (auto& t : chi.free_turns) t = Turn::from_double(unif(rng));
        chars.push_back(chi);
    }

    double oracle_dev = symbol_oracle_deviation(fw, chars);
    os.str("");
    os << "max deviation " << oracle_dev << " over " << chars.size() << " characters";
    add("symbol equals orbit matrix", oracle_dev <= 1e-13, os.str());

    double fourier_dev = fourier_formula_deviation(fw);
    os.str("");
    os << "max deviation " << fourier_dev;
    add("coefficient formula vs coboundary", fourier_dev <= 1e-12, os.str());

    if (fw.graph.group.is_finite()) {
        std::string report;
        bool ok = finite_blockdiag_check(fw, 1e-9, &report);
        add("finite block diagonalization", ok, ok ? "singular multisets agree" : report);
    }

    FlexSuiteResult flexes = flex_suite(fw, sample_dual_grid(fw.graph.group, grid), window_radius);
    os.str("");
    os << flexes.flexes_checked << " flexes at " << flexes.characters_in_spectrum
       << " spectrum samples, worst residual " << flexes.worst_residual;
    add("kernel vectors lift to flexes", flexes.pass, os.str());

    NormBoundResult norm = norm_bound_check(fw, window_radius, grid);
    os.str("");
    os << "window norm " << norm.window_norm << " vs grid max " << norm.grid_max;
    add("window norm bounded by symbol norm", norm.pass, os.str());

    return results;
}

}  // namespace rumkit
