#include <fstream>
#include <iostream>
#include <sstream>

#include "CLI11.hpp"
#include "rumkit/checks.hpp"
#include "rumkit/io.hpp"
#include "rumkit/numerics.hpp"

namespace {

constexpr int kExitOk = 0;
constexpr int kExitValidation = 1;
constexpr int kExitSchema = 2;

void print_matrix(std::ostream& os, const Eigen::MatrixXcd& m) {
    os.precision(12);
    for (int r = 0; r < m.rows(); ++r) {
        os << "  [";
        for (int c = 0; c < m.cols(); ++c) {
            const std::complex<double> v = m(r, c);
            if (c) os << ", ";
            os << v.real();
            if (v.imag() != 0.0) os << (v.imag() > 0 ? "+" : "-") << std::abs(v.imag()) << "i";
        }
        os << "]\n";
    }
}

std::ostream& open_output(std::ofstream& file, const std::string& path) {
    if (path.empty()) return std::cout;
    file.open(path);
    if (!file) throw rumkit::SchemaError("cannot write file: " + path);
    return file;
}

int run(int argc, char** argv) {
    CLI::App app{"Symbol functions, RUM spectra and symmetric flexes for "
                 "frameworks with a discrete abelian symmetry group"};
    app.require_subcommand(1);

    std::string file, char_text, out_path, dump_path;
    long long grid = 4, window = 3, refine = 0, kernel_index = 0;
    double tol = rumkit::kDefaultKernelTol;
    bool coeffs = false;

    CLI::App* validate = app.add_subcommand("validate", "schema and equivariance report");
    validate->add_option("file", file)->required();

    CLI::App* symbol = app.add_subcommand("symbol", "print the symbol's coefficients or a value");
    symbol->add_option("file", file)->required();
    symbol->add_flag("--coeffs", coeffs, "print every coefficient matrix");
    symbol->add_option("--at", char_text, "evaluate at a character \"t1,..;k1,..\"");

    CLI::App* spectrum = app.add_subcommand("spectrum", "sample the RUM spectrum to CSV");
    spectrum->add_option("file", file)->required();
    spectrum->add_option("--grid", grid, "samples per free circle")->required();
    spectrum->add_option("--tol", tol, "relative kernel tolerance");
    spectrum->add_option("--refine", refine, "re-sample near dips at this factor");
    spectrum->add_option("-o,--output", out_path, "output CSV path (default stdout)");

    CLI::App* flex = app.add_subcommand("flex", "build and verify a kernel-vector flex");
    flex->add_option("file", file)->required();
    flex->add_option("--char", char_text, "character \"t1,..;k1,..\"")->required();
    flex->add_option("--kernel-index", kernel_index, "which kernel vector (default 0)");
    flex->add_option("--window", window, "box radius for the verification window");
    flex->add_option("--tol", tol, "relative kernel tolerance");
    flex->add_option("-o,--output", out_path, "output JSON path (default stdout)");

    CLI::App* blockdiag = app.add_subcommand("blockdiag", "finite groups: blocks and verdict");
    blockdiag->add_option("file", file)->required();

    CLI::App* verify = app.add_subcommand("verify", "run the full invariant suite");
    verify->add_option("file", file)->required();
    verify->add_option("--window", window, "box radius for coboundary windows");
    verify->add_option("--grid", grid, "character grid resolution")->default_val(64);
    verify->add_option("--dump-coboundary", dump_path, "also export the windowed coboundary as CSV");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int code = app.exit(e);
        return code == 0 ? kExitOk : kExitSchema;
    }

    rumkit::SymmetricFramework fw = rumkit::parse_framework_file(file);

    if (validate->parsed()) {
        rumkit::EquivarianceReport report = rumkit::validate_equivariance(fw);
        // parse_framework_file already aggregates failures into exceptions, so
        // reaching this point means the file is clean; report the numbers.
        std::cout << "ok: " << fw.graph.vertex_orbits.size() << " vertex orbits, "
                  << fw.graph.edge_orbits.size() << " edge orbits, max equivariance deviation "
                  << report.max_deviation << "\n";
        return report.ok() ? kExitOk : kExitValidation;
    }

    if (symbol->parsed()) {
        rumkit::SymbolPolynomial poly = rumkit::fourier_coefficients(fw);
        if (!char_text.empty()) {
            rumkit::Character chi = rumkit::parse_character(fw.graph.group, char_text);
            std::cout << "Phi(" << rumkit::char_to_string(chi) << ") =\n";
            print_matrix(std::cout, rumkit::eval_symbol(poly, chi));
            return kExitOk;
        }
        std::cout << "support (" << poly.coefficients.size() << " coefficients, "
                  << poly.rows << "x" << poly.cols << " each):\n";
        for (const auto& [gamma, coeff] : poly.coefficients) {
            std::cout << "  gamma = " << rumkit::elem_to_string(gamma) << "\n";
            if (coeffs) print_matrix(std::cout, coeff);
        }
        return kExitOk;
    }

    if (spectrum->parsed()) {
        std::vector<rumkit::SpectrumSample> samples;
        if (refine > 0)
            samples = rumkit::spectrum_scan_refine(fw, grid, refine, tol);
        else
            samples = rumkit::rum_spectrum_grid(fw, grid, tol);
        std::ofstream out_file;
        std::ostream& os = open_output(out_file, out_path);
        rumkit::write_spectrum_csv(os, fw.graph.group, samples);
        int members = 0;
        for (const auto& s : samples) members += s.in_spectrum ? 1 : 0;
        std::cerr << samples.size() << " samples, " << members << " in spectrum\n";
        return kExitOk;
    }

    if (flex->parsed()) {
        rumkit::Character chi = rumkit::parse_character(fw.graph.group, char_text);
        rumkit::KernelResult kernel = rumkit::kernel_basis(rumkit::orbit_matrix(fw, chi), tol);
        if (kernel.kernel_dim == 0) {
            std::cout << "kernel is trivial at " << rumkit::char_to_string(chi)
                      << " (sigma_min " << kernel.sigma_min << ")\n";
            return kExitValidation;
        }
        if (kernel_index < 0 || kernel_index >= kernel.kernel_dim) {
            std::cout << "kernel index " << kernel_index << " out of range (kernel dimension "
                      << kernel.kernel_dim << ")\n";
            return kExitValidation;
        }
        rumkit::Window w = fw.graph.group.is_finite()
                               ? rumkit::Window::box(fw.graph.group, std::vector<long long>{})
                               : rumkit::Window::box(fw.graph.group, window);
        rumkit::FlexField field =
            rumkit::build_flex(fw, chi, kernel.basis.col(kernel_index), w);
        rumkit::FlexReport report = rumkit::verify_flex(fw, field);
        std::ofstream out_file;
        std::ostream& os = open_output(out_file, out_path);
        rumkit::write_flex_json(os, fw, field);
        std::cout << "kernel dimension " << kernel.kernel_dim << ", max interior residual "
                  << report.max_residual << " (tolerance " << report.atol << "): "
                  << (report.pass ? "PASS" : "FAIL") << "\n";
        return report.pass ? kExitOk : kExitValidation;
    }

    if (blockdiag->parsed()) {
        if (!fw.graph.group.is_finite()) {
            std::cout << "infinite group: blockdiag needs free rank 0\n";
            return kExitValidation;
        }
        auto blocks = rumkit::block_diagonalize(fw);
        for (const auto& [chi, m] : blocks) {
            std::cout << "chi = " << rumkit::char_to_string(chi) << ":\n";
            print_matrix(std::cout, m);
        }
        std::string report;
        bool ok = rumkit::finite_blockdiag_check(fw, 1e-9, &report);
        std::cout << "coboundary vs block singular multisets: "
                  << (ok ? "match" : ("MISMATCH: " + report)) << "\n";
        return ok ? kExitOk : kExitValidation;
    }

    if (verify->parsed()) {
        if (!dump_path.empty()) {
            rumkit::Window w = fw.graph.group.is_finite()
                                   ? rumkit::Window::box(fw.graph.group, std::vector<long long>{})
                                   : rumkit::Window::box(fw.graph.group, window);
            std::ofstream dump(dump_path);
            if (!dump) throw rumkit::SchemaError("cannot write file: " + dump_path);
            rumkit::write_coboundary_csv(dump, rumkit::coboundary_window(fw, w));
        }
        bool all = true;
        for (const rumkit::CheckResult& check : rumkit::run_invariant_suite(fw, window, grid)) {
            std::cout << (check.pass ? "PASS" : "FAIL") << "  " << check.name << " (" << check.detail
                      << ")\n";
            all = all && check.pass;
        }
        return all ? kExitOk : kExitValidation;
    }

    return kExitSchema;  // unreachable: a subcommand is required
}

}  // namespace

int main(int argc, char** argv) {
    try {
        return run(argc, argv);
    } catch (const rumkit::SchemaError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitSchema;
    } catch (const rumkit::FrameworkValidationError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitValidation;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitValidation;
    }
}
