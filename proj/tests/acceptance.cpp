// End-to-end acceptance runner. Each criterion prints one [PASS]/[FAIL] line;
// the process exits 0 only when every criterion passes.

#include <cmath>
#include <complex>
#include <cstdio>
#include <functional>
#include <random>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "random_frameworks.hpp"
#include "rumkit/checks.hpp"
#include "rumkit/io.hpp"
#include "rumkit/numerics.hpp"

using namespace rumkit;

namespace {

struct Failure : std::runtime_error {
    using std::runtime_error::runtime_error;
};

void require(bool cond, const std::string& what) {
    if (!cond) throw Failure(what);
}

void require_close(double got, double want, double tol, const std::string& what) {
    if (!(std::abs(got - want) <= tol)) {
        std::ostringstream os;
        os << what << ": got " << got << ", want " << want << " +/- " << tol;
        throw Failure(os.str());
    }
}

SymmetricFramework load(const std::string& name) {
    return parse_framework_file(std::string(RUMKIT_FIXTURE_DIR) + "/" + name);
}

double entry_dev(const Eigen::MatrixXcd& got, const Eigen::MatrixXcd& want) {
    if (got.rows() != want.rows() || got.cols() != want.cols()) return 1e30;
    if (got.size() == 0) return 0.0;
    return (got - want).cwiseAbs().maxCoeff();
}

Character torsion_char(std::vector<long long> idx) {
    Character chi;
    chi.torsion_indices = std::move(idx);
    return chi;
}

Character free_char(Turn t, std::vector<long long> idx = {}) {
    Character chi;
    chi.free_turns = {t};
    chi.torsion_indices = std::move(idx);
    return chi;
}

// -- criterion 1: reflection-symmetric 4-cycle ------------------------------

void criterion_finite_cycle() {
    SymmetricFramework fw = load("cycle4.json");

    Eigen::MatrixXcd trivial(2, 4), sign(2, 4);
    trivial << -1, 0, 1, 0, -1, -1, 1, -1;
    sign << -1, 0, 1, 0, -1, -1, -1, 1;

    require(entry_dev(orbit_matrix(fw, torsion_char({0})), trivial) <= 1e-12,
            "orbit matrix at the trivial character");
    require(entry_dev(orbit_matrix(fw, torsion_char({1})), sign) <= 1e-12,
            "orbit matrix at the sign character");

    std::string report;
    require(finite_blockdiag_check(fw, 1e-9, &report),
            "block diagonalization multiset: " + report);
}

// -- criterion 2: mixed-constraint strip ------------------------------------

void criterion_strip_spectrum() {
    SymmetricFramework fw = load("diamond.json");

    std::vector<SpectrumSample> samples = rum_spectrum_grid(fw, 4);
    std::set<std::string> in_spectrum, expected = {"0/1;0", "0/1;1", "1/2;1"};
    for (const SpectrumSample& s : samples)
        if (s.in_spectrum) in_spectrum.insert(char_to_string(s.chi));
    require(in_spectrum == expected, "grid-4 spectrum is the three expected characters");

    SymbolPolynomial poly = fourier_coefficients(fw);
    for (const SpectrumSample& s : samples) {
        std::complex<double> w = char_eval(fw.graph.group, s.chi, make_element(fw.graph.group, {1}, {0}));
        std::complex<double> eta = char_eval(fw.graph.group, s.chi, make_element(fw.graph.group, {0}, {1}));
        Eigen::MatrixXcd want(2, 2);
        want << 0.0, 1.0 - w, -1.0 + w * eta, -2.0 - 2.0 * w * eta;
        require(entry_dev(eval_symbol(poly, s.chi), want) <= 1e-12,
                "symbol closed form at " + char_to_string(s.chi));
    }

    Window w = Window::box(fw.graph.group, 3);
    for (const SpectrumSample& s : samples) {
        if (!s.in_spectrum) continue;
        require(s.kernel_dim == 1, "kernel dimension 1 at " + char_to_string(s.chi));
        FlexField flex = build_flex(fw, s.chi, s.kernel.col(0), w);
        FlexReport rep = verify_flex(fw, flex);
        require(rep.pass && rep.max_residual <= 1e-10,
                "flex residual at " + char_to_string(s.chi));
    }
}

// -- criterion 3: point group with non-quadratic norms -----------------------

void criterion_l2q_point_group() {
    SymmetricFramework fixture = load("boxkite.json");
    const Eigen::VectorXd placement = fixture.placement(0);

    for (double q : {1.5, 2.0, 3.0}) {
        SymmetricFramework fw =
            build_l2q(fixture.graph, {{"v", placement}}, fixture.rep, q);

        const double p = std::pow(2.0, q - 1.0);
        const double alpha = std::pow(std::pow(2.0, q) + 1.0, 1.0 / q - 1.0);
        Eigen::MatrixXcd ring_a(1, 3), brace_a(1, 3);
        ring_a << -1, 0, 0;
        brace_a << -alpha * p, 0, -alpha;
        std::ostringstream tag;
        tag << "q=" << q;
        require(entry_dev(fw.blocks[0].A, ring_a) <= 1e-12, "ring row at " + tag.str());
        require(entry_dev(fw.blocks[1].A, brace_a) <= 1e-12, "brace row at " + tag.str());

        std::vector<Character> chars = enumerate_torsion_dual(fw.graph.group);
        std::vector<SpectrumSample> samples = rum_spectrum(fw, chars);
        for (const SpectrumSample& s : samples)
            require(s.in_spectrum, "every character carries a kernel at " + tag.str());

        auto sample_at = [&](long long k1, long long k2) -> const SpectrumSample& {
            for (const SpectrumSample& s : samples)
                if (s.chi.torsion_indices == std::vector<long long>{k1, k2}) return s;
            throw Failure("missing torsion character");
        };

        Eigen::MatrixXcd want00(3, 1), want21(3, 1), want20(3, 2);
        want00 << 1, -1, 0;
        want21 << 1, 1, -p;
        want20 << 1, 0, 1, 0, 0, 1;
        require(max_principal_angle(sample_at(0, 0).kernel, want00) < 1e-8,
                "kernel direction at the trivial character, " + tag.str());
        require(max_principal_angle(sample_at(2, 1).kernel, want21) < 1e-8,
                "kernel direction at the half-turn reflected character, " + tag.str());
        require(sample_at(2, 0).kernel_dim == 2, "kernel dimension at the half-turn character");
        require(max_principal_angle(sample_at(2, 0).kernel, want20) < 1e-8,
                "kernel plane at the half-turn character, " + tag.str());

        Window full = Window::box(fw.graph.group, std::vector<long long>{});
        auto check_flex = [&](long long k1, long long k2, const Eigen::MatrixXcd& a) {
            FlexField flex = build_flex(fw, torsion_char({k1, k2}), a.col(0), full);
            FlexReport rep = verify_flex(fw, flex);
            require(rep.pass && rep.max_residual <= 1e-10,
                    "flex residual over the full orbit, " + tag.str());
        };
        check_flex(0, 0, want00);
        check_flex(2, 1, want21);
    }
}

// -- criterion 4: helical chain ----------------------------------------------

void criterion_helix_kernels() {
    SymmetricFramework fw = load("doublehelix.json");

    std::mt19937_64 rng(0x68656c6978ULL);
    std::uniform_real_distribution<double> unit(0.0, 1.0);
    std::vector<Character> chars;
    for (int i = 0; i < 64; ++i) {
        Turn t = Turn::from_double(unit(rng));
        double dist = std::min(t.value, 1.0 - t.value);
        require(dist >= 1e-6, "sampled turn stays away from the trivial character");
        chars.push_back(free_char(t));
    }

    for (const SpectrumSample& s : rum_spectrum(fw, chars))
        require(s.kernel_dim == 3, "kernel dimension 3 at " + char_to_string(s.chi));

    SymbolPolynomial poly = fourier_coefficients(fw);
    require(poly.coefficients.size() == 2, "coefficient support {0, 1}");
    require(poly.coefficient(make_element(fw.graph.group, {0}, {})) != nullptr &&
                poly.coefficient(make_element(fw.graph.group, {1}, {})) != nullptr,
            "coefficient support {0, 1}");
    Eigen::MatrixXcd rung(1, 6);
    rung << 2, 0, 0, -2, 0, 0;
    require(entry_dev(poly.coefficient(make_element(fw.graph.group, {0}, {}))->row(0), rung) <= 1e-12,
            "constant coefficient rung row");

    FlexSuiteResult suite = flex_suite(fw, chars, 6);
    require(suite.pass, "every kernel flex verifies on the radius-6 window");
    require(suite.worst_residual <= 1e-9, "worst flex residual below 1e-9");
    require(suite.flexes_checked >= 64 * 3, "kernel vectors all exercised");
}

// -- criterion 5: randomized framework battery -------------------------------

void criterion_random_battery() {
    std::mt19937_64 rng(0x616363657074ULL);
    for (int trial = 0; trial < 100; ++trial) {
        testgen::GeneratedFramework gen = testgen::random_framework(rng);
        std::string tag = " [" + gen.label + ", trial " + std::to_string(trial) + "]";

        EquivarianceReport eq = validate_equivariance(gen.fw);
        require(eq.ok() && eq.max_deviation <= 1e-10, "equivariance" + tag);

        std::vector<Character> chars = sample_dual_grid(gen.fw.graph.group, 4);
        std::vector<Character> extra = testgen::random_characters(gen.fw.graph.group, rng, 8);
        chars.insert(chars.end(), extra.begin(), extra.end());
        require(symbol_oracle_deviation(gen.fw, chars) <= 1e-13, "symbol oracle" + tag);
        require(fourier_formula_deviation(gen.fw) <= 1e-12, "coefficient formula" + tag);

        FlexSuiteResult suite = flex_suite(gen.fw, extra, 3);
        require(suite.pass && suite.worst_residual <= 1e-9, "flex battery" + tag);
    }
}

// -- criterion 6: non-quadratic gradient rows --------------------------------

void criterion_gradient_rows() {
    GroupSpec z{1, {}};
    GainGraph g;
    g.group = z;
    g.vertex_orbits = {"a", "b"};
    DirectedEdgeOrbit e;
    e.id = "e";
    e.tail = "a";
    e.head = "b";
    e.gain = make_element(z, {0}, {});
    g.edge_orbits = {e};

    Representation rep;
    rep.dim = 3;
    rep.free_gens = {AffineMap{Eigen::MatrixXd::Identity(3, 3), Eigen::Vector3d(10, 0, 0)}};

    std::mt19937_64 rng(0x6772616432ULL);
    std::uniform_real_distribution<double> coord(-2.0, 2.0);
    std::normal_distribution<double> gauss(0.0, 1.0);
    const double qs[] = {1.5, 2.5, 4.0};
    int done = 0;
    while (done < 200) {
        Eigen::Vector3d ev(coord(rng), coord(rng), coord(rng));
        if (ev.norm() < 0.2 || std::hypot(ev.x(), ev.y()) < 0.2) continue;
        Eigen::Vector3d x(gauss(rng), gauss(rng), gauss(rng));
        x.normalize();
        double q = qs[done % 3];

        PlacementMap placements = {{"a", ev}, {"b", Eigen::Vector3d::Zero()}};
        SymmetricFramework fw = build_l2q(g, placements, rep, q);
        double row_dot = (fw.blocks[0].A.real() * x)(0);
        double oracle = directional_derivative_oracle(ev, x, q, 1e-6);
        require_close(row_dot, oracle, 1e-6, "gradient row vs finite difference");
        ++done;
    }
}

// -- criterion 7: windowed norms below the symbol sup -------------------------

void criterion_norm_monotone() {
    SymmetricFramework fw = load("doublehelix.json");

    double grid_max = 0.0;
    for (const Character& chi : sample_dual_grid(fw.graph.group, 256)) {
        Eigen::JacobiSVD<Eigen::MatrixXcd> svd(orbit_matrix(fw, chi));
        grid_max = std::max(grid_max, svd.singularValues()(0));
    }

    double prev = 0.0;
    for (long long radius : {4LL, 8LL, 16LL}) {
        CoboundaryMatrix c = coboundary_window(fw, Window::box(fw.graph.group, radius));
        double norm = operator_norm_estimate(c);
        require(norm >= prev - 1e-12, "window norm nondecreasing in the radius");
        require(norm <= grid_max + 1e-9, "window norm bounded by the symbol sup");
        prev = norm;
    }
}

struct Criterion {
    const char* label;
    std::function<void()> body;
};

}  // namespace

int main() {
    const Criterion criteria[] = {
        {"finite reflection cycle block-diagonalizes", criterion_finite_cycle},
        {"mixed-constraint strip spectrum and flexes", criterion_strip_spectrum},
        {"point-group kernels track the norm exponent", criterion_l2q_point_group},
        {"helical chain keeps a rank-3 kernel off the trivial character", criterion_helix_kernels},
        {"randomized frameworks pass the invariant battery", criterion_random_battery},
        {"smooth norm gradient rows match finite differences", criterion_gradient_rows},
        {"windowed operator norms stay below the symbol sup", criterion_norm_monotone},
    };

    bool all_pass = true;
    int n = 0;
    for (const Criterion& c : criteria) {
        ++n;
        std::string detail;
        bool pass = false;
        try {
            c.body();
            pass = true;
        } catch (const std::exception& ex) {
            detail = ex.what();
        } catch (...) {
            detail = "unknown error";
        }
        if (pass) {
            std::printf("[PASS] criterion %d: %s\n", n, c.label);
        } else {
            std::printf("[FAIL] criterion %d: %s (%s)\n", n, c.label, detail.c_str());
            all_pass = false;
        }
    }
    return all_pass ? 0 : 1;
}
