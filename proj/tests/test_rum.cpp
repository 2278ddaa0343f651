#include <cmath>
#include <complex>

#include "doctest.h"
#include "helpers.hpp"
#include "rumkit/numerics.hpp"
#include "rumkit/rum.hpp"

using namespace rumkit;

using cd = std::complex<double>;

TEST_CASE("kernel extraction on frozen matrices") {
    Eigen::MatrixXcd upper(2, 2);
    upper << 0, 2, 0, 0;
    KernelResult k = kernel_basis(upper);
    REQUIRE(k.kernel_dim == 1);
    CHECK(std::abs(k.basis(0, 0) - cd(1.0)) < 1e-14);
    CHECK(std::abs(k.basis(1, 0)) < 1e-14);

    CHECK(kernel_basis(Eigen::MatrixXcd::Identity(3, 3)).kernel_dim == 0);

    Eigen::MatrixXcd no_rows(0, 3);
    KernelResult full = kernel_basis(no_rows);
    CHECK(full.kernel_dim == 3);
    CHECK(full.sigma_min == 0.0);

    CHECK(kernel_basis(Eigen::MatrixXcd(2, 0)).kernel_dim == 0);
}

TEST_CASE("the ladder framework has three spectrum points on the quarter grid") {
    SymmetricFramework fw = load_fixture("diamond.json");
    std::vector<SpectrumSample> samples = rum_spectrum_grid(fw, 4);
    REQUIRE(samples.size() == 8);

    int members = 0;
    for (const SpectrumSample& s : samples) {
        const Turn& t = s.chi.free_turns[0];
        const long long k = s.chi.torsion_indices[0];
        const bool expected =
            (t.num == 0 && k == 0) || (t.num == 0 && k == 1) ||
            (turn_equal(t, Turn::from_fraction(1, 2)) && k == 1);
        CHECK(s.in_spectrum == expected);
        if (!s.in_spectrum) continue;
        ++members;
        REQUIRE(s.kernel_dim == 1);
        Eigen::Vector2cd want = (t.num == 0 && k == 1) ? Eigen::Vector2cd(0.0, 1.0)
                                                       : Eigen::Vector2cd(1.0, 0.0);
        CHECK((s.kernel.col(0) - want).cwiseAbs().maxCoeff() < 1e-12);
    }
    CHECK(members == 3);
}

TEST_CASE("the helix kernel jumps only at the trivial character") {
    SymmetricFramework fw = load_fixture("doublehelix.json");
    std::vector<SpectrumSample> samples = rum_spectrum_grid(fw, 64);
    REQUIRE(samples.size() == 64);
    for (const SpectrumSample& s : samples) {
        CHECK(s.in_spectrum);
        if (s.chi.free_turns[0].num == 0)
            CHECK(s.kernel_dim == 4);
        else
            CHECK(s.kernel_dim == 3);
    }
}

TEST_CASE("all four helix flexes at the trivial character verify") {
    SymmetricFramework fw = load_fixture("doublehelix.json");
    Character trivial = make_char({frac(0, 1)}, {});
    KernelResult k = kernel_basis(orbit_matrix(fw, trivial));
    REQUIRE(k.kernel_dim == 4);
    Window w = Window::box(fw.graph.group, 3);
    CoboundaryMatrix c = coboundary_window(fw, w);
    for (int j = 0; j < 4; ++j) {
        FlexField flex = build_flex(fw, trivial, k.basis.col(j), w);
        FlexReport report = verify_flex(c, flex);
        CHECK(report.pass);
        CHECK(report.max_residual < 1e-11);
    }

    // The strand rotation that only exists at omega = 1.
    Eigen::VectorXcd a = Eigen::VectorXcd::Zero(6);
    a(1) = 1.0;
    CHECK((orbit_matrix(fw, trivial) * a).cwiseAbs().maxCoeff() < 1e-12);
    FlexReport tangential = verify_flex(c, build_flex(fw, trivial, a, w));
    CHECK(tangential.pass);
}

TEST_CASE("a translation fixed by the rotations is always a flex") {
    SymmetricFramework fw = load_fixture("doublehelix.json");
    Character trivial = make_char({frac(0, 1)}, {});
    Eigen::VectorXcd a(6);
    a << 0, 0, 1, 0, 0, 1;
    CHECK((orbit_matrix(fw, trivial) * a).cwiseAbs().maxCoeff() < 1e-12);
    Window w = Window::box(fw.graph.group, 2);
    FlexField flex = build_flex(fw, trivial, a, w);
    for (const Eigen::VectorXcd& z : flex.values) {
        CHECK(std::abs(z(2) - cd(1.0)) < 1e-12);  // dtau fixes the z axis
        CHECK(std::abs(z(0)) < 1e-12);
        CHECK(std::abs(z(1)) < 1e-12);
    }
    CHECK(verify_flex(fw, flex).pass);
}

TEST_CASE("ladder flexes decay to the frozen values") {
    SymmetricFramework fw = load_fixture("diamond.json");
    Character trivial = make_char({frac(0, 1)}, {0});
    KernelResult k = kernel_basis(orbit_matrix(fw, trivial));
    REQUIRE(k.kernel_dim == 1);
    Window w = Window::box(fw.graph.group, 3);
    FlexField flex = build_flex(fw, trivial, k.basis.col(0), w);
    // dtau is diag(1, +-1) and a = (1,0), so every value is exactly (1,0).
    for (const Eigen::VectorXcd& z : flex.values) {
        CHECK(std::abs(z(0) - cd(1.0)) < 1e-12);
        CHECK(std::abs(z(1)) < 1e-12);
    }
    CHECK(verify_flex(fw, flex).pass);
}

TEST_CASE("box kite flexes take the formula values") {
    SymmetricFramework fw = load_fixture("boxkite.json");
    const GroupSpec& spec = fw.graph.group;
    Window w = Window::box(spec, std::vector<long long>{});
    CoboundaryMatrix c = coboundary_window(fw, w);

    Character chi = make_char({}, {2, 1});
    KernelResult k = kernel_basis(orbit_matrix(fw, chi));
    REQUIRE(k.kernel_dim == 1);
    Eigen::Vector3cd want(1.0, 1.0, -2.0);
    want /= want.norm();
    CHECK((k.basis.col(0) - want).cwiseAbs().maxCoeff() < 1e-12);

    FlexField flex = build_flex(fw, chi, k.basis.col(0), w);
    FlexReport report = verify_flex(c, flex);
    CHECK(report.pass);
    CHECK(report.max_residual < 1e-12);

    const int at = c.covering.vertex_index(make_element(spec, {}, {0, 1}), 0);
    REQUIRE(at >= 0);
    Eigen::Vector3cd frozen(-1.0, -1.0, -2.0);
    frozen /= std::sqrt(6.0);
    CHECK((flex.values[at] - frozen).cwiseAbs().maxCoeff() < 1e-12);

    Character plane = make_char({}, {0, 0});
    KernelResult k2 = kernel_basis(orbit_matrix(fw, plane));
    REQUIRE(k2.kernel_dim == 1);
    Eigen::Vector3cd spin(1.0, -1.0, 0.0);
    spin /= spin.norm();
    CHECK((k2.basis.col(0) - spin).cwiseAbs().maxCoeff() < 1e-12);
    CHECK(verify_flex(c, build_flex(fw, plane, k2.basis.col(0), w)).pass);

    Character doubled = make_char({}, {2, 0});
    CHECK(kernel_basis(orbit_matrix(fw, doubled)).kernel_dim == 2);
}

TEST_CASE("vectors outside the kernel fail verification") {
    SymmetricFramework fw = load_fixture("diamond.json");
    Character off = make_char({frac(1, 4)}, {0});
    CHECK(kernel_basis(orbit_matrix(fw, off)).kernel_dim == 0);
    Eigen::VectorXcd a(2);
    a << 1.0, 0.0;
    Window w = Window::box(fw.graph.group, 3);
    FlexReport report = verify_flex(fw, build_flex(fw, off, a, w));
    CHECK_FALSE(report.pass);
    CHECK(report.max_residual > 1e-3);
}

TEST_CASE("scan and refine keeps the isolated spectrum points") {
    SymmetricFramework fw = load_fixture("diamond.json");
    std::vector<SpectrumSample> refined = spectrum_scan_refine(fw, 8, 4);
    CHECK(refined.size() > 16);
    int members = 0;
    for (const SpectrumSample& s : refined) {
        if (!s.in_spectrum) continue;
        ++members;
        const Turn& t = s.chi.free_turns[0];
        const long long k = s.chi.torsion_indices[0];
        CHECK((t.num == 0 || turn_equal(t, Turn::from_fraction(1, 2))));
        CHECK((k == 0 || k == 1));
    }
    CHECK(members == 3);

    SymmetricFramework finite = load_fixture("cycle4.json");
    CHECK_THROWS_AS(spectrum_scan_refine(finite, 8, 4), std::invalid_argument);
}

TEST_CASE("kernel spans ignore row scaling") {
    SymmetricFramework fw = load_fixture("doublehelix.json");
    Character chi = make_char({frac(3, 8)}, {});
    Eigen::MatrixXcd m = orbit_matrix(fw, chi);
    Eigen::MatrixXcd scaled = m;
    scaled.row(0) *= 7.0;
    scaled.row(2) *= std::complex<double>(0.0, -3.0);
    KernelResult a = kernel_basis(m);
    KernelResult b = kernel_basis(scaled);
    REQUIRE(a.kernel_dim == 3);
    REQUIRE(b.kernel_dim == 3);
    CHECK(max_principal_angle(a.basis, b.basis) < 1e-8);
}

TEST_CASE("sigma_min varies continuously in the character") {
    SymmetricFramework fw = load_fixture("doublehelix.json");
    SymbolPolynomial poly = fourier_coefficients(fw);
    Character a = make_char({Turn::from_double(0.2)}, {});
    Character b = make_char({Turn::from_double(0.2001)}, {});
    Eigen::MatrixXcd ma = eval_symbol(poly, a);
    Eigen::MatrixXcd mb = eval_symbol(poly, b);
    double gap = std::abs(svd(ma).sigma.minCoeff() - svd(mb).sigma.minCoeff());
    CHECK(gap <= svd(ma - mb).sigma(0) + 1e-12);
}

TEST_CASE("spectrum samples keep their slot order under threading") {
    SymmetricFramework fw = load_fixture("diamond.json");
    std::vector<Character> grid_chars = sample_dual_grid(fw.graph.group, 8);
    std::vector<SpectrumSample> samples = rum_spectrum(fw, grid_chars);
    REQUIRE(samples.size() == grid_chars.size());
    for (size_t i = 0; i < samples.size(); ++i) {
        CHECK(turn_equal(samples[i].chi.free_turns[0], grid_chars[i].free_turns[0]));
        CHECK(samples[i].chi.torsion_indices == grid_chars[i].torsion_indices);
    }
}
