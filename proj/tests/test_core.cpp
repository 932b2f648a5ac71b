/// Unit tests for the foundation layer: parameter closures (density,
/// viscosity, mobility, double-well potential), grid geometry, flat field
/// containers and their elementwise helpers, the split free-energy functional,
/// and the scheme-configuration factory.

#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>

#include "chns/ch_step.hpp"
#include "chns/fields.hpp"
#include "chns/grid.hpp"
#include "chns/params.hpp"
#include "chns/state.hpp"

using namespace chns;

TEST_CASE("phi clip saturates outside the physical phase range") {
    CHECK(clip_phi(0.37) == doctest::Approx(0.37));
    CHECK(clip_phi(1.0) == 1.0);
    CHECK(clip_phi(-1.0) == -1.0);
    CHECK(clip_phi(1.5) == 1.0);
    CHECK(clip_phi(-2.75) == -1.0);
}

TEST_CASE("density interpolation is affine between the phases and clipped") {
    FluidParams p;
    p.rho1 = 10.0;
    p.rho2 = 1.0;
    // Midpoint value: 0.5*0.5*(10-1) + 0.5*(10+1) = 7.75.
    CHECK(rho_of_phi(0.5, p) == doctest::Approx(7.75).epsilon(1e-14));
    CHECK(rho_of_phi(1.0, p) == doctest::Approx(10.0));
    CHECK(rho_of_phi(-1.0, p) == doctest::Approx(1.0));
    // Overshoot is clipped to the nearer pure phase.
    CHECK(rho_of_phi(1.5, p) == doctest::Approx(10.0));
    CHECK(rho_of_phi(-3.0, p) == doctest::Approx(1.0));
    CHECK(p.rho_min() == doctest::Approx(1.0));
    CHECK(p.rho_max() == doctest::Approx(10.0));
}

TEST_CASE("viscosity interpolation matches the density rule") {
    FluidParams p;
    p.nu1 = 10.0;
    p.nu2 = 0.1;
    CHECK(nu_of_phi(0.0, p) == doctest::Approx(5.05).epsilon(1e-14));
    CHECK(nu_of_phi(2.0, p) == doctest::Approx(10.0));
    CHECK(nu_of_phi(-2.0, p) == doctest::Approx(0.1));
}

TEST_CASE("mobility laws: constant ignores phi, degenerate vanishes at the pure phases") {
    FluidParams p;
    p.mobility_value = 3.0;
    p.mobility_law = MobilityLaw::constant;
    CHECK(mobility_of_phi(0.0, p) == doctest::Approx(3.0));
    CHECK(mobility_of_phi(0.9, p) == doctest::Approx(3.0));

    p.mobility_law = MobilityLaw::degenerate;
    p.mobility_value = 4e-5;
    CHECK(mobility_of_phi(1.0, p) == doctest::Approx(0.0));
    CHECK(mobility_of_phi(-1.0, p) == doctest::Approx(0.0));
    CHECK(mobility_of_phi(0.0, p) == doctest::Approx(4e-5));
    // (phi^2-1)^2 at phi=2 is 9.
    CHECK(mobility_of_phi(2.0, p) == doctest::Approx(9.0 * 4e-5));
}

TEST_CASE("double-well potential and its derivative are consistent") {
    CHECK(F_well(1.0) == doctest::Approx(0.0));
    CHECK(F_well(-1.0) == doctest::Approx(0.0));
    CHECK(F_well(0.0) == doctest::Approx(0.25));
    CHECK(f_well(0.5) == doctest::Approx(0.5 * (0.25 - 1.0)));
    // f = dF/dphi via central differences at several points.
    for (double phi : {-1.3, -0.6, 0.0, 0.4, 1.1}) {
        const double h = 1e-6;
        const double fd = (F_well(phi + h) - F_well(phi - h)) / (2.0 * h);
        CHECK(f_well(phi) == doctest::Approx(fd).epsilon(1e-8));
    }
}

TEST_CASE("gravity flag reflects the acceleration vector") {
    FluidParams p;
    CHECK_FALSE(p.has_gravity());
    p.grav_y = -0.98;
    CHECK(p.has_gravity());
}

TEST_CASE("grid geometry: spacings, centers, faces, wrap") {
    const Grid g = make_grid(8, 4, 0.0, 0.0, 2.0, 1.0, AxisBc::periodic, AxisBc::wall_no_slip);
    CHECK(g.hx == doctest::Approx(0.25));
    CHECK(g.hy == doctest::Approx(0.25));
    CHECK(g.lx() == doctest::Approx(2.0));
    CHECK(g.ly() == doctest::Approx(1.0));
    CHECK(g.cell_area() == doctest::Approx(0.0625));
    CHECK(g.xc(0) == doctest::Approx(0.125));
    CHECK(g.yc(3) == doctest::Approx(0.875));
    CHECK(g.xf(0) == doctest::Approx(0.0));
    CHECK(g.yf(4) == doctest::Approx(1.0));
    CHECK(g.periodic_x());
    CHECK_FALSE(g.periodic_y());
    // Periodic axis stores nx x-faces; wall axis stores ny+1 y-faces.
    CHECK(g.n_xfaces_x() == 8);
    CHECK(g.n_yfaces_y() == 5);
    CHECK(g.wrap_x(-1) == 7);
    CHECK(g.wrap_x(8) == 0);
}

TEST_CASE("scalar field layout is x-fastest and value-initialized to zero") {
    const Grid g = make_grid(4, 3, 0.0, 0.0, 1.0, 1.0, AxisBc::periodic, AxisBc::periodic);
    ScalarField f(g);
    CHECK(f.size() == 12);
    for (double v : f.data) CHECK(v == 0.0);
    f(1, 2) = 7.0;
    CHECK(f.data[1 + 4 * 2] == 7.0);
    f.fill(2.5);
    CHECK(f(3, 0) == 2.5);
}

TEST_CASE("face field extents follow the boundary conditions") {
    const Grid gp = make_grid(6, 5, 0.0, 0.0, 1.0, 1.0, AxisBc::periodic, AxisBc::periodic);
    FaceVectorField Fp(gp);
    CHECK(Fp.u.size() == 6u * 5u);
    CHECK(Fp.v.size() == 6u * 5u);

    const Grid gw = make_grid(6, 5, 0.0, 0.0, 1.0, 1.0, AxisBc::wall_free_slip, AxisBc::wall_no_slip);
    FaceVectorField Fw(gw);
    CHECK(Fw.nux == 7);
    CHECK(Fw.nvy == 6);
    CHECK(Fw.u.size() == 7u * 5u);
    CHECK(Fw.v.size() == 6u * 6u);
}

TEST_CASE("elementwise helpers compute a*x + b*y") {
    const Grid g = make_grid(4, 4, 0.0, 0.0, 1.0, 1.0, AxisBc::periodic, AxisBc::periodic);
    ScalarField x(g), y(g);
    x.fill(2.0);
    y.fill(-1.0);
    ScalarField z = axpy(3.0, x, y);
    CHECK(z(2, 2) == doctest::Approx(5.0));
    ScalarField w = lincomb(0.5, x, 2.0, y);
    CHECK(w(0, 3) == doctest::Approx(-1.0));
    add_scaled(w, 1.0, x);
    CHECK(w(1, 1) == doctest::Approx(1.0));

    FaceVectorField A(g), B(g);
    A.fill(1.0);
    B.fill(4.0);
    FaceVectorField C = lincomb(2.0, A, -0.5, B);
    CHECK(C.ux(0, 0) == doctest::Approx(0.0));
    CHECK(C.vy(3, 3) == doctest::Approx(0.0));
    add_scaled(C, 3.0, A);
    CHECK(C.ux(2, 1) == doctest::Approx(3.0));
}

TEST_CASE("split free energy of a uniform pure phase has the closed form") {
    // For phi == 1 on a box of area |O|: F(1) = 0, so the functional reduces
    // to -(lambda*s / (2 eps)) * |O|.  With lambda=0.01, eps=0.08, s=4 on
    // [0,2pi]^2 that is exactly -pi^2.
    const double two_pi = 2.0 * std::acos(-1.0);
    const Grid g = make_grid(16, 16, 0.0, 0.0, two_pi, two_pi, AxisBc::periodic, AxisBc::periodic);
    FluidParams p;
    p.lambda = 0.01;
    p.epsilon = 0.08;
    p.s = 4.0;
    ScalarField phi(g);
    phi.fill(1.0);
    const double e0 = e0_functional(phi, p, g);
    const double pi = std::acos(-1.0);
    CHECK(e0 == doctest::Approx(-pi * pi).epsilon(1e-13));
}

TEST_CASE("auxiliary-scalar state reports deviation and finiteness") {
    SavState s;
    CHECK(s.all_finite());
    CHECK(s.max_abs_deviation() == doctest::Approx(0.0));
    s.Q = 1.25;
    s.T = 0.9;
    CHECK(s.max_abs_deviation() == doctest::Approx(0.25));
    s.K = std::numeric_limits<double>::quiet_NaN();
    CHECK_FALSE(s.all_finite());
}

TEST_CASE("scheme factory derives the pressure coefficient and coupling") {
    FluidParams p;
    p.rho1 = 1000.0;
    p.rho2 = 100.0;
    SchemeConfig s1 = make_scheme(1, 1e-3, p);
    CHECK(s1.order == 1);
    CHECK(s1.chi == doctest::Approx(100.0));
    CHECK(s1.beta == 0.0);
    CHECK(s1.a0_over_dt() == doctest::Approx(1000.0));

    SchemeConfig s2 = make_scheme(2, 1e-3, p);
    CHECK(s2.beta == doctest::Approx(2.0 * 1e-3 / (3.0 * 100.0)));
    CHECK(s2.a0_over_dt() == doctest::Approx(1500.0));
}

TEST_CASE("simulation state allocates every level on the grid") {
    const Grid g = make_grid(8, 8, 0.0, 0.0, 1.0, 1.0, AxisBc::periodic, AxisBc::periodic);
    SimState st(g);
    CHECK(st.phi.size() == 64);
    CHECK(st.mu.size() == 64);
    CHECK(st.p.size() == 64);
    CHECK(st.incr.size() == 64);
    CHECK(st.phi_prev.size() == 64);
    CHECK(st.vel.u.size() == 64);
    CHECK(st.vel_prev.v.size() == 64);
    CHECK(st.time == 0.0);
    CHECK(st.step_index == 0);
    CHECK(st.sav.r == 1.0);
}
