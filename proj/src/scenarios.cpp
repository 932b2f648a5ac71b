#include "chns/scenarios.hpp"

#include <cmath>
#include <stdexcept>

#include "chns/operators.hpp"

namespace chns {

namespace {

// mu at t = 0 follows from phi: mu = lambda * (-eps * Lap(phi) + f(phi)/eps).
// The Laplacian uses the same stencil as the time stepping, so the discrete
// initial chemical potential is consistent with the first step.
void init_mu_from_phi(SimState& st, const FluidParams& fp) {
    ScalarField lap = laplacian(st.phi, st.grid);
    const int n = st.phi.size();
    for (int k = 0; k < n; ++k) {
        st.mu.data[k] = fp.lambda * (-fp.epsilon * lap.data[k] +
                                     f_well(st.phi.data[k]) / fp.epsilon);
    }
}

} // namespace

Scenario make_accuracy_scenario(int nx, int ny) {
    const double two_pi = 2.0 * M_PI;
    Grid g = make_grid(nx, ny, 0.0, 0.0, two_pi, two_pi,
                       AxisBc::periodic, AxisBc::periodic);
    Scenario scn(g);
    scn.name = "accuracy";

    FluidParams& fp = scn.fluid;
    fp.rho1 = 10.0;
    fp.rho2 = 1.0;
    fp.nu1 = 1.0;
    fp.nu2 = 1.0;
    fp.lambda = 0.01;
    fp.epsilon = 0.08;
    fp.s = 4.0;
    fp.alpha = 1e-2;
    fp.mobility_law = MobilityLaw::constant;
    fp.mobility_value = 1.0;
    fp.grav_x = 0.0;
    fp.grav_y = 0.0;

    // Two separated circular regions (phi ~ +1) in a phi ~ -1 background.
    const double r1 = 1.4, r2 = 0.5;
    const double x1 = M_PI - 0.8, y1 = M_PI;
    const double x2 = M_PI + 1.7, y2 = M_PI;
    const double w = 1.5 * fp.epsilon;
    for (int j = 0; j < g.ny; ++j) {
        for (int i = 0; i < g.nx; ++i) {
            const double x = g.xc(i), y = g.yc(j);
            const double d1 = std::sqrt((x - x1) * (x - x1) + (y - y1) * (y - y1));
            const double d2 = std::sqrt((x - x2) * (x - x2) + (y - y2) * (y - y2));
            scn.state.phi(i, j) =
                1.0 + std::tanh((r1 - d1) / w) + std::tanh((r2 - d2) / w);
        }
    }
    init_mu_from_phi(scn.state, fp);

    scn.default_order = 2;
    scn.dt = 1e-3;
    scn.t_end = 0.64;
    scn.cadence = 10;
    return scn;
}

Scenario make_bubble_scenario(int caseno, int nx, int ny) {
    if (caseno != 1 && caseno != 2) {
        throw std::invalid_argument("bubble scenario case must be 1 or 2");
    }
    Grid g = make_grid(nx, ny, 0.0, 0.0, 1.0, 2.0,
                       AxisBc::wall_free_slip, AxisBc::wall_no_slip);
    Scenario scn(g);
    scn.name = (caseno == 1) ? "bubble1" : "bubble2";

    FluidParams& fp = scn.fluid;
    fp.rho1 = 1000.0;
    fp.rho2 = (caseno == 1) ? 100.0 : 1.0;
    fp.nu1 = 10.0;
    fp.nu2 = (caseno == 1) ? 1.0 : 0.1;
    const double sigma = (caseno == 1) ? 24.5 : 1.96;
    fp.lambda = 1.5 / std::sqrt(2.0) * sigma;
    fp.epsilon = 0.01;
    fp.s = 4.0;
    fp.alpha = 1e-5;
    fp.mobility_law = MobilityLaw::degenerate;
    fp.mobility_value = (caseno == 1) ? 0.00004 : 0.00026;
    fp.grav_x = 0.0;
    fp.grav_y = -0.98;

    // Light bubble: phi ~ -1 inside radius 0.25 about (0.5, 0.5).
    const double xb = 0.5, yb = 0.5, rb = 0.25;
    const double w = std::sqrt(2.0) * fp.epsilon;
    for (int j = 0; j < g.ny; ++j) {
        for (int i = 0; i < g.nx; ++i) {
            const double x = g.xc(i), y = g.yc(j);
            const double r = std::sqrt((x - xb) * (x - xb) + (y - yb) * (y - yb));
            scn.state.phi(i, j) = std::tanh((r - rb) / w);
        }
    }
    init_mu_from_phi(scn.state, fp);

    scn.default_order = 2;
    scn.dt = (caseno == 1) ? 1e-4 : 0.5e-4;
    scn.t_end = 3.0;
    scn.cadence = 100;
    return scn;
}

Scenario make_rayleigh_taylor_scenario(int nx, int ny) {
    const double d = 1.0;
    Grid g = make_grid(nx, ny, 0.0, 0.0, d, 4.0 * d,
                       AxisBc::wall_free_slip, AxisBc::wall_no_slip);
    Scenario scn(g);
    scn.name = "rayleigh_taylor";

    FluidParams& fp = scn.fluid;
    fp.rho1 = 3.0; // heavy phase, phi ~ +1, initially on top
    fp.rho2 = 1.0;
    fp.nu1 = 0.0031316;
    fp.nu2 = 0.0031316;
    const double sigma = 0.01;
    fp.lambda = 1.5 / std::sqrt(2.0) * sigma;
    fp.epsilon = 0.005;
    fp.s = 4.0;
    fp.alpha = 1e-5;
    fp.mobility_law = MobilityLaw::degenerate;
    fp.mobility_value = 4e-5;
    fp.grav_x = 0.0;
    fp.grav_y = -9.80665;

    // Heavy fluid above the perturbed interface y(x) = 2d + 0.1 d cos(2 pi x/d).
    const double w = std::sqrt(2.0) * fp.epsilon;
    for (int j = 0; j < g.ny; ++j) {
        for (int i = 0; i < g.nx; ++i) {
            const double x = g.xc(i), y = g.yc(j);
            const double yint = 2.0 * d + 0.1 * d * std::cos(2.0 * M_PI * x / d);
            scn.state.phi(i, j) = std::tanh((y - yint) / w);
        }
    }
    init_mu_from_phi(scn.state, fp);

    scn.default_order = 2;
    scn.dt = 1e-4;
    scn.t_end = 1.5;
    scn.cadence = 100;
    return scn;
}

Scenario make_scenario(const std::string& name, int nx, int ny) {
    auto pick = [&](int defx, int defy, auto&& maker) {
        const int gx = nx > 0 ? nx : defx;
        const int gy = ny > 0 ? ny : defy;
        return maker(gx, gy);
    };
    if (name == "accuracy") {
        return pick(128, 128, [](int a, int b) { return make_accuracy_scenario(a, b); });
    }
    if (name == "bubble1") {
        return pick(64, 128, [](int a, int b) { return make_bubble_scenario(1, a, b); });
    }
    if (name == "bubble2") {
        return pick(64, 128, [](int a, int b) { return make_bubble_scenario(2, a, b); });
    }
    if (name == "rayleigh_taylor") {
        return pick(128, 512, [](int a, int b) { return make_rayleigh_taylor_scenario(a, b); });
    }
    throw std::invalid_argument("unknown scenario '" + name + "'");
}

const std::vector<std::string>& scenario_names() {
    static const std::vector<std::string> names = {
        "accuracy", "bubble1", "bubble2", "rayleigh_taylor"};
    return names;
}

} // namespace chns
