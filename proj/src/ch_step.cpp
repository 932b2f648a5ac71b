#include "chns/ch_step.hpp"

#include "chns/material.hpp"

namespace chns {

double e0_functional(const ScalarField& phi, const FluidParams& fp, const Grid& g) {
    double s = 0.0;
    for (double v : phi.data) s += F_well(v) - 0.5 * fp.s * v * v;
    return (fp.lambda / fp.epsilon) * s * g.cell_area();
}

ChStepResult ch_step(const SimState& st, const FluidParams& fp, const SchemeConfig& sc,
                     SpectralSolver* spec) {
    const Grid& g = st.grid;
    const bool o2 = sc.order == 2;

    // Explicit source levels: (.)^n (order 1) or the extrapolation 2(.)^n - (.)^{n-1}.
    const ScalarField phiA = o2 ? lincomb(2.0, st.phi, -1.0, st.phi_prev) : st.phi;
    const FaceVectorField velA = o2 ? lincomb(2.0, st.vel, -1.0, st.vel_prev) : st.vel;
    const double QA = o2 ? 2.0 * st.sav.Q - st.sav.Q_prev : st.sav.Q;
    const double rA = o2 ? 2.0 * st.sav.r - st.sav.r_prev : st.sav.r;

    ChStepResult out;
    out.mobility = mobility_faces(phiA, fp, g);
    out.mobility_uniform = fp.mobility_law == MobilityLaw::constant;
    out.mobility_value = fp.mobility_value;

    // Advection term div(u^A phi^A); its inner product with mu_new feeds Q.
    const ScalarField adv = advect_scalar(velA, phiA, g);

    // Known part of the chemical potential row: c = lambda r^A / eps * (f - s phi).
    ScalarField c(g, CellQuantity::mu);
    for (size_t k = 0; k < c.data.size(); ++k) {
        const double ph = phiA.data[k];
        c.data[k] = fp.lambda * rA / fp.epsilon * (f_well(ph) - fp.s * ph);
    }

    // Right-hand side of the eliminated system H phi_new = rhs:
    //   rhs = (BDF history)/dt - Q^A adv + div(M grad c).
    ScalarField rhs = div_coef_grad(out.mobility, c, g);
    const double idt = 1.0 / sc.dt;
    for (size_t k = 0; k < rhs.data.size(); ++k) {
        const double hist = o2
            ? (4.0 * st.phi.data[k] - st.phi_prev.data[k]) * (0.5 * idt)
            : st.phi.data[k] * idt;
        rhs.data[k] += hist - QA * adv.data[k];
    }

    ChOperator H;
    H.g = &g;
    H.a0dt = sc.a0_over_dt();
    H.lam_eps = fp.lambda * fp.epsilon;
    H.ls_eps = fp.lambda * fp.s / fp.epsilon;
    H.mobility = &out.mobility;

    out.phi_new = st.phi; // initial guess for the Krylov path
    out.phi_new.tag = CellQuantity::phi;
    out.solve = solve_ch_system(H, rhs, out.phi_new, spec, out.mobility_uniform,
                                out.mobility_value, sc.tol_ch, sc.max_iter);

    // Recover mu_new from the chemical-potential row (exact by construction).
    ScalarField lap = laplacian(out.phi_new, g);
    out.mu_new = c;
    for (size_t k = 0; k < out.mu_new.data.size(); ++k)
        out.mu_new.data[k] += -H.lam_eps * lap.data[k] + H.ls_eps * out.phi_new.data[k];
    out.mu_new.tag = CellQuantity::mu;

    // Update r.  The quadrature reuses the identical (f - s phi) field that
    // entered the chemical-potential row, so the two stay consistent.
    const double e0_new = e0_functional(out.phi_new, fp, g);
    const double e0_n = e0_functional(st.phi, fp, g);
    double wdphi = 0.0; // <f(phi^A) - s phi^A, BDF difference of phi>
    if (o2) {
        for (size_t k = 0; k < phiA.data.size(); ++k) {
            const double ph = phiA.data[k];
            wdphi += (f_well(ph) - fp.s * ph)
                   * (3.0 * out.phi_new.data[k] - 4.0 * st.phi.data[k] + st.phi_prev.data[k]);
        }
        wdphi *= g.cell_area();
        const double e0_nm1 = e0_functional(st.phi_prev, fp, g);
        const double rhs_r = fp.alpha * (-(3.0 * e0_new - 4.0 * e0_n + e0_nm1)
                                         + rA * fp.lambda / fp.epsilon * wdphi);
        out.r_new = (4.0 * st.sav.r - st.sav.r_prev + rhs_r) / 3.0;
    } else {
        for (size_t k = 0; k < phiA.data.size(); ++k) {
            const double ph = phiA.data[k];
            wdphi += (f_well(ph) - fp.s * ph) * (out.phi_new.data[k] - st.phi.data[k]);
        }
        wdphi *= g.cell_area();
        out.r_new = st.sav.r + fp.alpha * (-(e0_new - e0_n)
                                           + rA * fp.lambda / fp.epsilon * wdphi);
    }

    out.q_advection_quad = dot_cells(adv, out.mu_new, g);
    return out;
}

} // namespace chns
