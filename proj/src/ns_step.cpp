#include "chns/ns_step.hpp"

#include "chns/material.hpp"

namespace chns {

NsStepResult ns_step(const SimState& st, const ChStepResult& ch, const FluidParams& fp,
                     const SchemeConfig& sc) {
    const Grid& g = st.grid;
    const bool o2 = sc.order == 2;
    const double dt = sc.dt;

    // Explicit levels.
    const ScalarField phiA = o2 ? lincomb(2.0, st.phi, -1.0, st.phi_prev) : st.phi;
    const ScalarField muA = o2 ? lincomb(2.0, st.mu, -1.0, st.mu_prev) : st.mu;
    const FaceVectorField velA = o2 ? lincomb(2.0, st.vel, -1.0, st.vel_prev) : st.vel;
    const double QA = o2 ? 2.0 * st.sav.Q - st.sav.Q_prev : st.sav.Q;
    const double RA = o2 ? 2.0 * st.sav.R - st.sav.R_prev : st.sav.R;
    const double KA = o2 ? 2.0 * st.sav.K - st.sav.K_prev : st.sav.K;

    // Densities at the three time levels (cells, then faces).
    const ScalarField rho_new = rho_field(ch.phi_new, fp);
    const ScalarField rho_n = rho_field(st.phi, fp);
    const FaceCoef rf_new = faces_from_cells(rho_new, g);
    const FaceCoef rf_n = faces_from_cells(rho_n, g);
    FaceCoef rf_nm1;
    if (o2) rf_nm1 = faces_from_cells(rho_field(st.phi_prev, fp), g);

    NsStepResult out;
    out.nu_new = nu_field(ch.phi_new, fp);

    // Implicit operator: mass .* u - div(nu_new D(u)).
    // Mass coefficient per face: K^A * (rho_new * a0 + (BDF difference of rho)/2) / dt.
    FaceCoef mass(g, FaceQuantity::flux);
    if (o2) {
        for (size_t k = 0; k < mass.u.size(); ++k)
            mass.u[k] = KA * (9.0 * rf_new.u[k] - 4.0 * rf_n.u[k] + rf_nm1.u[k]) / (4.0 * dt);
        for (size_t k = 0; k < mass.v.size(); ++k)
            mass.v[k] = KA * (9.0 * rf_new.v[k] - 4.0 * rf_n.v[k] + rf_nm1.v[k]) / (4.0 * dt);
    } else {
        for (size_t k = 0; k < mass.u.size(); ++k)
            mass.u[k] = KA * (1.5 * rf_new.u[k] - 0.5 * rf_n.u[k]) / dt;
        for (size_t k = 0; k < mass.v.size(); ++k)
            mass.v[k] = KA * (1.5 * rf_new.v[k] - 0.5 * rf_n.v[k]) / dt;
    }
    MomentumOperator A(g, std::move(mass), out.nu_new);

    // Explicit force fields.  These exact fields also feed the R/K/Q updates.
    const ScalarField p_ext = o2
        ? [&] {
              ScalarField pe = st.p;
              for (size_t k = 0; k < pe.data.size(); ++k)
                  pe.data[k] += (4.0 / 3.0) * st.incr.data[k] - (1.0 / 3.0) * st.incr_prev.data[k];
              return pe;
          }()
        : axpy(1.0, st.incr, st.p);
    const FaceVectorField pgrad = gradient(p_ext, g);
    const FaceVectorField cap = phi_grad_mu(phiA, muA, g);
    const FaceVectorField conv = convection_momentum(rho_new, velA, velA, g);
    const FaceVectorField J = mass_flux(ch.mobility, muA, fp, g);
    const FaceVectorField flux = flux_gradient_terms(J, velA, g);

    // Right-hand side.
    FaceVectorField rhs(g, FaceQuantity::flux);
    const double bdf_new = o2 ? KA / (2.0 * dt) : KA / dt; // weight of rho_new * (history u)
    for (size_t k = 0; k < rhs.u.size(); ++k) {
        const double hist = o2 ? 4.0 * st.vel.u[k] - st.vel_prev.u[k] : st.vel.u[k];
        rhs.u[k] = bdf_new * rf_new.u[k] * hist - RA * pgrad.u[k] - QA * cap.u[k]
                 - RA * (conv.u[k] + flux.u[k]) + rf_new.u[k] * fp.grav_x;
    }
    for (size_t k = 0; k < rhs.v.size(); ++k) {
        const double hist = o2 ? 4.0 * st.vel.v[k] - st.vel_prev.v[k] : st.vel.v[k];
        rhs.v[k] = bdf_new * rf_new.v[k] * hist - RA * pgrad.v[k] - QA * cap.v[k]
                 - RA * (conv.v[k] + flux.v[k]) + rf_new.v[k] * fp.grav_y;
    }

    out.vel_new = st.vel; // initial guess
    out.solve = solve_momentum(A, rhs, out.vel_new, sc.tol_mom, sc.max_iter);

    // R update: the convection, flux and pressure-gradient quadratures against
    // the new velocity, exactly as they entered the momentum equation.
    const double quad_R = dot_faces(conv, out.vel_new, g) + dot_faces(flux, out.vel_new, g)
                        + dot_faces(pgrad, out.vel_new, g);
    if (o2) {
        out.R_new = (4.0 * st.sav.R - st.sav.R_prev + 2.0 * dt * fp.alpha * RA * quad_R) / 3.0;
    } else {
        out.R_new = st.sav.R + dt * fp.alpha * st.sav.R * quad_R;
    }

    // K update: conservative vs non-conservative kinetic-energy difference.
    const double ke_new = 0.5 * dot_faces_weighted(rf_new, out.vel_new, out.vel_new, g);
    const double ke_n = 0.5 * dot_faces_weighted(rf_n, st.vel, st.vel, g);
    if (o2) {
        const double ke_nm1 = 0.5 * dot_faces_weighted(rf_nm1, st.vel_prev, st.vel_prev, g);
        // <rho_new (3u_new - 4u_n + u_nm1), u_new> / (2 dt)
        const FaceVectorField dbdf = lincomb(3.0, out.vel_new, -1.0,
                                             lincomb(4.0, st.vel, -1.0, st.vel_prev));
        double nzec = dot_faces_weighted(rf_new, dbdf, out.vel_new, g) / (2.0 * dt);
        // + <(3rho_new - 4rho_n + rho_nm1)/2 u_new, u_new> / (2 dt)
        nzec += (3.0 * dot_faces_weighted(rf_new, out.vel_new, out.vel_new, g)
                 - 4.0 * dot_faces_weighted(rf_n, out.vel_new, out.vel_new, g)
                 + dot_faces_weighted(rf_nm1, out.vel_new, out.vel_new, g)) / (4.0 * dt);
        out.K_new = (4.0 * st.sav.K - st.sav.K_prev
                     + fp.alpha * (-(3.0 * ke_new - 4.0 * ke_n + ke_nm1)
                                   + 2.0 * dt * KA * nzec)) / 3.0;
    } else {
        const FaceVectorField du = lincomb(1.0, out.vel_new, -1.0, st.vel);
        double nzec = dot_faces_weighted(rf_new, du, out.vel_new, g) / dt;
        nzec += 0.5 * (dot_faces_weighted(rf_new, out.vel_new, out.vel_new, g)
                       - dot_faces_weighted(rf_n, out.vel_new, out.vel_new, g)) / dt;
        out.K_new = st.sav.K + fp.alpha * (-(ke_new - ke_n) + dt * st.sav.K * nzec);
    }

    out.q_capillary_quad = dot_faces(cap, out.vel_new, g);
    return out;
}

} // namespace chns
