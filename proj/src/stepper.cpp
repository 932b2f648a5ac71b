#include "chns/stepper.hpp"

#include <cmath>
#include <stdexcept>
#include <utility>

#include "chns/ch_step.hpp"
#include "chns/ns_step.hpp"
#include "chns/pressure_step.hpp"

namespace chns {

namespace {

// One step of the scheme at the configuration `eff` (whose order may differ
// from the user-level configuration during startup).  Rotates histories and
// advances time; does not touch step_index.
bool single_step(SimState& st, const FluidParams& fp, const SchemeConfig& eff,
                 SpectralSolver* spec, StepReport& rep) {
    ChStepResult ch = ch_step(st, fp, eff, spec);
    if (!ch.solve.converged) {
        rep.error = "phase-field solve did not converge (residual "
                  + std::to_string(ch.solve.final_residual) + ")";
        return false;
    }

    NsStepResult ns = ns_step(st, ch, fp, eff);
    if (!ns.solve.converged) {
        rep.error = "momentum solve did not converge (residual "
                  + std::to_string(ns.solve.final_residual) + ")";
        return false;
    }

    PressureStepResult pr = pressure_step(st, ns.vel_new, ns.nu_new, fp, eff, spec);
    if (!pr.solve.converged) {
        rep.error = "pressure solve did not converge (residual "
                  + std::to_string(pr.solve.final_residual) + ")";
        return false;
    }

    // Q update: both halves of its quadrature are now available.
    const double qsum = ch.q_advection_quad + ns.q_capillary_quad;
    double Q_new;
    if (eff.order == 2) {
        const double QA = 2.0 * st.sav.Q - st.sav.Q_prev;
        Q_new = (4.0 * st.sav.Q - st.sav.Q_prev + 2.0 * eff.dt * fp.alpha * QA * qsum) / 3.0;
    } else {
        Q_new = st.sav.Q * (1.0 + eff.dt * fp.alpha * qsum);
    }

    SavState sav_new;
    sav_new.r_prev = st.sav.r;
    sav_new.Q_prev = st.sav.Q;
    sav_new.R_prev = st.sav.R;
    sav_new.T_prev = st.sav.T;
    sav_new.K_prev = st.sav.K;
    sav_new.r = ch.r_new;
    sav_new.Q = Q_new;
    sav_new.R = ns.R_new;
    sav_new.T = pr.T_new;
    sav_new.K = ns.K_new;

    if (!all_finite(ch.phi_new) || !all_finite(ch.mu_new) || !all_finite(ns.vel_new)
        || !all_finite(pr.p_new) || !sav_new.all_finite()) {
        rep.error = "non-finite values produced during the step";
        return false;
    }

    // Rotate histories.
    st.phi_prev = std::move(st.phi);
    st.phi = std::move(ch.phi_new);
    st.mu_prev = std::move(st.mu);
    st.mu = std::move(ch.mu_new);
    st.vel_prev = std::move(st.vel);
    st.vel = std::move(ns.vel_new);
    st.p = std::move(pr.p_new);
    st.incr_prev = std::move(st.incr);
    st.incr = std::move(pr.incr_new);
    st.sav = sav_new;

    st.time += eff.dt;
    rep.ch_solve = ch.solve;
    rep.momentum_solve = ns.solve;
    rep.poisson_solve = pr.solve;
    return true;
}

} // namespace

StepReport advance(SimState& st, const FluidParams& fp, const SchemeConfig& sc,
                   SpectralSolver* spec) {
    StepReport rep;
    try {
        if (sc.order == 2 && st.step_index == 0) {
            // Startup: no n-1 level exists yet, so the interval [0, dt] is
            // covered with first-order substeps (a small substep keeps the
            // fast-relaxing components of the initial data from polluting the
            // auxiliary scalars at O(1) in the substep size).  Afterwards the
            // histories are rewritten so the result is indistinguishable from
            // a single step of size dt: previous levels hold the t = 0 data
            // and the stored pressure increment spans the whole interval.
            const int nsub = 5;
            SchemeConfig eff = sc;
            eff.order = 1;
            eff.beta = 0.0;
            eff.dt = sc.dt / nsub;

            ScalarField phi0 = st.phi;
            ScalarField mu0 = st.mu;
            ScalarField p0 = st.p;
            FaceVectorField vel0 = st.vel;
            const SavState sav0 = st.sav;
            const double t0 = st.time;

            for (int k = 0; k < nsub; ++k) {
                if (!single_step(st, fp, eff, spec, rep)) return rep;
            }

            st.phi_prev = std::move(phi0);
            st.mu_prev = std::move(mu0);
            st.vel_prev = std::move(vel0);
            st.incr = lincomb(1.0, st.p, -1.0, p0);
            st.incr_prev.fill(0.0);
            st.sav.r_prev = sav0.r;
            st.sav.Q_prev = sav0.Q;
            st.sav.R_prev = sav0.R;
            st.sav.T_prev = sav0.T;
            st.sav.K_prev = sav0.K;
            st.time = t0 + sc.dt;
            st.step_index += 1;
            rep.ok = true;
            return rep;
        }

        if (!single_step(st, fp, sc, spec, rep)) return rep;
        st.step_index += 1;
        rep.ok = true;
        return rep;
    } catch (const std::exception& ex) {
        rep.error = ex.what();
        return rep;
    }
}

} // namespace chns
