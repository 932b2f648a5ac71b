#pragma once

// Time-stepping state: primary fields, auxiliary scalars, and the history
// levels the second-order scheme needs.

#include "chns/fields.hpp"
#include "chns/grid.hpp"
#include "chns/params.hpp"

namespace chns {

// The five scalar auxiliary variables.  Each equals 1 exactly on the
// continuous level; the discrete updates keep them near 1 for small alpha.
struct SavState {
    double r = 1.0, Q = 1.0, R = 1.0, T = 1.0, K = 1.0;
    // Previous-step values (used by the two-level updates of the second-order
    // scheme; ignored by the first-order scheme).
    double r_prev = 1.0, Q_prev = 1.0, R_prev = 1.0, T_prev = 1.0, K_prev = 1.0;

    bool all_finite() const;
    double max_abs_deviation() const; // max |X - 1| over the five variables
};

struct SchemeConfig {
    int order = 2;      // 1 or 2
    double dt = 1e-3;
    double chi = 1.0;   // min(rho1, rho2); pressure-step coefficient
    double beta = 0.0;  // rotational-penalty coupling: 0 (order 1), 2*dt/(3*chi) (order 2)
    double tol_ch = 1e-10;      // relative residual targets
    double tol_mom = 1e-9;
    double tol_poisson = 1e-11;
    int max_iter = 2000;
    bool allow_spectral = true; // use the FFT/DCT direct path where applicable

    // BDF leading coefficient over dt: 1/dt (order 1) or 3/(2*dt) (order 2).
    double a0_over_dt() const { return (order == 2) ? 1.5 / dt : 1.0 / dt; }
};

// Derive the dependent members of SchemeConfig from params + dt + order.
SchemeConfig make_scheme(int order, double dt, const FluidParams& p);

struct SimState {
    Grid grid;

    // Current time level n.
    ScalarField phi, mu, p;
    FaceVectorField vel;
    // Pressure increment of the last completed step (psi^n / omega^n) and,
    // for order 2, the one before it.
    ScalarField incr, incr_prev;
    // Level n-1 histories (meaningful once step_index >= 1 under order 2).
    ScalarField phi_prev, mu_prev;
    FaceVectorField vel_prev;

    SavState sav;
    double time = 0.0;
    long step_index = 0;

    SimState() = default;
    explicit SimState(const Grid& g);
};

} // namespace chns
