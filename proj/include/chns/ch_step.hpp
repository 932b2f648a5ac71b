#pragma once

/// Step 1 of the time march: the linear phase-field/chemical-potential solve,
/// the update of the auxiliary scalar r, and the first half of the quadrature
/// feeding the auxiliary scalar Q (the advection part; the capillary part needs
/// the new velocity and is added after the momentum step).
///
/// The two coupled rows
///     a0/dt * phi_new + (history) + Q^A div(u^A phi^A) = div(M(phi^A) grad mu_new)
///     mu_new = lambda * (-eps Lap phi_new + (s/eps) phi_new) + c,
///         c = lambda * r^A / eps * (f(phi^A) - s phi^A)
/// are solved by eliminating mu_new (see linsolve.hpp); mu_new is then
/// recovered from the second row so it holds to round-off.
///
/// A == n for the first-order scheme; A == * (linear extrapolation
/// 2(.)^n - (.)^{n-1}) for the second-order scheme.

#include "chns/linsolve.hpp"
#include "chns/params.hpp"
#include "chns/state.hpp"

namespace chns {

struct ChStepResult {
    ScalarField phi_new, mu_new;
    double r_new = 1.0;
    // <div(u^A phi^A), mu_new>, cached for the Q update.
    double q_advection_quad = 0.0;
    // Face mobility M(phi^A) used in this step; reused for the diffusive mass
    // flux in the momentum step so both see the identical coefficient field.
    FaceCoef mobility;
    bool mobility_uniform = false;
    double mobility_value = 0.0;
    SolveReport solve;
};

/// Free-energy functional split remainder: (lambda/eps) * integral of
/// (F(phi) - (s/2) phi^2).
double e0_functional(const ScalarField& phi, const FluidParams& fp, const Grid& g);

ChStepResult ch_step(const SimState& st, const FluidParams& fp, const SchemeConfig& sc,
                     SpectralSolver* spec);

} // namespace chns
