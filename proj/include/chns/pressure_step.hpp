#pragma once

/// Step 3 of the time march: the constant-coefficient pressure Poisson solve
/// for the pressure increment, the pressure assembly (with the rotational
/// viscous correction in the second-order scheme), and the update of the
/// auxiliary scalar T.

#include "chns/linsolve.hpp"
#include "chns/params.hpp"
#include "chns/state.hpp"

namespace chns {

struct PressureStepResult {
    ScalarField p_new;
    ScalarField incr_new; // pressure increment psi/omega at level n+1
    double T_new = 1.0;
    SolveReport solve;
};

/// vel_new: the just-computed velocity; nu_new: cell viscosity at n+1 (used by
/// the rotational correction, order 2 only).
PressureStepResult pressure_step(const SimState& st, const FaceVectorField& vel_new,
                                 const ScalarField& nu_new, const FluidParams& fp,
                                 const SchemeConfig& sc, SpectralSolver* spec);

} // namespace chns
