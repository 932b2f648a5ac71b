#pragma once

/// Step 2 of the time march: the implicit momentum solve (viscous + mass
/// terms), with every coupling term — pressure gradient, capillary force,
/// convection, diffusive-flux drag — treated explicitly and weighted by its
/// auxiliary scalar; followed by the updates of R and K.
///
/// All quadratures entering the R and K updates are taken over the identical
/// discrete fields assembled for the momentum right-hand side, which is what
/// makes the auxiliary-variable bookkeeping cancel exactly in the discrete
/// energy law.

#include "chns/ch_step.hpp"
#include "chns/linsolve.hpp"
#include "chns/params.hpp"
#include "chns/state.hpp"

namespace chns {

struct NsStepResult {
    FaceVectorField vel_new;
    double R_new = 1.0, K_new = 1.0;
    // <phi^A grad mu^A, vel_new>, cached for the Q update.
    double q_capillary_quad = 0.0;
    // Cell viscosity nu(phi_new), reused by the rotational pressure update.
    ScalarField nu_new;
    SolveReport solve;
};

NsStepResult ns_step(const SimState& st, const ChStepResult& ch, const FluidParams& fp,
                     const SchemeConfig& sc);

} // namespace chns
