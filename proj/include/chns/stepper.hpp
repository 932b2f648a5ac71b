#pragma once

/// One full time step: phase-field solve, momentum solve, pressure projection,
/// the five auxiliary-scalar updates, and the history rotation.
///
/// Under the second-order configuration the very first step (no n-1 history
/// yet) is integrated with several first-order substeps; the substep solution
/// at t0 + dt then takes the place of a single first full step, with the t0
/// data as its n-1 history and the accumulated pressure increment seeding the
/// increment history the second-order pressure extrapolation needs.  The
/// substep keeps the fast-relaxing components of typical initial data from
/// polluting the auxiliary scalars at leading order in the step size.

#include <string>

#include "chns/linsolve.hpp"
#include "chns/params.hpp"
#include "chns/state.hpp"

namespace chns {

struct StepReport {
    bool ok = false;
    std::string error;        // set when !ok
    SolveReport ch_solve, momentum_solve, poisson_solve;
};

StepReport advance(SimState& st, const FluidParams& fp, const SchemeConfig& sc,
                   SpectralSolver* spec);

} // namespace chns
