#pragma once

/// Material property fields derived from the phase variable.
///
/// Density and viscosity are affine in phi and evaluated on the clipped value
/// clamp(phi, -1, 1) so they stay within the physical range of the two phases
/// even when the computed phi slightly overshoots.  The mobility and all terms
/// of the evolution equations use the raw (unclipped) phi.

#include "chns/fields.hpp"
#include "chns/grid.hpp"
#include "chns/operators.hpp"
#include "chns/params.hpp"

namespace chns {

/// Cell density rho(clip(phi)).
ScalarField rho_field(const ScalarField& phi, const FluidParams& fp);

/// Cell viscosity nu(clip(phi)).
ScalarField nu_field(const ScalarField& phi, const FluidParams& fp);

/// Mobility on faces: the mobility law evaluated on the face-averaged phi
/// (mirror at walls, wrap on periodic axes).  For the constant law this is the
/// uniform mobility value on every face.
FaceCoef mobility_faces(const ScalarField& phi, const FluidParams& fp, const Grid& g);

/// Diffusive mass flux J = M grad(mu) * (rho2 - rho1) / 2 on faces, using the
/// face mobility M (zero on wall faces since grad(mu) vanishes there).
FaceVectorField mass_flux(const FaceCoef& M, const ScalarField& mu,
                          const FluidParams& fp, const Grid& g);

} // namespace chns
