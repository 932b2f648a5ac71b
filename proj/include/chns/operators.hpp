#pragma once

// Second-order central finite-difference operators on the MAC grid.
//
// Everything here is built so that the discrete counterparts of the
// integration-by-parts identities used in the energy estimates hold to
// round-off, not just to truncation order:
//
//   * gradient / divergence are exact negative adjoints:
//       <gradient(f), F>_faces = -<f, divergence(F)>_cells
//     whenever F has zero normal components on walls (or the axis is periodic);
//   * div_coef_grad(c, f) is symmetric and negative semi-definite;
//   * advect_scalar produces a flux-form divergence, so its integral vanishes;
//   * convection_momentum and flux_gradient_terms are discretely
//     skew-symmetric: their face inner product with the advected velocity is
//     zero whenever the advecting momentum has zero wall-normal components;
//   * -<strain_divergence(nu,u), u> equals the weighted strain-dissipation
//     quadrature strain_dissipation(nu, u) exactly.
//
// These identities are what make the auxiliary-variable updates cancel the
// matching terms of the momentum/phase equations exactly, which in turn is
// what makes the discrete modified energy provably non-increasing.

#include "chns/fields.hpp"
#include "chns/grid.hpp"

namespace chns {

// Per-face coefficients (e.g. mobility averaged from cells to faces).  Same
// storage layout as a FaceVectorField.
using FaceCoef = FaceVectorField;

// Arithmetic average of a cell coefficient onto faces (mirror at walls, wrap
// on periodic axes).  Wall faces receive the adjacent cell value.
FaceCoef faces_from_cells(const ScalarField& c, const Grid& g);

// Cell gradient evaluated on faces; zero on wall faces (homogeneous Neumann).
FaceVectorField gradient(const ScalarField& f, const Grid& g);

// Face-field divergence evaluated at cells.
ScalarField divergence(const FaceVectorField& F, const Grid& g);

// div(coef * grad f): symmetric negative semi-definite; coef given per face.
ScalarField div_coef_grad(const FaceCoef& coef, const ScalarField& f, const Grid& g);

// Laplacian = div_coef_grad with unit coefficient (specialized, cheaper).
ScalarField laplacian(const ScalarField& f, const Grid& g);

// Conservative advection of a cell scalar: div(vel * f_face), with f averaged
// onto faces.  Integral is exactly zero for wall/periodic advecting fields.
ScalarField advect_scalar(const FaceVectorField& vel, const ScalarField& f, const Grid& g);

// Capillary force density phi * grad(mu) evaluated on faces.
FaceVectorField phi_grad_mu(const ScalarField& phi, const ScalarField& mu, const Grid& g);

// div(nu * D(u)) with D(u) = grad u + (grad u)^T, evaluated on faces.
// nu given at cells; corner values are 4-point averages (mirror/wrap).
// Wall ghosts: no-slip mirrors with negation (doubling the wall shear),
// free-slip mirrors without (zero wall shear).
FaceVectorField strain_divergence(const ScalarField& nu, const FaceVectorField& u, const Grid& g);

// Weighted quadrature of (1/2) * integral nu |D(u)|^2 matching
// strain_divergence exactly: -<strain_divergence(nu,u), u> == this value.
double strain_dissipation(const ScalarField& nu, const FaceVectorField& u, const Grid& g);

// rho*(w . grad)u + (1/2)(div(rho*w))u with rho at cells, advecting velocity w
// and advected velocity u on faces.  Discretely skew-symmetric.
FaceVectorField convection_momentum(const ScalarField& rho, const FaceVectorField& w,
                                    const FaceVectorField& u, const Grid& g);

// J.grad(u) + (1/2)(div J)u for a face flux J (same skew-symmetric form).
FaceVectorField flux_gradient_terms(const FaceVectorField& J, const FaceVectorField& u, const Grid& g);

// Midpoint quadratures and inner products (cell area weights).
double integrate(const ScalarField& f, const Grid& g);
double dot_cells(const ScalarField& a, const ScalarField& b, const Grid& g);
double dot_faces(const FaceVectorField& A, const FaceVectorField& B, const Grid& g);
// Face inner product weighted by a per-face coefficient (e.g. density).
double dot_faces_weighted(const FaceCoef& w, const FaceVectorField& A,
                          const FaceVectorField& B, const Grid& g);
double l2_norm_cells(const ScalarField& f, const Grid& g);
double l2_norm_faces(const FaceVectorField& F, const Grid& g);

// Force any wall-normal face entries to zero (no-penetration).
void enforce_wall_normal_zero(FaceVectorField& F, const Grid& g);

} // namespace chns
