#include "chns/material.hpp"

namespace chns {

ScalarField rho_field(const ScalarField& phi, const FluidParams& fp) {
    ScalarField out = phi;
    out.tag = CellQuantity::generic;
    for (double& v : out.data) v = rho_of_phi(v, fp);
    return out;
}

ScalarField nu_field(const ScalarField& phi, const FluidParams& fp) {
    ScalarField out = phi;
    out.tag = CellQuantity::generic;
    for (double& v : out.data) v = nu_of_phi(v, fp);
    return out;
}

FaceCoef mobility_faces(const ScalarField& phi, const FluidParams& fp, const Grid& g) {
    FaceCoef M = faces_from_cells(phi, g);
    for (double& v : M.u) v = mobility_of_phi(v, fp);
    for (double& v : M.v) v = mobility_of_phi(v, fp);
    return M;
}

FaceVectorField mass_flux(const FaceCoef& M, const ScalarField& mu,
                          const FluidParams& fp, const Grid& g) {
    FaceVectorField J = gradient(mu, g);
    const double c = 0.5 * (fp.rho2 - fp.rho1);
    for (size_t k = 0; k < J.u.size(); ++k) J.u[k] *= c * M.u[k];
    for (size_t k = 0; k < J.v.size(); ++k) J.v[k] *= c * M.v[k];
    return J;
}

} // namespace chns
