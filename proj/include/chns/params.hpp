#pragma once

// Physical parameters of the two-phase model and the pointwise closure
// functions: density/viscosity interpolation between the pure phases,
// mobility, and the double-well potential.

#include <algorithm>
#include <cmath>

namespace chns {

enum class MobilityLaw {
    constant,   // M(phi) = mobility_value
    degenerate, // M(phi) = mobility_value * (phi^2 - 1)^2
};

struct FluidParams {
    double rho1 = 1.0, rho2 = 1.0; // densities of phase phi=+1 / phi=-1
    double nu1 = 1.0, nu2 = 1.0;   // viscosities of phase phi=+1 / phi=-1
    double lambda = 1.0;           // surface-energy (mixing) coefficient
    double epsilon = 0.1;          // interface thickness
    double s = 4.0;                // potential-splitting stabilization constant
    double alpha = 1e-2;           // auxiliary-variable relaxation constant
    MobilityLaw mobility_law = MobilityLaw::constant;
    double mobility_value = 1.0;   // M0 (constant) or gamma (degenerate)
    double grav_x = 0.0, grav_y = 0.0; // gravitational acceleration

    bool has_gravity() const { return grav_x != 0.0 || grav_y != 0.0; }
    double rho_min() const { return std::min(rho1, rho2); }
    double rho_max() const { return std::max(rho1, rho2); }
};

// Order parameter clip used wherever density/viscosity are formed: material
// properties must stay inside the physical range even when phi overshoots.
inline double clip_phi(double phi) { return std::clamp(phi, -1.0, 1.0); }

inline double rho_of_phi(double phi, const FluidParams& p) {
    const double c = clip_phi(phi);
    return 0.5 * c * (p.rho1 - p.rho2) + 0.5 * (p.rho1 + p.rho2);
}

inline double nu_of_phi(double phi, const FluidParams& p) {
    const double c = clip_phi(phi);
    return 0.5 * c * (p.nu1 - p.nu2) + 0.5 * (p.nu1 + p.nu2);
}

// Mobility uses the raw (unclipped) phi.
inline double mobility_of_phi(double phi, const FluidParams& p) {
    if (p.mobility_law == MobilityLaw::constant) return p.mobility_value;
    const double w = phi * phi - 1.0;
    return p.mobility_value * w * w;
}

// Double-well potential F and its derivative f.
inline double f_well(double phi) { return phi * (phi * phi - 1.0); }
inline double F_well(double phi) {
    const double w = phi * phi - 1.0;
    return 0.25 * w * w;
}

} // namespace chns
