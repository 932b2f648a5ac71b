#pragma once

/// Scalar diagnostics of a simulation state: the original free + kinetic
/// energy, the scheme-specific discrete modified energy whose monotonic decay
/// the time discretization guarantees (for zero gravity and converged solves),
/// phase volume, rising-bubble metrics, and small utilities for convergence
/// studies.

#include <vector>

#include "chns/params.hpp"
#include "chns/state.hpp"

namespace chns {

/// E = integral( (1/2) rho |u|^2 + lambda eps/2 |grad phi|^2 + lambda/eps F(phi) ).
double original_energy(const SimState& st, const FluidParams& fp);

struct EnergyBreakdown {
    double kinetic = 0.0;   // velocity terms (density-weighted)
    double gradient = 0.0;  // grad-phi terms
    double phi2 = 0.0;      // stabilization phi^2 terms
    double e0 = 0.0;        // double-well remainder terms
    double pressure = 0.0;  // grad-p term
    double aux = 0.0;       // (1/alpha)-weighted auxiliary-scalar terms
    double total = 0.0;
};

/// Discrete modified energy of the scheme evaluated at the current state
/// (current + previous time levels).  For order 2 this is the two-level
/// telescoping form; for order 1 the single-level form.  Its step-to-step
/// decay is the energy-stability statement of the scheme.
EnergyBreakdown modified_energy(const SimState& st, const FluidParams& fp,
                                const SchemeConfig& sc);

/// integral of phi (conserved up to solver tolerance).
double phase_volume(const SimState& st);

/// Work done by gravity during the last completed step:
/// dt * <rho^{n+1} g, u^{n+1}> with the same face density as the kinetic
/// energy.  Subtracting the running sum from the modified energy gives the
/// gravity-augmented monitor that should still be non-increasing.
double gravity_work_increment(const SimState& st, const FluidParams& fp,
                              const SchemeConfig& sc);

struct BubbleMetrics {
    double center_y = 0.0;     // centroid height of the phi<0 region
    double rise_velocity = 0.0; // mean cell-centered vertical velocity of phi<0
    double volume = 0.0;        // area of the phi<0 region
    int components = 0;         // 4-connected components of the phi<0 region
};
BubbleMetrics bubble_metrics(const SimState& st);

/// Lowest cell-center height occupied by the phi>0 phase (interface-descent
/// monitor for the heavy-on-top instability).
double min_height_of_positive_phase(const SimState& st);

// --- convergence-study helpers -------------------------------------------

/// Cell-centered velocity components (averaged from faces).
void cell_centered_velocity(const SimState& st, ScalarField& uc, ScalarField& vc);

struct StateErrors {
    double phi = 0.0, vel = 0.0, p = 0.0;
};
/// L2 differences between two states on the same grid (velocity compared via
/// cell-centered components, pressure with means removed).
StateErrors state_errors(const SimState& a, const SimState& b);

/// Least-squares slope of log(err) against log(dt).
double convergence_slope(const std::vector<double>& dts, const std::vector<double>& errs);

} // namespace chns
