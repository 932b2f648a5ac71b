#include "chns/state.hpp"

#include <algorithm>
#include <cmath>

namespace chns {

bool SavState::all_finite() const {
    for (double v : {r, Q, R, T, K, r_prev, Q_prev, R_prev, T_prev, K_prev})
        if (!std::isfinite(v)) return false;
    return true;
}

double SavState::max_abs_deviation() const {
    double m = 0.0;
    for (double v : {r, Q, R, T, K}) m = std::max(m, std::fabs(v - 1.0));
    return m;
}

SchemeConfig make_scheme(int order, double dt, const FluidParams& fp) {
    SchemeConfig sc;
    sc.order = order;
    sc.dt = dt;
    sc.chi = fp.rho_min();
    sc.beta = (order == 2) ? 2.0 * dt / (3.0 * sc.chi) : 0.0;
    return sc;
}

SimState::SimState(const Grid& g)
    : grid(g),
      phi(g, CellQuantity::phi),
      mu(g, CellQuantity::mu),
      p(g, CellQuantity::pressure),
      vel(g, FaceQuantity::velocity),
      incr(g, CellQuantity::pressure_increment),
      incr_prev(g, CellQuantity::pressure_increment),
      phi_prev(g, CellQuantity::phi),
      mu_prev(g, CellQuantity::mu),
      vel_prev(g, FaceQuantity::velocity) {}

} // namespace chns
