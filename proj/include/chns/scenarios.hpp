#pragma once

// Built-in problem setups: initial fields, material parameters, scheme
// defaults, and end times for the benchmark configurations the solver
// ships with.  Each setup is a value object; callers may override the
// grid resolution, time step, or end time before running.

#include <string>
#include <vector>

#include "chns/params.hpp"
#include "chns/state.hpp"

namespace chns {

struct Scenario {
    std::string name;
    Grid grid;
    FluidParams fluid;
    SimState state;        // fields at t = 0 (phi, mu, u = 0, p = 0, SAVs = 1)
    int default_order = 2; // suggested time scheme order
    double dt = 1e-3;      // suggested time step
    double t_end = 1.0;    // suggested end time
    int cadence = 10;      // suggested output cadence (steps between rows)

    Scenario(const Grid& g) : grid(g), state(g) {}
};

// Two separated circular phase regions in a periodic box [0, 2pi]^2 with the
// fluid at rest.  Smooth tanh profiles; used for temporal convergence and
// energy-decay studies.
Scenario make_accuracy_scenario(int nx = 128, int ny = 128);

// Rising-bubble channel [0,1] x [0,2]: a light circular bubble (phi < 0) of
// radius 0.25 centered at (0.5, 0.5) in heavy ambient fluid, gravity
// (0, -0.98).  No-slip top/bottom walls, free-slip lateral walls.
// caseno = 1: density ratio 10, sigma = 24.5.  caseno = 2: density ratio
// 1000, sigma = 1.96.  Degenerate mobility in both.
Scenario make_bubble_scenario(int caseno, int nx = 64, int ny = 128);

// Heavy-over-light layered domain [0,1] x [0,4] with a cosine-perturbed
// interface at y = 2 + 0.1 cos(2 pi x); gravity (0, -9.80665).  No-slip
// top/bottom walls, free-slip lateral walls.
Scenario make_rayleigh_taylor_scenario(int nx = 128, int ny = 512);

// Factory by name: "accuracy", "bubble1", "bubble2", "rayleigh_taylor".
// nx, ny <= 0 keep the scenario's default resolution.  Throws
// std::invalid_argument for an unknown name.
Scenario make_scenario(const std::string& name, int nx = 0, int ny = 0);

// Names accepted by make_scenario, for CLI help text.
const std::vector<std::string>& scenario_names();

} // namespace chns
