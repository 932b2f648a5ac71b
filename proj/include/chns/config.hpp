#pragma once

// Run configuration: a flat key = value text format (one pair per line,
// '#' starts a comment, unknown keys are errors).  Every field is optional;
// unset fields fall back to the chosen scenario's defaults.  emit_config and
// parse_config round-trip exactly (doubles are printed with 17 significant
// digits).
//
// Recognized keys:
//   scenario            name: accuracy | bubble1 | bubble2 | rayleigh_taylor
//   nx, ny              grid resolution override
//   order               time scheme order, 1 or 2
//   dt                  time step (> 0)
//   tend                end time (> 0)
//   alpha               auxiliary-scalar relaxation rate (> 0)
//   s                   stabilization coefficient (>= 0)
//   cadence             steps between time-series rows (>= 1)
//   out                 output directory for CSV/snapshot files
//   tol_ch, tol_mom, tol_poisson   linear-solver relative tolerances (> 0)
//   max_iter            linear-solver iteration cap (>= 1)
//   seed                reserved; carried through but unused by the physics
//   rho1, rho2          phase densities (> 0)
//   nu1, nu2            phase viscosities (> 0)
//   lambda              mixing energy density (> 0)
//   epsilon             interface width (> 0)
//   mobility            constant | degenerate
//   mobility_value      mobility coefficient (> 0)
//   grav_x, grav_y      gravitational acceleration components

#include <optional>
#include <string>

namespace chns {

struct Scenario;

struct RunConfig {
    std::optional<std::string> scenario;
    std::optional<int> nx, ny;
    std::optional<int> order;
    std::optional<double> dt;
    std::optional<double> t_end;
    std::optional<double> alpha;
    std::optional<double> s;
    std::optional<int> cadence;
    std::optional<std::string> out_dir;
    std::optional<double> tol_ch, tol_mom, tol_poisson;
    std::optional<int> max_iter;
    std::optional<long> seed;

    std::optional<double> rho1, rho2, nu1, nu2, lambda, epsilon;
    std::optional<std::string> mobility;
    std::optional<double> mobility_value;
    std::optional<double> grav_x, grav_y;

    bool operator==(const RunConfig&) const = default;
};

// Parses config text.  Throws std::runtime_error whose message lists every
// problem found (unknown key, unparsable value, constraint violation), one
// per line.
RunConfig parse_config(const std::string& text);

// Serializes the set fields; parse_config(emit_config(c)) == c.
std::string emit_config(const RunConfig& cfg);

// Copies every set field of `over` onto `base` (CLI flags over file values).
void merge_overrides(RunConfig& base, const RunConfig& over);

// Applies material/scheme/time overrides to an instantiated scenario.
// Scenario selection and grid size must be consumed before construction and
// are not touched here.
void apply_config(const RunConfig& cfg, Scenario& scn);

// Captures a scenario's parameter set as a config (used to round-trip
// parameter sets through the text format).
RunConfig config_from_scenario(const Scenario& scn);

} // namespace chns
