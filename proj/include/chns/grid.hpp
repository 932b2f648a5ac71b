#pragma once

// Uniform staggered (MAC) grid over a rectangle.
//
// Cell centers carry scalars (phi, mu, p, ...); x-normal velocity components
// live on vertical cell faces, y-normal components on horizontal faces.
// Boundary conditions are per axis: periodic, or a solid wall (no-slip /
// free-slip for the tangential velocity).  Scalars always get homogeneous
// Neumann (mirror ghost) treatment at walls.

#include <cassert>

namespace chns {

enum class AxisBc {
    periodic,       // wrap-around in this axis
    wall_no_slip,   // zero normal velocity, zero tangential velocity at wall
    wall_free_slip, // zero normal velocity, zero tangential shear at wall
};

inline bool is_wall(AxisBc bc) { return bc != AxisBc::periodic; }

struct Grid {
    int nx = 0, ny = 0;       // number of cells per axis
    double hx = 0.0, hy = 0.0; // cell spacings
    double x0 = 0.0, y0 = 0.0; // lower-left corner
    AxisBc bc_x = AxisBc::periodic; // boundaries at x = x0 and x = x0 + lx()
    AxisBc bc_y = AxisBc::periodic;

    double lx() const { return nx * hx; }
    double ly() const { return ny * hy; }
    double cell_area() const { return hx * hy; }

    bool periodic_x() const { return bc_x == AxisBc::periodic; }
    bool periodic_y() const { return bc_y == AxisBc::periodic; }

    // Storage extents for face-centered data.  On a periodic axis face 0 and
    // face n coincide, so only n distinct faces are stored; on a wall axis the
    // two boundary faces are stored explicitly (and any velocity there is 0).
    int n_xfaces_x() const { return periodic_x() ? nx : nx + 1; } // u columns
    int n_yfaces_y() const { return periodic_y() ? ny : ny + 1; } // v rows

    // Coordinates.
    double xc(int i) const { return x0 + (i + 0.5) * hx; } // cell center
    double yc(int j) const { return y0 + (j + 0.5) * hy; }
    double xf(int i) const { return x0 + i * hx; } // x-face / corner line
    double yf(int j) const { return y0 + j * hy; }

    // Periodic index wrap for cell indices (used only on periodic axes).
    int wrap_x(int i) const { int n = nx; return (i % n + n) % n; }
    int wrap_y(int j) const { int n = ny; return (j % n + n) % n; }

    bool operator==(const Grid&) const = default;
};

inline Grid make_grid(int nx, int ny, double x0, double y0, double lx, double ly,
                      AxisBc bc_x, AxisBc bc_y) {
    assert(nx > 0 && ny > 0 && lx > 0 && ly > 0);
    Grid g;
    g.nx = nx; g.ny = ny;
    g.hx = lx / nx; g.hy = ly / ny;
    g.x0 = x0; g.y0 = y0;
    g.bc_x = bc_x; g.bc_y = bc_y;
    return g;
}

} // namespace chns
