#pragma once

// Flat-array field containers for the MAC grid.  Data is row-major with x
// fastest: idx = i + stride * j.

#include <string>
#include <vector>

#include "chns/grid.hpp"

namespace chns {

enum class CellQuantity { generic, phi, mu, pressure, pressure_increment };
enum class FaceQuantity { velocity, flux };

// Cell-centered scalar field (nx x ny values).
struct ScalarField {
    int nx = 0, ny = 0;
    CellQuantity tag = CellQuantity::generic;
    std::vector<double> data;

    ScalarField() = default;
    ScalarField(const Grid& g, CellQuantity q = CellQuantity::generic)
        : nx(g.nx), ny(g.ny), tag(q), data(static_cast<size_t>(g.nx) * g.ny, 0.0) {}

    double& operator()(int i, int j) { return data[i + static_cast<size_t>(nx) * j]; }
    double operator()(int i, int j) const { return data[i + static_cast<size_t>(nx) * j]; }
    size_t size() const { return data.size(); }
    void fill(double v) { data.assign(data.size(), v); }
};

// Face-centered vector field: u on x-normal faces (nux x ny), v on y-normal
// faces (nx x nvy).  On wall axes the boundary faces are stored and pinned to
// zero for velocities/fluxes (no penetration).
struct FaceVectorField {
    int nx = 0, ny = 0;   // cell counts of the owning grid
    int nux = 0, nvy = 0; // face storage extents (see Grid::n_xfaces_x/n_yfaces_y)
    FaceQuantity tag = FaceQuantity::velocity;
    std::vector<double> u, v;

    FaceVectorField() = default;
    FaceVectorField(const Grid& g, FaceQuantity q = FaceQuantity::velocity)
        : nx(g.nx), ny(g.ny), nux(g.n_xfaces_x()), nvy(g.n_yfaces_y()), tag(q),
          u(static_cast<size_t>(g.n_xfaces_x()) * g.ny, 0.0),
          v(static_cast<size_t>(g.nx) * g.n_yfaces_y(), 0.0) {}

    double& ux(int i, int j) { return u[i + static_cast<size_t>(nux) * j]; }
    double ux(int i, int j) const { return u[i + static_cast<size_t>(nux) * j]; }
    double& vy(int i, int j) { return v[i + static_cast<size_t>(nx) * j]; }
    double vy(int i, int j) const { return v[i + static_cast<size_t>(nx) * j]; }
    void fill(double a) { u.assign(u.size(), a); v.assign(v.size(), a); }
};

// Elementwise helpers used throughout the stepping code.
ScalarField axpy(double a, const ScalarField& x, const ScalarField& y); // a*x + y
ScalarField lincomb(double a, const ScalarField& x, double b, const ScalarField& y);
FaceVectorField lincomb(double a, const FaceVectorField& x, double b, const FaceVectorField& y);
void add_scaled(ScalarField& dst, double a, const ScalarField& x);      // dst += a*x
void add_scaled(FaceVectorField& dst, double a, const FaceVectorField& x);
void scale(ScalarField& f, double a);
void scale(FaceVectorField& f, double a);
bool all_finite(const ScalarField& f);
bool all_finite(const FaceVectorField& f);
double max_abs(const ScalarField& f);
double max_abs(const FaceVectorField& f);

// Name used in snapshot headers and debug output.
std::string quantity_name(CellQuantity q);
std::string quantity_name(FaceQuantity q);

} // namespace chns
