#include "chns/operators.hpp"

#include <cmath>

namespace chns {

namespace {

// Neighbor index helpers.  "Cell left of x-face i" and friends differ between
// periodic storage (face 0 == face nx) and wall storage (faces 0..nx).
inline int cell_left_of_xface(int i, const Grid& g) {
    return g.periodic_x() ? (i + g.nx - 1) % g.nx : i - 1;
}
inline int xface_right_of_cell(int i, const Grid& g) {
    return g.periodic_x() ? (i + 1) % g.nx : i + 1;
}
inline int cell_below_yface(int j, const Grid& g) {
    return g.periodic_y() ? (j + g.ny - 1) % g.ny : j - 1;
}
inline int yface_above_cell(int j, const Grid& g) {
    return g.periodic_y() ? (j + 1) % g.ny : j + 1;
}
inline int n_corners_x(const Grid& g) { return g.periodic_x() ? g.nx : g.nx + 1; }
inline int n_corners_y(const Grid& g) { return g.periodic_y() ? g.ny : g.ny + 1; }
inline bool is_wall_xface(int i, const Grid& g) {
    return !g.periodic_x() && (i == 0 || i == g.nx);
}
inline bool is_wall_yface(int j, const Grid& g) {
    return !g.periodic_y() && (j == 0 || j == g.ny);
}

// Clamp (mirror ghost) or wrap a cell index, for corner-averaged coefficients.
inline int cell_index_x(int i, const Grid& g) {
    if (g.periodic_x()) return (i + g.nx) % g.nx;
    return i < 0 ? 0 : (i >= g.nx ? g.nx - 1 : i);
}
inline int cell_index_y(int j, const Grid& g) {
    if (g.periodic_y()) return (j + g.ny) % g.ny;
    return j < 0 ? 0 : (j >= g.ny ? g.ny - 1 : j);
}

// Scratch container for corner-centered values.
struct CornerField {
    int nx = 0;
    std::vector<double> data;
    CornerField(int ncx, int ncy) : nx(ncx), data(static_cast<size_t>(ncx) * ncy, 0.0) {}
    double& operator()(int i, int j) { return data[i + static_cast<size_t>(nx) * j]; }
    double operator()(int i, int j) const { return data[i + static_cast<size_t>(nx) * j]; }
};

} // namespace

FaceCoef faces_from_cells(const ScalarField& c, const Grid& g) {
    FaceCoef f(g, FaceQuantity::flux);
    for (int j = 0; j < g.ny; ++j)
        for (int i = 0; i < f.nux; ++i) {
            if (is_wall_xface(i, g)) {
                f.ux(i, j) = c(i == 0 ? 0 : g.nx - 1, j);
            } else {
                f.ux(i, j) = 0.5 * (c(cell_left_of_xface(i, g), j) + c(i % g.nx, j));
            }
        }
    for (int j = 0; j < f.nvy; ++j)
        for (int i = 0; i < g.nx; ++i) {
            if (is_wall_yface(j, g)) {
                f.vy(i, j) = c(i, j == 0 ? 0 : g.ny - 1);
            } else {
                f.vy(i, j) = 0.5 * (c(i, cell_below_yface(j, g)) + c(i, j % g.ny));
            }
        }
    return f;
}

FaceVectorField gradient(const ScalarField& f, const Grid& g) {
    FaceVectorField out(g, FaceQuantity::flux);
    const double ihx = 1.0 / g.hx, ihy = 1.0 / g.hy;
    for (int j = 0; j < g.ny; ++j)
        for (int i = 0; i < out.nux; ++i) {
            if (is_wall_xface(i, g)) { out.ux(i, j) = 0.0; continue; }
            out.ux(i, j) = (f(i % g.nx, j) - f(cell_left_of_xface(i, g), j)) * ihx;
        }
    for (int j = 0; j < out.nvy; ++j)
        for (int i = 0; i < g.nx; ++i) {
            if (is_wall_yface(j, g)) { out.vy(i, j) = 0.0; continue; }
            out.vy(i, j) = (f(i, j % g.ny) - f(i, cell_below_yface(j, g))) * ihy;
        }
    return out;
}

ScalarField divergence(const FaceVectorField& F, const Grid& g) {
    ScalarField out(g);
    const double ihx = 1.0 / g.hx, ihy = 1.0 / g.hy;
    for (int j = 0; j < g.ny; ++j) {
        const int jt = yface_above_cell(j, g);
        for (int i = 0; i < g.nx; ++i) {
            const int ir = xface_right_of_cell(i, g);
            out(i, j) = (F.ux(ir, j) - F.ux(i, j)) * ihx + (F.vy(i, jt) - F.vy(i, j)) * ihy;
        }
    }
    return out;
}

ScalarField div_coef_grad(const FaceCoef& coef, const ScalarField& f, const Grid& g) {
    FaceVectorField flux = gradient(f, g);
    for (size_t k = 0; k < flux.u.size(); ++k) flux.u[k] *= coef.u[k];
    for (size_t k = 0; k < flux.v.size(); ++k) flux.v[k] *= coef.v[k];
    return divergence(flux, g);
}

ScalarField laplacian(const ScalarField& f, const Grid& g) {
    ScalarField out(g);
    const double ihx2 = 1.0 / (g.hx * g.hx), ihy2 = 1.0 / (g.hy * g.hy);
    for (int j = 0; j < g.ny; ++j) {
        const int jm = cell_index_y(j - 1, g), jp = cell_index_y(j + 1, g);
        for (int i = 0; i < g.nx; ++i) {
            const int im = cell_index_x(i - 1, g), ip = cell_index_x(i + 1, g);
            // Mirror ghosts at walls are equivalent to clamped indices here.
            out(i, j) = (f(ip, j) - 2.0 * f(i, j) + f(im, j)) * ihx2
                      + (f(i, jp) - 2.0 * f(i, j) + f(i, jm)) * ihy2;
        }
    }
    return out;
}

ScalarField advect_scalar(const FaceVectorField& vel, const ScalarField& f, const Grid& g) {
    FaceVectorField flux(g, FaceQuantity::flux);
    for (int j = 0; j < g.ny; ++j)
        for (int i = 0; i < flux.nux; ++i) {
            if (is_wall_xface(i, g)) { flux.ux(i, j) = 0.0; continue; }
            flux.ux(i, j) = vel.ux(i, j)
                          * 0.5 * (f(cell_left_of_xface(i, g), j) + f(i % g.nx, j));
        }
    for (int j = 0; j < flux.nvy; ++j)
        for (int i = 0; i < g.nx; ++i) {
            if (is_wall_yface(j, g)) { flux.vy(i, j) = 0.0; continue; }
            flux.vy(i, j) = vel.vy(i, j)
                          * 0.5 * (f(i, cell_below_yface(j, g)) + f(i, j % g.ny));
        }
    return divergence(flux, g);
}

FaceVectorField phi_grad_mu(const ScalarField& phi, const ScalarField& mu, const Grid& g) {
    FaceVectorField out = gradient(mu, g);
    for (int j = 0; j < g.ny; ++j)
        for (int i = 0; i < out.nux; ++i) {
            if (is_wall_xface(i, g)) continue; // already zero
            out.ux(i, j) *= 0.5 * (phi(cell_left_of_xface(i, g), j) + phi(i % g.nx, j));
        }
    for (int j = 0; j < out.nvy; ++j)
        for (int i = 0; i < g.nx; ++i) {
            if (is_wall_yface(j, g)) continue;
            out.vy(i, j) *= 0.5 * (phi(i, cell_below_yface(j, g)) + phi(i, j % g.ny));
        }
    return out;
}

namespace {

// Shared core of convection_momentum and flux_gradient_terms:
//   (m . grad)u + (1/2)(div m) u  ==  div(m u) - (1/2)(div m) u
// assembled in flux form so that <result, u> vanishes exactly whenever the
// advecting momentum m has zero wall-normal components.
FaceVectorField skew_advect(const FaceVectorField& m, const FaceVectorField& u, const Grid& g) {
    FaceVectorField out(g, u.tag);
    const double ihx = 1.0 / g.hx, ihy = 1.0 / g.hy;
    const int ncx = n_corners_x(g), ncy = n_corners_y(g);

    // --- x-component rows (outputs on x-faces) ---
    {
        // Cell-centered x-flux of u and cell-centered interpolant of m_x.
        ScalarField Fxc(g), mxc(g);
        for (int j = 0; j < g.ny; ++j)
            for (int i = 0; i < g.nx; ++i) {
                const int ir = xface_right_of_cell(i, g);
                const double mm = 0.5 * (m.ux(i, j) + m.ux(ir, j));
                mxc(i, j) = mm;
                Fxc(i, j) = mm * 0.5 * (u.ux(i, j) + u.ux(ir, j));
            }
        // Corner-centered y-flux of u and corner interpolant of m_y.
        CornerField Fyk(ncx, ncy), myk(ncx, ncy);
        for (int j = 0; j < ncy; ++j)
            for (int i = 0; i < ncx; ++i) {
                if (is_wall_xface(i, g)) continue;          // column of wall u-faces
                if (is_wall_yface(j, g)) continue;          // wall row: m_y = 0 there
                const int icl = cell_left_of_xface(i, g);   // cell left of u-column i
                const int icr = i % g.nx;
                const double mm = 0.5 * (m.vy(icl, j % m.nvy) + m.vy(icr, j % m.nvy));
                const int jb = g.periodic_y() ? (j + g.ny - 1) % g.ny : j - 1;
                myk(i, j) = mm;
                Fyk(i, j) = mm * 0.5 * (u.ux(i, jb) + u.ux(i, j % g.ny));
            }
        for (int j = 0; j < g.ny; ++j) {
            const int jt = g.periodic_y() ? (j + 1) % ncy : j + 1; // top corner row
            for (int i = 0; i < out.nux; ++i) {
                if (is_wall_xface(i, g)) { out.ux(i, j) = 0.0; continue; }
                const int il = cell_left_of_xface(i, g);
                const double divFlux = (Fxc(i % g.nx, j) - Fxc(il, j)) * ihx
                                     + (Fyk(i, jt) - Fyk(i, j)) * ihy;
                const double divM = (mxc(i % g.nx, j) - mxc(il, j)) * ihx
                                  + (myk(i, jt) - myk(i, j)) * ihy;
                out.ux(i, j) = divFlux - 0.5 * divM * u.ux(i, j);
            }
        }
    }

    // --- y-component rows (outputs on y-faces) ---
    {
        ScalarField Fyc(g), myc(g);
        for (int j = 0; j < g.ny; ++j) {
            const int jt = yface_above_cell(j, g);
            for (int i = 0; i < g.nx; ++i) {
                const double mm = 0.5 * (m.vy(i, j) + m.vy(i, jt));
                myc(i, j) = mm;
                Fyc(i, j) = mm * 0.5 * (u.vy(i, j) + u.vy(i, jt));
            }
        }
        CornerField Fxk(ncx, ncy), mxk(ncx, ncy);
        for (int j = 0; j < ncy; ++j)
            for (int i = 0; i < ncx; ++i) {
                if (is_wall_yface(j, g)) continue;          // row of wall v-faces
                if (is_wall_xface(i, g)) continue;          // wall column: m_x = 0 there
                const int jcb = cell_below_yface(j, g);
                const int jct = j % g.ny;
                const double mm = 0.5 * (m.ux(i % m.nux, jcb) + m.ux(i % m.nux, jct));
                const int ilc = g.periodic_x() ? (i + g.nx - 1) % g.nx : i - 1;
                mxk(i, j) = mm;
                Fxk(i, j) = mm * 0.5 * (u.vy(ilc, j) + u.vy(i % g.nx, j));
            }
        for (int j = 0; j < out.nvy; ++j) {
            for (int i = 0; i < g.nx; ++i) {
                if (is_wall_yface(j, g)) { out.vy(i, j) = 0.0; continue; }
                const int jb = cell_below_yface(j, g);
                const int ir = g.periodic_x() ? (i + 1) % ncx : i + 1; // right corner col
                const double divFlux = (Fxk(ir, j) - Fxk(i, j)) * ihx
                                     + (Fyc(i, j % g.ny) - Fyc(i, jb)) * ihy;
                const double divM = (mxk(ir, j) - mxk(i, j)) * ihx
                                  + (myc(i, j % g.ny) - myc(i, jb)) * ihy;
                out.vy(i, j) = divFlux - 0.5 * divM * u.vy(i, j);
            }
        }
    }
    return out;
}

// Strain-rate tensor entries.  Diagonal entries at cells, off-diagonal at
// corners (with the slip-dependent wall ghost conventions).
struct StrainParts {
    ScalarField d11, d22;
    CornerField d12;
    StrainParts(const Grid& g) : d11(g), d22(g), d12(n_corners_x(g), n_corners_y(g)) {}
};

StrainParts strain_tensor(const FaceVectorField& u, const Grid& g) {
    StrainParts sp(g);
    const double ihx = 1.0 / g.hx, ihy = 1.0 / g.hy;
    for (int j = 0; j < g.ny; ++j) {
        const int jt = yface_above_cell(j, g);
        for (int i = 0; i < g.nx; ++i) {
            const int ir = xface_right_of_cell(i, g);
            sp.d11(i, j) = 2.0 * (u.ux(ir, j) - u.ux(i, j)) * ihx;
            sp.d22(i, j) = 2.0 * (u.vy(i, jt) - u.vy(i, j)) * ihy;
        }
    }
    const int ncx = n_corners_x(g), ncy = n_corners_y(g);
    for (int j = 0; j < ncy; ++j)
        for (int i = 0; i < ncx; ++i) {
            double dudy;
            if (is_wall_yface(j, g)) {
                if (g.bc_y == AxisBc::wall_free_slip) {
                    dudy = 0.0;
                } else if (j == 0) { // ghost u(i,-1) = -u(i,0)
                    dudy = 2.0 * u.ux(i, 0) * ihy;
                } else {             // ghost u(i,ny) = -u(i,ny-1)
                    dudy = -2.0 * u.ux(i, g.ny - 1) * ihy;
                }
            } else {
                const int jb = g.periodic_y() ? (j + g.ny - 1) % g.ny : j - 1;
                dudy = (u.ux(i, j % g.ny) - u.ux(i, jb)) * ihy;
            }
            double dvdx;
            if (is_wall_xface(i, g)) {
                if (g.bc_x == AxisBc::wall_free_slip) {
                    dvdx = 0.0;
                } else if (i == 0) { // ghost v(-1,j) = -v(0,j)
                    dvdx = 2.0 * u.vy(0, j) * ihx;
                } else {
                    dvdx = -2.0 * u.vy(g.nx - 1, j) * ihx;
                }
            } else {
                const int il = g.periodic_x() ? (i + g.nx - 1) % g.nx : i - 1;
                dvdx = (u.vy(i % g.nx, j) - u.vy(il, j)) * ihx;
            }
            sp.d12(i, j) = dudy + dvdx;
        }
    return sp;
}

CornerField corner_avg(const ScalarField& c, const Grid& g) {
    const int ncx = n_corners_x(g), ncy = n_corners_y(g);
    CornerField out(ncx, ncy);
    for (int j = 0; j < ncy; ++j) {
        const int jb = cell_index_y(j - 1, g), jj = cell_index_y(j, g);
        for (int i = 0; i < ncx; ++i) {
            const int il = cell_index_x(i - 1, g), ii = cell_index_x(i, g);
            out(i, j) = 0.25 * (c(il, jb) + c(ii, jb) + c(il, jj) + c(ii, jj));
        }
    }
    return out;
}

} // namespace

FaceVectorField convection_momentum(const ScalarField& rho, const FaceVectorField& w,
                                    const FaceVectorField& u, const Grid& g) {
    FaceCoef rf = faces_from_cells(rho, g);
    FaceVectorField m(g, FaceQuantity::flux);
    for (size_t k = 0; k < m.u.size(); ++k) m.u[k] = rf.u[k] * w.u[k];
    for (size_t k = 0; k < m.v.size(); ++k) m.v[k] = rf.v[k] * w.v[k];
    enforce_wall_normal_zero(m, g);
    return skew_advect(m, u, g);
}

FaceVectorField flux_gradient_terms(const FaceVectorField& J, const FaceVectorField& u,
                                    const Grid& g) {
    return skew_advect(J, u, g);
}

FaceVectorField strain_divergence(const ScalarField& nu, const FaceVectorField& u, const Grid& g) {
    StrainParts sp = strain_tensor(u, g);
    CornerField nuk = corner_avg(nu, g);
    const int ncx = n_corners_x(g), ncy = n_corners_y(g);
    for (int j = 0; j < ncy; ++j)
        for (int i = 0; i < ncx; ++i) sp.d12(i, j) *= nuk(i, j);
    for (int j = 0; j < g.ny; ++j)
        for (int i = 0; i < g.nx; ++i) {
            sp.d11(i, j) *= nu(i, j);
            sp.d22(i, j) *= nu(i, j);
        }

    FaceVectorField out(g, FaceQuantity::flux);
    const double ihx = 1.0 / g.hx, ihy = 1.0 / g.hy;
    for (int j = 0; j < g.ny; ++j) {
        const int jt = g.periodic_y() ? (j + 1) % ncy : j + 1;
        for (int i = 0; i < out.nux; ++i) {
            if (is_wall_xface(i, g)) { out.ux(i, j) = 0.0; continue; }
            const int il = cell_left_of_xface(i, g);
            out.ux(i, j) = (sp.d11(i % g.nx, j) - sp.d11(il, j)) * ihx
                         + (sp.d12(i, jt) - sp.d12(i, j)) * ihy;
        }
    }
    for (int j = 0; j < out.nvy; ++j) {
        for (int i = 0; i < g.nx; ++i) {
            if (is_wall_yface(j, g)) { out.vy(i, j) = 0.0; continue; }
            const int jb = cell_below_yface(j, g);
            const int ir = g.periodic_x() ? (i + 1) % ncx : i + 1;
            out.vy(i, j) = (sp.d12(ir, j) - sp.d12(i, j)) * ihx
                         + (sp.d22(i, j % g.ny) - sp.d22(i, jb)) * ihy;
        }
    }
    return out;
}

double strain_dissipation(const ScalarField& nu, const FaceVectorField& u, const Grid& g) {
    StrainParts sp = strain_tensor(u, g);
    CornerField nuk = corner_avg(nu, g);
    const double area = g.cell_area();
    double cells = 0.0;
    for (int j = 0; j < g.ny; ++j)
        for (int i = 0; i < g.nx; ++i)
            cells += nu(i, j) * (sp.d11(i, j) * sp.d11(i, j) + sp.d22(i, j) * sp.d22(i, j));
    const int ncx = n_corners_x(g), ncy = n_corners_y(g);
    double corners = 0.0;
    for (int j = 0; j < ncy; ++j) {
        const double wy = is_wall_yface(j, g) ? 0.5 : 1.0;
        for (int i = 0; i < ncx; ++i) {
            const double w = wy * (is_wall_xface(i, g) ? 0.5 : 1.0);
            corners += w * nuk(i, j) * sp.d12(i, j) * sp.d12(i, j);
        }
    }
    return 0.5 * cells * area + corners * area;
}

double integrate(const ScalarField& f, const Grid& g) {
    double s = 0.0;
    for (double v : f.data) s += v;
    return s * g.cell_area();
}

double dot_cells(const ScalarField& a, const ScalarField& b, const Grid& g) {
    double s = 0.0;
    for (size_t k = 0; k < a.data.size(); ++k) s += a.data[k] * b.data[k];
    return s * g.cell_area();
}

double dot_faces(const FaceVectorField& A, const FaceVectorField& B, const Grid& g) {
    double s = 0.0;
    for (size_t k = 0; k < A.u.size(); ++k) s += A.u[k] * B.u[k];
    for (size_t k = 0; k < A.v.size(); ++k) s += A.v[k] * B.v[k];
    return s * g.cell_area();
}

double dot_faces_weighted(const FaceCoef& w, const FaceVectorField& A,
                          const FaceVectorField& B, const Grid& g) {
    double s = 0.0;
    for (size_t k = 0; k < A.u.size(); ++k) s += w.u[k] * A.u[k] * B.u[k];
    for (size_t k = 0; k < A.v.size(); ++k) s += w.v[k] * A.v[k] * B.v[k];
    return s * g.cell_area();
}

double l2_norm_cells(const ScalarField& f, const Grid& g) {
    return std::sqrt(dot_cells(f, f, g));
}

double l2_norm_faces(const FaceVectorField& F, const Grid& g) {
    return std::sqrt(dot_faces(F, F, g));
}

void enforce_wall_normal_zero(FaceVectorField& F, const Grid& g) {
    if (!g.periodic_x()) {
        for (int j = 0; j < g.ny; ++j) { F.ux(0, j) = 0.0; F.ux(g.nx, j) = 0.0; }
    }
    if (!g.periodic_y()) {
        for (int i = 0; i < g.nx; ++i) { F.vy(i, 0) = 0.0; F.vy(i, g.ny) = 0.0; }
    }
}

} // namespace chns
