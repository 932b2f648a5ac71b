#include "chns/linsolve.hpp"

#include <cmath>
#include <stdexcept>

namespace chns {

namespace {

double rawdot(const ScalarField& a, const ScalarField& b) {
    double s = 0.0;
    for (size_t k = 0; k < a.data.size(); ++k) s += a.data[k] * b.data[k];
    return s;
}

double rawdot(const FaceVectorField& a, const FaceVectorField& b) {
    double s = 0.0;
    for (size_t k = 0; k < a.u.size(); ++k) s += a.u[k] * b.u[k];
    for (size_t k = 0; k < a.v.size(); ++k) s += a.v[k] * b.v[k];
    return s;
}

template <class F>
double norm2(const F& a) { return std::sqrt(rawdot(a, a)); }

// Entry-wise loop helpers for the two field shapes.
template <class Fn>
void for_each_entry(ScalarField& a, const ScalarField& b, Fn&& fn) {
    for (size_t k = 0; k < a.data.size(); ++k) fn(a.data[k], b.data[k]);
}
template <class Fn>
void for_each_entry(FaceVectorField& a, const FaceVectorField& b, Fn&& fn) {
    for (size_t k = 0; k < a.u.size(); ++k) fn(a.u[k], b.u[k]);
    for (size_t k = 0; k < a.v.size(); ++k) fn(a.v[k], b.v[k]);
}
template <class Fn>
void for_each_entry3(ScalarField& a, const ScalarField& b, const ScalarField& c, Fn&& fn) {
    for (size_t k = 0; k < a.data.size(); ++k) fn(a.data[k], b.data[k], c.data[k]);
}
template <class Fn>
void for_each_entry3(FaceVectorField& a, const FaceVectorField& b, const FaceVectorField& c,
                     Fn&& fn) {
    for (size_t k = 0; k < a.u.size(); ++k) fn(a.u[k], b.u[k], c.u[k]);
    for (size_t k = 0; k < a.v.size(); ++k) fn(a.v[k], b.v[k], c.v[k]);
}

// Preconditioned BiCGStab (right preconditioning), shared by the cell and face
// variants.  All scalar coefficients are ratios of inner products, so the
// choice of (unweighted) dot product does not affect the iteration.
template <class F, class Op>
SolveReport bicgstab_impl(const Op& A, const Op* M, const F& b, F& x,
                          double tol, int max_iter) {
    SolveReport rep;
    const double bnorm = norm2(b);
    if (bnorm == 0.0) {
        x = b; // zeros
        rep.converged = true;
        return rep;
    }

    F r = b, tmp = b;
    A(x, tmp);
    for_each_entry(r, tmp, [](double& ri, double ti) { ri -= ti; });
    F rhat = r;
    F p = b, v = b, s = b, shat = b, phat = b, t = b;
    p.fill(0.0);
    v.fill(0.0);

    double rho = 1.0, alpha = 1.0, omega = 1.0;
    double resid = norm2(r) / bnorm;
    if (resid <= tol) {
        rep.converged = true;
        rep.final_residual = resid;
        return rep;
    }

    for (int it = 1; it <= max_iter; ++it) {
        const double rho_new = rawdot(rhat, r);
        if (rho_new == 0.0) break; // breakdown
        if (it == 1) {
            p = r;
        } else {
            const double beta = (rho_new / rho) * (alpha / omega);
            // p = r + beta * (p - omega * v)
            for_each_entry3(p, r, v, [beta, omega](double& pi, double ri, double vi) {
                pi = ri + beta * (pi - omega * vi);
            });
        }
        rho = rho_new;

        if (M) { (*M)(p, phat); } else { phat = p; }
        A(phat, v);
        const double rhat_v = rawdot(rhat, v);
        if (rhat_v == 0.0) break;
        alpha = rho / rhat_v;

        // s = r - alpha * v
        for_each_entry3(s, r, v, [alpha](double& si, double ri, double vi) {
            si = ri - alpha * vi;
        });
        if (norm2(s) / bnorm <= tol) {
            add_scaled(x, alpha, phat);
            rep.iterations = it;
            rep.final_residual = norm2(s) / bnorm;
            rep.converged = true;
            return rep;
        }

        if (M) { (*M)(s, shat); } else { shat = s; }
        A(shat, t);
        const double tt = rawdot(t, t);
        if (tt == 0.0) break;
        omega = rawdot(t, s) / tt;

        add_scaled(x, alpha, phat);
        add_scaled(x, omega, shat);
        // r = s - omega * t
        for_each_entry3(r, s, t, [omega](double& ri, double si, double ti) {
            ri = si - omega * ti;
        });

        resid = norm2(r) / bnorm;
        rep.iterations = it;
        if (resid <= tol) {
            rep.final_residual = resid;
            rep.converged = true;
            return rep;
        }
        if (omega == 0.0) break;
    }
    rep.final_residual = resid;
    rep.converged = resid <= tol;
    return rep;
}

} // namespace

SolveReport cg_cells(const CellOp& A, const ScalarField& b, ScalarField& x,
                     double tol, int max_iter) {
    SolveReport rep;
    const double bnorm = norm2(b);
    if (bnorm == 0.0) {
        x = b;
        rep.converged = true;
        return rep;
    }
    ScalarField r = b, Ax = b;
    A(x, Ax);
    for (size_t k = 0; k < r.data.size(); ++k) r.data[k] -= Ax.data[k];
    ScalarField p = r, Ap = b;
    double rr = rawdot(r, r);
    double resid = std::sqrt(rr) / bnorm;
    if (resid <= tol) {
        rep.converged = true;
        rep.final_residual = resid;
        return rep;
    }
    for (int it = 1; it <= max_iter; ++it) {
        A(p, Ap);
        const double pAp = rawdot(p, Ap);
        if (pAp <= 0.0) break; // loss of positive definiteness / breakdown
        const double alpha = rr / pAp;
        add_scaled(x, alpha, p);
        add_scaled(r, -alpha, Ap);
        const double rr_new = rawdot(r, r);
        rep.iterations = it;
        resid = std::sqrt(rr_new) / bnorm;
        if (resid <= tol) {
            rep.final_residual = resid;
            rep.converged = true;
            return rep;
        }
        const double beta = rr_new / rr;
        rr = rr_new;
        for (size_t k = 0; k < p.data.size(); ++k) p.data[k] = r.data[k] + beta * p.data[k];
    }
    rep.final_residual = resid;
    rep.converged = resid <= tol;
    return rep;
}

SolveReport bicgstab_cells(const CellOp& A, const CellOp* right_precond,
                           const ScalarField& b, ScalarField& x,
                           double tol, int max_iter) {
    return bicgstab_impl<ScalarField, CellOp>(A, right_precond, b, x, tol, max_iter);
}

SolveReport bicgstab_faces(const FaceOp& A, const FaceOp* right_precond,
                           const FaceVectorField& b, FaceVectorField& x,
                           double tol, int max_iter) {
    return bicgstab_impl<FaceVectorField, FaceOp>(A, right_precond, b, x, tol, max_iter);
}

void ChOperator::apply(const ScalarField& x, ScalarField& y) const {
    const Grid& gr = *g;
    // mu-like part (without the known constant term): lam_eps * (-Lap x) + ls_eps * x
    ScalarField lap = laplacian(x, gr);
    ScalarField inner = lincomb(-lam_eps, lap, ls_eps, x);
    ScalarField diff = div_coef_grad(*mobility, inner, gr);
    y = x;
    for (size_t k = 0; k < y.data.size(); ++k)
        y.data[k] = a0dt * x.data[k] - diff.data[k];
}

SolveReport solve_ch_system(const ChOperator& H, const ScalarField& rhs, ScalarField& phi,
                            SpectralSolver* spec, bool mobility_uniform, double uniform_value,
                            double tol, int max_iter) {
    if (mobility_uniform && spec) {
        spec->solve_ch_uniform(H.a0dt, uniform_value, H.lam_eps, H.ls_eps, rhs, phi);
        ScalarField res(*H.g);
        H.apply(phi, res);
        for (size_t k = 0; k < res.data.size(); ++k) res.data[k] = rhs.data[k] - res.data[k];
        SolveReport rep;
        const double bn = norm2(rhs);
        rep.final_residual = bn > 0 ? norm2(res) / bn : 0.0;
        rep.converged = rep.final_residual <= std::max(tol, 1e-12);
        return rep;
    }
    CellOp A = [&H](const ScalarField& in, ScalarField& out) { H.apply(in, out); };
    if (spec) {
        // Right preconditioner: exact inverse of the uniform-mobility operator
        // with the mean face mobility.
        double msum = 0.0;
        size_t mcount = H.mobility->u.size() + H.mobility->v.size();
        for (double v : H.mobility->u) msum += v;
        for (double v : H.mobility->v) msum += v;
        const double mbar = mcount > 0 ? msum / mcount : 1.0;
        CellOp M = [&H, spec, mbar](const ScalarField& in, ScalarField& out) {
            spec->solve_ch_uniform(H.a0dt, mbar, H.lam_eps, H.ls_eps, in, out);
        };
        return bicgstab_cells(A, &M, rhs, phi, tol, max_iter);
    }
    return bicgstab_cells(A, nullptr, rhs, phi, tol, max_iter);
}

MomentumOperator::MomentumOperator(const Grid& grid, FaceCoef m, ScalarField n)
    : g(&grid), mass(std::move(m)), nu(std::move(n)) {
    for (double v : mass.u)
        if (!(v > 0.0)) throw std::runtime_error("momentum operator: non-positive mass coefficient");
    for (double v : mass.v)
        if (!(v > 0.0)) throw std::runtime_error("momentum operator: non-positive mass coefficient");
}

void MomentumOperator::apply(const FaceVectorField& x, FaceVectorField& y) const {
    y = strain_divergence(nu, x, *g);
    for (size_t k = 0; k < y.u.size(); ++k) y.u[k] = mass.u[k] * x.u[k] - y.u[k];
    for (size_t k = 0; k < y.v.size(); ++k) y.v[k] = mass.v[k] * x.v[k] - y.v[k];
    enforce_wall_normal_zero(y, *g);
}

FaceCoef MomentumOperator::diagonal() const {
    const Grid& gr = *g;
    FaceCoef d(gr, FaceQuantity::flux);
    const double ihx2 = 1.0 / (gr.hx * gr.hx), ihy2 = 1.0 / (gr.hy * gr.hy);
    const int ncy = gr.periodic_y() ? gr.ny : gr.ny + 1;
    const int ncx = gr.periodic_x() ? gr.nx : gr.nx + 1;

    auto clampx = [&gr](int i) {
        if (gr.periodic_x()) return (i + gr.nx) % gr.nx;
        return i < 0 ? 0 : (i >= gr.nx ? gr.nx - 1 : i);
    };
    auto clampy = [&gr](int j) {
        if (gr.periodic_y()) return (j + gr.ny) % gr.ny;
        return j < 0 ? 0 : (j >= gr.ny ? gr.ny - 1 : j);
    };
    auto nu_corner = [&](int i, int j) {
        return 0.25 * (nu(clampx(i - 1), clampy(j - 1)) + nu(clampx(i), clampy(j - 1)) +
                       nu(clampx(i - 1), clampy(j)) + nu(clampx(i), clampy(j)));
    };
    // Magnitude of dD12/du through a given corner row (x analog for columns).
    auto shear_coef_y = [&gr](int jc) {
        const bool wall = !gr.periodic_y() && (jc == 0 || jc == gr.ny);
        if (!wall) return 1.0 / gr.hy;
        return gr.bc_y == AxisBc::wall_free_slip ? 0.0 : 2.0 / gr.hy;
    };
    auto shear_coef_x = [&gr](int ic) {
        const bool wall = !gr.periodic_x() && (ic == 0 || ic == gr.nx);
        if (!wall) return 1.0 / gr.hx;
        return gr.bc_x == AxisBc::wall_free_slip ? 0.0 : 2.0 / gr.hx;
    };

    for (int j = 0; j < gr.ny; ++j) {
        const int jt = gr.periodic_y() ? (j + 1) % ncy : j + 1;
        for (int i = 0; i < d.nux; ++i) {
            const bool wallface = !gr.periodic_x() && (i == 0 || i == gr.nx);
            if (wallface) { d.ux(i, j) = 1.0; continue; }
            const int ic = i % gr.nx;
            const int il = gr.periodic_x() ? (i + gr.nx - 1) % gr.nx : i - 1;
            double val = mass.ux(i, j) + 2.0 * (nu(ic, j) + nu(il, j)) * ihx2;
            val += (nu_corner(i, jt) * shear_coef_y(jt) + nu_corner(i, j) * shear_coef_y(j)) / gr.hy;
            d.ux(i, j) = val;
        }
    }
    for (int j = 0; j < d.nvy; ++j) {
        const bool wallface = !gr.periodic_y() && (j == 0 || j == gr.ny);
        for (int i = 0; i < gr.nx; ++i) {
            if (wallface) { d.vy(i, j) = 1.0; continue; }
            const int jc = j % gr.ny;
            const int jb = gr.periodic_y() ? (j + gr.ny - 1) % gr.ny : j - 1;
            const int ir = gr.periodic_x() ? (i + 1) % ncx : i + 1;
            double val = mass.vy(i, j) + 2.0 * (nu(i, jc) + nu(i, jb)) * ihy2;
            val += (nu_corner(ir, j) * shear_coef_x(ir) + nu_corner(i, j) * shear_coef_x(i)) / gr.hx;
            d.vy(i, j) = val;
        }
    }
    return d;
}

SolveReport solve_momentum(const MomentumOperator& A, const FaceVectorField& b,
                           FaceVectorField& u, double tol, int max_iter) {
    FaceVectorField rhs = b;
    enforce_wall_normal_zero(rhs, *A.g);
    enforce_wall_normal_zero(u, *A.g);
    FaceCoef diag = A.diagonal();
    FaceOp op = [&A](const FaceVectorField& x, FaceVectorField& y) { A.apply(x, y); };
    FaceOp jacobi = [&diag](const FaceVectorField& x, FaceVectorField& y) {
        y = x;
        for (size_t k = 0; k < y.u.size(); ++k) y.u[k] /= diag.u[k];
        for (size_t k = 0; k < y.v.size(); ++k) y.v[k] /= diag.v[k];
    };
    return bicgstab_faces(op, &jacobi, rhs, u, tol, max_iter);
}

SolveReport solve_poisson(const Grid& g, const ScalarField& rhs, ScalarField& psi,
                          SpectralSolver* spec, double tol, int max_iter) {
    // Enforce solvability of the pure-Neumann/periodic problem.
    ScalarField b = rhs;
    double mean = 0.0;
    for (double v : b.data) mean += v;
    mean /= static_cast<double>(b.data.size());
    for (double& v : b.data) v -= mean;

    SolveReport rep;
    const double bn = norm2(b);
    if (bn == 0.0) {
        psi = b; // zeros
        rep.converged = true;
        return rep;
    }

    if (spec) {
        // Laplacian psi = b  <=>  (-Laplacian) psi = -b; symbol(a) = -a flips the sign.
        spec->solve_with_symbol(b, psi, [](double a) { return -a; }, true);
        ScalarField res = laplacian(psi, g);
        for (size_t k = 0; k < res.data.size(); ++k) res.data[k] = b.data[k] - res.data[k];
        rep.final_residual = norm2(res) / bn;
        rep.converged = rep.final_residual <= std::max(tol, 1e-12);
        return rep;
    }

    // CG on the negative Laplacian restricted to mean-free fields.
    ScalarField nb = b;
    scale(nb, -1.0);
    CellOp A = [&g](const ScalarField& x, ScalarField& y) {
        y = laplacian(x, g);
        scale(y, -1.0);
    };
    psi.fill(0.0);
    rep = cg_cells(A, nb, psi, tol, max_iter);
    double pm = 0.0;
    for (double v : psi.data) pm += v;
    pm /= static_cast<double>(psi.data.size());
    for (double& v : psi.data) v -= pm;
    return rep;
}

} // namespace chns
