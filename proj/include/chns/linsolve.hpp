#pragma once

/// Linear solvers for the three implicit sub-steps:
///   - a spectral direct solver (FFT / cosine transforms) for constant-coefficient
///     problems: the pressure Poisson equation on every supported boundary
///     combination, and the eliminated phase-field system when the mobility is
///     uniform;
///   - preconditioned Krylov iterations (CG, BiCGStab) for the variable-coefficient
///     cases: the eliminated phase-field system with non-uniform mobility and the
///     implicit viscous/mass momentum system.
///
/// The eliminated phase-field operator: substituting the chemical-potential row
///     mu = lam_eps * A phi + ls_eps * phi + c       (A = -Laplacian)
/// into the evolution row
///     a0dt * phi + B mu = b                          (B f = -div(M grad f))
/// gives
///     H phi = a0dt * phi + lam_eps * B(A phi) + ls_eps * B phi = b - B c.
/// H is symmetric positive definite for uniform mobility and mildly nonsymmetric
/// otherwise (B and A no longer commute); BiCGStab handles both.  After the solve,
/// mu is recovered from the chemical-potential row algebraically, so that row
/// holds to round-off and the evolution row to solver tolerance.

#include <functional>
#include <memory>

#include "chns/fields.hpp"
#include "chns/grid.hpp"
#include "chns/operators.hpp"

namespace chns {

struct SolveReport {
    int iterations = 0;
    double final_residual = 0.0; // relative 2-norm residual
    bool converged = false;
};

// ---------------------------------------------------------------------------
// Spectral direct solver.
//
// Diagonalizes the standard 5-point Laplacian with the grid's boundary
// conditions: full Fourier modes along periodic axes, cosine (Neumann) modes
// along wall axes.  Exact for any operator that is a polynomial in the
// (negative) Laplacian with spatially uniform coefficients.
// ---------------------------------------------------------------------------
class SpectralSolver {
public:
    explicit SpectralSolver(const Grid& g);
    ~SpectralSolver();
    SpectralSolver(const SpectralSolver&) = delete;
    SpectralSolver& operator=(const SpectralSolver&) = delete;

    /// Solve sym(a) * x_hat = rhs_hat per mode, where a >= 0 is the eigenvalue of
    /// the negative Laplacian.  If project_zero_mode, the mean (a == 0) component
    /// of rhs is dropped and the solution mean set to zero.
    void solve_with_symbol(const ScalarField& rhs, ScalarField& x,
                           const std::function<double(double)>& sym,
                           bool project_zero_mode);

    /// (c0 - c1 * Laplacian) x = rhs.
    void solve_helmholtz(double c0, double c1, const ScalarField& rhs, ScalarField& x,
                         bool project_zero_mode = false);

    /// Eliminated phase-field system with uniform mobility m:
    /// (a0dt + m * (lam_eps * a^2 + ls_eps * a)) per mode.
    void solve_ch_uniform(double a0dt, double m, double lam_eps, double ls_eps,
                          const ScalarField& rhs, ScalarField& x);

private:
    struct Impl;
    std::unique_ptr<Impl> impl_;
};

// ---------------------------------------------------------------------------
// Krylov iterations.  Convergence test: ||b - A x|| <= tol * ||b|| (plain
// vector 2-norms).  A zero right-hand side returns x = 0 immediately.
// ---------------------------------------------------------------------------
using CellOp = std::function<void(const ScalarField&, ScalarField&)>;
using FaceOp = std::function<void(const FaceVectorField&, FaceVectorField&)>;

SolveReport cg_cells(const CellOp& A, const ScalarField& b, ScalarField& x,
                     double tol, int max_iter);

/// BiCGStab with optional right preconditioner (pass nullptr for none).
SolveReport bicgstab_cells(const CellOp& A, const CellOp* right_precond,
                           const ScalarField& b, ScalarField& x,
                           double tol, int max_iter);

SolveReport bicgstab_faces(const FaceOp& A, const FaceOp* right_precond,
                           const FaceVectorField& b, FaceVectorField& x,
                           double tol, int max_iter);

// ---------------------------------------------------------------------------
// Problem-specific systems.
// ---------------------------------------------------------------------------

/// Eliminated phase-field operator H (see file comment).
struct ChOperator {
    const Grid* g = nullptr;
    double a0dt = 0.0;    // a0 / dt  (1/dt or 1.5/dt)
    double lam_eps = 0.0; // lambda * epsilon
    double ls_eps = 0.0;  // lambda * s / epsilon
    const FaceCoef* mobility = nullptr;

    void apply(const ScalarField& x, ScalarField& y) const;
};

/// Solve H phi = rhs.  If mobility_uniform, uses the spectral direct path when
/// `spec` is non-null; otherwise BiCGStab right-preconditioned by the spectral
/// inverse with the mean mobility (if `spec` given) or unpreconditioned.
SolveReport solve_ch_system(const ChOperator& H, const ScalarField& rhs, ScalarField& phi,
                            SpectralSolver* spec, bool mobility_uniform, double uniform_value,
                            double tol, int max_iter);

/// Implicit momentum operator: y = mass .* x - div(nu D(x)), acting on velocity
/// fields that vanish on wall-normal faces.  `mass` must be strictly positive.
struct MomentumOperator {
    const Grid* g = nullptr;
    FaceCoef mass;  // per-face coefficient multiplying the unknown velocity
    ScalarField nu; // cell viscosity

    MomentumOperator(const Grid& grid, FaceCoef m, ScalarField n);
    void apply(const FaceVectorField& x, FaceVectorField& y) const;
    FaceCoef diagonal() const; // exact diagonal, for Jacobi preconditioning
};

SolveReport solve_momentum(const MomentumOperator& A, const FaceVectorField& b,
                           FaceVectorField& u, double tol, int max_iter);

/// Pressure Poisson problem: Laplacian psi = rhs with the grid's boundary
/// conditions (pure Neumann / periodic), solvability enforced by projecting out
/// the mean of rhs; the returned psi has zero mean.  Uses the spectral solver
/// when given, else CG on the negative Laplacian.
SolveReport solve_poisson(const Grid& g, const ScalarField& rhs, ScalarField& psi,
                          SpectralSolver* spec, double tol, int max_iter);

} // namespace chns
