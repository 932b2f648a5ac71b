#include "chns/linsolve.hpp"

#include <cmath>
#include <stdexcept>
#include <vector>

#include <fftw3.h>

namespace chns {

// Diagonalization of the 5-point negative Laplacian:
//   periodic axis: real DFT (half-complex), eigenvalue 4 sin^2(pi f / n) / h^2
//     where f = min(k, n-k) is the frequency of half-complex slot k;
//   wall axis (Neumann): DCT-II forward / DCT-III inverse, eigenvalue
//     4 sin^2(pi k / (2n)) / h^2.
// The forward+inverse round trip scales by n (DFT) or 2n (DCT) per axis.
struct SpectralSolver::Impl {
    Grid g;
    std::vector<double> eigx, eigy;
    double norm = 1.0;
    double* buf = nullptr;
    fftw_plan fwd = nullptr, bwd = nullptr;

    explicit Impl(const Grid& grid) : g(grid) {
        const int nx = g.nx, ny = g.ny;
        buf = fftw_alloc_real(static_cast<size_t>(nx) * ny);
        if (!buf) throw std::runtime_error("spectral solver: allocation failed");

        fftw_r2r_kind kx_f, kx_b, ky_f, ky_b;
        eigx.resize(nx);
        if (g.periodic_x()) {
            kx_f = FFTW_R2HC; kx_b = FFTW_HC2R;
            norm *= nx;
            for (int k = 0; k < nx; ++k) {
                const int f = std::min(k, nx - k);
                const double s = std::sin(M_PI * f / nx);
                eigx[k] = 4.0 * s * s / (g.hx * g.hx);
            }
        } else {
            kx_f = FFTW_REDFT10; kx_b = FFTW_REDFT01;
            norm *= 2.0 * nx;
            for (int k = 0; k < nx; ++k) {
                const double s = std::sin(M_PI * k / (2.0 * nx));
                eigx[k] = 4.0 * s * s / (g.hx * g.hx);
            }
        }
        eigy.resize(ny);
        if (g.periodic_y()) {
            ky_f = FFTW_R2HC; ky_b = FFTW_HC2R;
            norm *= ny;
            for (int k = 0; k < ny; ++k) {
                const int f = std::min(k, ny - k);
                const double s = std::sin(M_PI * f / ny);
                eigy[k] = 4.0 * s * s / (g.hy * g.hy);
            }
        } else {
            ky_f = FFTW_REDFT10; ky_b = FFTW_REDFT01;
            norm *= 2.0 * ny;
            for (int k = 0; k < ny; ++k) {
                const double s = std::sin(M_PI * k / (2.0 * ny));
                eigy[k] = 4.0 * s * s / (g.hy * g.hy);
            }
        }

        // Layout idx = i + nx*j: j (y) is the slow dimension -> n0 = ny.
        fwd = fftw_plan_r2r_2d(ny, nx, buf, buf, ky_f, kx_f, FFTW_ESTIMATE);
        bwd = fftw_plan_r2r_2d(ny, nx, buf, buf, ky_b, kx_b, FFTW_ESTIMATE);
        if (!fwd || !bwd) throw std::runtime_error("spectral solver: planning failed");
    }

    ~Impl() {
        if (fwd) fftw_destroy_plan(fwd);
        if (bwd) fftw_destroy_plan(bwd);
        if (buf) fftw_free(buf);
    }
};

SpectralSolver::SpectralSolver(const Grid& g) : impl_(new Impl(g)) {}
SpectralSolver::~SpectralSolver() = default;

void SpectralSolver::solve_with_symbol(const ScalarField& rhs, ScalarField& x,
                                       const std::function<double(double)>& sym,
                                       bool project_zero_mode) {
    Impl& im = *impl_;
    const int nx = im.g.nx, ny = im.g.ny;
    const size_t n = static_cast<size_t>(nx) * ny;
    for (size_t k = 0; k < n; ++k) im.buf[k] = rhs.data[k];
    fftw_execute(im.fwd);
    for (int j = 0; j < ny; ++j) {
        for (int i = 0; i < nx; ++i) {
            const double a = im.eigx[i] + im.eigy[j];
            double& c = im.buf[i + static_cast<size_t>(nx) * j];
            if (project_zero_mode && a == 0.0) {
                c = 0.0;
            } else {
                c /= sym(a) * im.norm;
            }
        }
    }
    fftw_execute(im.bwd);
    if (x.data.size() != n) x = rhs;
    for (size_t k = 0; k < n; ++k) x.data[k] = im.buf[k];
}

void SpectralSolver::solve_helmholtz(double c0, double c1, const ScalarField& rhs,
                                     ScalarField& x, bool project_zero_mode) {
    solve_with_symbol(rhs, x, [c0, c1](double a) { return c0 + c1 * a; }, project_zero_mode);
}

void SpectralSolver::solve_ch_uniform(double a0dt, double m, double lam_eps, double ls_eps,
                                      const ScalarField& rhs, ScalarField& x) {
    solve_with_symbol(
        rhs, x,
        [a0dt, m, lam_eps, ls_eps](double a) { return a0dt + m * (lam_eps * a * a + ls_eps * a); },
        false);
}

} // namespace chns
