/// Cross-validation of one full time step against the independent dense
/// reference (see dense_reference_core.hpp): hand-written stencil loops,
/// dense LU solves, and plain quadrature loops for the auxiliary scalars.
/// The production step must agree to 1e-10 in every field and every
/// auxiliary scalar for the first-order scheme (constant and degenerate
/// mobility, with gravity and contrasting phases) and for the second-order
/// scheme from a pre-seeded two-level history.  The reference matrices
/// themselves are checked against closed-form stencil coefficients first.

#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include "dense_reference_core.hpp"

using namespace chns;
using namespace chns::dense_ref;
using Eigen::MatrixXd;
using Eigen::VectorXd;

TEST_CASE("reference matrices match closed-form stencil coefficients") {
    const Ref rf{fixture_n, 1.0 / fixture_n};
    const double h2 = rf.h * rf.h, h4 = h2 * h2;
    const int N = rf.N();

    // Eliminated phase-field matrix with uniform mobility: the biharmonic
    // 13-point stencil plus the 5-point and identity layers.
    const double a0dt = 1000.0, m = 0.7, lam_eps = 2e-3, ls_eps = 0.8;
    VectorXd Mu = VectorXd::Constant(N, m), Mv = VectorXd::Constant(N, m);
    const MatrixXd A = neg_lap(rf);
    const MatrixXd H = a0dt * MatrixXd::Identity(N, N)
                     + neg_div_coef_grad(rf, Mu, Mv)
                     * (lam_eps * A + ls_eps * MatrixXd::Identity(N, N));
    const int i = 3, j = 4, kc = rf.k(i, j);
    CHECK(H(kc, kc) == doctest::Approx(a0dt + m * (lam_eps * 20.0 / h4 + ls_eps * 4.0 / h2)).epsilon(1e-12));
    CHECK(H(kc, rf.k(rf.E(i), j)) == doctest::Approx(m * (lam_eps * -8.0 / h4 - ls_eps / h2)).epsilon(1e-12));
    CHECK(H(kc, rf.k(rf.E(i), rf.E(j))) == doctest::Approx(m * lam_eps * 2.0 / h4).epsilon(1e-12));
    CHECK(H(kc, rf.k(rf.E(rf.E(i)), j)) == doctest::Approx(m * lam_eps * 1.0 / h4).epsilon(1e-12));
    // Row sum: the laplacian layers annihilate constants, leaving a0dt.
    CHECK(H.row(kc).sum() == doctest::Approx(a0dt).epsilon(1e-12));

    // Momentum matrix with uniform viscosity: diagonal mass + 6 nu / h^2,
    // east/west u-u couplings -2 nu / h^2, north/south -nu / h^2.
    const double nu0 = 0.45;
    VectorXd nu = VectorXd::Constant(N, nu0);
    VectorXd mass_u = VectorXd::Constant(N, 120.0), mass_v = VectorXd::Constant(N, 80.0);
    const MatrixXd Mom = momentum_matrix(rf, mass_u, mass_v, nu);
    CHECK(Mom(kc, kc) == doctest::Approx(120.0 + 6.0 * nu0 / h2).epsilon(1e-12));
    CHECK(Mom(N + kc, N + kc) == doctest::Approx(80.0 + 6.0 * nu0 / h2).epsilon(1e-12));
    CHECK(Mom(kc, rf.k(rf.E(i), j)) == doctest::Approx(-2.0 * nu0 / h2).epsilon(1e-12));
    CHECK(Mom(kc, rf.k(i, rf.E(j))) == doctest::Approx(-nu0 / h2).epsilon(1e-12));
    // A rigid translation produces no viscous force.
    VectorXd ones_u = VectorXd::Ones(N), zeros_v = VectorXd::Zero(N);
    VectorXd su, sv;
    strain_div(rf, nu, ones_u, zeros_v, su, sv);
    CHECK(su.cwiseAbs().maxCoeff() <= 1e-12);
    CHECK(sv.cwiseAbs().maxCoeff() <= 1e-12);

    // Variable-coefficient diffusion row from its defining face coefficients.
    VectorXd Mu2(N), Mv2(N);
    for (int k = 0; k < N; ++k) {
        Mu2[k] = 0.3 + 0.01 * k;
        Mv2[k] = 0.9 - 0.005 * k;
    }
    const MatrixXd B = neg_div_coef_grad(rf, Mu2, Mv2);
    const double me = Mu2[rf.k(rf.E(i), j)], mw = Mu2[kc];
    const double mn = Mv2[rf.k(i, rf.E(j))], ms = Mv2[kc];
    CHECK(B(kc, kc) == doctest::Approx((me + mw + mn + ms) / h2).epsilon(1e-12));
    CHECK(B(kc, rf.k(rf.W(i), j)) == doctest::Approx(-mw / h2).epsilon(1e-12));
    CHECK(B(kc, rf.k(i, rf.E(j))) == doctest::Approx(-mn / h2).epsilon(1e-12));
    CHECK((B - B.transpose()).cwiseAbs().maxCoeff() <= 1e-12);
}

static void check_all(const StepCompare& d) {
    CHECK(d.phi <= 1e-10);
    CHECK(d.mu <= 1e-10);
    CHECK(d.p <= 1e-10);
    CHECK(d.incr <= 1e-10);
    CHECK(d.u <= 1e-10);
    CHECK(d.v <= 1e-10);
    CHECK(d.r <= 1e-10);
    CHECK(d.Q <= 1e-10);
    CHECK(d.R <= 1e-10);
    CHECK(d.T <= 1e-10);
    CHECK(d.K <= 1e-10);
}

TEST_CASE("first-order step matches the dense reference with constant mobility") {
    check_all(run_case(0));
}

TEST_CASE("first-order step matches the dense reference with degenerate mobility") {
    check_all(run_case(1));
}

TEST_CASE("second-order step matches the dense reference from a seeded history") {
    check_all(run_case(2));
}
