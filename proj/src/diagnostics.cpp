#include "chns/diagnostics.hpp"

#include <cmath>
#include <queue>

#include "chns/material.hpp"
#include "chns/operators.hpp"

namespace chns {

double original_energy(const SimState& st, const FluidParams& fp) {
    const Grid& g = st.grid;
    const FaceCoef rf = faces_from_cells(rho_field(st.phi, fp), g);
    const double kin = 0.5 * dot_faces_weighted(rf, st.vel, st.vel, g);
    const FaceVectorField gp = gradient(st.phi, g);
    const double grad = 0.5 * fp.lambda * fp.epsilon * dot_faces(gp, gp, g);
    double well = 0.0;
    for (double v : st.phi.data) well += F_well(v);
    well *= fp.lambda / fp.epsilon * g.cell_area();
    return kin + grad + well;
}

namespace {

double e0_of(const ScalarField& phi, const FluidParams& fp, const Grid& g) {
    double s = 0.0;
    for (double v : phi.data) s += F_well(v) - 0.5 * fp.s * v * v;
    return (fp.lambda / fp.epsilon) * s * g.cell_area();
}

} // namespace

EnergyBreakdown modified_energy(const SimState& st, const FluidParams& fp,
                                const SchemeConfig& sc) {
    const Grid& g = st.grid;
    EnergyBreakdown eb;
    const FaceCoef rf_cur = faces_from_cells(rho_field(st.phi, fp), g);
    const double ke_cur = 0.5 * dot_faces_weighted(rf_cur, st.vel, st.vel, g);
    const FaceVectorField gp_cur = gradient(st.phi, g);
    const FaceVectorField gpress = gradient(st.p, g);
    const double gp2_cur = dot_faces(gp_cur, gp_cur, g);
    const double ph2_cur = dot_cells(st.phi, st.phi, g);
    const double e0_cur = e0_of(st.phi, fp, g);
    const SavState& s = st.sav;

    if (sc.order == 2) {
        const FaceCoef rf_prev = faces_from_cells(rho_field(st.phi_prev, fp), g);
        const double ke_prev = 0.5 * dot_faces_weighted(rf_prev, st.vel_prev, st.vel_prev, g);
        const FaceVectorField gp_ext = lincomb(2.0, gp_cur, -1.0, gradient(st.phi_prev, g));
        const ScalarField ph_ext = lincomb(2.0, st.phi, -1.0, st.phi_prev);

        eb.kinetic = 0.5 * (3.0 * ke_cur - ke_prev); // = (1/2)(3/2||.||^2 - 1/2||.||^2)
        eb.gradient = 0.25 * fp.lambda * fp.epsilon * (gp2_cur + dot_faces(gp_ext, gp_ext, g));
        eb.phi2 = 0.25 * fp.lambda * fp.s / fp.epsilon * (ph2_cur + dot_cells(ph_ext, ph_ext, g));
        eb.pressure = sc.dt * sc.dt / (3.0 * sc.chi) * dot_faces(gpress, gpress, g);
        eb.e0 = 0.5 * (3.0 * e0_cur - e0_of(st.phi_prev, fp, g));
        eb.aux = 0.5 / fp.alpha
               * ((3.0 * s.r - s.r_prev) + (3.0 * s.Q - s.Q_prev) + (3.0 * s.R - s.R_prev)
                  + (3.0 * s.T - s.T_prev) + (3.0 * s.K - s.K_prev));
    } else {
        eb.kinetic = ke_cur;
        eb.gradient = 0.5 * fp.lambda * fp.epsilon * gp2_cur;
        eb.phi2 = 0.5 * fp.lambda * fp.s / fp.epsilon * ph2_cur;
        eb.pressure = sc.dt * sc.dt / sc.chi * dot_faces(gpress, gpress, g);
        eb.e0 = e0_cur;
        eb.aux = (s.r + s.Q + s.R + s.T + s.K) / fp.alpha;
    }
    eb.total = eb.kinetic + eb.gradient + eb.phi2 + eb.e0 + eb.pressure + eb.aux;
    return eb;
}

double phase_volume(const SimState& st) {
    return integrate(st.phi, st.grid);
}

double gravity_work_increment(const SimState& st, const FluidParams& fp,
                              const SchemeConfig& sc) {
    if (!fp.has_gravity()) return 0.0;
    const Grid& g = st.grid;
    const FaceCoef rf = faces_from_cells(rho_field(st.phi, fp), g);
    FaceVectorField gv(g, FaceQuantity::flux);
    gv.fill(0.0);
    for (double& v : gv.u) v = fp.grav_x;
    for (double& v : gv.v) v = fp.grav_y;
    return sc.dt * dot_faces_weighted(rf, st.vel, gv, g);
}

BubbleMetrics bubble_metrics(const SimState& st) {
    const Grid& g = st.grid;
    BubbleMetrics m;
    ScalarField uc(g), vc(g);
    cell_centered_velocity(st, uc, vc);
    double ysum = 0.0, vsum = 0.0;
    long count = 0;
    for (int j = 0; j < g.ny; ++j)
        for (int i = 0; i < g.nx; ++i)
            if (st.phi(i, j) < 0.0) {
                ysum += g.yc(j);
                vsum += vc(i, j);
                ++count;
            }
    m.volume = count * g.cell_area();
    if (count > 0) {
        m.center_y = ysum / count;
        m.rise_velocity = vsum / count;
    }

    // 4-connected components of the phi<0 region (wrapping across periodic axes).
    std::vector<char> seen(st.phi.size(), 0);
    auto inside = [&](int i, int j) { return st.phi(i, j) < 0.0; };
    for (int j0 = 0; j0 < g.ny; ++j0)
        for (int i0 = 0; i0 < g.nx; ++i0) {
            const size_t k0 = i0 + static_cast<size_t>(g.nx) * j0;
            if (seen[k0] || !inside(i0, j0)) continue;
            ++m.components;
            std::queue<std::pair<int, int>> q;
            q.push({i0, j0});
            seen[k0] = 1;
            while (!q.empty()) {
                auto [i, j] = q.front();
                q.pop();
                const int nbrs[4][2] = {{i - 1, j}, {i + 1, j}, {i, j - 1}, {i, j + 1}};
                for (auto& nb : nbrs) {
                    int ii = nb[0], jj = nb[1];
                    if (g.periodic_x()) ii = g.wrap_x(ii);
                    if (g.periodic_y()) jj = g.wrap_y(jj);
                    if (ii < 0 || ii >= g.nx || jj < 0 || jj >= g.ny) continue;
                    const size_t kk = ii + static_cast<size_t>(g.nx) * jj;
                    if (!seen[kk] && inside(ii, jj)) {
                        seen[kk] = 1;
                        q.push({ii, jj});
                    }
                }
            }
        }
    return m;
}

double min_height_of_positive_phase(const SimState& st) {
    const Grid& g = st.grid;
    for (int j = 0; j < g.ny; ++j)
        for (int i = 0; i < g.nx; ++i)
            if (st.phi(i, j) > 0.0) return g.yc(j); // rows scan bottom-up
    return g.y0 + g.ly();
}

void cell_centered_velocity(const SimState& st, ScalarField& uc, ScalarField& vc) {
    const Grid& g = st.grid;
    uc = ScalarField(g);
    vc = ScalarField(g);
    for (int j = 0; j < g.ny; ++j)
        for (int i = 0; i < g.nx; ++i) {
            const int ir = g.periodic_x() ? (i + 1) % g.nx : i + 1;
            const int jt = g.periodic_y() ? (j + 1) % g.ny : j + 1;
            uc(i, j) = 0.5 * (st.vel.ux(i, j) + st.vel.ux(ir, j));
            vc(i, j) = 0.5 * (st.vel.vy(i, j) + st.vel.vy(i, jt));
        }
}

StateErrors state_errors(const SimState& a, const SimState& b) {
    const Grid& g = a.grid;
    StateErrors e;
    {
        ScalarField d = lincomb(1.0, a.phi, -1.0, b.phi);
        e.phi = l2_norm_cells(d, g);
    }
    {
        ScalarField ua(g), va(g), ub(g), vb(g);
        cell_centered_velocity(a, ua, va);
        cell_centered_velocity(b, ub, vb);
        double s = 0.0;
        for (size_t k = 0; k < ua.data.size(); ++k) {
            const double du = ua.data[k] - ub.data[k];
            const double dv = va.data[k] - vb.data[k];
            s += du * du + dv * dv;
        }
        e.vel = std::sqrt(s * g.cell_area());
    }
    {
        ScalarField d = lincomb(1.0, a.p, -1.0, b.p);
        double mean = 0.0;
        for (double v : d.data) mean += v;
        mean /= static_cast<double>(d.data.size());
        for (double& v : d.data) v -= mean;
        e.p = l2_norm_cells(d, g);
    }
    return e;
}

double convergence_slope(const std::vector<double>& dts, const std::vector<double>& errs) {
    const size_t n = dts.size();
    double sx = 0.0, sy = 0.0, sxx = 0.0, sxy = 0.0;
    for (size_t k = 0; k < n; ++k) {
        const double x = std::log(dts[k]), y = std::log(errs[k]);
        sx += x; sy += y; sxx += x * x; sxy += x * y;
    }
    return (n * sxy - sx * sy) / (n * sxx - sx * sx);
}

} // namespace chns
