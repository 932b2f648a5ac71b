#include "chns/pressure_step.hpp"

namespace chns {

PressureStepResult pressure_step(const SimState& st, const FaceVectorField& vel_new,
                                 const ScalarField& nu_new, const FluidParams& fp,
                                 const SchemeConfig& sc, SpectralSolver* spec) {
    const Grid& g = st.grid;
    const bool o2 = sc.order == 2;
    const double TA = o2 ? 2.0 * st.sav.T - st.sav.T_prev : st.sav.T;

    PressureStepResult out;
    const ScalarField divu = divergence(vel_new, g);

    // Poisson problem for the increment: Lap incr = T^A * c * div(u_new),
    // c = chi/(2 dt) (order 1) or 3 chi/(2 dt) (order 2).
    const double c = o2 ? 1.5 * sc.chi / sc.dt : 0.5 * sc.chi / sc.dt;
    ScalarField rhs = divu;
    scale(rhs, TA * c);
    out.incr_new = ScalarField(g, CellQuantity::pressure_increment);
    out.solve = solve_poisson(g, rhs, out.incr_new, spec, sc.tol_poisson, sc.max_iter);

    // Assemble the new pressure.
    out.p_new = st.p;
    for (size_t k = 0; k < out.p_new.data.size(); ++k) {
        out.p_new.data[k] += out.incr_new.data[k];
        if (o2) out.p_new.data[k] -= TA * nu_new.data[k] * divu.data[k];
    }

    // T update.
    const double quad_p = dot_cells(out.p_new, divu, g);
    if (o2) {
        // Rotational-correction compensation: beta <grad(nu div u), grad p_new>.
        ScalarField nudiv = divu;
        for (size_t k = 0; k < nudiv.data.size(); ++k) nudiv.data[k] *= nu_new.data[k];
        const double quad_rot =
            dot_faces(gradient(nudiv, g), gradient(out.p_new, g), g);
        out.T_new = (4.0 * st.sav.T - st.sav.T_prev
                     + 2.0 * sc.dt * fp.alpha * TA * (quad_p + sc.beta * quad_rot)) / 3.0;
    } else {
        out.T_new = st.sav.T + sc.dt * fp.alpha * st.sav.T * quad_p;
    }
    return out;
}

} // namespace chns
