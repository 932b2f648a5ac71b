// Command-line driver: run scenarios, temporal-convergence sweeps, and fast
// self-checks.
//
// Exit codes: 0 success, 1 numerical failure (solver breakdown, non-finite
// fields, failed self-check), 2 usage/configuration error.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"

#include "chns/config.hpp"
#include "chns/diagnostics.hpp"
#include "chns/io.hpp"
#include "chns/operators.hpp"
#include "chns/scenarios.hpp"
#include "chns/stepper.hpp"

namespace {

using namespace chns;

struct CliFlags {
    std::string config_path;
    std::string scenario;
    std::string grid;
    std::string out_dir;
    double dt = 0.0;
    int order = 0;
    double alpha = 0.0;
    double tend = 0.0;
    int cadence = 0;
    double tol_ch = 0.0, tol_mom = 0.0, tol_poisson = 0.0;
};

// Registers the flags shared by `run` and `converge` on a subcommand.
void add_common_flags(CLI::App* cmd, CliFlags& f) {
    cmd->add_option("config", f.config_path,
                    "Config file (key = value lines, '#' comments)")
        ->check(CLI::ExistingFile);
    cmd->add_option("--scenario", f.scenario,
                    "Scenario name: accuracy | bubble1 | bubble2 | rayleigh_taylor");
    cmd->add_option("--grid", f.grid, "Grid resolution, e.g. 128x128");
    cmd->add_option("--dt", f.dt, "Time step");
    cmd->add_option("--order", f.order, "Time scheme order (1 or 2)");
    cmd->add_option("--alpha", f.alpha, "Auxiliary-scalar relaxation rate");
    cmd->add_option("--tend", f.tend, "End time");
    cmd->add_option("--out", f.out_dir, "Output directory");
    cmd->add_option("--cadence", f.cadence, "Steps between time-series rows");
    cmd->add_option("--tol-ch", f.tol_ch, "Phase-field solve tolerance");
    cmd->add_option("--tol-mom", f.tol_mom, "Momentum solve tolerance");
    cmd->add_option("--tol-poisson", f.tol_poisson, "Pressure solve tolerance");
}

// Folds CLI flags into a RunConfig (flags win over file values).
int build_config(const CliFlags& f, const CLI::App* cmd, RunConfig& cfg,
                 std::string& err) {
    cfg = RunConfig{};
    if (!f.config_path.empty()) {
        std::ifstream in(f.config_path);
        if (!in) {
            err = "cannot open config file '" + f.config_path + "'";
            return 2;
        }
        std::stringstream ss;
        ss << in.rdbuf();
        try {
            cfg = parse_config(ss.str());
        } catch (const std::exception& e) {
            err = e.what();
            return 2;
        }
    }
    RunConfig flags;
    if (cmd->count("--scenario")) flags.scenario = f.scenario;
    if (cmd->count("--grid")) {
        const size_t x = f.grid.find('x');
        int gx = 0, gy = 0;
        if (x != std::string::npos) {
            gx = std::atoi(f.grid.substr(0, x).c_str());
            gy = std::atoi(f.grid.substr(x + 1).c_str());
        }
        if (gx < 4 || gy < 4) {
            err = "--grid expects NXxNY with NX, NY >= 4 (got '" + f.grid + "')";
            return 2;
        }
        flags.nx = gx;
        flags.ny = gy;
    }
    if (cmd->count("--dt")) {
        if (!(f.dt > 0.0)) {
            err = "--dt must be > 0";
            return 2;
        }
        flags.dt = f.dt;
    }
    if (cmd->count("--order")) {
        if (f.order != 1 && f.order != 2) {
            err = "--order must be 1 or 2";
            return 2;
        }
        flags.order = f.order;
    }
    if (cmd->count("--alpha")) {
        if (!(f.alpha > 0.0)) {
            err = "--alpha must be > 0";
            return 2;
        }
        flags.alpha = f.alpha;
    }
    if (cmd->count("--tend")) {
        if (!(f.tend > 0.0)) {
            err = "--tend must be > 0";
            return 2;
        }
        flags.t_end = f.tend;
    }
    if (cmd->count("--out")) flags.out_dir = f.out_dir;
    if (cmd->count("--cadence")) {
        if (f.cadence < 1) {
            err = "--cadence must be >= 1";
            return 2;
        }
        flags.cadence = f.cadence;
    }
    auto tolflag = [&](const char* name, double v,
                       std::optional<double>& slot) -> bool {
        if (!cmd->count(name)) return true;
        if (!(v > 0.0)) {
            err = std::string(name) + " must be > 0";
            return false;
        }
        slot = v;
        return true;
    };
    if (!tolflag("--tol-ch", f.tol_ch, flags.tol_ch)) return 2;
    if (!tolflag("--tol-mom", f.tol_mom, flags.tol_mom)) return 2;
    if (!tolflag("--tol-poisson", f.tol_poisson, flags.tol_poisson)) return 2;
    merge_overrides(cfg, flags);
    return 0;
}

std::string canonical_scenario(std::string name) {
    if (name == "accuracy_test") return "accuracy";
    return name;
}

int instantiate(const RunConfig& cfg, Scenario& scn, std::string& err) {
    const std::string name =
        canonical_scenario(cfg.scenario.value_or("accuracy"));
    try {
        scn = make_scenario(name, cfg.nx.value_or(0), cfg.ny.value_or(0));
    } catch (const std::invalid_argument&) {
        std::string names;
        for (const auto& n : scenario_names()) names += " " + n;
        err = "unknown scenario '" + name + "'; available:" + names;
        return 2;
    }
    apply_config(cfg, scn);
    return 0;
}

SchemeConfig scheme_for(const Scenario& scn, const RunConfig& cfg) {
    SchemeConfig sc = make_scheme(scn.default_order, scn.dt, scn.fluid);
    if (cfg.tol_ch) sc.tol_ch = *cfg.tol_ch;
    if (cfg.tol_mom) sc.tol_mom = *cfg.tol_mom;
    if (cfg.tol_poisson) sc.tol_poisson = *cfg.tol_poisson;
    if (cfg.max_iter) sc.max_iter = *cfg.max_iter;
    return sc;
}

long steps_for(double tend, double dt, std::string& err) {
    const long n = std::lround(tend / dt);
    if (n < 1 || std::abs(n * dt - tend) > 1e-6 * dt) {
        err = "end time must be a whole number of steps (tend = " +
              std::to_string(tend) + ", dt = " + std::to_string(dt) + ")";
        return -1;
    }
    return n;
}

TimeSeriesRecord make_record(const SimState& st, const FluidParams& fp,
                             const SchemeConfig& sc, const StepReport* rep,
                             double wall) {
    TimeSeriesRecord rec;
    rec.step = st.step_index;
    rec.time = st.time;
    rec.original_E = original_energy(st, fp);
    SchemeConfig form = sc;
    if (sc.order == 2 && st.step_index == 0) form.order = 1;
    rec.modified_E = modified_energy(st, fp, form).total;
    rec.volume = phase_volume(st);
    rec.r = st.sav.r;
    rec.Q = st.sav.Q;
    rec.R = st.sav.R;
    rec.T = st.sav.T;
    rec.K = st.sav.K;
    const BubbleMetrics bm = bubble_metrics(st);
    if (bm.volume > 0.0) {
        rec.y_c = bm.center_y;
        rec.V_c = bm.rise_velocity;
    } else {
        rec.y_c = std::nan("");
        rec.V_c = std::nan("");
    }
    if (rep) {
        rec.ch_iters = rep->ch_solve.iterations;
        rec.mom_iters = rep->momentum_solve.iterations;
        rec.poisson_iters = rep->poisson_solve.iterations;
    }
    rec.wall_time = wall;
    return rec;
}

int cmd_run(const CliFlags& flags, const CLI::App* cmd) {
    RunConfig cfg;
    std::string err;
    if (int rc = build_config(flags, cmd, cfg, err); rc != 0) {
        std::fprintf(stderr, "error: %s\n", err.c_str());
        return rc;
    }
    Scenario scn(make_grid(4, 4, 0, 0, 1, 1, AxisBc::periodic, AxisBc::periodic));
    if (int rc = instantiate(cfg, scn, err); rc != 0) {
        std::fprintf(stderr, "error: %s\n", err.c_str());
        return rc;
    }
    SchemeConfig sc = scheme_for(scn, cfg);
    const long nsteps = steps_for(scn.t_end, sc.dt, err);
    if (nsteps < 0) {
        std::fprintf(stderr, "error: %s\n", err.c_str());
        return 2;
    }

    SpectralSolver spec(scn.grid);
    SimState st = scn.state;
    std::vector<TimeSeriesRecord> records;
    records.push_back(make_record(st, scn.fluid, sc, nullptr, 0.0));
    const auto t0 = std::chrono::steady_clock::now();
    int status = 0;
    for (long step = 1; step <= nsteps; ++step) {
        const StepReport rep = advance(st, scn.fluid, sc, &spec);
        if (!rep.ok) {
            std::fprintf(stderr, "error: step %ld (t = %.6g): %s\n", step,
                         st.time, rep.error.c_str());
            status = 1;
        }
        const double wall =
            std::chrono::duration<double>(std::chrono::steady_clock::now() - t0)
                .count();
        if (status != 0 || step % scn.cadence == 0 || step == nsteps) {
            records.push_back(make_record(st, scn.fluid, sc, &rep, wall));
        }
        if (status != 0) break;
    }

    if (cfg.out_dir) {
        std::error_code ec;
        std::filesystem::create_directories(*cfg.out_dir, ec);
        const std::string ts = *cfg.out_dir + "/timeseries.csv";
        const std::string snap = *cfg.out_dir + "/final.snap";
        try {
            write_timeseries(ts, records);
            write_snapshot(snap, st);
        } catch (const std::exception& e) {
            std::fprintf(stderr, "error: %s\n", e.what());
            return status == 0 ? 1 : status;
        }
    }
    const auto& last = records.back();
    std::printf("%s: %ld steps to t = %.17g, E = %.17g, volume = %.17g%s\n",
                scn.name.c_str(), static_cast<long>(last.step), last.time,
                last.original_E, last.volume,
                status == 0 ? "" : " (ABORTED)");
    return status;
}

int cmd_converge(const CliFlags& flags, const CLI::App* cmd,
                 const std::string& dts_spec) {
    RunConfig cfg;
    std::string err;
    if (int rc = build_config(flags, cmd, cfg, err); rc != 0) {
        std::fprintf(stderr, "error: %s\n", err.c_str());
        return rc;
    }
    Scenario scn(make_grid(4, 4, 0, 0, 1, 1, AxisBc::periodic, AxisBc::periodic));
    if (int rc = instantiate(cfg, scn, err); rc != 0) {
        std::fprintf(stderr, "error: %s\n", err.c_str());
        return rc;
    }

    std::vector<double> dts;
    {
        std::istringstream in(dts_spec);
        std::string tok;
        while (std::getline(in, tok, ',')) {
            char* end = nullptr;
            const double v = std::strtod(tok.c_str(), &end);
            if (end == tok.c_str() || *end != '\0' || !(v > 0.0)) {
                std::fprintf(stderr, "error: bad --dts entry '%s'\n", tok.c_str());
                return 2;
            }
            dts.push_back(v);
        }
    }
    if (dts.size() < 2) {
        std::fprintf(stderr, "error: --dts needs at least two values\n");
        return 2;
    }
    double dt_min = dts[0];
    for (double d : dts) dt_min = std::min(dt_min, d);
    const double dt_ref = dt_min / 20.0;

    auto run_to_end = [&](double dt, int order, SimState& out) -> int {
        RunConfig local = cfg;
        local.dt = dt;
        local.order = order;
        Scenario s = scn; // fresh copy of the initial state
        apply_config(local, s);
        SchemeConfig sc = scheme_for(s, local);
        const long nsteps = steps_for(s.t_end, dt, err);
        if (nsteps < 0) {
            std::fprintf(stderr, "error: %s\n", err.c_str());
            return 2;
        }
        SpectralSolver spec(s.grid);
        out = s.state;
        for (long k = 0; k < nsteps; ++k) {
            const StepReport rep = advance(out, s.fluid, sc, &spec);
            if (!rep.ok) {
                std::fprintf(stderr, "error: dt = %g, step %ld: %s\n", dt, k + 1,
                             rep.error.c_str());
                return 1;
            }
        }
        return 0;
    };

    const int order = scn.default_order;
    SimState ref = scn.state;
    if (int rc = run_to_end(dt_ref, 2, ref); rc != 0) return rc;

    std::vector<double> ephi, evel, ep;
    std::printf("# scenario %s, order %d, reference dt = %.6g\n",
                scn.name.c_str(), order, dt_ref);
    std::printf("%-12s %-14s %-14s %-14s\n", "dt", "err_phi", "err_vel", "err_p");
    for (double dt : dts) {
        SimState fin = scn.state;
        if (int rc = run_to_end(dt, order, fin); rc != 0) return rc;
        const StateErrors e = state_errors(fin, ref);
        ephi.push_back(e.phi);
        evel.push_back(e.vel);
        ep.push_back(e.p);
        std::printf("%-12.6g %-14.6e %-14.6e %-14.6e\n", dt, e.phi, e.vel, e.p);
    }
    std::printf("slope_phi %.4f\n", convergence_slope(dts, ephi));
    std::printf("slope_vel %.4f\n", convergence_slope(dts, evel));
    std::printf("slope_p %.4f\n", convergence_slope(dts, ep));

    if (cfg.out_dir) {
        std::error_code ec;
        std::filesystem::create_directories(*cfg.out_dir, ec);
        const std::string path = *cfg.out_dir + "/converge.csv";
        std::ofstream out(path);
        if (!out) {
            std::fprintf(stderr, "error: cannot open '%s'\n", path.c_str());
            return 1;
        }
        out << "dt,err_phi,err_vel,err_p\n";
        char buf[256];
        for (size_t i = 0; i < dts.size(); ++i) {
            std::snprintf(buf, sizeof(buf), "%.17g,%.17g,%.17g,%.17g\n", dts[i],
                          ephi[i], evel[i], ep[i]);
            out << buf;
        }
    }
    return 0;
}

// --- validate: fast self-checks on tiny grids ------------------------------

struct Validator {
    int failures = 0;
    void check(const std::string& name, bool ok, double value, double bound) {
        if (ok) {
            std::printf("ok   %-42s (%.3e <= %.3e)\n", name.c_str(), value, bound);
        } else {
            std::printf("FAIL %-42s (%.3e > %.3e)\n", name.c_str(), value, bound);
            ++failures;
        }
    }
    void residual(const std::string& name, double value, double bound) {
        check(name, std::abs(value) <= bound, std::abs(value), bound);
    }
};

void fill_random(std::mt19937& rng, std::vector<double>& v) {
    std::uniform_real_distribution<double> dist(-1.0, 1.0);
    for (auto& x : v) x = dist(rng);
}

void validate_operators(Validator& val, const Grid& g, const std::string& tag) {
    std::mt19937 rng(1234);
    ScalarField f(g), q(g);
    FaceVectorField F(g), u(g), w(g);
    fill_random(rng, f.data);
    fill_random(rng, q.data);
    fill_random(rng, F.u);
    fill_random(rng, F.v);
    fill_random(rng, u.u);
    fill_random(rng, u.v);
    fill_random(rng, w.u);
    fill_random(rng, w.v);
    enforce_wall_normal_zero(F, g);
    enforce_wall_normal_zero(u, g);
    enforce_wall_normal_zero(w, g);

    const FaceVectorField gf = gradient(f, g);
    const ScalarField dF = divergence(F, g);
    val.residual(tag + " adjointness <Gf,F>+<f,DivF>",
                 dot_faces(gf, F, g) + dot_cells(f, dF, g), 1e-12);

    const ScalarField lap = laplacian(f, g);
    const ScalarField dgf = divergence(gf, g);
    double diff = 0.0;
    for (size_t k = 0; k < lap.size(); ++k) {
        diff = std::max(diff, std::abs(lap.data[k] - dgf.data[k]));
    }
    val.residual(tag + " laplacian = div(grad)", diff, 1e-12);

    ScalarField rho(g);
    for (size_t k = 0; k < rho.size(); ++k) rho.data[k] = 2.0 + 0.5 * f.data[k];
    const FaceVectorField conv = convection_momentum(rho, u, u, g);
    val.residual(tag + " convection skew <C(u)u,u>",
                 dot_faces(conv, u, g), 1e-12);

    ScalarField nu(g);
    for (size_t k = 0; k < nu.size(); ++k) nu.data[k] = 1.0 + 0.25 * q.data[k];
    const FaceVectorField sd = strain_divergence(nu, u, g);
    val.residual(tag + " strain adjoint",
                 -dot_faces(sd, u, g) - strain_dissipation(nu, u, g), 1e-11);
}

int cmd_validate(const std::string& grid_spec) {
    int nx = 8, ny = 8;
    if (!grid_spec.empty()) {
        const size_t x = grid_spec.find('x');
        if (x != std::string::npos) {
            nx = std::atoi(grid_spec.substr(0, x).c_str());
            ny = std::atoi(grid_spec.substr(x + 1).c_str());
        }
        if (nx < 4 || ny < 4) {
            std::fprintf(stderr, "error: --grid expects NXxNY with NX, NY >= 4\n");
            return 2;
        }
    }
    Validator val;

    validate_operators(val, make_grid(nx, ny, 0, 0, 1, 1, AxisBc::periodic,
                                      AxisBc::periodic),
                       "periodic:");
    validate_operators(val, make_grid(nx, ny, 0, 0, 1, 1, AxisBc::wall_free_slip,
                                      AxisBc::wall_no_slip),
                       "walls:");

    // Equilibrium rest state is a fixed point of the full step.
    for (int order = 1; order <= 2; ++order) {
        Grid g = make_grid(nx, ny, 0, 0, 1, 1, AxisBc::periodic, AxisBc::periodic);
        FluidParams fp;
        fp.rho1 = 10.0;
        fp.rho2 = 1.0;
        fp.nu1 = fp.nu2 = 1.0;
        fp.lambda = 0.01;
        fp.epsilon = 0.1;
        SimState st(g);
        st.phi.fill(1.0);
        st.phi_prev.fill(1.0);
        SchemeConfig sc = make_scheme(order, 1e-3, fp);
        SpectralSolver spec(g);
        double drift = 0.0;
        for (int k = 0; k < 3; ++k) {
            const StepReport rep = advance(st, fp, sc, &spec);
            if (!rep.ok) {
                std::printf("FAIL equilibrium order %d: %s\n", order,
                            rep.error.c_str());
                ++val.failures;
                break;
            }
        }
        for (size_t k = 0; k < st.phi.size(); ++k) {
            drift = std::max(drift, std::abs(st.phi.data[k] - 1.0));
        }
        drift = std::max(drift, max_abs(st.vel));
        drift = std::max(drift, st.sav.max_abs_deviation());
        val.residual("equilibrium fixed point order " + std::to_string(order),
                     drift, 1e-9);
    }

    // Config round-trip.
    {
        const Scenario scn = make_accuracy_scenario(nx, ny);
        const RunConfig a = config_from_scenario(scn);
        const RunConfig b = parse_config(emit_config(a));
        val.check("config round-trip", a == b, a == b ? 0.0 : 1.0, 0.0);
    }

    if (val.failures == 0) {
        std::printf("all checks passed\n");
        return 0;
    }
    std::printf("%d check(s) failed\n", val.failures);
    return 1;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{
        "Two-phase incompressible flow solver (diffuse interface, "
        "energy-stable time stepping)"};
    app.require_subcommand(1);

    CliFlags run_flags;
    CLI::App* run = app.add_subcommand("run", "Run a scenario");
    add_common_flags(run, run_flags);

    CliFlags conv_flags;
    std::string dts_spec = "5e-3,2.5e-3,1.25e-3,6.25e-4,3.125e-4";
    CLI::App* conv = app.add_subcommand(
        "converge", "Temporal convergence sweep against a fine-step reference");
    add_common_flags(conv, conv_flags);
    conv->add_option("--dts", dts_spec, "Comma-separated time-step sweep");

    std::string validate_grid;
    CLI::App* vali =
        app.add_subcommand("validate", "Fast self-checks on a tiny grid");
    vali->add_option("--grid", validate_grid, "Grid resolution, e.g. 8x8");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int rc = app.exit(e);
        return rc == 0 ? 0 : 2;
    }

    try {
        if (run->parsed()) return cmd_run(run_flags, run);
        if (conv->parsed()) return cmd_converge(conv_flags, conv, dts_spec);
        if (vali->parsed()) return cmd_validate(validate_grid);
    } catch (const std::exception& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return 1;
    }
    return 2;
}
