#include "chns/config.hpp"

#include <cctype>
#include <cstdio>
#include <cstdlib>
#include <sstream>
#include <stdexcept>
#include <vector>

#include "chns/scenarios.hpp"

namespace chns {

namespace {

std::string trim(const std::string& s) {
    size_t a = 0, b = s.size();
    while (a < b && std::isspace(static_cast<unsigned char>(s[a]))) ++a;
    while (b > a && std::isspace(static_cast<unsigned char>(s[b - 1]))) --b;
    return s.substr(a, b - a);
}

std::string fmt17(double v) {
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%.17g", v);
    return buf;
}

struct Parser {
    std::vector<std::string> errors;

    bool to_double(const std::string& key, const std::string& v, double& out) {
        const char* c = v.c_str();
        char* end = nullptr;
        out = std::strtod(c, &end);
        if (end == c || *end != '\0') {
            errors.push_back(key + ": cannot parse '" + v + "' as a number");
            return false;
        }
        return true;
    }

    bool to_int(const std::string& key, const std::string& v, long& out) {
        const char* c = v.c_str();
        char* end = nullptr;
        out = std::strtol(c, &end, 10);
        if (end == c || *end != '\0') {
            errors.push_back(key + ": cannot parse '" + v + "' as an integer");
            return false;
        }
        return true;
    }

    void set_positive(const std::string& key, const std::string& v,
                      std::optional<double>& slot) {
        double d;
        if (!to_double(key, v, d)) return;
        if (!(d > 0.0)) {
            errors.push_back(key + ": must be > 0 (got " + v + ")");
            return;
        }
        slot = d;
    }

    void set_nonnegative(const std::string& key, const std::string& v,
                         std::optional<double>& slot) {
        double d;
        if (!to_double(key, v, d)) return;
        if (!(d >= 0.0)) {
            errors.push_back(key + ": must be >= 0 (got " + v + ")");
            return;
        }
        slot = d;
    }

    void set_any(const std::string& key, const std::string& v,
                 std::optional<double>& slot) {
        double d;
        if (to_double(key, v, d)) slot = d;
    }

    void set_int_min(const std::string& key, const std::string& v, long lo,
                     std::optional<int>& slot) {
        long n;
        if (!to_int(key, v, n)) return;
        if (n < lo) {
            errors.push_back(key + ": must be >= " + std::to_string(lo) +
                             " (got " + v + ")");
            return;
        }
        slot = static_cast<int>(n);
    }
};

} // namespace

RunConfig parse_config(const std::string& text) {
    RunConfig cfg;
    Parser p;
    std::istringstream in(text);
    std::string line;
    int lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        const size_t hash = line.find('#');
        if (hash != std::string::npos) line.erase(hash);
        line = trim(line);
        if (line.empty()) continue;
        const size_t eq = line.find('=');
        if (eq == std::string::npos) {
            p.errors.push_back("line " + std::to_string(lineno) +
                               ": expected 'key = value', got '" + line + "'");
            continue;
        }
        const std::string key = trim(line.substr(0, eq));
        const std::string val = trim(line.substr(eq + 1));
        if (key.empty() || val.empty()) {
            p.errors.push_back("line " + std::to_string(lineno) +
                               ": empty key or value");
            continue;
        }

        if (key == "scenario") {
            cfg.scenario = val;
        } else if (key == "nx") {
            p.set_int_min(key, val, 4, cfg.nx);
        } else if (key == "ny") {
            p.set_int_min(key, val, 4, cfg.ny);
        } else if (key == "order") {
            long n;
            if (p.to_int(key, val, n)) {
                if (n == 1 || n == 2) cfg.order = static_cast<int>(n);
                else p.errors.push_back("order: must be 1 or 2 (got " + val + ")");
            }
        } else if (key == "dt") {
            p.set_positive(key, val, cfg.dt);
        } else if (key == "tend") {
            p.set_positive(key, val, cfg.t_end);
        } else if (key == "alpha") {
            p.set_positive(key, val, cfg.alpha);
        } else if (key == "s") {
            p.set_nonnegative(key, val, cfg.s);
        } else if (key == "cadence") {
            p.set_int_min(key, val, 1, cfg.cadence);
        } else if (key == "out") {
            cfg.out_dir = val;
        } else if (key == "tol_ch") {
            p.set_positive(key, val, cfg.tol_ch);
        } else if (key == "tol_mom") {
            p.set_positive(key, val, cfg.tol_mom);
        } else if (key == "tol_poisson") {
            p.set_positive(key, val, cfg.tol_poisson);
        } else if (key == "max_iter") {
            p.set_int_min(key, val, 1, cfg.max_iter);
        } else if (key == "seed") {
            long n;
            if (p.to_int(key, val, n)) {
                if (n >= 0) cfg.seed = n;
                else p.errors.push_back("seed: must be >= 0 (got " + val + ")");
            }
        } else if (key == "rho1") {
            p.set_positive(key, val, cfg.rho1);
        } else if (key == "rho2") {
            p.set_positive(key, val, cfg.rho2);
        } else if (key == "nu1") {
            p.set_positive(key, val, cfg.nu1);
        } else if (key == "nu2") {
            p.set_positive(key, val, cfg.nu2);
        } else if (key == "lambda") {
            p.set_positive(key, val, cfg.lambda);
        } else if (key == "epsilon") {
            p.set_positive(key, val, cfg.epsilon);
        } else if (key == "mobility") {
            if (val == "constant" || val == "degenerate") cfg.mobility = val;
            else p.errors.push_back("mobility: must be 'constant' or 'degenerate' (got '" + val + "')");
        } else if (key == "mobility_value") {
            p.set_positive(key, val, cfg.mobility_value);
        } else if (key == "grav_x") {
            p.set_any(key, val, cfg.grav_x);
        } else if (key == "grav_y") {
            p.set_any(key, val, cfg.grav_y);
        } else {
            p.errors.push_back("unknown key '" + key + "'");
        }
    }
    if (!p.errors.empty()) {
        std::string msg = "config errors:";
        for (const auto& e : p.errors) msg += "\n  " + e;
        throw std::runtime_error(msg);
    }
    return cfg;
}

std::string emit_config(const RunConfig& cfg) {
    std::ostringstream out;
    auto put_s = [&](const char* k, const std::optional<std::string>& v) {
        if (v) out << k << " = " << *v << "\n";
    };
    auto put_i = [&](const char* k, const std::optional<int>& v) {
        if (v) out << k << " = " << *v << "\n";
    };
    auto put_l = [&](const char* k, const std::optional<long>& v) {
        if (v) out << k << " = " << *v << "\n";
    };
    auto put_d = [&](const char* k, const std::optional<double>& v) {
        if (v) out << k << " = " << fmt17(*v) << "\n";
    };
    put_s("scenario", cfg.scenario);
    put_i("nx", cfg.nx);
    put_i("ny", cfg.ny);
    put_i("order", cfg.order);
    put_d("dt", cfg.dt);
    put_d("tend", cfg.t_end);
    put_d("alpha", cfg.alpha);
    put_d("s", cfg.s);
    put_i("cadence", cfg.cadence);
    put_s("out", cfg.out_dir);
    put_d("tol_ch", cfg.tol_ch);
    put_d("tol_mom", cfg.tol_mom);
    put_d("tol_poisson", cfg.tol_poisson);
    put_i("max_iter", cfg.max_iter);
    put_l("seed", cfg.seed);
    put_d("rho1", cfg.rho1);
    put_d("rho2", cfg.rho2);
    put_d("nu1", cfg.nu1);
    put_d("nu2", cfg.nu2);
    put_d("lambda", cfg.lambda);
    put_d("epsilon", cfg.epsilon);
    put_s("mobility", cfg.mobility);
    put_d("mobility_value", cfg.mobility_value);
    put_d("grav_x", cfg.grav_x);
    put_d("grav_y", cfg.grav_y);
    return out.str();
}

void merge_overrides(RunConfig& base, const RunConfig& over) {
    auto take = [](auto& dst, const auto& src) {
        if (src) dst = src;
    };
    take(base.scenario, over.scenario);
    take(base.nx, over.nx);
    take(base.ny, over.ny);
    take(base.order, over.order);
    take(base.dt, over.dt);
    take(base.t_end, over.t_end);
    take(base.alpha, over.alpha);
    take(base.s, over.s);
    take(base.cadence, over.cadence);
    take(base.out_dir, over.out_dir);
    take(base.tol_ch, over.tol_ch);
    take(base.tol_mom, over.tol_mom);
    take(base.tol_poisson, over.tol_poisson);
    take(base.max_iter, over.max_iter);
    take(base.seed, over.seed);
    take(base.rho1, over.rho1);
    take(base.rho2, over.rho2);
    take(base.nu1, over.nu1);
    take(base.nu2, over.nu2);
    take(base.lambda, over.lambda);
    take(base.epsilon, over.epsilon);
    take(base.mobility, over.mobility);
    take(base.mobility_value, over.mobility_value);
    take(base.grav_x, over.grav_x);
    take(base.grav_y, over.grav_y);
}

void apply_config(const RunConfig& cfg, Scenario& scn) {
    if (cfg.order) scn.default_order = *cfg.order;
    if (cfg.dt) scn.dt = *cfg.dt;
    if (cfg.t_end) scn.t_end = *cfg.t_end;
    if (cfg.cadence) scn.cadence = *cfg.cadence;
    FluidParams& fp = scn.fluid;
    if (cfg.alpha) fp.alpha = *cfg.alpha;
    if (cfg.s) fp.s = *cfg.s;
    if (cfg.rho1) fp.rho1 = *cfg.rho1;
    if (cfg.rho2) fp.rho2 = *cfg.rho2;
    if (cfg.nu1) fp.nu1 = *cfg.nu1;
    if (cfg.nu2) fp.nu2 = *cfg.nu2;
    if (cfg.lambda) fp.lambda = *cfg.lambda;
    if (cfg.epsilon) fp.epsilon = *cfg.epsilon;
    if (cfg.mobility) {
        fp.mobility_law = (*cfg.mobility == "degenerate") ? MobilityLaw::degenerate
                                                          : MobilityLaw::constant;
    }
    if (cfg.mobility_value) fp.mobility_value = *cfg.mobility_value;
    if (cfg.grav_x) fp.grav_x = *cfg.grav_x;
    if (cfg.grav_y) fp.grav_y = *cfg.grav_y;
}

RunConfig config_from_scenario(const Scenario& scn) {
    RunConfig cfg;
    cfg.scenario = scn.name;
    cfg.nx = scn.grid.nx;
    cfg.ny = scn.grid.ny;
    cfg.order = scn.default_order;
    cfg.dt = scn.dt;
    cfg.t_end = scn.t_end;
    cfg.cadence = scn.cadence;
    const FluidParams& fp = scn.fluid;
    cfg.alpha = fp.alpha;
    cfg.s = fp.s;
    cfg.rho1 = fp.rho1;
    cfg.rho2 = fp.rho2;
    cfg.nu1 = fp.nu1;
    cfg.nu2 = fp.nu2;
    cfg.lambda = fp.lambda;
    cfg.epsilon = fp.epsilon;
    cfg.mobility = (fp.mobility_law == MobilityLaw::degenerate) ? "degenerate"
                                                                : "constant";
    cfg.mobility_value = fp.mobility_value;
    if (fp.grav_x != 0.0) cfg.grav_x = fp.grav_x;
    if (fp.grav_y != 0.0) cfg.grav_y = fp.grav_y;
    return cfg;
}

} // namespace chns
