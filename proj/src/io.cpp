#include "chns/io.hpp"

#include <bit>
#include <cstdio>
#include <cstdlib>
#include <cstring>
#include <fstream>
#include <sstream>
#include <stdexcept>

namespace chns {

static_assert(std::endian::native == std::endian::little,
              "snapshot writer assumes a little-endian host");

namespace {

const char* kCsvHeader =
    "step,time,original_E,modified_E,volume,r,Q,R,T,K,y_c,V_c,"
    "ch_iters,mom_iters,poisson_iters,wall_time";

std::string fmt17(double v) {
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%.17g", v);
    return buf;
}

[[noreturn]] void io_fail(const std::string& what, const std::string& path) {
    throw std::runtime_error(what + " '" + path + "'");
}

const char* bc_name(AxisBc bc) {
    switch (bc) {
        case AxisBc::periodic: return "periodic";
        case AxisBc::wall_no_slip: return "no_slip";
        case AxisBc::wall_free_slip: return "free_slip";
    }
    return "?";
}

AxisBc bc_from_name(const std::string& s, const std::string& path) {
    if (s == "periodic") return AxisBc::periodic;
    if (s == "no_slip") return AxisBc::wall_no_slip;
    if (s == "free_slip") return AxisBc::wall_free_slip;
    io_fail("unknown boundary kind '" + s + "' in snapshot", path);
}

struct NamedArray {
    const char* name;
    std::vector<double>* data;
};

std::vector<NamedArray> snapshot_arrays(SimState& st) {
    return {
        {"phi", &st.phi.data},       {"mu", &st.mu.data},
        {"p", &st.p.data},           {"incr", &st.incr.data},
        {"incr_prev", &st.incr_prev.data},
        {"phi_prev", &st.phi_prev.data},
        {"mu_prev", &st.mu_prev.data},
        {"u", &st.vel.u},            {"v", &st.vel.v},
        {"u_prev", &st.vel_prev.u},  {"v_prev", &st.vel_prev.v},
    };
}

} // namespace

void write_timeseries(const std::string& path,
                      const std::vector<TimeSeriesRecord>& records) {
    std::ofstream out(path);
    if (!out) io_fail("cannot open time-series file for writing", path);
    out << kCsvHeader << "\n";
    for (const auto& r : records) {
        out << r.step << ',' << fmt17(r.time) << ',' << fmt17(r.original_E)
            << ',' << fmt17(r.modified_E) << ',' << fmt17(r.volume) << ','
            << fmt17(r.r) << ',' << fmt17(r.Q) << ',' << fmt17(r.R) << ','
            << fmt17(r.T) << ',' << fmt17(r.K) << ',' << fmt17(r.y_c) << ','
            << fmt17(r.V_c) << ',' << r.ch_iters << ',' << r.mom_iters << ','
            << r.poisson_iters << ',' << fmt17(r.wall_time) << "\n";
    }
    if (!out) io_fail("write failure on time-series file", path);
}

std::vector<TimeSeriesRecord> read_timeseries(const std::string& path) {
    std::ifstream in(path);
    if (!in) io_fail("cannot open time-series file", path);
    std::string line;
    if (!std::getline(in, line)) io_fail("empty time-series file", path);
    if (line != kCsvHeader) io_fail("unexpected time-series header in", path);
    std::vector<TimeSeriesRecord> recs;
    while (std::getline(in, line)) {
        if (line.empty()) continue;
        std::vector<std::string> cols;
        std::string cell;
        std::istringstream row(line);
        while (std::getline(row, cell, ',')) cols.push_back(cell);
        if (cols.size() != 16) io_fail("malformed time-series row in", path);
        TimeSeriesRecord r;
        r.step = std::strtol(cols[0].c_str(), nullptr, 10);
        r.time = std::strtod(cols[1].c_str(), nullptr);
        r.original_E = std::strtod(cols[2].c_str(), nullptr);
        r.modified_E = std::strtod(cols[3].c_str(), nullptr);
        r.volume = std::strtod(cols[4].c_str(), nullptr);
        r.r = std::strtod(cols[5].c_str(), nullptr);
        r.Q = std::strtod(cols[6].c_str(), nullptr);
        r.R = std::strtod(cols[7].c_str(), nullptr);
        r.T = std::strtod(cols[8].c_str(), nullptr);
        r.K = std::strtod(cols[9].c_str(), nullptr);
        r.y_c = std::strtod(cols[10].c_str(), nullptr);
        r.V_c = std::strtod(cols[11].c_str(), nullptr);
        r.ch_iters = static_cast<int>(std::strtol(cols[12].c_str(), nullptr, 10));
        r.mom_iters = static_cast<int>(std::strtol(cols[13].c_str(), nullptr, 10));
        r.poisson_iters = static_cast<int>(std::strtol(cols[14].c_str(), nullptr, 10));
        r.wall_time = std::strtod(cols[15].c_str(), nullptr);
        recs.push_back(r);
    }
    return recs;
}

void write_snapshot(const std::string& path, const SimState& st) {
    std::ofstream out(path, std::ios::binary);
    if (!out) io_fail("cannot open snapshot file for writing", path);
    const Grid& g = st.grid;
    out << "CHNS-SNAPSHOT 1\n";
    out << "grid " << g.nx << ' ' << g.ny << "\n";
    out << "origin " << fmt17(g.x0) << ' ' << fmt17(g.y0) << "\n";
    out << "spacing " << fmt17(g.hx) << ' ' << fmt17(g.hy) << "\n";
    out << "bc " << bc_name(g.bc_x) << ' ' << bc_name(g.bc_y) << "\n";
    out << "time " << fmt17(st.time) << "\n";
    out << "step " << st.step_index << "\n";
    const SavState& s = st.sav;
    out << "sav " << fmt17(s.r) << ' ' << fmt17(s.Q) << ' ' << fmt17(s.R)
        << ' ' << fmt17(s.T) << ' ' << fmt17(s.K) << ' ' << fmt17(s.r_prev)
        << ' ' << fmt17(s.Q_prev) << ' ' << fmt17(s.R_prev) << ' '
        << fmt17(s.T_prev) << ' ' << fmt17(s.K_prev) << "\n";
    auto arrays = snapshot_arrays(const_cast<SimState&>(st));
    for (const auto& a : arrays) {
        out << "field " << a.name << ' ' << a.data->size() << "\n";
    }
    out << "data\n";
    for (const auto& a : arrays) {
        out.write(reinterpret_cast<const char*>(a.data->data()),
                  static_cast<std::streamsize>(a.data->size() * sizeof(double)));
    }
    if (!out) io_fail("write failure on snapshot file", path);
}

SimState read_snapshot(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) io_fail("cannot open snapshot file", path);
    std::string tok;
    auto expect = [&](const char* want) {
        if (!(in >> tok) || tok != want) {
            io_fail(std::string("snapshot missing '") + want + "' in", path);
        }
    };
    expect("CHNS-SNAPSHOT");
    int version;
    in >> version;
    if (!in || version != 1) io_fail("unsupported snapshot version in", path);
    expect("grid");
    Grid g;
    in >> g.nx >> g.ny;
    expect("origin");
    in >> g.x0 >> g.y0;
    expect("spacing");
    in >> g.hx >> g.hy;
    expect("bc");
    std::string bx, by;
    in >> bx >> by;
    if (!in || g.nx <= 0 || g.ny <= 0 || !(g.hx > 0.0) || !(g.hy > 0.0)) {
        io_fail("truncated snapshot header in", path);
    }
    g.bc_x = bc_from_name(bx, path);
    g.bc_y = bc_from_name(by, path);
    SimState st(g);
    expect("time");
    in >> st.time;
    expect("step");
    in >> st.step_index;
    expect("sav");
    SavState& s = st.sav;
    in >> s.r >> s.Q >> s.R >> s.T >> s.K >> s.r_prev >> s.Q_prev >> s.R_prev >>
        s.T_prev >> s.K_prev;
    auto arrays = snapshot_arrays(st);
    for (const auto& a : arrays) {
        expect("field");
        std::string name;
        size_t count;
        in >> name >> count;
        if (name != a.name || count != a.data->size()) {
            io_fail("snapshot field mismatch ('" + name + "') in", path);
        }
    }
    expect("data");
    in.get(); // consume the newline before the payload
    for (const auto& a : arrays) {
        in.read(reinterpret_cast<char*>(a.data->data()),
                static_cast<std::streamsize>(a.data->size() * sizeof(double)));
    }
    if (!in) io_fail("truncated snapshot payload in", path);
    return st;
}

} // namespace chns
