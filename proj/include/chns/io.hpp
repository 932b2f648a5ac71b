#pragma once

// Output formats.
//
// Time series: comma-separated text, one header line then one row per record,
// doubles printed with 17 significant digits ("%.17g").  Columns:
//   step,time,original_E,modified_E,volume,r,Q,R,T,K,y_c,V_c,
//   ch_iters,mom_iters,poisson_iters,wall_time
// y_c and V_c are "nan" when no phi<0 region exists.  Every column except
// wall_time is deterministic for a given configuration.
//
// Snapshot: an ASCII header followed by raw little-endian float64 arrays.
// The header is self-describing (grid size, origin, spacing, boundary kinds, time,
// auxiliary scalars, then one "field <name> <count>" line per array in file
// order); the byte "data\n" line separates header from payload.  Reading a
// snapshot back reproduces every array bit-exactly.

#include <string>
#include <vector>

#include "chns/state.hpp"

namespace chns {

struct TimeSeriesRecord {
    long step = 0;
    double time = 0.0;
    double original_E = 0.0;
    double modified_E = 0.0;
    double volume = 0.0;
    double r = 1.0, Q = 1.0, R = 1.0, T = 1.0, K = 1.0;
    double y_c = 0.0, V_c = 0.0;
    int ch_iters = 0, mom_iters = 0, poisson_iters = 0;
    double wall_time = 0.0;
};

// Writes header + rows; empty record list gives a header-only file.
// Throws std::runtime_error naming the path on IO failure.
void write_timeseries(const std::string& path,
                      const std::vector<TimeSeriesRecord>& records);

// Parses a file produced by write_timeseries.
std::vector<TimeSeriesRecord> read_timeseries(const std::string& path);

void write_snapshot(const std::string& path, const SimState& st);

SimState read_snapshot(const std::string& path);

} // namespace chns
