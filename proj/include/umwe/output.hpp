#pragma once

#include <iosfwd>
#include <string>

#include "umwe/config.hpp"

namespace umwe {

// Fixed CSV layout; one row per sampled step, numbers rendered with the
// configured number of significant digits, absent values as empty fields.
extern const char* const kTrajectoryCsvHeader;

void write_csv(const Trajectory& tr, const RunConfig& cfg, std::ostream& out);
void emit_csv(const Trajectory& tr, const RunConfig& cfg,
              const std::string& path);

// Bifurcation table across one parameter grid:
// value,a,i_fix,regime,delta_Delta_crit
void write_sweep(const SweepSpec& spec, const RunConfig& cfg,
                 std::ostream& out);
void run_sweep(const SweepSpec& spec, const RunConfig& cfg,
               const std::string& path);

// Static SVG chart: rate panel (log scale, fixed-point reference line),
// alpha/beta traces on twin axes, and the distance traces.
void write_chart(const Trajectory& tr, std::ostream& out);
void emit_chart(const Trajectory& tr, const std::string& path);

// %.*g formatting with the "C" locale conventions (dot decimal separator).
std::string format_double(double v, int precision);

// Checks that `path` can be created or appended to, without truncating an
// existing file. Throws Io on failure.
void check_writable(const std::string& path);

}  // namespace umwe
