#pragma once

#include <array>
#include <optional>

#include "umwe/regime.hpp"

namespace umwe {

enum class DistanceMode { Absolute, Relative };

// Distance from the current parameter value to its critical stability value:
// Absolute = lambda_crit - lambda, Relative = Absolute / lambda. For Delta
// the current multiplier is 1, so absolute and relative coincide
// (1/sqrt(a) - 1). Negative distances are meaningful: the system cannot be
// stabilized by moving that parameter alone.
double stability_distance(const Params& p, ParamSelector sel,
                          DistanceMode mode);

// Distance to the critical direction value at the current rate. Absent
// (nullopt) exactly when the critical direction value is undefined there
// (singular denominator or non-positive radicand).
std::optional<double> direction_distance(const Params& p, double i_t,
                                         ParamSelector sel, DistanceMode mode);

struct RiskEntry {
    double stability_abs = 0.0;
    double stability_rel = 0.0;
    bool stability_attainable = false;
    std::optional<double> direction_abs;
    std::optional<double> direction_rel;
};

// Every risk measure at one state, using exactly the same code paths as the
// individual operations.
struct RiskReport {
    double a = 0.0;
    std::optional<double> i_fix;
    Regime regime;
    std::array<RiskEntry, 5> by_selector;  // indexed by ParamSelector

    const RiskEntry& entry(ParamSelector sel) const {
        return by_selector[static_cast<int>(sel)];
    }
};

RiskReport risk_report(const Params& p, double i_t, const Guards& g = {});
RiskReport risk_report_log(const Params& p, double log_i_t,
                           const Guards& g = {});

}  // namespace umwe
