#include "umwe/risk.hpp"

#include <cmath>

namespace umwe {

namespace {

double current_value(const Params& p, ParamSelector sel) {
    switch (sel) {
        case ParamSelector::Alpha: return p.alpha;
        case ParamSelector::Beta: return p.beta;
        case ParamSelector::Mu: return p.mu;
        case ParamSelector::Nu: return p.nu;
        case ParamSelector::Delta: return 1.0;  // no multiplier applied
    }
    return 1.0;
}

// Shared builder so the report carries exactly what the individual
// operations return for the same i_t.
RiskReport build_report(const Params& p, double i_t, Regime regime) {
    RiskReport report;
    report.a = regime.a;
    report.regime = regime;
    report.i_fix = regime.i_fix;
    for (ParamSelector sel :
         {ParamSelector::Alpha, ParamSelector::Beta, ParamSelector::Mu,
          ParamSelector::Nu, ParamSelector::Delta}) {
        RiskEntry& entry = report.by_selector[static_cast<int>(sel)];
        entry.stability_abs = stability_distance(p, sel, DistanceMode::Absolute);
        entry.stability_rel = stability_distance(p, sel, DistanceMode::Relative);
        entry.stability_attainable = critical_stability(p, sel).attainable;
        entry.direction_abs =
            direction_distance(p, i_t, sel, DistanceMode::Absolute);
        entry.direction_rel =
            direction_distance(p, i_t, sel, DistanceMode::Relative);
    }
    return report;
}

}  // namespace

double stability_distance(const Params& p, ParamSelector sel,
                          DistanceMode mode) {
    double cur = current_value(p, sel);
    double dist = critical_stability(p, sel).value - cur;
    return mode == DistanceMode::Absolute ? dist : dist / cur;
}

std::optional<double> direction_distance(const Params& p, double i_t,
                                         ParamSelector sel,
                                         DistanceMode mode) {
    double crit = 0.0;
    try {
        crit = critical_direction(p, i_t, sel).value;
    } catch (const ModelError& e) {
        if (e.code() == ErrorCode::SingularDenominator ||
            e.code() == ErrorCode::NegativeRadicand) {
            return std::nullopt;  // absence encodes "undefined here"
        }
        throw;
    }
    double cur = current_value(p, sel);
    double dist = crit - cur;
    return mode == DistanceMode::Absolute ? dist : dist / cur;
}

RiskReport risk_report(const Params& p, double i_t, const Guards& g) {
    if (!(i_t > 0.0) || !std::isfinite(i_t)) {
        throw ModelError(ErrorCode::Validation,
                         "current rate must be strictly positive and finite");
    }
    return build_report(p, i_t, classify(p, i_t, g));
}

RiskReport risk_report_log(const Params& p, double log_i_t, const Guards& g) {
    // The regime comes from the exact log-rate; the distances see the same
    // materialized rate a trajectory record stores.
    return build_report(p, std::exp(log_i_t), classify_log(p, log_i_t, g));
}

}  // namespace umwe
