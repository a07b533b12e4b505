#pragma once

#include <optional>
#include <string>

#include "umwe/errors.hpp"
#include "umwe/model.hpp"

namespace umwe {

// Qualitative behavior of the system for a given parameter set and rate.
enum class RegimeKind {
    Stable,                  // a < 1: attractive fixed point
    AtFixedPoint,            // rate already on the fixed point
    Bubble,                  // a > 1, i below i_fix: rate collapses to zero
    Crash,                   // a > 1, i above i_fix: rate diverges upward
    BifurcationConstant,     // a = 1, c = 1: rate frozen at its initial value
    BifurcationToZero,       // a = 1, c < 1
    BifurcationToInfinity,   // a = 1, c > 1
};

const char* to_string(RegimeKind kind);
std::optional<RegimeKind> regime_kind_from_string(const std::string& name);

struct Regime {
    RegimeKind kind = RegimeKind::Stable;
    double a = 0.0;
    // Absent in the bifurcation kinds. i_fix is additionally absent when the
    // fixed point exists but lies outside the representable double range;
    // log_i_fix is always present alongside it.
    std::optional<double> i_fix;
    std::optional<double> log_i_fix;
};

// Classifies by comparing ln i0 with ln i_fix directly; algebraically this is
// the sign of the position inequality but it stays well-behaved as a -> 1
// where the inequality's 1/(1-a) factor blows up.
Regime classify(const Params& p, double i0, const Guards& g = {});
Regime classify_log(const Params& p, double log_i0, const Guards& g = {});

// The exponent whose critical value is requested; Delta is the joint
// multiplier applied to all four exponents at once.
enum class ParamSelector { Alpha, Beta, Mu, Nu, Delta };

const char* to_string(ParamSelector sel);

// A critical parameter value. attainable is false when the value is <= 0,
// meaning no positive setting of that parameter alone reaches the boundary;
// the value is still reported so distances stay well defined.
struct CriticalValue {
    double value = 0.0;
    bool attainable = false;
};

// Value at which a crosses 1 when the selected parameter alone is varied:
// alpha_crit = (1 - beta*nu)/mu and analogously for the others;
// Delta_crit = 1/sqrt(a).
CriticalValue critical_stability(const Params& p, ParamSelector sel);

// Residual of the position equality at log-rate L:
//   alpha*mu*(L - ln k) + beta*nu*(L - ln l) - L
// Its zero in the selected parameter is the bubble/crash boundary at rate
// e^L; its sign (against sign(1-a)) decides the side.
double position_expression(const Params& p, double log_rate);

// Parameter value solving the position equality at the current rate i_t.
// Derived directly from the equality (each exponent enters linearly; Delta is
// a square root) rather than transcribed from printed closed forms. Throws
// SingularDenominator at i_t = k (alpha, mu) or i_t = l (beta, nu) and
// NegativeRadicand when the Delta radicand is not positive.
CriticalValue critical_direction(const Params& p, double i_t,
                                 ParamSelector sel);

// Limit of critical_direction as i_t -> 0 or infinity. Equal to
// critical_stability by the equivalence of the critical parameters; this is
// enforced structurally — the call is forwarded, so equality is bitwise.
CriticalValue asymptotic_critical_direction(const Params& p,
                                            ParamSelector sel);

}  // namespace umwe
