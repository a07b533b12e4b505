#include "umwe/regime.hpp"

#include <cmath>
#include <sstream>

namespace umwe {

const char* to_string(RegimeKind kind) {
    switch (kind) {
        case RegimeKind::Stable: return "Stable";
        case RegimeKind::AtFixedPoint: return "AtFixedPoint";
        case RegimeKind::Bubble: return "Bubble";
        case RegimeKind::Crash: return "Crash";
        case RegimeKind::BifurcationConstant: return "BifurcationConstant";
        case RegimeKind::BifurcationToZero: return "BifurcationToZero";
        case RegimeKind::BifurcationToInfinity: return "BifurcationToInfinity";
    }
    return "Unknown";
}

std::optional<RegimeKind> regime_kind_from_string(const std::string& name) {
    for (RegimeKind kind :
         {RegimeKind::Stable, RegimeKind::AtFixedPoint, RegimeKind::Bubble,
          RegimeKind::Crash, RegimeKind::BifurcationConstant,
          RegimeKind::BifurcationToZero, RegimeKind::BifurcationToInfinity}) {
        if (name == to_string(kind)) return kind;
    }
    return std::nullopt;
}

const char* to_string(ParamSelector sel) {
    switch (sel) {
        case ParamSelector::Alpha: return "alpha";
        case ParamSelector::Beta: return "beta";
        case ParamSelector::Mu: return "mu";
        case ParamSelector::Nu: return "nu";
        case ParamSelector::Delta: return "Delta";
    }
    return "unknown";
}

Regime classify_log(const Params& p, double log_i0, const Guards& g) {
    if (!std::isfinite(log_i0)) {
        throw ModelError(ErrorCode::Validation,
                         "log initial rate must be finite");
    }
    Regime r;
    r.a = composite_exponent(p);
    double log_c = log_bifurcation_constant(p);
    if (std::abs(r.a - 1.0) <= g.eps_a) {
        double c = std::exp(log_c);
        if (std::abs(c - 1.0) <= g.eps_c) {
            r.kind = RegimeKind::BifurcationConstant;
        } else if (c < 1.0) {
            r.kind = RegimeKind::BifurcationToZero;
        } else {
            r.kind = RegimeKind::BifurcationToInfinity;
        }
        return r;
    }
    double log_fix = log_c / (1.0 - r.a);
    r.log_i_fix = log_fix;
    if (std::abs(log_fix) <= g.log_guard) r.i_fix = std::exp(log_fix);
    if (std::abs(log_i0 - log_fix) <= g.eps_pos) {
        r.kind = RegimeKind::AtFixedPoint;
    } else if (r.a < 1.0) {
        r.kind = RegimeKind::Stable;
    } else {
        r.kind = (log_i0 > log_fix) ? RegimeKind::Crash : RegimeKind::Bubble;
    }
    return r;
}

Regime classify(const Params& p, double i0, const Guards& g) {
    if (!(i0 > 0.0) || !std::isfinite(i0)) {
        throw ModelError(ErrorCode::Validation,
                         "initial rate must be strictly positive and finite");
    }
    return classify_log(p, std::log(i0), g);
}

CriticalValue critical_stability(const Params& p, ParamSelector sel) {
    p.validate();
    double v = 0.0;
    switch (sel) {
        case ParamSelector::Alpha: v = (1.0 - p.beta * p.nu) / p.mu; break;
        case ParamSelector::Beta: v = (1.0 - p.alpha * p.mu) / p.nu; break;
        case ParamSelector::Mu: v = (1.0 - p.beta * p.nu) / p.alpha; break;
        case ParamSelector::Nu: v = (1.0 - p.alpha * p.mu) / p.beta; break;
        case ParamSelector::Delta:
            v = 1.0 / std::sqrt(p.alpha * p.mu + p.beta * p.nu);
            break;
    }
    return {v, v > 0.0};
}

double position_expression(const Params& p, double log_rate) {
    p.validate();
    return p.alpha * p.mu * (log_rate - std::log(p.k)) +
           p.nu * p.beta * (log_rate - std::log(p.l)) - log_rate;
}

CriticalValue critical_direction(const Params& p, double i_t,
                                 ParamSelector sel) {
    p.validate();
    if (!(i_t > 0.0) || !std::isfinite(i_t)) {
        throw ModelError(ErrorCode::Validation,
                         "current rate must be strictly positive and finite");
    }
    double big_l = std::log(i_t);
    double dk = big_l - std::log(p.k);  // ln(i_t / k)
    double dl = big_l - std::log(p.l);  // ln(i_t / l)

    auto singular = [&](const char* at) -> ModelError {
        std::ostringstream os;
        os << "critical direction " << to_string(sel)
           << " undefined: denominator vanishes at i_t = " << at;
        return ModelError(ErrorCode::SingularDenominator, os.str());
    };

    // Each exponent enters the position equality
    //   alpha*mu*(L - ln k) + beta*nu*(L - ln l) - L = 0
    // linearly; solve for the selected one. Delta scales all four exponents
    // jointly and enters quadratically.
    double v = 0.0;
    switch (sel) {
        case ParamSelector::Alpha:
            if (dk == 0.0) throw singular("k");
            v = (big_l - p.beta * p.nu * dl) / (p.mu * dk);
            break;
        case ParamSelector::Mu:
            if (dk == 0.0) throw singular("k");
            v = (big_l - p.beta * p.nu * dl) / (p.alpha * dk);
            break;
        case ParamSelector::Beta:
            if (dl == 0.0) throw singular("l");
            v = (big_l - p.alpha * p.mu * dk) / (p.nu * dl);
            break;
        case ParamSelector::Nu:
            if (dl == 0.0) throw singular("l");
            v = (big_l - p.alpha * p.mu * dk) / (p.beta * dl);
            break;
        case ParamSelector::Delta: {
            double denom = p.alpha * p.mu * dk + p.beta * p.nu * dl;
            if (denom == 0.0) throw singular("the joint scale root");
            double radicand = big_l / denom;
            if (!(radicand > 0.0)) {
                std::ostringstream os;
                os << "critical direction Delta undefined at i_t = " << i_t
                   << ": radicand " << radicand << " is not positive";
                throw ModelError(ErrorCode::NegativeRadicand, os.str());
            }
            v = std::sqrt(radicand);
            break;
        }
    }
    if (!std::isfinite(v)) throw singular(sel == ParamSelector::Beta ||
                                                  sel == ParamSelector::Nu
                                              ? "l"
                                              : "k");
    return {v, v > 0.0};
}

CriticalValue asymptotic_critical_direction(const Params& p,
                                            ParamSelector sel) {
    // ln(i_t) dominates every ln k, ln l term in the limit, which collapses
    // the direction boundary onto the stability boundary. Forwarding keeps
    // the equality exact by construction.
    return critical_stability(p, sel);
}

}  // namespace umwe
