#include "umwe/model.hpp"

#include <cmath>
#include <sstream>
#include <vector>

namespace umwe {

const char* to_string(ErrorCode code) {
    switch (code) {
        case ErrorCode::DomainOverflow: return "domain-overflow";
        case ErrorCode::RateUnderflow: return "rate-underflow";
        case ErrorCode::AtBifurcation: return "at-bifurcation";
        case ErrorCode::ExponentOverflow: return "exponent-overflow";
        case ErrorCode::SingularDenominator: return "singular-denominator";
        case ErrorCode::NegativeRadicand: return "negative-radicand";
        case ErrorCode::Validation: return "validation";
        case ErrorCode::Parse: return "parse";
        case ErrorCode::Io: return "io";
        case ErrorCode::UnknownPreset: return "unknown-preset";
    }
    return "unknown";
}

namespace {

void require_positive_finite(std::vector<std::string>& issues, double v,
                             const char* name) {
    if (!(v > 0.0) || !std::isfinite(v)) {
        std::ostringstream os;
        os << name << " must be strictly positive and finite, got " << v;
        issues.push_back(os.str());
    }
}

[[noreturn]] void throw_issues(const std::vector<std::string>& issues) {
    std::ostringstream os;
    for (size_t n = 0; n < issues.size(); ++n) {
        if (n > 0) os << "; ";
        os << issues[n];
    }
    throw ModelError(ErrorCode::Validation, os.str());
}

void require_rate(double rate, const char* name) {
    if (!(rate > 0.0) || !std::isfinite(rate)) {
        std::ostringstream os;
        os << name << " must be strictly positive and finite, got " << rate;
        throw ModelError(ErrorCode::Validation, os.str());
    }
}

// Exponentiation boundary: refuses to materialize values outside the guarded
// range instead of producing inf or 0.
double checked_exp(double log_value, const Guards& g, const char* what) {
    if (!std::isfinite(log_value) || std::abs(log_value) > g.log_guard) {
        std::ostringstream os;
        os << what << " out of range: |ln| = " << std::abs(log_value)
           << " exceeds the log-domain guard " << g.log_guard;
        throw ModelError(ErrorCode::DomainOverflow, os.str());
    }
    return std::exp(log_value);
}

}  // namespace

void Params::validate() const {
    std::vector<std::string> issues;
    require_positive_finite(issues, alpha, "alpha");
    require_positive_finite(issues, beta, "beta");
    require_positive_finite(issues, mu, "mu");
    require_positive_finite(issues, nu, "nu");
    require_positive_finite(issues, k, "k");
    require_positive_finite(issues, l, "l");
    if (issues.empty()) {
        double a = alpha * mu + beta * nu;
        if (!std::isfinite(a) || !(a > 0.0)) {
            issues.push_back("composite exponent alpha*mu + beta*nu is not a "
                             "positive finite number");
        }
    }
    if (!issues.empty()) throw_issues(issues);
}

double composite_exponent(const Params& p) {
    p.validate();
    return p.alpha * p.mu + p.beta * p.nu;
}

double log_bifurcation_constant(const Params& p) {
    p.validate();
    return -p.beta * p.nu * std::log(p.l) - p.alpha * p.mu * std::log(p.k);
}

double bifurcation_constant(const Params& p, const Guards& g) {
    return checked_exp(log_bifurcation_constant(p), g, "bifurcation constant");
}

double log_fixed_point(const Params& p, const Guards& g) {
    double a = composite_exponent(p);
    if (std::abs(a - 1.0) <= g.eps_a) {
        std::ostringstream os;
        os << "no fixed point: composite exponent a = " << a
           << " is at the bifurcation (|a - 1| <= " << g.eps_a << ")";
        throw ModelError(ErrorCode::AtBifurcation, os.str());
    }
    return log_bifurcation_constant(p) / (1.0 - a);
}

double fixed_point(const Params& p, const Guards& g) {
    double lfix = log_fixed_point(p, g);
    if (std::abs(lfix) > g.log_guard) {
        std::ostringstream os;
        os << "fixed point not representable: ln i_fix = " << lfix
           << " exceeds the log-domain guard " << g.log_guard;
        throw ModelError(ErrorCode::ExponentOverflow, os.str());
    }
    return std::exp(lfix);
}

double log_loan_volume(double log_rate, const Params& p) {
    return -p.mu * (log_rate - std::log(p.k));
}

double log_default_volume(double log_rate, const Params& p) {
    return p.nu * (log_rate - std::log(p.l));
}

double log_next_rate(double log_rate, const Params& p) {
    double a = p.alpha * p.mu + p.beta * p.nu;
    double log_c = -p.beta * p.nu * std::log(p.l) - p.alpha * p.mu * std::log(p.k);
    // a = 1, c = 1 leaves the rate invariant; skip the arithmetic so the
    // invariance is exact rather than subject to rounding.
    if (a == 1.0 && log_c == 0.0) return log_rate;
    return log_c + a * log_rate;
}

double loans_from_rate(double rate, const Params& p, const Guards& g) {
    p.validate();
    require_rate(rate, "rate");
    return checked_exp(log_loan_volume(std::log(rate), p), g, "loan volume");
}

double defaults_from_rate(double rate, const Params& p, const Guards& g) {
    p.validate();
    require_rate(rate, "rate");
    return checked_exp(log_default_volume(std::log(rate), p), g,
                       "default volume");
}

double next_rate(double n_loans, double d_defaults, const Params& p,
                 const Guards& g) {
    p.validate();
    require_rate(n_loans, "loan volume");
    require_rate(d_defaults, "default volume");
    double log_next =
        p.beta * std::log(d_defaults) - p.alpha * std::log(n_loans);
    return checked_exp(log_next, g, "next rate");
}

double expected_return(double rate) {
    require_rate(rate, "rate");
    return -rate;
}

MarketState market_state(double rate, const Params& p, long t,
                         const Guards& g) {
    p.validate();
    require_rate(rate, "rate");
    if (t < 0) {
        throw ModelError(ErrorCode::Validation, "time step must be >= 0");
    }
    double log_rate = std::log(rate);
    MarketState s;
    s.t = t;
    s.i = rate;
    s.n_loans = checked_exp(log_loan_volume(log_rate, p), g, "loan volume");
    s.d_defaults =
        checked_exp(log_default_volume(log_rate, p), g, "default volume");
    return s;
}

MarketState step(const MarketState& s, const Params& p, const Guards& g) {
    p.validate();
    require_rate(s.i, "rate");
    double log_rate = std::log(s.i);
    double log_next = log_next_rate(log_rate, p);
    if (log_next < std::log(g.min_rate)) {
        std::ostringstream os;
        os << "rate underflow: next rate e^" << log_next
           << " fell below the guard " << g.min_rate;
        throw ModelError(ErrorCode::RateUnderflow, os.str());
    }
    MarketState next;
    next.t = s.t + 1;
    // An unchanged log-rate means the rate itself is unchanged; avoid the
    // exp/log round trip that would otherwise wobble the last bit.
    next.i = (log_next == log_rate) ? s.i
                                    : checked_exp(log_next, g, "next rate");
    next.n_loans = checked_exp(log_loan_volume(log_next, p), g, "loan volume");
    next.d_defaults =
        checked_exp(log_default_volume(log_next, p), g, "default volume");
    return next;
}

double rate_at(long t, double i0, const Params& p, const Guards& g) {
    require_rate(i0, "initial rate");
    if (t < 0) {
        throw ModelError(ErrorCode::Validation, "time step must be >= 0");
    }
    double log_fix = log_fixed_point(p, g);  // AtBifurcation when a = 1
    if (t == 0) return i0;                   // a^0 = 1 exactly
    double gap = std::log(i0) - log_fix;
    if (gap == 0.0) return i0;  // on the fixed point
    double a = composite_exponent(p);
    double term = std::pow(a, static_cast<double>(t)) * gap;
    if (!std::isfinite(term) || std::abs(term) > g.log_guard) {
        std::ostringstream os;
        os << "divergence at t = " << t << ": a^t * |ln(i0/i_fix)| = "
           << std::abs(term) << " exceeds the log-domain guard " << g.log_guard;
        throw ModelError(ErrorCode::ExponentOverflow, os.str());
    }
    double log_rate = log_fix + term;
    if (std::abs(log_rate) > g.log_guard) {
        std::ostringstream os;
        os << "rate at t = " << t << " not representable: ln i(t) = "
           << log_rate << " exceeds the log-domain guard " << g.log_guard;
        throw ModelError(ErrorCode::ExponentOverflow, os.str());
    }
    return std::exp(log_rate);
}

void LegacyMweParams::validate() const {
    std::vector<std::string> issues;
    require_positive_finite(issues, i0, "i0");
    require_positive_finite(issues, k, "k");
    // Zero exponents are admissible: they freeze the rate at i0.
    auto require_nonneg = [&](double v, const char* name) {
        if (!(v >= 0.0) || !std::isfinite(v)) {
            std::ostringstream os;
            os << name << " must be non-negative and finite, got " << v;
            issues.push_back(os.str());
        }
    };
    require_nonneg(alpha, "alpha");
    if (variant == LegacyVariant::LoanAccelerator) {
        require_nonneg(mu, "mu");
    } else {
        require_nonneg(beta, "beta");
    }
    if (!issues.empty()) throw_issues(issues);
}

namespace {

// Both legacy variants reduce to i(t+1) = i0 * (i/k)^e.
double legacy_exponent(const LegacyMweParams& lp) {
    return lp.variant == LegacyVariant::LoanAccelerator ? lp.alpha * lp.mu
                                                        : lp.alpha * lp.beta;
}

}  // namespace

double legacy_mwe_step(double rate, const LegacyMweParams& lp,
                       const Guards& g) {
    lp.validate();
    require_rate(rate, "rate");
    double e = legacy_exponent(lp);
    double log_next =
        std::log(lp.i0) + e * (std::log(rate) - std::log(lp.k));
    return checked_exp(log_next, g, "next rate");
}

double legacy_mwe_fixed_point(const LegacyMweParams& lp, const Guards& g) {
    lp.validate();
    double e = legacy_exponent(lp);
    if (std::abs(e - 1.0) <= g.eps_a) {
        std::ostringstream os;
        os << "no fixed point: legacy composite exponent " << e
           << " is at the bifurcation";
        throw ModelError(ErrorCode::AtBifurcation, os.str());
    }
    double log_fix = (std::log(lp.i0) - e * std::log(lp.k)) / (1.0 - e);
    return checked_exp(log_fix, g, "legacy fixed point");
}

}  // namespace umwe
