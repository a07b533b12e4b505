#pragma once

#include "umwe/errors.hpp"

namespace umwe {

// Parameter set of the unified credit-market model:
//
//   N(t)   = (i(t)/k)^(-mu)          loan volume
//   D(t)   = (i(t)/l)^nu             default volume
//   i(t+1) = D(t)^beta / N(t)^alpha  interest rate
//
// alpha and beta are the rate's sensitivities to loans and defaults, mu the
// credit-demand elasticity, nu the default elasticity, and k, l scale
// parameters. All six must be strictly positive.
struct Params {
    double alpha = 0.0;
    double beta = 0.0;
    double mu = 0.0;
    double nu = 0.0;
    double k = 0.0;
    double l = 0.0;

    // Throws Validation listing every violated constraint, not just the first.
    void validate() const;
};

// Composite exponent a = alpha*mu + beta*nu. The recurrence contracts for
// a < 1, sits at a transcritical bifurcation at a = 1, and diverges for a > 1.
double composite_exponent(const Params& p);

// ln c with c = l^(-beta*nu) * k^(-alpha*mu), the multiplier of the one-step
// recurrence i(t+1) = c * i(t)^a. At a = 1 the rate evolves as i(t) = c^t i0.
double log_bifurcation_constant(const Params& p);
double bifurcation_constant(const Params& p, const Guards& g = {});

// Fixed point i_fix = (k^(-alpha*mu) l^(-beta*nu))^(1/(1-a)). Throws
// AtBifurcation when |a - 1| <= g.eps_a; zero is excluded as a rate.
double log_fixed_point(const Params& p, const Guards& g = {});
double fixed_point(const Params& p, const Guards& g = {});

// The three model equations, one at a time.
double loans_from_rate(double rate, const Params& p, const Guards& g = {});
double defaults_from_rate(double rate, const Params& p, const Guards& g = {});
double next_rate(double n_loans, double d_defaults, const Params& p,
                 const Guards& g = {});

// Expected return of a zero-recovery unit loan priced at rate i: r = -i.
double expected_return(double rate);

// Log-domain core used by everything above. All rate evolution happens here
// and is exponentiated only at the output boundary; a^t and extreme scale
// parameters overflow doubles quickly otherwise.
double log_loan_volume(double log_rate, const Params& p);
double log_default_volume(double log_rate, const Params& p);
// ln i(t+1) = ln c + a * ln i(t). Returns log_rate unchanged (bitwise) when
// a == 1 and ln c == 0 so the constant-rate bifurcation case stays exact.
double log_next_rate(double log_rate, const Params& p);

// Snapshot of the market at one step. n_loans and d_defaults are always the
// power-law images of i under the parameters in force.
struct MarketState {
    long t = 0;
    double i = 0.0;
    double n_loans = 0.0;
    double d_defaults = 0.0;
};

// Builds a consistent state from a rate.
MarketState market_state(double rate, const Params& p, long t = 0,
                         const Guards& g = {});

// One step of the full system. Markovian: the result depends only on s.i and
// p, never on earlier history. Signals RateUnderflow when the new rate falls
// below g.min_rate and DomainOverflow when any component leaves the
// representable range.
MarketState step(const MarketState& s, const Params& p, const Guards& g = {});

// Closed form i(t) = i_fix * (i0/i_fix)^(a^t), evaluated in log domain.
// Throws AtBifurcation when |a - 1| <= g.eps_a and ExponentOverflow when
// a^t * |ln(i0/i_fix)| exceeds g.log_guard (divergence, not infinity).
double rate_at(long t, double i0, const Params& p, const Guards& g = {});

// Legacy accelerator models kept for comparison. Unlike the unified model
// they anchor the rate to its initial value i0 at every step:
//
//   loan variant:   N(t) = (i/k)^(-mu),  i(t+1) = i0 * N(t)^(-alpha)
//   crisis variant: D(t) = (i/k)^beta,   i(t+1) = i0 * D(t)^alpha
enum class LegacyVariant { LoanAccelerator, CrisisAccelerator };

struct LegacyMweParams {
    LegacyVariant variant = LegacyVariant::LoanAccelerator;
    double i0 = 0.0;
    double alpha = 0.0;
    double mu = 0.0;    // used by the loan variant
    double beta = 0.0;  // used by the crisis variant
    double k = 0.0;

    void validate() const;
};

double legacy_mwe_step(double rate, const LegacyMweParams& lp,
                       const Guards& g = {});

// i_fix = (i0 * k^(-e))^(1/(1-e)) with e the variant's composite exponent
// (alpha*mu for loans, alpha*beta for the crisis accelerator). In contrast to
// the unified model this depends on i0. Throws AtBifurcation when e = 1.
double legacy_mwe_fixed_point(const LegacyMweParams& lp, const Guards& g = {});

}  // namespace umwe
