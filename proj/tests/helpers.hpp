#pragma once

#include <cmath>
#include <random>

#include "umwe/model.hpp"

namespace umwe::testing {

// Parameter set of the reference credit cycle: a = 0.998, i_fix ~ 0.04186.
inline Params cycle_params() {
    return Params{1.0, 1.0, 0.499, 0.499, 105.5, 0.0096};
}

// Builds parameters realizing a target composite exponent and fixed point,
// with alpha = beta = 1, mu = nu = a/2, and k = l solving
// ln c = (1 - a) ln i_fix.
inline Params params_for(double a, double i_fix) {
    Params p;
    p.alpha = 1.0;
    p.beta = 1.0;
    p.mu = a / 2.0;
    p.nu = a / 2.0;
    double log_sum = -2.0 * (1.0 - a) * std::log(i_fix) / a;  // ln k + ln l
    p.k = std::exp(log_sum / 2.0);
    p.l = p.k;
    return p;
}

inline double rel_err(double actual, double expected) {
    return std::abs(actual - expected) / std::abs(expected);
}

// Random parameters with a in [0.5, 0.999] and a representable fixed point:
// ln i_fix is drawn in [ln 0.001, ln 0.5] and l solved to match.
template <typename Rng>
Params draw_contracting_params(Rng& rng, double& i0_out) {
    std::uniform_real_distribution<double> unif(0.0, 1.0);
    double a = 0.5 + 0.499 * unif(rng);
    double alpha = 0.5 + unif(rng);
    double beta = 0.5 + unif(rng);
    double split = 0.2 + 0.6 * unif(rng);
    Params p;
    p.alpha = alpha;
    p.beta = beta;
    p.mu = split * a / alpha;
    p.nu = (1.0 - split) * a / beta;
    double log_ifix = std::log(0.001) + unif(rng) * std::log(0.5 / 0.001);
    double log_k = -2.0 + 4.0 * unif(rng);
    // ln c = -alpha*mu*ln k - beta*nu*ln l = (1-a) ln i_fix
    double log_l = (-(1.0 - a) * log_ifix - p.alpha * p.mu * log_k) /
                   (p.beta * p.nu);
    p.k = std::exp(log_k);
    p.l = std::exp(log_l);
    i0_out = 0.001 * std::exp(unif(rng) * std::log(0.5 / 0.001));
    return p;
}

// Random parameters for the critical-parameter equivalence checks: moderate
// exponent products and near-unit scales keep the finite-rate error of the
// asymptotic limit below the tested tolerances.
template <typename Rng>
Params draw_equivalence_params(Rng& rng) {
    std::uniform_real_distribution<double> unif(0.0, 1.0);
    double am = 0.1 + 0.35 * unif(rng);  // alpha*mu
    double bn = 0.1 + 0.35 * unif(rng);  // beta*nu
    Params p;
    p.alpha = 0.5 + unif(rng);
    p.beta = 0.5 + unif(rng);
    p.mu = am / p.alpha;
    p.nu = bn / p.beta;
    p.k = std::exp(-0.2 + 0.4 * unif(rng));
    p.l = std::exp(-0.2 + 0.4 * unif(rng));
    return p;
}

// Unconstrained-ish parameters covering both stable and unstable regimes.
template <typename Rng>
Params draw_any_params(Rng& rng) {
    std::uniform_real_distribution<double> unif(0.0, 1.0);
    Params p;
    p.alpha = 0.3 + 1.4 * unif(rng);
    p.beta = 0.3 + 1.4 * unif(rng);
    p.mu = 0.1 + 0.8 * unif(rng);
    p.nu = 0.1 + 0.8 * unif(rng);
    p.k = std::exp(-1.5 + 3.0 * unif(rng));
    p.l = std::exp(-1.5 + 3.0 * unif(rng));
    return p;
}

}  // namespace umwe::testing
