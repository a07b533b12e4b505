#pragma once

#include <stdexcept>
#include <string>

namespace umwe {

// Typed failure signals. The numeric core never returns IEEE infinities or
// NaNs; anything that would leave the representable range surfaces as one of
// these instead.
enum class ErrorCode {
    DomainOverflow,       // power-law evaluation left the representable range
    RateUnderflow,        // next rate fell below the configured minimum
    AtBifurcation,        // no fixed point: |a - 1| within tolerance
    ExponentOverflow,     // a^t term exceeded the log-domain guard
    SingularDenominator,  // direction parameter undefined at i_t = k or i_t = l
    NegativeRadicand,     // direction delta undefined: radicand <= 0
    Validation,           // bad inputs, reported with field paths
    Parse,                // malformed config text
    Io,                   // file system failure
    UnknownPreset,
};

const char* to_string(ErrorCode code);

class ModelError : public std::runtime_error {
  public:
    ModelError(ErrorCode code, const std::string& message)
        : std::runtime_error(message), code_(code) {}

    ErrorCode code() const { return code_; }

  private:
    ErrorCode code_;
};

// Numeric guard rails. Defaults follow the model conventions: rates live in
// (min_rate, e^log_guard) and |a - 1| <= eps_a is treated as the bifurcation
// point itself.
struct Guards {
    double eps_a = 1e-12;      // tolerance deciding "a equals 1"
    double eps_pos = 1e-12;    // log-space tolerance for "at the fixed point"
    double eps_c = 1e-12;      // tolerance deciding "c equals 1" at a = 1
    double min_rate = 1e-300;  // below this a step signals RateUnderflow
    double log_guard = 700.0;  // |ln x| cap before any exponentiation
};

}  // namespace umwe
