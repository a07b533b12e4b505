#pragma once

#include <optional>
#include <string>
#include <vector>

#include "umwe/risk.hpp"

namespace umwe {

// Trigger predicates evaluated against the recorded (pre-step) state.
enum class ConditionKind {
    Always,
    TimeAtLeast,    // t >= time
    RateBelow,      // i < threshold
    RateAbove,      // i > threshold
    RegimeIs,       // classification matches
    DistanceBelow,  // absolute stability distance for selector < threshold
};

struct Condition {
    ConditionKind kind = ConditionKind::Always;
    long time = 0;
    double threshold = 0.0;
    RegimeKind regime = RegimeKind::Stable;
    ParamSelector selector = ParamSelector::Alpha;
};

// Parameters a rule may act on. Delta is intentionally not a target: it is a
// diagnostic multiplier, not a stored parameter.
enum class ParamTarget { Alpha, Beta, Mu, Nu, K, L };

const char* to_string(ParamTarget target);

enum class ActionKind {
    SetParam,       // param = value
    AddToParam,     // param += value
    MultiplyParam,  // param *= value
    RampParam,      // move param toward ramp_to by at most |value| per step
};

struct Action {
    ActionKind kind = ActionKind::SetParam;
    ParamTarget target = ParamTarget::Alpha;
    double value = 0.0;
    double ramp_to = 0.0;  // RampParam only
};

// A rule fires when its condition holds and its action changes a parameter.
// one_shot rules retire after firing once; a RampParam rule retires when its
// move lands the parameter exactly on ramp_to. Actions that would drive a
// parameter to zero or below are rejected and logged, leaving it unchanged.
struct ScheduleRule {
    std::string id;
    Condition condition;
    Action action;
    bool one_shot = false;
};

struct Scenario {
    Params initial_params;
    double initial_rate = 0.0;
    long horizon = 1;  // number of recorded steps, t = 0 .. horizon-1
    std::vector<ScheduleRule> rules;
    double rate_floor = 0.0123;  // the practical minimum rate; rules reference it
    long sample_every = 1;       // CSV thinning only, never internal
    Guards guards;

    void validate() const;
};

struct TrajectoryRecord {
    long t = 0;
    double i = 0.0;
    double n_loans = 0.0;
    double d_defaults = 0.0;
    Params params;  // parameters that produced this state
    RiskReport risk;
    std::vector<std::string> fired_rules;
};

struct Trajectory {
    std::vector<TrajectoryRecord> records;
    long sample_every = 1;
    bool aborted = false;        // rate left the guarded range before horizon
    std::string abort_reason;
    std::vector<std::string> warnings;  // rejected actions
};

// Per step: (1) record state + risk report under current parameters,
// (2) evaluate rules in listed order on that record and apply the actions
// whose conditions hold, (3) advance through the model step with the updated
// parameters. Deterministic; on divergence the partial trajectory is
// returned with the abort marker set.
Trajectory run_scenario(const Scenario& sc);

// Tuning knobs behind the named presets; every magnitude the presets use is
// overridable. Fields not set keep the preset's documented default.
struct PresetTuning {
    std::optional<double> initial_rate;
    std::optional<long> horizon;
    std::optional<long> sample_every;
    std::optional<double> rate_floor;
    std::optional<long> calm_period;    // steps of stable growth before optimism
    std::optional<double> alpha_ramp;   // confidence ramp increment
    std::optional<double> alpha_cap;    // where the confidence ramp stops
    std::optional<double> beta_shock;   // beta value set when the floor breaks
    std::optional<double> alpha_retreat;   // per-step alpha cut during the crash
    std::optional<double> beta_normalize;  // per-step beta cut during the crash
    std::optional<double> optimism_ramp;   // alpha_only_crash per-step increment
    std::optional<Params> params;
};

// Named scenarios: "stable", "bubble", "full_cycle", "alpha_only_crash".
// Throws UnknownPreset for anything else.
Scenario preset(const std::string& name);
Scenario preset(const std::string& name, const PresetTuning& tuning);

std::vector<std::string> preset_names();

struct PhaseSegment {
    RegimeKind label = RegimeKind::Stable;
    long start_t = 0;
    long end_t = 0;  // inclusive
};

// Segments the trajectory into contiguous regime phases with hysteresis: a
// regime must persist for at least two steps to start a segment; single-step
// flicker is absorbed into the neighboring phase.
std::vector<PhaseSegment> detect_phases(const Trajectory& tr);

}  // namespace umwe
