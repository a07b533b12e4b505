#include "umwe/scenario.hpp"

#include <cmath>
#include <set>
#include <sstream>

namespace umwe {

const char* to_string(ParamTarget target) {
    switch (target) {
        case ParamTarget::Alpha: return "alpha";
        case ParamTarget::Beta: return "beta";
        case ParamTarget::Mu: return "mu";
        case ParamTarget::Nu: return "nu";
        case ParamTarget::K: return "k";
        case ParamTarget::L: return "l";
    }
    return "unknown";
}

void Scenario::validate() const {
    std::ostringstream issues;
    auto add = [&](const std::string& msg) {
        if (issues.tellp() > 0) issues << "; ";
        issues << msg;
    };
    try {
        initial_params.validate();
    } catch (const ModelError& e) {
        add(std::string("initial_params: ") + e.what());
    }
    if (!(initial_rate > 0.0) || !std::isfinite(initial_rate)) {
        add("initial_rate must be strictly positive and finite");
    }
    if (horizon < 1) add("horizon must be >= 1");
    if (!(rate_floor > 0.0) || !std::isfinite(rate_floor)) {
        add("rate_floor must be strictly positive and finite");
    }
    if (sample_every < 1) add("sample_every must be >= 1");
    std::set<std::string> seen;
    for (const ScheduleRule& rule : rules) {
        if (rule.id.empty()) add("rule ids must be non-empty");
        if (!seen.insert(rule.id).second) {
            add("duplicate rule id '" + rule.id + "'");
        }
        const Condition& c = rule.condition;
        if ((c.kind == ConditionKind::RateBelow ||
             c.kind == ConditionKind::RateAbove) &&
            (!(c.threshold > 0.0) || !std::isfinite(c.threshold))) {
            add("rule '" + rule.id +
                "': rate threshold must be strictly positive and finite");
        }
        if (c.kind == ConditionKind::DistanceBelow &&
            !std::isfinite(c.threshold)) {
            add("rule '" + rule.id + "': distance threshold must be finite");
        }
        if (c.kind == ConditionKind::TimeAtLeast && c.time < 0) {
            add("rule '" + rule.id + "': time must be >= 0");
        }
        if (!std::isfinite(rule.action.value)) {
            add("rule '" + rule.id + "': action value must be finite");
        }
        if (rule.action.kind == ActionKind::RampParam &&
            (!(rule.action.ramp_to > 0.0) ||
             !std::isfinite(rule.action.ramp_to))) {
            add("rule '" + rule.id +
                "': ramp target must be strictly positive and finite");
        }
    }
    std::string all = issues.str();
    if (!all.empty()) throw ModelError(ErrorCode::Validation, all);
}

namespace {

double& target_field(Params& p, ParamTarget target) {
    switch (target) {
        case ParamTarget::Alpha: return p.alpha;
        case ParamTarget::Beta: return p.beta;
        case ParamTarget::Mu: return p.mu;
        case ParamTarget::Nu: return p.nu;
        case ParamTarget::K: return p.k;
        case ParamTarget::L: return p.l;
    }
    return p.alpha;
}

bool condition_holds(const Condition& c, const TrajectoryRecord& rec) {
    switch (c.kind) {
        case ConditionKind::Always: return true;
        case ConditionKind::TimeAtLeast: return rec.t >= c.time;
        case ConditionKind::RateBelow: return rec.i < c.threshold;
        case ConditionKind::RateAbove: return rec.i > c.threshold;
        case ConditionKind::RegimeIs: return rec.risk.regime.kind == c.regime;
        case ConditionKind::DistanceBelow:
            return rec.risk.entry(c.selector).stability_abs < c.threshold;
    }
    return false;
}

struct ActionOutcome {
    bool changed = false;
    bool rejected = false;
    bool ramp_completed = false;
    double rejected_value = 0.0;
};

ActionOutcome apply_action(const Action& action, Params& p) {
    double& field = target_field(p, action.target);
    double next = field;
    switch (action.kind) {
        case ActionKind::SetParam: next = action.value; break;
        case ActionKind::AddToParam: next = field + action.value; break;
        case ActionKind::MultiplyParam: next = field * action.value; break;
        case ActionKind::RampParam: {
            double step_size = std::abs(action.value);
            if (field < action.ramp_to) {
                next = std::min(field + step_size, action.ramp_to);
            } else if (field > action.ramp_to) {
                next = std::max(field - step_size, action.ramp_to);
            }
            break;
        }
    }
    ActionOutcome out;
    if (!(next > 0.0) || !std::isfinite(next)) {
        out.rejected = true;
        out.rejected_value = next;
        return out;
    }
    out.changed = (next != field);
    field = next;
    if (action.kind == ActionKind::RampParam && field == action.ramp_to) {
        out.ramp_completed = true;
    }
    return out;
}

}  // namespace

Trajectory run_scenario(const Scenario& sc) {
    sc.validate();
    Trajectory tr;
    tr.sample_every = sc.sample_every;
    tr.records.reserve(static_cast<size_t>(sc.horizon));

    Params p = sc.initial_params;
    double rate = sc.initial_rate;
    double log_rate = std::log(rate);
    const double log_min_rate = std::log(sc.guards.min_rate);
    std::vector<bool> active(sc.rules.size(), true);

    auto guarded_exp = [&](double log_value, const char* what) {
        if (!std::isfinite(log_value) ||
            std::abs(log_value) > sc.guards.log_guard) {
            std::ostringstream os;
            os << what << " out of range: |ln| = " << std::abs(log_value);
            throw ModelError(ErrorCode::DomainOverflow, os.str());
        }
        return std::exp(log_value);
    };

    for (long t = 0; t < sc.horizon; ++t) {
        TrajectoryRecord rec;
        rec.t = t;
        rec.i = rate;
        try {
            rec.n_loans = guarded_exp(log_loan_volume(log_rate, p),
                                      "loan volume");
            rec.d_defaults = guarded_exp(log_default_volume(log_rate, p),
                                         "default volume");
            rec.params = p;
            rec.risk = risk_report_log(p, log_rate, sc.guards);
        } catch (const ModelError& e) {
            tr.aborted = true;
            tr.abort_reason = std::string(to_string(e.code())) + ": " + e.what();
            break;
        }

        if (t < sc.horizon - 1) {
            for (size_t n = 0; n < sc.rules.size(); ++n) {
                if (!active[n]) continue;
                const ScheduleRule& rule = sc.rules[n];
                if (!condition_holds(rule.condition, rec)) continue;
                ActionOutcome out = apply_action(rule.action, p);
                if (out.rejected) {
                    std::ostringstream os;
                    os << "t=" << t << " rule '" << rule.id
                       << "' rejected: " << to_string(rule.action.target)
                       << " would become " << out.rejected_value;
                    tr.warnings.push_back(os.str());
                    continue;
                }
                if (out.changed) {
                    rec.fired_rules.push_back(rule.id);
                    if (rule.one_shot) active[n] = false;
                }
                if (out.ramp_completed) active[n] = false;
            }
        }
        tr.records.push_back(std::move(rec));
        if (t == sc.horizon - 1) break;

        // Advance with the updated parameters.
        try {
            double log_next = log_next_rate(log_rate, p);
            if (log_next < log_min_rate) {
                std::ostringstream os;
                os << "rate underflow at t=" << t + 1 << ": ln i = " << log_next;
                throw ModelError(ErrorCode::RateUnderflow, os.str());
            }
            if (!std::isfinite(log_next) ||
                std::abs(log_next) > sc.guards.log_guard) {
                std::ostringstream os;
                os << "rate overflow at t=" << t + 1 << ": ln i = " << log_next;
                throw ModelError(ErrorCode::ExponentOverflow, os.str());
            }
            rate = (log_next == log_rate) ? rate : std::exp(log_next);
            log_rate = log_next;
        } catch (const ModelError& e) {
            tr.aborted = true;
            tr.abort_reason = std::string(to_string(e.code())) + ": " + e.what();
            break;
        }
    }
    return tr;
}

namespace {

constexpr double kDefaultFloor = 0.0123;

Params cycle_params() {
    return Params{1.0, 1.0, 0.499, 0.499, 105.5, 0.0096};
}

template <typename T>
T pick(const std::optional<T>& override_value, T fallback) {
    return override_value.value_or(fallback);
}

}  // namespace

std::vector<std::string> preset_names() {
    return {"stable", "bubble", "full_cycle", "alpha_only_crash"};
}

Scenario preset(const std::string& name) { return preset(name, {}); }

Scenario preset(const std::string& name, const PresetTuning& tuning) {
    Scenario sc;
    if (name == "stable") {
        // Calm convergence onto the fixed point near 0.04186; no rules.
        sc.initial_params = pick(tuning.params, cycle_params());
        sc.initial_rate = pick(tuning.initial_rate, 0.042);
        sc.horizon = pick(tuning.horizon, 200L);
        sc.rate_floor = pick(tuning.rate_floor, kDefaultFloor);
    } else if (name == "bubble") {
        // Stable growth drifts into a bubble once optimism pushes alpha past
        // its critical value; no floor rule, the bubble just runs.
        sc.initial_params = pick(tuning.params, cycle_params());
        sc.initial_rate = pick(tuning.initial_rate, 0.042);
        sc.horizon = pick(tuning.horizon, 150L);
        sc.rate_floor = pick(tuning.rate_floor, kDefaultFloor);
        long calm = pick(tuning.calm_period, 20L);
        sc.rules.push_back(
            {"confidence_ramp",
             {ConditionKind::TimeAtLeast, calm},
             {ActionKind::RampParam, ParamTarget::Alpha,
              pick(tuning.alpha_ramp, 0.004), pick(tuning.alpha_cap, 1.01)}});
    } else if (name == "full_cycle") {
        // Stable phase, confidence-driven bubble, floor-triggered beta shock,
        // crash with parameter retreat, recovery back onto the fixed point.
        sc.initial_params = pick(tuning.params, cycle_params());
        sc.initial_rate = pick(tuning.initial_rate, 0.042);
        sc.horizon = pick(tuning.horizon, 4000L);
        sc.rate_floor = pick(tuning.rate_floor, kDefaultFloor);
        long calm = pick(tuning.calm_period, 100L);
        sc.rules.push_back(
            {"confidence_ramp",
             {ConditionKind::TimeAtLeast, calm},
             {ActionKind::RampParam, ParamTarget::Alpha,
              pick(tuning.alpha_ramp, 0.004), pick(tuning.alpha_cap, 1.01)}});
        Condition floor_hit{ConditionKind::RateBelow};
        floor_hit.threshold = sc.rate_floor;
        sc.rules.push_back({"beta_shock",
                            floor_hit,
                            {ActionKind::SetParam, ParamTarget::Beta,
                             pick(tuning.beta_shock, 1.6)},
                            /*one_shot=*/true});
        Condition in_crash{ConditionKind::RegimeIs};
        in_crash.regime = RegimeKind::Crash;
        sc.rules.push_back({"alpha_retreat",
                            in_crash,
                            {ActionKind::RampParam, ParamTarget::Alpha,
                             pick(tuning.alpha_retreat, 0.01), 1.0}});
        sc.rules.push_back({"beta_normalize",
                            in_crash,
                            {ActionKind::RampParam, ParamTarget::Beta,
                             pick(tuning.beta_normalize, 0.02), 1.0}});
    } else if (name == "alpha_only_crash") {
        // Bubble turning into a crash purely through ever-growing alpha; the
        // extreme scale parameters keep the moving fixed point in play.
        sc.initial_params =
            pick(tuning.params, Params{1.007, 1.0, 0.499, 0.499, 1e-12, 1.27e12});
        sc.initial_rate = pick(tuning.initial_rate, 0.03);
        sc.horizon = pick(tuning.horizon, 250L);
        sc.rate_floor = pick(tuning.rate_floor, kDefaultFloor);
        sc.rules.push_back({"optimism",
                            {ConditionKind::Always},
                            {ActionKind::AddToParam, ParamTarget::Alpha,
                             pick(tuning.optimism_ramp, 0.0002)}});
    } else {
        throw ModelError(ErrorCode::UnknownPreset,
                         "unknown preset '" + name +
                             "' (available: stable, bubble, full_cycle, "
                             "alpha_only_crash)");
    }
    sc.sample_every = pick(tuning.sample_every, 1L);
    return sc;
}

std::vector<PhaseSegment> detect_phases(const Trajectory& tr) {
    if (tr.records.empty()) {
        throw ModelError(ErrorCode::Validation,
                         "cannot segment an empty trajectory");
    }
    struct Run {
        RegimeKind label;
        long start, end;
    };
    std::vector<Run> runs;
    for (const TrajectoryRecord& rec : tr.records) {
        RegimeKind kind = rec.risk.regime.kind;
        if (!runs.empty() && runs.back().label == kind) {
            runs.back().end = rec.t;
        } else {
            runs.push_back({kind, rec.t, rec.t});
        }
    }

    std::vector<PhaseSegment> segments;
    size_t n = 0;
    // A leading single-step run attaches to the first real phase.
    long pending_start = runs.front().start;
    while (n < runs.size() && runs[n].end - runs[n].start + 1 < 2) ++n;
    if (n == runs.size()) {
        // Nothing persists for two steps; the whole trajectory is one phase.
        return {{runs.front().label, tr.records.front().t,
                 tr.records.back().t}};
    }
    segments.push_back({runs[n].label, pending_start, runs[n].end});
    for (++n; n < runs.size(); ++n) {
        const Run& run = runs[n];
        if (run.end - run.start + 1 < 2 || run.label == segments.back().label) {
            segments.back().end_t = run.end;  // absorb flicker / merge equals
        } else {
            segments.push_back({run.label, run.start, run.end});
        }
    }
    return segments;
}

}  // namespace umwe
