#include <cmath>
#include <functional>

#include "doctest.h"
#include "helpers.hpp"
#include "umwe/scenario.hpp"

using namespace umwe;
using namespace umwe::testing;

namespace {

std::vector<RegimeKind> phase_labels(const std::vector<PhaseSegment>& segs) {
    std::vector<RegimeKind> labels;
    for (const PhaseSegment& s : segs) labels.push_back(s.label);
    return labels;
}

// Index of the record where the given rule fired, or -1.
long fired_at(const Trajectory& tr, const std::string& id) {
    for (const TrajectoryRecord& rec : tr.records) {
        for (const std::string& fired : rec.fired_rules) {
            if (fired == id) return rec.t;
        }
    }
    return -1;
}

Trajectory synthetic_trajectory(const std::vector<RegimeKind>& kinds) {
    Trajectory tr;
    for (size_t n = 0; n < kinds.size(); ++n) {
        TrajectoryRecord rec;
        rec.t = static_cast<long>(n);
        rec.risk.regime.kind = kinds[n];
        tr.records.push_back(rec);
    }
    return tr;
}

}  // namespace

TEST_CASE("preset parameters are pinned") {
    Scenario stable = preset("stable");
    CHECK(stable.initial_params.alpha == 1.0);
    CHECK(stable.initial_params.beta == 1.0);
    CHECK(stable.initial_params.mu == 0.499);
    CHECK(stable.initial_params.nu == 0.499);
    CHECK(stable.initial_params.k == 105.5);
    CHECK(stable.initial_params.l == 0.0096);
    CHECK(stable.initial_rate == 0.042);
    CHECK(stable.rules.empty());

    CHECK(preset("alpha_only_crash").initial_rate == 0.03);
    CHECK(preset("alpha_only_crash").initial_params.alpha == 1.007);

    CHECK_THROWS_AS(preset("fancy_cycle"), ModelError);
    try {
        preset("fancy_cycle");
    } catch (const ModelError& e) {
        CHECK(e.code() == ErrorCode::UnknownPreset);
    }
}

TEST_CASE("stable preset drifts monotonically onto the fixed point") {
    Scenario sc = preset("stable");
    Trajectory tr = run_scenario(sc);
    REQUIRE(tr.records.size() == 200);
    CHECK_FALSE(tr.aborted);
    double ifix = fixed_point(sc.initial_params);
    double prev = tr.records.front().i;
    for (size_t n = 1; n < tr.records.size(); ++n) {
        CHECK(tr.records[n].i < prev);
        CHECK(tr.records[n].i > ifix);
        CHECK(tr.records[n].risk.regime.kind == RegimeKind::Stable);
        prev = tr.records[n].i;
    }
    auto phases = detect_phases(tr);
    REQUIRE(phases.size() == 1);
    CHECK(phases[0].label == RegimeKind::Stable);
    CHECK(phases[0].start_t == 0);
    CHECK(phases[0].end_t == 199);
}

TEST_CASE("bubble preset: confidence ramp tips the system over") {
    Trajectory tr = run_scenario(preset("bubble"));
    auto labels = phase_labels(detect_phases(tr));
    REQUIRE(labels.size() == 2);
    CHECK(labels[0] == RegimeKind::Stable);
    CHECK(labels[1] == RegimeKind::Bubble);
    // the rate is falling by the end
    size_t last = tr.records.size() - 1;
    CHECK(tr.records[last].i < tr.records[last - 1].i);
}

TEST_CASE("full cycle preset walks Stable -> Bubble -> Crash -> Stable") {
    Scenario sc = preset("full_cycle");
    Trajectory tr = run_scenario(sc);
    REQUIRE_FALSE(tr.aborted);
    REQUIRE(tr.records.size() == 4000);

    auto phases = detect_phases(tr);
    auto labels = phase_labels(phases);
    REQUIRE(labels.size() == 4);
    CHECK(labels[0] == RegimeKind::Stable);
    CHECK(labels[1] == RegimeKind::Bubble);
    CHECK(labels[2] == RegimeKind::Crash);
    CHECK(labels[3] == RegimeKind::Stable);

    // the shock fires exactly once, at the first record below the floor
    long shock_t = fired_at(tr, "beta_shock");
    REQUIRE(shock_t >= 0);
    CHECK(tr.records[shock_t].i < sc.rate_floor);
    for (long t = 0; t < shock_t; ++t) {
        CHECK(tr.records[t].i >= sc.rate_floor);
    }
    // beta jumps to 1.6 for the step after the shock record
    CHECK(tr.records[shock_t].params.beta == 1.0);
    CHECK(tr.records[shock_t + 1].params.beta == 1.6);

    // parameters return to their initial levels
    const TrajectoryRecord& last = tr.records.back();
    CHECK(last.params.alpha == 1.0);
    CHECK(last.params.beta == 1.0);
    // and the rate closes the cycle near the recovery fixed point
    CHECK(std::abs(last.i - 0.0419) / 0.0419 < 0.01);
}

TEST_CASE("full cycle is deterministic") {
    Scenario sc = preset("full_cycle");
    Trajectory a = run_scenario(sc);
    Trajectory b = run_scenario(sc);
    REQUIRE(a.records.size() == b.records.size());
    for (size_t n = 0; n < a.records.size(); ++n) {
        CHECK(a.records[n].i == b.records[n].i);
        CHECK(a.records[n].n_loans == b.records[n].n_loans);
        CHECK(a.records[n].params.alpha == b.records[n].params.alpha);
        CHECK(a.records[n].params.beta == b.records[n].params.beta);
        CHECK(a.records[n].fired_rules == b.records[n].fired_rules);
        CHECK(a.records[n].risk.regime.kind == b.records[n].risk.regime.kind);
    }
}

TEST_CASE("alpha-only preset: bubble flips to crash with beta untouched") {
    Scenario sc = preset("alpha_only_crash");
    Trajectory tr = run_scenario(sc);
    CHECK_FALSE(tr.aborted);
    auto labels = phase_labels(detect_phases(tr));
    REQUIRE(labels.size() == 2);
    CHECK(labels[0] == RegimeKind::Bubble);
    CHECK(labels[1] == RegimeKind::Crash);
    for (const TrajectoryRecord& rec : tr.records) {
        CHECK(rec.params.beta == 1.0);
    }
}

TEST_CASE("a at shock time rises with the confidence ramp increment") {
    // Increments small enough that the ramp cap is never reached by shock
    // time, so the increment alone decides how much optimism accumulates.
    double prev_a = 0.0;
    double prev_growth = 0.0;
    for (double ramp : {0.00003, 0.00006, 0.00012}) {
        PresetTuning tuning;
        tuning.alpha_ramp = ramp;
        tuning.horizon = 8000;
        Scenario sc = preset("full_cycle", tuning);
        Trajectory tr = run_scenario(sc);
        long shock_t = fired_at(tr, "beta_shock");
        REQUIRE(shock_t >= 0);
        REQUIRE(shock_t + 1 < static_cast<long>(tr.records.size()));

        // Parameters that produced the first post-shock state.
        const Params& used = tr.records[shock_t + 1].params;
        CHECK(used.beta == 1.6);
        CHECK(used.alpha < 1.01);  // below the cap, increment visible
        double a = composite_exponent(used);
        CHECK(a > prev_a);
        prev_a = a;

        // One step after the shock the log-gap to the (repelling) fixed
        // point has grown by exactly the factor a; larger a, faster crash.
        double log_fix = log_fixed_point(used);
        double g0 = std::log(tr.records[shock_t].i) - log_fix;
        double g1 = std::log(tr.records[shock_t + 1].i) - log_fix;
        CHECK(g0 > 0.0);
        CHECK(rel_err(g1 / g0, a) < 1e-9);
        CHECK(g1 / g0 > prev_growth);
        prev_growth = g1 / g0;
    }
}

TEST_CASE("rules fire in listed order when they co-fire") {
    Scenario sc;
    sc.initial_params = cycle_params();
    sc.initial_rate = 0.042;
    sc.horizon = 3;
    ScheduleRule add{"add",
                     {ConditionKind::TimeAtLeast, 0},
                     {ActionKind::AddToParam, ParamTarget::Alpha, 0.1},
                     true};
    ScheduleRule mul{"mul",
                     {ConditionKind::TimeAtLeast, 0},
                     {ActionKind::MultiplyParam, ParamTarget::Alpha, 2.0},
                     true};
    sc.rules = {add, mul};
    Trajectory ab = run_scenario(sc);
    CHECK(ab.records[1].params.alpha == doctest::Approx((1.0 + 0.1) * 2.0));

    sc.rules = {mul, add};
    Trajectory ba = run_scenario(sc);
    CHECK(ba.records[1].params.alpha == doctest::Approx(1.0 * 2.0 + 0.1));
}

TEST_CASE("swapping rules that never co-fire leaves the trajectory unchanged") {
    Scenario sc;
    sc.initial_params = cycle_params();
    sc.initial_rate = 0.042;
    sc.horizon = 40;
    ScheduleRule early{"early",
                       {ConditionKind::TimeAtLeast, 5},
                       {ActionKind::SetParam, ParamTarget::Alpha, 1.002},
                       true};
    Condition late_cond{ConditionKind::TimeAtLeast, 20};
    ScheduleRule late{"late",
                      late_cond,
                      {ActionKind::SetParam, ParamTarget::Beta, 1.001},
                      true};
    sc.rules = {early, late};
    Trajectory ab = run_scenario(sc);
    sc.rules = {late, early};
    Trajectory ba = run_scenario(sc);
    REQUIRE(ab.records.size() == ba.records.size());
    for (size_t n = 0; n < ab.records.size(); ++n) {
        CHECK(ab.records[n].i == ba.records[n].i);
        CHECK(ab.records[n].params.alpha == ba.records[n].params.alpha);
        CHECK(ab.records[n].params.beta == ba.records[n].params.beta);
    }
}

TEST_CASE("one-shot rules retire after firing") {
    Scenario sc;
    sc.initial_params = cycle_params();
    sc.initial_rate = 0.042;
    sc.horizon = 10;
    sc.rules = {{"bump",
                 {ConditionKind::TimeAtLeast, 2},
                 {ActionKind::AddToParam, ParamTarget::Alpha, 0.001},
                 true}};
    Trajectory tr = run_scenario(sc);
    int fire_count = 0;
    for (const TrajectoryRecord& rec : tr.records) {
        fire_count += static_cast<int>(rec.fired_rules.size());
    }
    CHECK(fire_count == 1);
    CHECK(tr.records.back().params.alpha == doctest::Approx(1.001));
}

TEST_CASE("ramp rules stop at their target and retire") {
    Scenario sc;
    sc.initial_params = cycle_params();
    sc.initial_rate = 0.042;
    sc.horizon = 20;
    sc.rules = {{"ramp",
                 {ConditionKind::Always},
                 {ActionKind::RampParam, ParamTarget::Alpha, 0.004, 1.01}}};
    Trajectory tr = run_scenario(sc);
    CHECK(tr.records.back().params.alpha == 1.01);
    // fires while moving (ceil(0.01 / 0.004) = 3 steps), then never again
    int fire_count = 0;
    for (const TrajectoryRecord& rec : tr.records) {
        fire_count += static_cast<int>(rec.fired_rules.size());
    }
    CHECK(fire_count == 3);
}

TEST_CASE("actions that would kill positivity are rejected and logged") {
    Scenario sc;
    sc.initial_params = cycle_params();
    sc.initial_rate = 0.042;
    sc.horizon = 5;
    sc.rules = {{"nuke",
                 {ConditionKind::TimeAtLeast, 1},
                 {ActionKind::AddToParam, ParamTarget::Alpha, -5.0}}};
    Trajectory tr = run_scenario(sc);
    CHECK_FALSE(tr.warnings.empty());
    CHECK(tr.warnings.front().find("nuke") != std::string::npos);
    for (const TrajectoryRecord& rec : tr.records) {
        CHECK(rec.params.alpha == 1.0);
        CHECK(rec.fired_rules.empty());  // rejected actions never count
    }
}

TEST_CASE("rules are evaluated on the pre-step state") {
    // The condition sees the recorded rate, not the one produced afterwards.
    Scenario sc;
    sc.initial_params = params_for(1.1, 0.04);  // bubble: rate falls fast
    sc.initial_rate = 0.035;
    sc.horizon = 30;
    // fires at the first *recorded* rate below 0.034
    sc.rules = {{"mark",
                 {ConditionKind::RateBelow, 0, 0.034},
                 {ActionKind::AddToParam, ParamTarget::K, 1e-9},
                 true}};
    Trajectory tr = run_scenario(sc);
    long t = fired_at(tr, "mark");
    REQUIRE(t >= 0);
    CHECK(tr.records[t].i < 0.034);
    CHECK(tr.records[t - 1].i >= 0.034);
}

TEST_CASE("divergent scenarios abort with a partial trajectory") {
    Scenario sc;
    sc.initial_params = params_for(1.1, 0.04);
    sc.initial_rate = 0.035;  // bubble with no rules: runs into the floor
    sc.horizon = 2000;
    Trajectory tr = run_scenario(sc);
    CHECK(tr.aborted);
    CHECK(tr.abort_reason.find("rate-underflow") != std::string::npos);
    CHECK(tr.records.size() < 2000);
    CHECK_FALSE(tr.records.empty());
}

TEST_CASE("regime condition drives rules") {
    Scenario sc;
    sc.initial_params = params_for(1.1, 0.04);
    sc.initial_rate = 0.045;  // crash from the start
    sc.horizon = 10;
    Condition crash{ConditionKind::RegimeIs};
    crash.regime = RegimeKind::Crash;
    sc.rules = {{"seen",
                 crash,
                 {ActionKind::AddToParam, ParamTarget::K, 1e-12},
                 true}};
    Trajectory tr = run_scenario(sc);
    CHECK(fired_at(tr, "seen") == 0);
}

TEST_CASE("distance condition encodes the criticality crossing") {
    // Fire when the absolute alpha stability distance drops below zero,
    // i.e. when the confidence ramp pushes a past 1.
    PresetTuning tuning;
    tuning.horizon = 200;
    Scenario sc = preset("bubble", tuning);
    Condition crossed{ConditionKind::DistanceBelow};
    crossed.selector = ParamSelector::Alpha;
    crossed.threshold = 0.0;
    sc.rules.push_back({"critical",
                        crossed,
                        {ActionKind::AddToParam, ParamTarget::K, 1e-12},
                        true});
    Trajectory tr = run_scenario(sc);
    long t = fired_at(tr, "critical");
    REQUIRE(t >= 0);
    CHECK(tr.records[t].risk.entry(ParamSelector::Alpha).stability_abs < 0.0);
    CHECK(tr.records[t - 1].risk.entry(ParamSelector::Alpha).stability_abs >=
          0.0);
}

TEST_CASE("sample_every thins output only, never the records") {
    PresetTuning tuning;
    tuning.horizon = 10;
    tuning.sample_every = 3;
    Scenario sc = preset("stable", tuning);
    Trajectory tr = run_scenario(sc);
    CHECK(tr.records.size() == 10);
    CHECK(tr.sample_every == 3);
}

TEST_CASE("phase detection hysteresis") {
    using K = RegimeKind;
    // single-step flicker is absorbed into the surrounding phase
    auto tr = synthetic_trajectory(
        {K::Stable, K::Stable, K::Bubble, K::Stable, K::Stable});
    auto phases = detect_phases(tr);
    REQUIRE(phases.size() == 1);
    CHECK(phases[0].label == K::Stable);
    CHECK(phases[0].end_t == 4);

    // a one-step blip between two different phases joins its predecessor
    tr = synthetic_trajectory(
        {K::Stable, K::Stable, K::Bubble, K::Crash, K::Crash});
    phases = detect_phases(tr);
    REQUIRE(phases.size() == 2);
    CHECK(phases[0].label == K::Stable);
    CHECK(phases[0].end_t == 2);
    CHECK(phases[1].label == K::Crash);
    CHECK(phases[1].start_t == 3);

    // a leading blip attaches to the first persistent phase
    tr = synthetic_trajectory({K::Crash, K::Stable, K::Stable});
    phases = detect_phases(tr);
    REQUIRE(phases.size() == 1);
    CHECK(phases[0].label == K::Stable);
    CHECK(phases[0].start_t == 0);

    // segments are contiguous and non-overlapping
    tr = synthetic_trajectory({K::Stable, K::Stable, K::Bubble, K::Bubble,
                               K::Crash, K::Crash, K::Stable, K::Stable});
    phases = detect_phases(tr);
    REQUIRE(phases.size() == 4);
    for (size_t n = 1; n < phases.size(); ++n) {
        CHECK(phases[n].start_t == phases[n - 1].end_t + 1);
    }

    CHECK_THROWS_AS(detect_phases(Trajectory{}), ModelError);
}

TEST_CASE("scenario validation aggregates problems") {
    Scenario sc;
    sc.initial_params = cycle_params();
    sc.initial_rate = -1.0;
    sc.horizon = 0;
    sc.rules = {{"dup", {ConditionKind::Always}, {}, false},
                {"dup", {ConditionKind::Always}, {}, false}};
    try {
        run_scenario(sc);
        FAIL("expected validation failure");
    } catch (const ModelError& e) {
        std::string msg = e.what();
        CHECK(msg.find("initial_rate") != std::string::npos);
        CHECK(msg.find("horizon") != std::string::npos);
        CHECK(msg.find("dup") != std::string::npos);
    }
}
