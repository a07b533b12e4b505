"""Smoke tests for the python bindings: the heavy verification lives in the
C++ suites; these check that the surface is wired up and sane."""

import math

import pytest

import umwe


@pytest.fixture
def params():
    return umwe.Params(alpha=1, beta=1, mu=0.499, nu=0.499, k=105.5, l=0.0096)


def test_fixed_point(params):
    assert abs(umwe.fixed_point(params) - 0.04186) < 5e-5


def test_model_equations(params):
    n = umwe.loans_from_rate(0.042, params)
    d = umwe.defaults_from_rate(0.042, params)
    assert n == pytest.approx(49.7280674, rel=1e-8)
    assert d == pytest.approx(2.08856526, rel=1e-8)
    assert umwe.next_rate(n, d, params) == pytest.approx(d / n, rel=1e-12)
    assert umwe.expected_return(0.04) == -0.04


def test_step_and_closed_form(params):
    state = umwe.market_state(0.042, params)
    nxt = umwe.step(state, params)
    assert nxt.t == 1
    assert nxt.i == pytest.approx(umwe.rate_at(1, 0.042, params), rel=1e-12)


def test_validation_raises():
    with pytest.raises(umwe.ModelError):
        umwe.Params(alpha=-1, beta=1, mu=0.5, nu=0.5, k=1, l=1)
    with pytest.raises(umwe.ModelError):
        umwe.fixed_point(
            umwe.Params(alpha=1, beta=1, mu=0.5, nu=0.5, k=2, l=3)
        )  # a = 1: no fixed point


def test_classification(params):
    assert umwe.classify(params, 0.042).kind == umwe.RegimeKind.Stable
    hot = umwe.Params(alpha=1.2, beta=1, mu=0.499, nu=0.499, k=105.5, l=0.0096)
    kinds = {
        umwe.classify(hot, i0).kind
        for i0 in (1e-4, 1e4)
    }
    assert kinds == {umwe.RegimeKind.Bubble, umwe.RegimeKind.Crash}


def test_risk_report(params):
    report = umwe.risk_report(params, 0.042)
    entry = report.entry(umwe.ParamSelector.Alpha)
    assert entry.stability_abs == pytest.approx(0.002 / 0.499, rel=1e-9)
    assert entry.stability_attainable
    assert report.entry(umwe.ParamSelector.Delta).direction_abs is not None
    assert umwe.direction_distance(params, 105.5, umwe.ParamSelector.Alpha) is None


def test_critical_values(params):
    stab = umwe.critical_stability(params, umwe.ParamSelector.Alpha)
    asym = umwe.asymptotic_critical_direction(params, umwe.ParamSelector.Alpha)
    assert stab.value == asym.value
    assert stab.value == pytest.approx(0.501 / 0.499, rel=1e-12)


def test_full_cycle_phases():
    trajectory = umwe.run_scenario(umwe.preset("full_cycle"))
    assert not trajectory.aborted
    labels = [seg.label for seg in umwe.detect_phases(trajectory)]
    assert labels == [
        umwe.RegimeKind.Stable,
        umwe.RegimeKind.Bubble,
        umwe.RegimeKind.Crash,
        umwe.RegimeKind.Stable,
    ]
    last = trajectory.records[-1]
    assert abs(last.i - 0.0419) / 0.0419 < 0.01
    assert last.params.alpha == 1.0
    assert last.params.beta == 1.0


def test_custom_scenario_rules():
    scenario = umwe.preset("stable")
    rule = umwe.ScheduleRule()
    rule.id = "nudge"
    rule.condition.kind = umwe.ConditionKind.TimeAtLeast
    rule.condition.time = 10
    rule.action.kind = umwe.ActionKind.RampParam
    rule.action.target = umwe.ParamTarget.Alpha
    rule.action.value = 0.004
    rule.action.ramp_to = 1.002
    scenario.rules = [rule]
    trajectory = umwe.run_scenario(scenario)
    assert trajectory.records[-1].params.alpha == 1.002
    assert any("nudge" in rec.fired_rules for rec in trajectory.records)


def test_csv_emission(tmp_path):
    trajectory = umwe.run_scenario(umwe.preset("stable"))
    out = tmp_path / "stable.csv"
    umwe.emit_csv(trajectory, str(out), 12)
    lines = out.read_text().strip().splitlines()
    assert len(lines) == 201
    assert lines[0].startswith("t,i,N,D,alpha")
    assert math.isclose(
        float(lines[1].split(",")[1]), trajectory.records[0].i, rel_tol=1e-11
    )


def test_preset_names():
    assert set(umwe.preset_names()) == {
        "stable",
        "bubble",
        "full_cycle",
        "alpha_only_crash",
    }
    with pytest.raises(umwe.ModelError):
        umwe.preset("nope")
