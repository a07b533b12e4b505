"""Unified Marshall-Walras credit-market model.

Deterministic credit-cycle dynamics with regime classification,
systemic-risk distance measures, and a trigger-driven scenario engine.
The heavy lifting lives in the C++ extension; this package re-exports it.
"""

from umwe._core import (  # noqa: F401
    Action,
    ActionKind,
    Condition,
    ConditionKind,
    CriticalValue,
    DistanceMode,
    Guards,
    LegacyMweParams,
    LegacyVariant,
    MarketState,
    ModelError,
    ParamSelector,
    ParamTarget,
    Params,
    PhaseSegment,
    Regime,
    RegimeKind,
    RiskEntry,
    RiskReport,
    Scenario,
    ScheduleRule,
    Trajectory,
    TrajectoryRecord,
    __version__,
    asymptotic_critical_direction,
    bifurcation_constant,
    classify,
    composite_exponent,
    critical_direction,
    critical_stability,
    defaults_from_rate,
    detect_phases,
    direction_distance,
    emit_chart,
    emit_csv,
    expected_return,
    fixed_point,
    legacy_mwe_fixed_point,
    legacy_mwe_step,
    loans_from_rate,
    market_state,
    next_rate,
    position_expression,
    preset,
    preset_names,
    rate_at,
    risk_report,
    run_scenario,
    scenario_to_json,
    stability_distance,
    step,
)
