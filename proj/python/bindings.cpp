#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <sstream>

#include "umwe/config.hpp"
#include "umwe/output.hpp"

namespace py = pybind11;
using namespace umwe;

namespace {

std::string params_repr(const Params& p) {
    std::ostringstream os;
    os << "Params(alpha=" << p.alpha << ", beta=" << p.beta << ", mu=" << p.mu
       << ", nu=" << p.nu << ", k=" << p.k << ", l=" << p.l << ")";
    return os.str();
}

}  // namespace

PYBIND11_MODULE(_core, m) {
    m.doc() = "Unified Marshall-Walras credit-market model: dynamics, regime "
              "classification, systemic-risk distances, and the scenario "
              "engine.";

    static py::exception<ModelError> model_error(m, "ModelError");
    py::register_exception_translator([](std::exception_ptr p) {
        try {
            if (p) std::rethrow_exception(p);
        } catch (const ModelError& e) {
            std::string msg =
                std::string(to_string(e.code())) + ": " + e.what();
#if defined(PYBIND11_VERSION_HEX) && PYBIND11_VERSION_HEX >= 0x020C0000
            py::set_error(model_error, msg.c_str());
#else
            model_error(msg.c_str());
#endif
        }
    });

    py::class_<Guards>(m, "Guards")
        .def(py::init<>())
        .def_readwrite("eps_a", &Guards::eps_a)
        .def_readwrite("eps_pos", &Guards::eps_pos)
        .def_readwrite("eps_c", &Guards::eps_c)
        .def_readwrite("min_rate", &Guards::min_rate)
        .def_readwrite("log_guard", &Guards::log_guard);

    py::class_<Params>(m, "Params")
        .def(py::init([](double alpha, double beta, double mu, double nu,
                         double k, double l) {
                 Params p{alpha, beta, mu, nu, k, l};
                 p.validate();
                 return p;
             }),
             py::arg("alpha"), py::arg("beta"), py::arg("mu"), py::arg("nu"),
             py::arg("k"), py::arg("l"))
        .def_readwrite("alpha", &Params::alpha)
        .def_readwrite("beta", &Params::beta)
        .def_readwrite("mu", &Params::mu)
        .def_readwrite("nu", &Params::nu)
        .def_readwrite("k", &Params::k)
        .def_readwrite("l", &Params::l)
        .def("validate", &Params::validate)
        .def("__repr__", &params_repr);

    m.def("composite_exponent", &composite_exponent, py::arg("params"));
    m.def("bifurcation_constant", &bifurcation_constant, py::arg("params"),
          py::arg("guards") = Guards{});
    m.def("fixed_point", &fixed_point, py::arg("params"),
          py::arg("guards") = Guards{});
    m.def("loans_from_rate", &loans_from_rate, py::arg("rate"),
          py::arg("params"), py::arg("guards") = Guards{});
    m.def("defaults_from_rate", &defaults_from_rate, py::arg("rate"),
          py::arg("params"), py::arg("guards") = Guards{});
    m.def("next_rate", &next_rate, py::arg("n_loans"), py::arg("d_defaults"),
          py::arg("params"), py::arg("guards") = Guards{});
    m.def("expected_return", &expected_return, py::arg("rate"));
    m.def("rate_at", &rate_at, py::arg("t"), py::arg("i0"), py::arg("params"),
          py::arg("guards") = Guards{});

    py::class_<MarketState>(m, "MarketState")
        .def(py::init<>())
        .def_readwrite("t", &MarketState::t)
        .def_readwrite("i", &MarketState::i)
        .def_readwrite("n_loans", &MarketState::n_loans)
        .def_readwrite("d_defaults", &MarketState::d_defaults);
    m.def("market_state", &market_state, py::arg("rate"), py::arg("params"),
          py::arg("t") = 0L, py::arg("guards") = Guards{});
    m.def("step", &step, py::arg("state"), py::arg("params"),
          py::arg("guards") = Guards{});

    py::enum_<LegacyVariant>(m, "LegacyVariant")
        .value("LoanAccelerator", LegacyVariant::LoanAccelerator)
        .value("CrisisAccelerator", LegacyVariant::CrisisAccelerator);
    py::class_<LegacyMweParams>(m, "LegacyMweParams")
        .def(py::init([](LegacyVariant variant, double i0, double alpha,
                         double mu, double beta, double k) {
                 LegacyMweParams lp{variant, i0, alpha, mu, beta, k};
                 lp.validate();
                 return lp;
             }),
             py::arg("variant"), py::arg("i0"), py::arg("alpha"),
             py::arg("mu") = 0.0, py::arg("beta") = 0.0, py::arg("k"))
        .def_readwrite("variant", &LegacyMweParams::variant)
        .def_readwrite("i0", &LegacyMweParams::i0)
        .def_readwrite("alpha", &LegacyMweParams::alpha)
        .def_readwrite("mu", &LegacyMweParams::mu)
        .def_readwrite("beta", &LegacyMweParams::beta)
        .def_readwrite("k", &LegacyMweParams::k);
    m.def("legacy_mwe_step", &legacy_mwe_step, py::arg("rate"),
          py::arg("params"), py::arg("guards") = Guards{});
    m.def("legacy_mwe_fixed_point", &legacy_mwe_fixed_point, py::arg("params"),
          py::arg("guards") = Guards{});

    py::enum_<RegimeKind>(m, "RegimeKind")
        .value("Stable", RegimeKind::Stable)
        .value("AtFixedPoint", RegimeKind::AtFixedPoint)
        .value("Bubble", RegimeKind::Bubble)
        .value("Crash", RegimeKind::Crash)
        .value("BifurcationConstant", RegimeKind::BifurcationConstant)
        .value("BifurcationToZero", RegimeKind::BifurcationToZero)
        .value("BifurcationToInfinity", RegimeKind::BifurcationToInfinity);

    py::class_<Regime>(m, "Regime")
        .def_readonly("kind", &Regime::kind)
        .def_readonly("a", &Regime::a)
        .def_readonly("i_fix", &Regime::i_fix)
        .def_readonly("log_i_fix", &Regime::log_i_fix)
        .def("__repr__", [](const Regime& r) {
            std::ostringstream os;
            os << "Regime(" << to_string(r.kind) << ", a=" << r.a << ")";
            return os.str();
        });
    m.def("classify", &classify, py::arg("params"), py::arg("i0"),
          py::arg("guards") = Guards{});

    py::enum_<ParamSelector>(m, "ParamSelector")
        .value("Alpha", ParamSelector::Alpha)
        .value("Beta", ParamSelector::Beta)
        .value("Mu", ParamSelector::Mu)
        .value("Nu", ParamSelector::Nu)
        .value("Delta", ParamSelector::Delta);

    py::class_<CriticalValue>(m, "CriticalValue")
        .def_readonly("value", &CriticalValue::value)
        .def_readonly("attainable", &CriticalValue::attainable)
        .def("__repr__", [](const CriticalValue& v) {
            std::ostringstream os;
            os << "CriticalValue(" << v.value
               << (v.attainable ? ", attainable" : ", non-attainable") << ")";
            return os.str();
        });
    m.def("critical_stability", &critical_stability, py::arg("params"),
          py::arg("selector"));
    m.def("critical_direction", &critical_direction, py::arg("params"),
          py::arg("i_t"), py::arg("selector"));
    m.def("asymptotic_critical_direction", &asymptotic_critical_direction,
          py::arg("params"), py::arg("selector"));
    m.def("position_expression", &position_expression, py::arg("params"),
          py::arg("log_rate"));

    py::enum_<DistanceMode>(m, "DistanceMode")
        .value("Absolute", DistanceMode::Absolute)
        .value("Relative", DistanceMode::Relative);
    m.def("stability_distance", &stability_distance, py::arg("params"),
          py::arg("selector"), py::arg("mode") = DistanceMode::Absolute);
    m.def("direction_distance", &direction_distance, py::arg("params"),
          py::arg("i_t"), py::arg("selector"),
          py::arg("mode") = DistanceMode::Absolute);

    py::class_<RiskEntry>(m, "RiskEntry")
        .def_readonly("stability_abs", &RiskEntry::stability_abs)
        .def_readonly("stability_rel", &RiskEntry::stability_rel)
        .def_readonly("stability_attainable", &RiskEntry::stability_attainable)
        .def_readonly("direction_abs", &RiskEntry::direction_abs)
        .def_readonly("direction_rel", &RiskEntry::direction_rel);
    py::class_<RiskReport>(m, "RiskReport")
        .def_readonly("a", &RiskReport::a)
        .def_readonly("i_fix", &RiskReport::i_fix)
        .def_readonly("regime", &RiskReport::regime)
        .def("entry", &RiskReport::entry, py::arg("selector"),
             py::return_value_policy::reference_internal);
    m.def("risk_report", &risk_report, py::arg("params"), py::arg("i_t"),
          py::arg("guards") = Guards{});

    py::enum_<ConditionKind>(m, "ConditionKind")
        .value("Always", ConditionKind::Always)
        .value("TimeAtLeast", ConditionKind::TimeAtLeast)
        .value("RateBelow", ConditionKind::RateBelow)
        .value("RateAbove", ConditionKind::RateAbove)
        .value("RegimeIs", ConditionKind::RegimeIs)
        .value("DistanceBelow", ConditionKind::DistanceBelow);
    py::class_<Condition>(m, "Condition")
        .def(py::init<>())
        .def_readwrite("kind", &Condition::kind)
        .def_readwrite("time", &Condition::time)
        .def_readwrite("threshold", &Condition::threshold)
        .def_readwrite("regime", &Condition::regime)
        .def_readwrite("selector", &Condition::selector);

    py::enum_<ParamTarget>(m, "ParamTarget")
        .value("Alpha", ParamTarget::Alpha)
        .value("Beta", ParamTarget::Beta)
        .value("Mu", ParamTarget::Mu)
        .value("Nu", ParamTarget::Nu)
        .value("K", ParamTarget::K)
        .value("L", ParamTarget::L);
    py::enum_<ActionKind>(m, "ActionKind")
        .value("SetParam", ActionKind::SetParam)
        .value("AddToParam", ActionKind::AddToParam)
        .value("MultiplyParam", ActionKind::MultiplyParam)
        .value("RampParam", ActionKind::RampParam);
    py::class_<Action>(m, "Action")
        .def(py::init<>())
        .def_readwrite("kind", &Action::kind)
        .def_readwrite("target", &Action::target)
        .def_readwrite("value", &Action::value)
        .def_readwrite("ramp_to", &Action::ramp_to);
    py::class_<ScheduleRule>(m, "ScheduleRule")
        .def(py::init<>())
        .def_readwrite("id", &ScheduleRule::id)
        .def_readwrite("condition", &ScheduleRule::condition)
        .def_readwrite("action", &ScheduleRule::action)
        .def_readwrite("one_shot", &ScheduleRule::one_shot);

    py::class_<Scenario>(m, "Scenario")
        .def(py::init<>())
        .def_readwrite("initial_params", &Scenario::initial_params)
        .def_readwrite("initial_rate", &Scenario::initial_rate)
        .def_readwrite("horizon", &Scenario::horizon)
        .def_readwrite("rules", &Scenario::rules)
        .def_readwrite("rate_floor", &Scenario::rate_floor)
        .def_readwrite("sample_every", &Scenario::sample_every)
        .def_readwrite("guards", &Scenario::guards)
        .def("validate", &Scenario::validate);

    py::class_<TrajectoryRecord>(m, "TrajectoryRecord")
        .def_readonly("t", &TrajectoryRecord::t)
        .def_readonly("i", &TrajectoryRecord::i)
        .def_readonly("n_loans", &TrajectoryRecord::n_loans)
        .def_readonly("d_defaults", &TrajectoryRecord::d_defaults)
        .def_readonly("params", &TrajectoryRecord::params)
        .def_readonly("risk", &TrajectoryRecord::risk)
        .def_readonly("fired_rules", &TrajectoryRecord::fired_rules);
    py::class_<Trajectory>(m, "Trajectory")
        .def_readonly("records", &Trajectory::records)
        .def_readonly("sample_every", &Trajectory::sample_every)
        .def_readonly("aborted", &Trajectory::aborted)
        .def_readonly("abort_reason", &Trajectory::abort_reason)
        .def_readonly("warnings", &Trajectory::warnings)
        .def("__len__",
             [](const Trajectory& tr) { return tr.records.size(); });
    m.def("run_scenario", &run_scenario, py::arg("scenario"));
    m.def("preset",
          py::overload_cast<const std::string&>(&preset), py::arg("name"));
    m.def("preset_names", &preset_names);

    py::class_<PhaseSegment>(m, "PhaseSegment")
        .def_readonly("label", &PhaseSegment::label)
        .def_readonly("start_t", &PhaseSegment::start_t)
        .def_readonly("end_t", &PhaseSegment::end_t)
        .def("__repr__", [](const PhaseSegment& s) {
            std::ostringstream os;
            os << "PhaseSegment(" << to_string(s.label) << ", " << s.start_t
               << ".." << s.end_t << ")";
            return os.str();
        });
    m.def("detect_phases", &detect_phases, py::arg("trajectory"));

    m.def("scenario_to_json", &scenario_to_json, py::arg("scenario"));
    m.def(
        "emit_csv",
        [](const Trajectory& tr, const std::string& path, int precision) {
            RunConfig cfg;
            cfg.precision = precision;
            emit_csv(tr, cfg, path);
        },
        py::arg("trajectory"), py::arg("path"), py::arg("precision") = 12);
    m.def(
        "emit_chart",
        [](const Trajectory& tr, const std::string& path) {
            emit_chart(tr, path);
        },
        py::arg("trajectory"), py::arg("path"));

    m.attr("__version__") = "0.1.0";
}
