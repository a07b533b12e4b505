#include "umwe/config.hpp"

#include <cmath>
#include <fstream>
#include <sstream>

#include "json.hpp"

namespace umwe {

using nlohmann::json;

const char* to_string(SweepTarget target) {
    switch (target) {
        case SweepTarget::Alpha: return "alpha";
        case SweepTarget::Beta: return "beta";
        case SweepTarget::Mu: return "mu";
        case SweepTarget::Nu: return "nu";
        case SweepTarget::K: return "k";
        case SweepTarget::L: return "l";
        case SweepTarget::I0: return "i0";
    }
    return "unknown";
}

void SweepSpec::validate() const {
    std::ostringstream issues;
    auto add = [&](const std::string& msg) {
        if (issues.tellp() > 0) issues << "; ";
        issues << msg;
    };
    if (!std::isfinite(lo) || !std::isfinite(hi) || !(lo < hi)) {
        add("sweep range requires lo < hi with finite bounds");
    }
    if (steps < 2) add("sweep needs at least 2 grid points");
    try {
        params.validate();
    } catch (const ModelError& e) {
        add(std::string("params: ") + e.what());
    }
    if (!(i0 > 0.0) || !std::isfinite(i0)) {
        add("i0 must be strictly positive and finite");
    }
    if (target != SweepTarget::I0 && !(lo > 0.0)) {
        add("parameter sweeps require lo > 0");
    }
    if (target == SweepTarget::I0 && !(lo > 0.0)) {
        add("i0 sweeps require lo > 0");
    }
    std::string all = issues.str();
    if (!all.empty()) throw ModelError(ErrorCode::Validation, all);
}

double SweepSpec::grid_value(long index) const {
    if (index <= 0) return lo;
    if (index >= steps - 1) return hi;
    return lo + (hi - lo) * static_cast<double>(index) /
                    static_cast<double>(steps - 1);
}

namespace {

struct Issues {
    std::vector<std::string> items;

    void add(const std::string& path, const std::string& msg) {
        items.push_back(path + ": " + msg);
    }
    [[noreturn]] void raise() const {
        std::ostringstream os;
        for (size_t n = 0; n < items.size(); ++n) {
            if (n > 0) os << "; ";
            os << items[n];
        }
        throw ModelError(ErrorCode::Validation, os.str());
    }
};

bool expect_object(const json& j, const std::string& path, Issues& issues) {
    if (!j.is_object()) {
        issues.add(path, "expected an object");
        return false;
    }
    return true;
}

std::optional<double> read_double(const json& j, const std::string& key,
                                  const std::string& path, Issues& issues) {
    if (!j.contains(key)) return std::nullopt;
    const json& v = j.at(key);
    if (!v.is_number()) {
        issues.add(path + "." + key, "expected a number");
        return std::nullopt;
    }
    return v.get<double>();
}

std::optional<long> read_long(const json& j, const std::string& key,
                              const std::string& path, Issues& issues) {
    if (!j.contains(key)) return std::nullopt;
    const json& v = j.at(key);
    if (!v.is_number_integer()) {
        issues.add(path + "." + key, "expected an integer");
        return std::nullopt;
    }
    return v.get<long>();
}

std::optional<std::string> read_string(const json& j, const std::string& key,
                                       const std::string& path,
                                       Issues& issues) {
    if (!j.contains(key)) return std::nullopt;
    const json& v = j.at(key);
    if (!v.is_string()) {
        issues.add(path + "." + key, "expected a string");
        return std::nullopt;
    }
    return v.get<std::string>();
}

double require_positive(const json& j, const std::string& key,
                        const std::string& path, Issues& issues) {
    auto v = read_double(j, key, path, issues);
    if (!v) {
        if (!j.contains(key)) issues.add(path + "." + key, "missing");
        return 0.0;
    }
    if (!(*v > 0.0) || !std::isfinite(*v)) {
        std::ostringstream os;
        os << "must be strictly positive and finite, got " << *v;
        issues.add(path + "." + key, os.str());
    }
    return *v;
}

Params read_params(const json& j, const std::string& path, Issues& issues) {
    Params p;
    if (!expect_object(j, path, issues)) return p;
    p.alpha = require_positive(j, "alpha", path, issues);
    p.beta = require_positive(j, "beta", path, issues);
    p.mu = require_positive(j, "mu", path, issues);
    p.nu = require_positive(j, "nu", path, issues);
    p.k = require_positive(j, "k", path, issues);
    p.l = require_positive(j, "l", path, issues);
    return p;
}

void merge_params(Params& p, const json& j, const std::string& path,
                  Issues& issues) {
    if (!expect_object(j, path, issues)) return;
    auto merge = [&](const char* key, double& field) {
        if (auto v = read_double(j, key, path, issues)) field = *v;
    };
    merge("alpha", p.alpha);
    merge("beta", p.beta);
    merge("mu", p.mu);
    merge("nu", p.nu);
    merge("k", p.k);
    merge("l", p.l);
}

std::optional<ParamSelector> selector_from_string(const std::string& name) {
    if (name == "alpha") return ParamSelector::Alpha;
    if (name == "beta") return ParamSelector::Beta;
    if (name == "mu") return ParamSelector::Mu;
    if (name == "nu") return ParamSelector::Nu;
    if (name == "Delta" || name == "delta") return ParamSelector::Delta;
    return std::nullopt;
}

std::optional<ParamTarget> target_from_string(const std::string& name) {
    if (name == "alpha") return ParamTarget::Alpha;
    if (name == "beta") return ParamTarget::Beta;
    if (name == "mu") return ParamTarget::Mu;
    if (name == "nu") return ParamTarget::Nu;
    if (name == "k") return ParamTarget::K;
    if (name == "l") return ParamTarget::L;
    return std::nullopt;
}

Condition read_condition(const json& j, const std::string& path,
                         Issues& issues) {
    Condition c;
    if (!expect_object(j, path, issues)) return c;
    auto kind = read_string(j, "kind", path, issues);
    if (!kind) {
        issues.add(path + ".kind", "missing");
        return c;
    }
    if (*kind == "always") {
        c.kind = ConditionKind::Always;
    } else if (*kind == "time_at_least") {
        c.kind = ConditionKind::TimeAtLeast;
        if (auto t = read_long(j, "time", path, issues)) {
            c.time = *t;
        } else {
            issues.add(path + ".time", "missing");
        }
    } else if (*kind == "rate_below" || *kind == "rate_above") {
        c.kind = (*kind == "rate_below") ? ConditionKind::RateBelow
                                         : ConditionKind::RateAbove;
        if (auto v = read_double(j, "threshold", path, issues)) {
            c.threshold = *v;
        } else {
            issues.add(path + ".threshold", "missing");
        }
    } else if (*kind == "regime_is") {
        c.kind = ConditionKind::RegimeIs;
        if (auto name = read_string(j, "regime", path, issues)) {
            if (auto regime = regime_kind_from_string(*name)) {
                c.regime = *regime;
            } else {
                issues.add(path + ".regime", "unknown regime '" + *name + "'");
            }
        } else {
            issues.add(path + ".regime", "missing");
        }
    } else if (*kind == "distance_below") {
        c.kind = ConditionKind::DistanceBelow;
        if (auto name = read_string(j, "selector", path, issues)) {
            if (auto sel = selector_from_string(*name)) {
                c.selector = *sel;
            } else {
                issues.add(path + ".selector",
                           "unknown selector '" + *name + "'");
            }
        } else {
            issues.add(path + ".selector", "missing");
        }
        if (auto v = read_double(j, "threshold", path, issues)) {
            c.threshold = *v;
        } else {
            issues.add(path + ".threshold", "missing");
        }
    } else {
        issues.add(path + ".kind", "unknown condition kind '" + *kind + "'");
    }
    return c;
}

Action read_action(const json& j, const std::string& path, Issues& issues) {
    Action a;
    if (!expect_object(j, path, issues)) return a;
    auto kind = read_string(j, "kind", path, issues);
    if (!kind) {
        issues.add(path + ".kind", "missing");
        return a;
    }
    if (*kind == "set_param") {
        a.kind = ActionKind::SetParam;
    } else if (*kind == "add_to_param") {
        a.kind = ActionKind::AddToParam;
    } else if (*kind == "multiply_param") {
        a.kind = ActionKind::MultiplyParam;
    } else if (*kind == "ramp_param") {
        a.kind = ActionKind::RampParam;
        if (auto to = read_double(j, "to", path, issues)) {
            a.ramp_to = *to;
        } else {
            issues.add(path + ".to", "missing");
        }
    } else {
        issues.add(path + ".kind", "unknown action kind '" + *kind + "'");
    }
    if (auto name = read_string(j, "target", path, issues)) {
        if (auto target = target_from_string(*name)) {
            a.target = *target;
        } else {
            issues.add(path + ".target", "unknown target '" + *name + "'");
        }
    } else {
        issues.add(path + ".target", "missing");
    }
    if (auto v = read_double(j, "value", path, issues)) {
        a.value = *v;
    } else {
        issues.add(path + ".value", "missing");
    }
    return a;
}

Guards read_guards(const json& j, const std::string& path, Issues& issues) {
    Guards g;
    if (!expect_object(j, path, issues)) return g;
    if (auto v = read_double(j, "eps_a", path, issues)) g.eps_a = *v;
    if (auto v = read_double(j, "eps_pos", path, issues)) g.eps_pos = *v;
    if (auto v = read_double(j, "eps_c", path, issues)) g.eps_c = *v;
    if (auto v = read_double(j, "min_rate", path, issues)) g.min_rate = *v;
    if (auto v = read_double(j, "log_guard", path, issues)) g.log_guard = *v;
    return g;
}

Scenario read_scenario(const json& j, const std::string& path,
                       Issues& issues) {
    Scenario sc;
    if (!expect_object(j, path, issues)) return sc;

    if (j.contains("preset")) {
        auto name = read_string(j, "preset", path, issues);
        if (!name) return sc;
        PresetTuning tuning;
        Params preset_params;
        bool params_overridden = false;
        if (j.contains("overrides")) {
            const json& o = j.at("overrides");
            std::string opath = path + ".overrides";
            if (!expect_object(o, opath, issues)) return sc;
            tuning.initial_rate = read_double(o, "initial_rate", opath, issues);
            tuning.horizon = read_long(o, "horizon", opath, issues);
            tuning.sample_every = read_long(o, "sample_every", opath, issues);
            tuning.rate_floor = read_double(o, "rate_floor", opath, issues);
            tuning.calm_period = read_long(o, "calm_period", opath, issues);
            tuning.alpha_ramp = read_double(o, "alpha_ramp", opath, issues);
            tuning.alpha_cap = read_double(o, "alpha_cap", opath, issues);
            tuning.beta_shock = read_double(o, "beta_shock", opath, issues);
            tuning.alpha_retreat =
                read_double(o, "alpha_retreat", opath, issues);
            tuning.beta_normalize =
                read_double(o, "beta_normalize", opath, issues);
            tuning.optimism_ramp =
                read_double(o, "optimism_ramp", opath, issues);
            if (o.contains("params")) params_overridden = true;
        }
        try {
            Scenario base = preset(*name);
            if (params_overridden) {
                preset_params = base.initial_params;
                merge_params(preset_params, j.at("overrides").at("params"),
                             path + ".overrides.params", issues);
                tuning.params = preset_params;
            }
            sc = preset(*name, tuning);
        } catch (const ModelError& e) {
            issues.add(path + ".preset", e.what());
        }
        return sc;
    }

    if (j.contains("params")) {
        sc.initial_params = read_params(j.at("params"), path + ".params", issues);
    } else {
        issues.add(path + ".params", "missing");
    }
    if (auto v = read_double(j, "initial_rate", path, issues)) {
        sc.initial_rate = *v;
    } else {
        issues.add(path + ".initial_rate", "missing");
    }
    if (auto v = read_long(j, "horizon", path, issues)) {
        sc.horizon = *v;
    } else {
        issues.add(path + ".horizon", "missing");
    }
    if (auto v = read_double(j, "rate_floor", path, issues)) sc.rate_floor = *v;
    if (auto v = read_long(j, "sample_every", path, issues)) {
        sc.sample_every = *v;
    }
    if (j.contains("guards")) {
        sc.guards = read_guards(j.at("guards"), path + ".guards", issues);
    }
    if (j.contains("rules")) {
        const json& rules = j.at("rules");
        if (!rules.is_array()) {
            issues.add(path + ".rules", "expected an array");
        } else {
            for (size_t n = 0; n < rules.size(); ++n) {
                std::string rpath = path + ".rules[" + std::to_string(n) + "]";
                const json& rj = rules.at(n);
                if (!expect_object(rj, rpath, issues)) continue;
                ScheduleRule rule;
                if (auto id = read_string(rj, "id", rpath, issues)) {
                    rule.id = *id;
                } else {
                    issues.add(rpath + ".id", "missing");
                }
                if (rj.contains("condition")) {
                    rule.condition = read_condition(rj.at("condition"),
                                                    rpath + ".condition",
                                                    issues);
                } else {
                    issues.add(rpath + ".condition", "missing");
                }
                if (rj.contains("action")) {
                    rule.action =
                        read_action(rj.at("action"), rpath + ".action", issues);
                } else {
                    issues.add(rpath + ".action", "missing");
                }
                if (rj.contains("one_shot")) {
                    if (rj.at("one_shot").is_boolean()) {
                        rule.one_shot = rj.at("one_shot").get<bool>();
                    } else {
                        issues.add(rpath + ".one_shot", "expected a boolean");
                    }
                }
                sc.rules.push_back(std::move(rule));
            }
        }
    }
    return sc;
}

SweepSpec read_sweep(const json& j, const std::string& path, Issues& issues) {
    SweepSpec spec;
    if (!expect_object(j, path, issues)) return spec;
    if (auto name = read_string(j, "target", path, issues)) {
        bool found = false;
        for (SweepTarget t : {SweepTarget::Alpha, SweepTarget::Beta,
                              SweepTarget::Mu, SweepTarget::Nu, SweepTarget::K,
                              SweepTarget::L, SweepTarget::I0}) {
            if (*name == to_string(t)) {
                spec.target = t;
                found = true;
                break;
            }
        }
        if (!found) {
            issues.add(path + ".target", "unknown target '" + *name + "'");
        }
    } else {
        issues.add(path + ".target", "missing");
    }
    if (auto v = read_double(j, "lo", path, issues)) {
        spec.lo = *v;
    } else {
        issues.add(path + ".lo", "missing");
    }
    if (auto v = read_double(j, "hi", path, issues)) {
        spec.hi = *v;
    } else {
        issues.add(path + ".hi", "missing");
    }
    if (auto v = read_long(j, "steps", path, issues)) {
        spec.steps = *v;
    } else {
        issues.add(path + ".steps", "missing");
    }
    if (j.contains("params")) {
        spec.params = read_params(j.at("params"), path + ".params", issues);
    } else {
        issues.add(path + ".params", "missing");
    }
    if (auto v = read_double(j, "i0", path, issues)) {
        spec.i0 = *v;
    } else {
        issues.add(path + ".i0", "missing");
    }
    if (j.contains("guards")) {
        spec.guards = read_guards(j.at("guards"), path + ".guards", issues);
    }
    return spec;
}

}  // namespace

RunConfig parse_config(const std::string& text) {
    json j;
    try {
        j = json::parse(text);
    } catch (const json::parse_error& e) {
        // Report line/column rather than a byte offset.
        size_t line = 1, column = 1;
        size_t limit = e.byte > 0 ? e.byte - 1 : 0;
        for (size_t n = 0; n < limit && n < text.size(); ++n) {
            if (text[n] == '\n') {
                ++line;
                column = 1;
            } else {
                ++column;
            }
        }
        std::ostringstream os;
        os << "config parse error at line " << line << ", column " << column
           << ": " << e.what();
        throw ModelError(ErrorCode::Parse, os.str());
    }

    Issues issues;
    RunConfig cfg;
    if (!j.is_object()) {
        issues.add("config", "expected a JSON object");
        issues.raise();
    }
    if (j.contains("scenario")) {
        cfg.scenario = read_scenario(j.at("scenario"), "scenario", issues);
    }
    if (j.contains("sweep")) {
        cfg.sweep = read_sweep(j.at("sweep"), "sweep", issues);
    }
    if (j.contains("precision")) {
        if (auto v = read_long(j, "precision", "config", issues)) {
            cfg.precision = static_cast<int>(*v);
        }
    }
    if (cfg.precision < 6 || cfg.precision > 17) {
        issues.add("config.precision", "must be in [6, 17]");
    }
    if (j.contains("chart")) {
        if (j.at("chart").is_boolean()) {
            cfg.chart = j.at("chart").get<bool>();
        } else {
            issues.add("config.chart", "expected a boolean");
        }
    }
    if (auto v = read_string(j, "csv_path", "config", issues)) cfg.csv_path = *v;
    if (auto v = read_string(j, "chart_path", "config", issues)) {
        cfg.chart_path = *v;
    }
    if (auto v = read_string(j, "out_path", "config", issues)) cfg.out_path = *v;

    // Semantic validation on top of the structural pass.
    if (issues.items.empty()) {
        if (cfg.scenario) {
            try {
                cfg.scenario->validate();
            } catch (const ModelError& e) {
                issues.add("scenario", e.what());
            }
        }
        if (cfg.sweep) {
            try {
                cfg.sweep->validate();
            } catch (const ModelError& e) {
                issues.add("sweep", e.what());
            }
        }
    }
    if (!issues.items.empty()) issues.raise();
    return cfg;
}

RunConfig load_config(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) {
        throw ModelError(ErrorCode::Io, "cannot read config file: " + path);
    }
    std::ostringstream buffer;
    buffer << in.rdbuf();
    return parse_config(buffer.str());
}

namespace {

json condition_to_json(const Condition& c) {
    json j;
    switch (c.kind) {
        case ConditionKind::Always:
            j["kind"] = "always";
            break;
        case ConditionKind::TimeAtLeast:
            j["kind"] = "time_at_least";
            j["time"] = c.time;
            break;
        case ConditionKind::RateBelow:
            j["kind"] = "rate_below";
            j["threshold"] = c.threshold;
            break;
        case ConditionKind::RateAbove:
            j["kind"] = "rate_above";
            j["threshold"] = c.threshold;
            break;
        case ConditionKind::RegimeIs:
            j["kind"] = "regime_is";
            j["regime"] = to_string(c.regime);
            break;
        case ConditionKind::DistanceBelow:
            j["kind"] = "distance_below";
            j["selector"] = to_string(c.selector);
            j["threshold"] = c.threshold;
            break;
    }
    return j;
}

json action_to_json(const Action& a) {
    json j;
    switch (a.kind) {
        case ActionKind::SetParam: j["kind"] = "set_param"; break;
        case ActionKind::AddToParam: j["kind"] = "add_to_param"; break;
        case ActionKind::MultiplyParam: j["kind"] = "multiply_param"; break;
        case ActionKind::RampParam:
            j["kind"] = "ramp_param";
            j["to"] = a.ramp_to;
            break;
    }
    j["target"] = to_string(a.target);
    j["value"] = a.value;
    return j;
}

}  // namespace

std::string scenario_to_json(const Scenario& sc) {
    json s;
    s["params"] = {{"alpha", sc.initial_params.alpha},
                   {"beta", sc.initial_params.beta},
                   {"mu", sc.initial_params.mu},
                   {"nu", sc.initial_params.nu},
                   {"k", sc.initial_params.k},
                   {"l", sc.initial_params.l}};
    s["initial_rate"] = sc.initial_rate;
    s["horizon"] = sc.horizon;
    s["rate_floor"] = sc.rate_floor;
    s["sample_every"] = sc.sample_every;
    json rules = json::array();
    for (const ScheduleRule& rule : sc.rules) {
        json r;
        r["id"] = rule.id;
        r["condition"] = condition_to_json(rule.condition);
        r["action"] = action_to_json(rule.action);
        r["one_shot"] = rule.one_shot;
        rules.push_back(r);
    }
    s["rules"] = rules;
    json root;
    root["scenario"] = s;
    root["precision"] = 12;
    return root.dump(2) + "\n";
}

}  // namespace umwe
