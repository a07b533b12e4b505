// Command-line surface for the credit-market model: scenario simulation,
// risk analysis at a point, parameter sweeps, and preset export.
//
// Exit codes: 0 success, 1 validation or parse failure, 2 runtime divergence
// abort, 3 I/O failure.
#include <cstdio>
#include <fstream>
#include <iostream>
#include <string>

#include "CLI11.hpp"
#include "json.hpp"
#include "umwe/config.hpp"
#include "umwe/output.hpp"

namespace {

using nlohmann::json;

int exit_code_for(const umwe::ModelError& e) {
    switch (e.code()) {
        case umwe::ErrorCode::Io: return 3;
        case umwe::ErrorCode::RateUnderflow:
        case umwe::ErrorCode::DomainOverflow:
        case umwe::ErrorCode::ExponentOverflow: return 2;
        default: return 1;
    }
}

json risk_report_json(const umwe::RiskReport& report) {
    json j;
    j["a"] = report.a;
    j["i_fix"] = report.i_fix ? json(*report.i_fix) : json(nullptr);
    j["regime"] = umwe::to_string(report.regime.kind);
    json selectors;
    for (umwe::ParamSelector sel :
         {umwe::ParamSelector::Alpha, umwe::ParamSelector::Beta,
          umwe::ParamSelector::Mu, umwe::ParamSelector::Nu,
          umwe::ParamSelector::Delta}) {
        const umwe::RiskEntry& entry = report.entry(sel);
        json e;
        e["stability_abs"] = entry.stability_abs;
        e["stability_rel"] = entry.stability_rel;
        e["stability_attainable"] = entry.stability_attainable;
        e["direction_abs"] =
            entry.direction_abs ? json(*entry.direction_abs) : json(nullptr);
        e["direction_rel"] =
            entry.direction_rel ? json(*entry.direction_rel) : json(nullptr);
        selectors[umwe::to_string(sel)] = e;
    }
    j["selectors"] = selectors;
    return j;
}

int run_simulate(const std::string& config_path, std::string csv_path,
                 std::string chart_path, int precision, bool precision_set) {
    umwe::RunConfig cfg = umwe::load_config(config_path);
    if (!cfg.scenario) {
        throw umwe::ModelError(umwe::ErrorCode::Validation,
                               "config has no scenario section");
    }
    if (precision_set) cfg.precision = precision;
    if (!csv_path.empty()) cfg.csv_path = csv_path;
    if (!chart_path.empty()) {
        cfg.chart_path = chart_path;
        cfg.chart = true;
    }
    if (cfg.csv_path.empty()) {
        throw umwe::ModelError(umwe::ErrorCode::Validation,
                               "no CSV output path (--csv or csv_path)");
    }
    umwe::check_writable(cfg.csv_path);
    if (cfg.chart && cfg.chart_path.empty()) {
        throw umwe::ModelError(umwe::ErrorCode::Validation,
                               "chart requested but no chart path given");
    }
    if (cfg.chart) umwe::check_writable(cfg.chart_path);

    umwe::Trajectory tr = umwe::run_scenario(*cfg.scenario);
    for (const std::string& warning : tr.warnings) {
        std::cerr << "warning: " << warning << "\n";
    }
    if (tr.records.empty()) {
        throw umwe::ModelError(umwe::ErrorCode::Validation,
                               "scenario aborted before the first record: " +
                                   tr.abort_reason);
    }
    umwe::emit_csv(tr, cfg, cfg.csv_path);
    if (cfg.chart) umwe::emit_chart(tr, cfg.chart_path);
    if (tr.aborted) {
        std::cerr << "aborted: " << tr.abort_reason << "\n"
                  << "partial trajectory with " << tr.records.size()
                  << " records written to " << cfg.csv_path << "\n";
        return 2;
    }
    std::cout << tr.records.size() << " records written to " << cfg.csv_path
              << "\n";
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"unified credit-market model: simulation, regimes, and "
                 "systemic-risk distances"};
    app.require_subcommand(1);
    int precision = 12;
    app.add_option("--precision", precision,
                   "significant digits in CSV output (6..17)");

    auto* simulate = app.add_subcommand(
        "simulate", "run a scenario config and write the trajectory CSV");
    std::string sim_config, sim_csv, sim_chart;
    simulate->add_option("--config", sim_config, "config JSON path")
        ->required();
    simulate->add_option("--csv", sim_csv, "trajectory CSV output path");
    simulate->add_option("--chart", sim_chart, "SVG chart output path");

    auto* analyze = app.add_subcommand(
        "analyze", "print the full risk report for one state as JSON");
    umwe::Params ap;
    double analyze_i0 = 0.0;
    analyze->add_option("--alpha", ap.alpha, "rate sensitivity to loans")
        ->required();
    analyze->add_option("--beta", ap.beta, "rate sensitivity to defaults")
        ->required();
    analyze->add_option("--mu", ap.mu, "credit demand elasticity")->required();
    analyze->add_option("--nu", ap.nu, "default elasticity")->required();
    analyze->add_option("--k", ap.k, "loan scale")->required();
    analyze->add_option("--l", ap.l, "default scale")->required();
    analyze->add_option("--i0", analyze_i0, "current interest rate")
        ->required();

    auto* sweep = app.add_subcommand(
        "sweep", "tabulate regime and distances across a parameter grid");
    std::string sweep_config, sweep_out;
    sweep->add_option("--config", sweep_config, "config JSON path")
        ->required();
    sweep->add_option("--out", sweep_out, "sweep CSV output path")->required();

    auto* preset_cmd = app.add_subcommand(
        "preset", "write a ready-to-edit scenario config for a named preset");
    std::string preset_name, preset_out;
    preset_cmd
        ->add_option("name", preset_name,
                     "stable, bubble, full_cycle, or alpha_only_crash")
        ->required();
    preset_cmd->add_option("--out", preset_out, "config JSON output path")
        ->required();

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        if (e.get_exit_code() == 0) return app.exit(e);  // --help
        app.exit(e);
        return 1;
    }

    try {
        if (precision < 6 || precision > 17) {
            throw umwe::ModelError(umwe::ErrorCode::Validation,
                                   "--precision must be in [6, 17]");
        }
        bool precision_set = app.count("--precision") > 0;
        if (simulate->parsed()) {
            return run_simulate(sim_config, sim_csv, sim_chart, precision,
                                precision_set);
        }
        if (analyze->parsed()) {
            umwe::RiskReport report = umwe::risk_report(ap, analyze_i0);
            std::cout << risk_report_json(report).dump(2) << "\n";
            return 0;
        }
        if (sweep->parsed()) {
            umwe::RunConfig cfg = umwe::load_config(sweep_config);
            if (!cfg.sweep) {
                throw umwe::ModelError(umwe::ErrorCode::Validation,
                                       "config has no sweep section");
            }
            if (precision_set) cfg.precision = precision;
            umwe::check_writable(sweep_out);
            umwe::run_sweep(*cfg.sweep, cfg, sweep_out);
            std::cout << cfg.sweep->steps << " grid points written to "
                      << sweep_out << "\n";
            return 0;
        }
        if (preset_cmd->parsed()) {
            umwe::Scenario sc = umwe::preset(preset_name);
            umwe::check_writable(preset_out);
            std::ofstream out(preset_out, std::ios::binary | std::ios::trunc);
            if (!out) {
                throw umwe::ModelError(umwe::ErrorCode::Io,
                                       "cannot open for write: " + preset_out);
            }
            out << umwe::scenario_to_json(sc);
            if (!out) {
                throw umwe::ModelError(umwe::ErrorCode::Io,
                                       "write failed: " + preset_out);
            }
            std::cout << "wrote " << preset_out << "\n";
            return 0;
        }
    } catch (const umwe::ModelError& e) {
        std::cerr << "error (" << umwe::to_string(e.code()) << "): " << e.what()
                  << "\n";
        return exit_code_for(e);
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
    return 0;
}
