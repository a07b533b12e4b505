#pragma once

#include <optional>
#include <string>

#include "umwe/scenario.hpp"

namespace umwe {

// What a sweep varies. I0 sweeps the initial rate with parameters fixed.
enum class SweepTarget { Alpha, Beta, Mu, Nu, K, L, I0 };

const char* to_string(SweepTarget target);

struct SweepSpec {
    SweepTarget target = SweepTarget::Alpha;
    double lo = 0.0;
    double hi = 0.0;
    long steps = 2;  // grid points, endpoints included
    Params params;
    double i0 = 0.0;
    Guards guards;

    void validate() const;
    double grid_value(long index) const;
};

// One JSON document per run. Either a scenario payload, a sweep payload, or
// both; the CLI subcommand picks the one it needs.
struct RunConfig {
    std::optional<Scenario> scenario;
    std::optional<SweepSpec> sweep;
    int precision = 12;  // significant digits in CSV output, 6..17
    bool chart = false;
    std::string csv_path;
    std::string chart_path;
    std::string out_path;
};

// Parses and validates a config document. Parse failures report line and
// column; validation failures list every violation with its field path.
RunConfig parse_config(const std::string& text);
RunConfig load_config(const std::string& path);

// Serializes a scenario back to config JSON (the `preset` subcommand's
// output, ready to edit and feed to `simulate`).
std::string scenario_to_json(const Scenario& sc);

}  // namespace umwe
