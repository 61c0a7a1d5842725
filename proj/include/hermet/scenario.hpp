#pragma once

// Scenario runner behind the CLI: load a configuration, execute the selected
// checks against the configured model and metric, and emit machine-readable
// reports. Every run is reproducible from (config, seed, engine version);
// the only nondeterministic content is isolated under the "timing" key.

#include <variant>

#include "hermet/presets.hpp"
#include "hermet/serialize.hpp"

namespace hermet {

enum class ExitCode : int {
    Ok = 0,
    ConfigError = 2,
    Bandwidth = 3,
    Capability = 4,
    Inconsistency = 5,
    Io = 6,
};

inline const std::vector<std::string>& known_checks() {
    static const std::vector<std::string> names = {
        "conditions", "expansion",        "polarization", "comparison",
        "threefold",  "torsion_identity", "witness",      "product"};
    return names;
}

struct ScenarioConfig {
    json model = "torus2";
    json metric = "flat";
    std::vector<std::string> checks = {"conditions"};
    std::uint64_t seed = 1;
    SamplingSpec sampling{};
    double tol_scale = 1.0;
    int bandwidth_cap = kDefaultBandwidthCap;
    int positivity_trials = 32;
    int expansion_num_eps = 0; // 0 selects n + 5
    std::optional<json> expansion_field;
    int family_count = 8;
    int family_band = 2;
    double family_fraction = 0.8;
    std::vector<int> comparison_grids; // empty selects a per-dimension default
    int comparison_pairs = 3;
    std::string product_factor_model = "torus1";
    json product_factor_metric = "flat";
    std::string out_dir = ".";
    std::string format = "json"; // json | csv | both

    /// Strict parse: unknown keys anywhere are rejected.
    static ScenarioConfig from_json(const json& j);

    /// The full configuration with every default materialized; embedded in
    /// the report so a run is reproducible from the report alone.
    json echo() const;
};

struct RunReport {
    json document; // deterministic: schema, engine, config echo, check results
    json timing;   // timestamp and per-check wall clock, never compared
    bool inconsistent = false;

    json full() const {
        json out = document;
        out["timing"] = timing;
        return out;
    }
};

RunReport run_scenario(const ScenarioConfig& cfg);

/// Write report.json (always) and the CSV tables (headers always, rows for
/// the checks that ran) into cfg.out_dir. Returns the paths written.
std::vector<std::string> emit_tables(const RunReport& rep, const ScenarioConfig& cfg);

} // namespace hermet
