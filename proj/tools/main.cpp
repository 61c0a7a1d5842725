// hermet CLI: run verification scenarios against Hermitian metric presets
// and emit deterministic JSON/CSV reports.

#include <CLI11.hpp>

#include <fstream>
#include <iostream>

#include "hermet/scenario.hpp"
#include "hermet/version.hpp"

namespace {

int fail(hermet::ExitCode code, const std::string& msg) {
    std::cerr << "error: " << msg << "\n";
    return static_cast<int>(code);
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{std::string(hermet::kEngineName) +
                 " - Hermitian metric volume-invariance verification"};
    app.get_formatter()->column_width(34);

    std::string config_path;
    std::vector<std::string> checks;
    std::uint64_t seed = 0;
    std::string out_dir;
    int grid = 0;
    int bandwidth_cap = 0;
    double tol_scale = 0.0;
    std::string format;

    app.add_option("--config", config_path, "scenario configuration file (JSON)")
        ->envname("HERMET_CONFIG");
    app.add_option("--check", checks, "check to run (repeatable, overrides the config list)")
        ->envname("HERMET_CHECK");
    auto* seed_opt = app.add_option("--seed", seed, "random seed")->envname("HERMET_SEED");
    app.add_option("--out", out_dir, "output directory")->envname("HERMET_OUT");
    auto* grid_opt =
        app.add_option("--grid", grid, "sampling grid resolution per real axis")
            ->envname("HERMET_GRID");
    auto* cap_opt = app.add_option("--bandwidth-cap", bandwidth_cap,
                                   "maximum Fourier frequency per real axis")
                        ->envname("HERMET_BANDWIDTH_CAP");
    auto* tol_opt = app.add_option("--tol-scale", tol_scale,
                                   "multiplier on the exact-defect verdict thresholds")
                        ->envname("HERMET_TOL_SCALE");
    app.add_option("--format", format, "report format: json, csv or both")
        ->envname("HERMET_FORMAT")
        ->check(CLI::IsMember({"json", "csv", "both"}));

    CLI11_PARSE(app, argc, argv);

    hermet::ScenarioConfig cfg;
    try {
        if (!config_path.empty()) {
            std::ifstream in(config_path);
            if (!in) return fail(hermet::ExitCode::ConfigError, "cannot open " + config_path);
            hermet::json doc;
            in >> doc;
            cfg = hermet::ScenarioConfig::from_json(doc);
        }
        if (!checks.empty()) {
            for (const auto& c : checks)
                if (std::find(hermet::known_checks().begin(), hermet::known_checks().end(), c) ==
                    hermet::known_checks().end())
                    return fail(hermet::ExitCode::ConfigError, "unknown check \"" + c + "\"");
            cfg.checks = checks;
        }
        if (seed_opt->count()) {
            cfg.seed = seed;
            cfg.sampling.seed = seed;
        }
        if (!out_dir.empty()) cfg.out_dir = out_dir;
        if (grid_opt->count()) cfg.sampling.grid_per_axis = grid;
        if (cap_opt->count()) cfg.bandwidth_cap = bandwidth_cap;
        if (tol_opt->count()) cfg.tol_scale = tol_scale;
        if (!format.empty()) cfg.format = format;
    } catch (const hermet::json::exception& e) {
        return fail(hermet::ExitCode::ConfigError, std::string("config parse: ") + e.what());
    } catch (const hermet::InvalidInput& e) {
        return fail(hermet::ExitCode::ConfigError, e.what());
    }

    try {
        const hermet::RunReport rep = hermet::run_scenario(cfg);
        const auto files = hermet::emit_tables(rep, cfg);

        for (const auto& [name, result] : rep.document.at("checks").items()) {
            std::cout << name;
            if (result.contains("conditions")) {
                std::cout << ":";
                for (const auto& [cond, res] : result.at("conditions").items())
                    std::cout << " " << cond << "=" << res.at("verdict").get<std::string>();
            }
            std::cout << "\n";
        }
        for (const auto& f : files) std::cout << "wrote " << f << "\n";

        if (rep.inconsistent)
            return fail(hermet::ExitCode::Inconsistency,
                        "condition verdicts are mutually inconsistent: engine defect");
        return static_cast<int>(hermet::ExitCode::Ok);
    } catch (const hermet::BandwidthOverflow& e) {
        return fail(hermet::ExitCode::Bandwidth, e.what());
    } catch (const hermet::CapabilityError& e) {
        return fail(hermet::ExitCode::Capability, e.what());
    } catch (const hermet::InternalInconsistency& e) {
        return fail(hermet::ExitCode::Inconsistency, e.what());
    } catch (const hermet::InvalidInput& e) {
        return fail(hermet::ExitCode::ConfigError, e.what());
    } catch (const hermet::Error& e) {
        return fail(hermet::ExitCode::Io, e.what());
    }
}
