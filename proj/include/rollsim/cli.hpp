/*
 Copyright 2026 The rollsim Authors

 Licensed under the Apache License, Version 2.0 (the "License");
 you may not use this file except in compliance with the License.
 You may obtain a copy of the License at

      https://www.apache.org/licenses/LICENSE-2.0

 Unless required by applicable law or agreed to in writing, software
 distributed under the License is distributed on an "AS IS" BASIS,
 WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 See the License for the specific language governing permissions and
 limitations under the License.
*/

#ifndef ROLLSIM_CLI_HPP
#define ROLLSIM_CLI_HPP

#include "rollsim/config.hpp"
#include "rollsim/errata.hpp"
#include "rollsim/io.hpp"
#include "rollsim/validate.hpp"

#include "CLI11.hpp"

#include <atomic>
#include <cstdlib>
#include <filesystem>
#include <mutex>
#include <ostream>
#include <set>
#include <string>
#include <thread>
#include <vector>

#ifndef ROLLSIM_PRESET_DIR
#define ROLLSIM_PRESET_DIR ""
#endif

namespace rollsim::cli {

inline constexpr int kExitOk = 0;
inline constexpr int kExitUsage = 2;
inline constexpr int kExitConfig = 3;
inline constexpr int kExitNumeric = 4;

class UsageError : public Error {
public:
    using Error::Error;
};

inline std::string preset_list() {
    std::string out;
    for (auto name : preset_names()) {
        if (!out.empty()) out += ", ";
        out += name;
    }
    return out;
}

/// Directories searched for <preset>.json, in order.
inline std::vector<std::filesystem::path> preset_search_path() {
    std::vector<std::filesystem::path> dirs;
    if (const char* env = std::getenv("ROLLSIM_CONFIG_DIR"); env && *env) dirs.emplace_back(env);
    if (const std::string builtin = ROLLSIM_PRESET_DIR; !builtin.empty()) dirs.emplace_back(builtin);
    return dirs;
}

/// A config file path, or a preset name looked up on the search path with
/// the compiled-in scenario as the last resort.
inline RunConfig resolve_scenario(const std::string& ref) {
    const std::filesystem::path as_path(ref);
    if (as_path.has_extension() || ref.find('/') != std::string::npos) {
        if (!std::filesystem::exists(as_path)) throw ConfigError("config file '" + ref + "' does not exist");
        return load_config_file(as_path);
    }
    for (const auto& dir : preset_search_path()) {
        const auto candidate = dir / (ref + ".json");
        if (std::filesystem::exists(candidate)) return load_config_file(candidate);
    }
    if (auto sc = builtin_preset(ref)) return RunConfig{*sc, RobotParams{}, MagneticParams{}};
    throw UsageError("unknown scenario '" + ref + "'; available presets: " + preset_list());
}

struct RunOptions {
    std::vector<std::string> refs;
    std::optional<double> dt;
    std::optional<double> horizon;
    std::string out_dir = ".";
    std::optional<std::uint64_t> seed;
    unsigned jobs = 1;
    std::optional<std::string> magnetics;
    std::optional<std::string> potential;
};

struct RunOutcome {
    RunSummary summary;
    std::filesystem::path csv;
};

inline RunOutcome execute_run(const RunConfig& cfg, const std::filesystem::path& out_dir) {
    const Trajectory traj = run(cfg.scenario, cfg.params, cfg.magnetics);
    RunOutcome out;
    out.summary = summarize(traj);
    out.csv = out_dir / (cfg.scenario.name + ".csv");
    write_text_file(out.csv, csv_string(traj));
    write_text_file(out_dir / (cfg.scenario.name + ".gp"),
                    gnuplot_script(out.csv.filename().string(), cfg.scenario.name));
    return out;
}

inline int cmd_run(const RunOptions& opt, std::ostream& out, std::ostream& err) {
    std::vector<RunConfig> configs;
    std::set<std::string> names;
    for (const auto& ref : opt.refs) {
        RunConfig cfg = resolve_scenario(ref);
        if (opt.dt) cfg.scenario.dt = *opt.dt;
        if (opt.horizon) cfg.scenario.horizon = *opt.horizon;
        if (opt.magnetics) {
            cfg.scenario.magnetics = *opt.magnetics == "on";
            cfg.magnetics.enabled = cfg.scenario.magnetics;
            cfg.magnetics.validate();
        }
        if (opt.potential) cfg.scenario.potential = parse_potential(*opt.potential);
        cfg.scenario.validate();
        if (!names.insert(cfg.scenario.name).second) {
            throw UsageError("scenario name '" + cfg.scenario.name + "' given twice; output files would collide");
        }
        configs.push_back(std::move(cfg));
    }
    std::error_code ec;
    std::filesystem::create_directories(opt.out_dir, ec);
    if (ec) throw IoError("cannot create output directory '" + opt.out_dir + "': " + ec.message());

    std::vector<std::optional<RunOutcome>> results(configs.size());
    std::vector<std::string> failures(configs.size());
    std::atomic<std::size_t> next{0};
    auto worker = [&] {
        for (std::size_t i = next++; i < configs.size(); i = next++) {
            try {
                results[i] = execute_run(configs[i], opt.out_dir);
            } catch (const std::exception& e) {
                failures[i] = e.what();
            }
        }
    };
    const unsigned jobs = std::max(1u, std::min<unsigned>(opt.jobs, static_cast<unsigned>(configs.size())));
    std::vector<std::thread> pool;
    for (unsigned j = 1; j < jobs; ++j) pool.emplace_back(worker);
    worker();
    for (auto& t : pool) t.join();

    int status = kExitOk;
    for (std::size_t i = 0; i < configs.size(); ++i) {
        if (!failures[i].empty()) {
            err << "error: " << configs[i].scenario.name << ": " << failures[i] << '\n';
            status = std::max(status, kExitConfig);
            continue;
        }
        if (i) out << '\n';
        if (opt.seed) out << "seed: " << *opt.seed << '\n';
        out << summary_text(results[i]->summary);
        out << "trajectory: " << results[i]->csv.string() << '\n';
        status = std::max(status, results[i]->summary.exit_status());
    }
    return status;
}

inline int cmd_errata(std::size_t samples, std::uint64_t seed, const std::string& out_dir, std::ostream& out) {
    const auto report = errata_compare(RobotParams{}, samples, seed);
    std::error_code ec;
    std::filesystem::create_directories(out_dir, ec);
    if (ec) throw IoError("cannot create output directory '" + out_dir + "': " + ec.message());
    const std::string text = errata_text(report);
    write_text_file(std::filesystem::path(out_dir) / "errata.txt", text);
    write_text_file(std::filesystem::path(out_dir) / "errata.json", errata_json(report).dump(2) + "\n");
    out << text;
    return kExitOk;
}

inline int cmd_validate(const std::optional<std::string>& config, std::size_t samples, std::ostream& out) {
    RobotParams params;
    if (config) params = load_config_file(*config).params;
    ValidationOptions opt;
    opt.samples = samples;
    const auto report = run_validation(params, opt);
    out << validation_text(report);
    return report.all_passed() ? kExitOk : kExitNumeric;
}

/// Entry point shared by the executable and the tests.
inline int main(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
    CLI::App app{"Dynamics simulator for a two-module pendulum-actuated rolling-disk robot"};
    app.footer("Exit status: 0 success, 2 usage error, 3 config or I/O error, 4 numeric failure.\n"
               "Presets: " + preset_list() + ". ROLLSIM_CONFIG_DIR overrides the preset directory.");
    app.require_subcommand(1);

    RunOptions run_opt;
    auto* run_cmd = app.add_subcommand("run", "Simulate presets or config files and write CSV trajectories");
    run_cmd->add_option("scenario", run_opt.refs, "Preset name or config path")->required();
    run_cmd->add_option("--dt", run_opt.dt, "Integration step (s)")->check(CLI::PositiveNumber);
    run_cmd->add_option("--horizon", run_opt.horizon, "Simulated time (s)")->check(CLI::PositiveNumber);
    run_cmd->add_option("--out", run_opt.out_dir, "Output directory")->capture_default_str();
    run_cmd->add_option("--seed", run_opt.seed, "Seed echoed in the summary; runs draw no random numbers");
    run_cmd->add_option("--jobs", run_opt.jobs, "Scenarios run in parallel")->check(CLI::PositiveNumber);
    run_cmd->add_option("--magnetics", run_opt.magnetics, "Magnetic coupling on|off")
        ->check(CLI::IsMember({"on", "off"}));
    run_cmd->add_option("--potential", run_opt.potential, "paper-verbatim|geometry-consistent")
        ->check(CLI::IsMember({"paper-verbatim", "geometry-consistent"}));

    std::size_t errata_samples = 1000;
    std::uint64_t errata_seed = 42;
    std::string errata_dir = ".";
    auto* errata_cmd = app.add_subcommand("errata", "Compare printed coefficients with the derived dynamics");
    errata_cmd->add_option("--samples", errata_samples, "Random states")->capture_default_str()->check(
        CLI::PositiveNumber);
    errata_cmd->add_option("--seed", errata_seed, "Sampling seed")->capture_default_str();
    errata_cmd->add_option("--out-dir", errata_dir, "Directory for errata.txt and errata.json")
        ->capture_default_str();

    std::optional<std::string> validate_config;
    std::size_t validate_samples = 1000;
    auto* validate_cmd = app.add_subcommand("validate", "Run the invariant suite");
    validate_cmd->add_option("--config", validate_config, "Config file whose params are checked");
    validate_cmd->add_option("--samples", validate_samples, "Random states")->capture_default_str()->check(
        CLI::PositiveNumber);

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e, out, err);
        return code == 0 ? kExitOk : kExitUsage;
    }

    try {
        if (*run_cmd) return cmd_run(run_opt, out, err);
        if (*errata_cmd) return cmd_errata(errata_samples, errata_seed, errata_dir, out);
        if (*validate_cmd) return cmd_validate(validate_config, validate_samples, out);
    } catch (const UsageError& e) {
        err << "usage error: " << e.what() << '\n';
        return kExitUsage;
    } catch (const ConfigError& e) {
        err << "config error: " << e.what() << '\n';
        return kExitConfig;
    } catch (const IoError& e) {
        err << "I/O error: " << e.what() << '\n';
        return kExitConfig;
    } catch (const NumericError& e) {
        err << "numeric error: " << e.what() << '\n';
        return kExitNumeric;
    } catch (const Error& e) {
        err << "error: " << e.what() << '\n';
        return kExitConfig;
    }
    return kExitUsage;
}

}  // namespace rollsim::cli

#endif  // ROLLSIM_CLI_HPP
