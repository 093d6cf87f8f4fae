#include <iostream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "rislink/report.hpp"
#include "rislink/runner.hpp"

namespace {

std::string trim_copy(const std::string& s) {
    const auto b = s.find_first_not_of(" \t");
    if (b == std::string::npos) return "";
    const auto e = s.find_last_not_of(" \t");
    return s.substr(b, e - b + 1);
}

rislink::RunConfig load_config(const std::string& config_path,
                               const std::vector<std::string>& overrides) {
    rislink::RunConfig config = config_path.empty()
                                    ? rislink::parse_config_text("")
                                    : rislink::parse_config_file(config_path);
    for (const std::string& item : overrides) {
        const auto eq = item.find('=');
        if (eq == std::string::npos)
            throw rislink::ConfigError("--set expects SECTION.KEY=VALUE, got '" + item + "'");
        rislink::apply_override(config, trim_copy(item.substr(0, eq)),
                                trim_copy(item.substr(eq + 1)));
    }
    return config;
}

struct CommonArgs {
    std::string config_path;
    std::vector<std::string> overrides;
    std::string experiment;
    std::string seed;
    std::string output_dir;
    std::string jobs;

    void attach(CLI::App& cmd, bool with_experiment) {
        cmd.add_option("-c,--config", config_path, "Config file (sectioned key = value text)")
            ->check(CLI::ExistingFile);
        cmd.add_option("--set", overrides,
                       "Override a config key, e.g. --set link.noise_power=0.5")
            ->type_name("SECTION.KEY=VALUE");
        if (with_experiment)
            cmd.add_option("-e,--experiment", experiment,
                           "single_vs_dual | escalation | hardening | custom");
        cmd.add_option("-s,--seed", seed, "Master seed");
        cmd.add_option("-o,--out", output_dir,
                       "Output directory (default: $RISLINK_OUTPUT_DIR or ./results)");
        cmd.add_option("-j,--jobs", jobs, "Worker threads for ensemble experiments");
    }

    rislink::RunConfig resolve() const {
        rislink::RunConfig config = load_config(config_path, overrides);
        if (!experiment.empty()) rislink::apply_override(config, "run.experiment", experiment);
        if (!seed.empty()) rislink::apply_override(config, "run.seed", seed);
        if (!output_dir.empty()) rislink::apply_override(config, "run.output_dir", output_dir);
        if (!jobs.empty()) rislink::apply_override(config, "run.jobs", jobs);
        return config;
    }
};

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Link-level simulator for binary-pixel surface optimization in a "
                 "rich-multipath cavity"};
    app.require_subcommand(1);

    CLI::App* cmd_run = app.add_subcommand("run", "Run the configured experiment");
    CommonArgs run_args;
    run_args.attach(*cmd_run, /*with_experiment=*/true);

    CLI::App* cmd_calibrate = app.add_subcommand(
        "calibrate", "Find the noise power matching a target initial EVM");
    CommonArgs cal_args;
    cal_args.attach(*cmd_calibrate, /*with_experiment=*/false);
    double cal_target = 0.9;
    std::size_t cal_ensemble = 20;
    cmd_calibrate->add_option("--target", cal_target, "Target initial EVM as a fraction")
        ->check(CLI::PositiveNumber);
    cmd_calibrate->add_option("--ensemble", cal_ensemble, "Cavity draws in the ensemble")
        ->check(CLI::PositiveNumber);

    CLI::App* cmd_sweep =
        app.add_subcommand("sweep", "Run the channel-hardening sweep (alias for the "
                                    "hardening experiment)");
    CommonArgs sweep_args;
    sweep_args.attach(*cmd_sweep, /*with_experiment=*/false);
    std::string sweep_m, sweep_realizations;
    cmd_sweep->add_option("--m-values", sweep_m, "Comma-separated pixel counts");
    cmd_sweep->add_option("--realizations", sweep_realizations, "Realizations per pixel count");

    CLI11_PARSE(app, argc, argv);

    try {
        if (cmd_run->parsed()) {
            return rislink::run(run_args.resolve(), std::cout, std::cerr);
        }
        if (cmd_calibrate->parsed()) {
            rislink::RunConfig config = cal_args.resolve();
            const double noise = rislink::calibrate_noise_power(
                config.cavity, cal_target, config.optimizer, config.seed, cal_ensemble);
            rislink::LinkBudget budget{config.signal_power, noise};
            const double achieved = rislink::median_initial_evm(
                config.cavity, budget, config.optimizer, config.seed, cal_ensemble);
            char buf[64];
            std::snprintf(buf, sizeof(buf), "%.12g", noise);
            std::cout << "noise_power = " << buf << "\n";
            std::cout << "median initial EVM = " << rislink::format_pct(achieved) << " %\n";
            return 0;
        }
        if (cmd_sweep->parsed()) {
            rislink::RunConfig config = sweep_args.resolve();
            rislink::apply_override(config, "run.experiment", "hardening");
            if (!sweep_m.empty())
                rislink::apply_override(config, "hardening.m_values", sweep_m);
            if (!sweep_realizations.empty())
                rislink::apply_override(config, "hardening.realizations_per_m",
                                        sweep_realizations);
            return rislink::run(config, std::cout, std::cerr);
        }
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
    return 1;
}
