#include "rislink/runner.hpp"

#include <filesystem>
#include <fstream>
#include <ostream>

#include "rislink/report.hpp"

namespace rislink {

namespace fs = std::filesystem;

namespace {

std::string num(double v) {
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%.12g", v);
    return buf;
}

void append_stage_summary(std::vector<std::pair<std::string, std::string>>& entries,
                          const std::string& prefix, const ExperimentResult& result) {
    entries.emplace_back(prefix + "_evm_initial", num(result.evm_initial));
    entries.emplace_back(prefix + "_evm_final", num(result.evm_final));
    entries.emplace_back(prefix + "_evm_initial_pct", format_pct(result.evm_initial));
    entries.emplace_back(prefix + "_evm_final_pct", format_pct(result.evm_final));
    entries.emplace_back(prefix + "_loops_run", std::to_string(result.trace.loops_run));
    entries.emplace_back(prefix + "_flips_accepted",
                         std::to_string(result.trace.flips_accepted));
}

void write_stage_files(const fs::path& dir, const ExperimentResult& result) {
    write_trace_csv(dir / ("trace_" + result.label + ".csv"), result.trace);
    write_constellation_csv(dir / ("constellation_" + result.label + "_before.csv"),
                            result.constellation_before);
    write_constellation_csv(dir / ("constellation_" + result.label + "_after.csv"),
                            result.constellation_after);
}

std::vector<std::pair<std::string, std::string>> common_summary(const RunConfig& config,
                                                                const LinkBudget& budget) {
    return {
        {"experiment", to_string(config.experiment)},
        {"seed", std::to_string(config.seed)},
        {"n_pixels_per_surface", std::to_string(config.cavity.n_pixels_per_surface)},
        {"n_surfaces", std::to_string(config.cavity.n_surfaces)},
        {"kappa", num(config.cavity.kappa)},
        {"eve_kappa", num(config.cavity.eve_kappa)},
        {"signal_power", num(budget.signal_power)},
        {"noise_power", num(budget.noise_power)},
    };
}

Scenario custom_scenario(const RunConfig& config, const LinkBudget& budget,
                         const CavityRealization& realization) {
    return Scenario{realization,
                    budget.signal_power,
                    budget.noise_power,
                    config.jammer_on ? InterferenceLevel::from_db(config.int_start_db)
                                     : InterferenceLevel::off(),
                    config.optimizer.frames_per_eval,
                    full_mask(realization.total_pixels()),
                    config.optimizer.n_pilots,
                    config.optimizer.n_data_symbols,
                    /*known_channel=*/false};
}

}  // namespace

LinkBudget resolve_link_budget(const RunConfig& config, std::ostream& out) {
    LinkBudget budget;
    budget.signal_power = config.signal_power;
    if (config.noise_power) {
        budget.noise_power = *config.noise_power;
        return budget;
    }
    const double target = config.target_initial_evm.value_or(0.9);
    budget.noise_power =
        calibrate_noise_power(config.cavity, target, config.optimizer, config.seed);
    out << "calibrated noise_power = " << num(budget.noise_power)
        << " (target initial EVM " << format_pct(target) << " %)\n";
    return budget;
}

int run(const RunConfig& config, std::ostream& out, std::ostream& err) {
    try {
        validate(config);
        const fs::path dir(config.output_dir);
        fs::create_directories(dir);

        const LinkBudget budget = resolve_link_budget(config, out);
        auto entries = common_summary(config, budget);

        switch (config.experiment) {
            case ExperimentKind::SingleVsDual: {
                const SingleVsDualResult result =
                    run_single_vs_dual_ris(config.cavity, budget, config.optimizer, config.seed);
                out << "EVM(random) = " << format_pct(result.one_ris.evm_initial) << " %\n";
                out << "EVM(one RIS) = " << format_pct(result.one_ris.evm_final) << " %\n";
                out << "EVM(two RIS) = " << format_pct(result.two_ris.evm_final) << " %\n";
                entries.emplace_back("evm_random", num(result.one_ris.evm_initial));
                entries.emplace_back("evm_random_pct", format_pct(result.one_ris.evm_initial));
                append_stage_summary(entries, "one_ris", result.one_ris);
                append_stage_summary(entries, "two_ris", result.two_ris);
                write_stage_files(dir, result.one_ris);
                write_stage_files(dir, result.two_ris);
                break;
            }
            case ExperimentKind::Escalation: {
                const std::vector<InterferenceLevel> schedule =
                    config.jammer_on
                        ? escalation_schedule(config.int_start_db, config.int_step_db,
                                              config.int_end_db)
                        : std::vector<InterferenceLevel>{InterferenceLevel::off()};
                const auto steps = run_interference_escalation(config.cavity, schedule, budget,
                                                               config.optimizer, config.seed);
                entries.emplace_back("levels", std::to_string(steps.size()));
                for (std::size_t i = 0; i < steps.size(); ++i) {
                    const EscalationStep& step = steps[i];
                    const std::string int_text =
                        step.level.is_off() ? "off" : num(step.level.int_db) + " dB";
                    out << "Int = " << int_text
                        << ": EVM pre = " << format_pct(step.result.evm_initial)
                        << " %, post = " << format_pct(step.result.evm_final) << " %\n";
                    const std::string prefix = "level_" + std::to_string(i);
                    entries.emplace_back(prefix + "_int_db",
                                         step.level.is_off() ? "off" : num(step.level.int_db));
                    append_stage_summary(entries, prefix, step.result);
                    write_stage_files(dir, step.result);
                }
                break;
            }
            case ExperimentKind::Hardening: {
                CavityParameters cavity_template = config.cavity;
                cavity_template.kappa = config.hardening_kappa;
                const HardeningSweepResult sweep = run_hardening_sweep(
                    config.m_values, config.realizations_per_m, cavity_template, budget,
                    config.optimizer, config.seed, config.jobs);
                for (std::size_t i = 0; i < sweep.points.size(); ++i) {
                    const HardeningPoint& p = sweep.points[i];
                    out << "M = " << p.m << ": mean |h| = " << num(p.mean_h_abs)
                        << ", rel fluct = " << num(p.rel_fluctuation)
                        << ", mean EVM = " << format_pct(p.mean_evm) << " %\n";
                    const std::string prefix = "m_" + std::to_string(p.m);
                    entries.emplace_back(prefix + "_mean_h_abs", num(p.mean_h_abs));
                    entries.emplace_back(prefix + "_std_h_abs", num(p.std_h_abs));
                    entries.emplace_back(prefix + "_rel_fluctuation", num(p.rel_fluctuation));
                    entries.emplace_back(prefix + "_mean_evm", num(p.mean_evm));
                    entries.emplace_back(prefix + "_mean_evm_pct", format_pct(p.mean_evm));
                }
                if (sweep.slope) {
                    out << "slope(log rel fluct vs log M) = " << num(*sweep.slope) << "\n";
                    entries.emplace_back("slope", num(*sweep.slope));
                } else {
                    entries.emplace_back("slope", "absent");
                }
                entries.emplace_back("realizations_per_m",
                                     std::to_string(config.realizations_per_m));
                write_hardening_csv(dir / "hardening.csv", sweep);
                break;
            }
            case ExperimentKind::Custom: {
                CavityParameters p = config.cavity;
                p.seed = derive_seed(config.seed, 1);
                const CavityRealization realization = sample_realization(p);
                const RisConfiguration init = RisConfiguration::random(
                    p.surface_sizes(), derive_seed(config.seed, 2));
                const Scenario scenario = custom_scenario(config, budget, realization);
                GreedyOptions options;
                options.goal = GoalKind::MeasuredEvm;
                options.max_loops = config.optimizer.max_loops;
                options.crn = config.optimizer.crn;
                options.seed = derive_seed(config.seed, 3);
                const GreedyResult greedy = greedy_optimize(scenario, init, options);
                ExperimentResult result{"custom",
                                        greedy.trace.initial_goal,
                                        greedy.trace.final_goal,
                                        greedy.trace,
                                        capture_constellation(scenario, init, options.seed),
                                        capture_constellation(scenario, greedy.config,
                                                              options.seed),
                                        greedy.config,
                                        config.seed};
                out << "EVM(initial) = " << format_pct(result.evm_initial) << " %\n";
                out << "EVM(optimized) = " << format_pct(result.evm_final) << " %\n";
                append_stage_summary(entries, "custom", result);
                write_stage_files(dir, result);
                break;
            }
        }

        {
            std::ofstream snapshot(dir / "config.ini");
            if (!snapshot)
                throw std::runtime_error("cannot write '" + (dir / "config.ini").string() + "'");
            snapshot << emit_config(config);
        }
        write_summary(dir / "summary.txt", entries);
        return 0;
    } catch (const std::exception& e) {
        err << "error: " << e.what() << "\n";
        return 1;
    }
}

}  // namespace rislink
