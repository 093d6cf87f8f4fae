#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "rislink/optimizer.hpp"

namespace rislink {

struct LinkBudget {
    double signal_power = 1.0;
    double noise_power = 0.6;
};

struct OptimizerSettings {
    int max_loops = 10;
    int frames_per_eval = 4;
    bool crn = true;
    std::size_t n_pilots = 16;
    std::size_t n_data_symbols = 256;
};

/// One symbol of a recorded constellation snapshot.
struct ConstellationPoint {
    std::size_t symbol_index = 0;
    std::uint8_t bit_first = 0;
    std::uint8_t bit_second = 0;
    cplx ideal{};
    cplx received{};
    double sigma = 0.0;
};

/// Outcome of one optimization stage: EVM before/after, the full flip trace,
/// and constellation snapshots at the initial and final configurations.
struct ExperimentResult {
    std::string label;
    double evm_initial = 0.0;
    double evm_final = 0.0;
    OptimizationTrace trace;
    std::vector<ConstellationPoint> constellation_before;
    std::vector<ConstellationPoint> constellation_after;
    RisConfiguration config_final;
    std::uint64_t seed = 0;
};

/// Equalized data symbols of one measured-EVM evaluation, for plotting.
std::vector<ConstellationPoint> capture_constellation(const Scenario& scenario,
                                                      const RisConfiguration& cfg,
                                                      std::uint64_t eval_seed);

struct SingleVsDualResult {
    ExperimentResult one_ris;
    ExperimentResult two_ris;
};

/// Two-stage optimization with both surfaces present: stage 1 may flip only
/// the first surface's pixels, stage 2 continues from the stage-1 result
/// with every pixel active. Both stages share one evaluation seed, so the
/// stage-2 initial goal equals the stage-1 final goal exactly.
SingleVsDualResult run_single_vs_dual_ris(const CavityParameters& params,
                                          const LinkBudget& budget,
                                          const OptimizerSettings& settings,
                                          std::uint64_t seed);

struct EscalationStep {
    InterferenceLevel level;
    /// evm_initial = measured EVM right after the interference step-up,
    /// before re-optimization; evm_final = after re-optimization.
    ExperimentResult result;
};

/// Steps the interferer through `schedule`, re-optimizing the full pixel set
/// at each level. The configuration carries over between levels; evaluation
/// noise is shared across levels so step-ups are measured on common random
/// numbers.
std::vector<EscalationStep> run_interference_escalation(
    const CavityParameters& params, const std::vector<InterferenceLevel>& schedule,
    const LinkBudget& budget, const OptimizerSettings& settings, std::uint64_t seed);

struct HardeningPoint {
    std::size_t m = 0;               // controlled pixel count
    double mean_h_abs = 0.0;         // mean optimized |h|
    double std_h_abs = 0.0;          // std of optimized |h| across realizations
    double rel_fluctuation = 0.0;    // std / mean
    double mean_evm = 0.0;           // mean EVM of measured-EVM-optimized runs
};

struct HardeningSweepResult {
    std::vector<HardeningPoint> points;
    /// Least-squares slope of log(rel_fluctuation) vs log(m); absent for a
    /// single-point grid.
    std::optional<double> slope;
};

/// Channel-hardening statistics vs controlled pixel count. For each M the
/// sweep draws `realizations_per_m` cavities (single surface of M pixels),
/// optimizes each with the deterministic power goal for the |h| statistics,
/// and with the measured-EVM goal for the EVM column. `jobs` bounds worker
/// threads; per-job seeds derive from (seed, m index, realization index), so
/// results do not depend on scheduling.
HardeningSweepResult run_hardening_sweep(const std::vector<std::size_t>& m_values,
                                         std::size_t realizations_per_m,
                                         const CavityParameters& cavity_template,
                                         const LinkBudget& budget,
                                         const OptimizerSettings& settings,
                                         std::uint64_t seed, int jobs = 1);

/// Bisects noise_power until the median measured EVM of random
/// configurations over `ensemble` cavity draws hits `target_initial_evm`.
double calibrate_noise_power(const CavityParameters& params, double target_initial_evm,
                             const OptimizerSettings& settings, std::uint64_t seed,
                             std::size_t ensemble = 20);

/// The initial-EVM statistic the calibration drives: median over `ensemble`
/// seeds of the measured EVM at a random configuration.
double median_initial_evm(const CavityParameters& params, const LinkBudget& budget,
                          const OptimizerSettings& settings, std::uint64_t seed,
                          std::size_t ensemble = 20);

/// Runs fn(0..n_jobs-1) on up to `workers` threads. Exceptions propagate.
void parallel_for_index(std::size_t n_jobs, int workers,
                        const std::function<void(std::size_t)>& fn);

}  // namespace rislink
