#pragma once

#include <cstdint>
#include <vector>

#include "rislink/cavity.hpp"
#include "rislink/interference.hpp"
#include "rislink/qpsk.hpp"

namespace rislink {

/// Everything an optimization run needs besides the configuration itself.
/// Immutable and freely shareable between workers.
struct Scenario {
    CavityRealization realization;
    double signal_power = 1.0;
    double noise_power = 0.0;
    InterferenceLevel level = InterferenceLevel::off();
    int frames_per_eval = 4;
    /// Pixels the optimizer may flip; length = realization pixel count.
    std::vector<std::uint8_t> active_mask;
    std::size_t n_pilots = 16;
    std::size_t n_data_symbols = 256;
    /// When true, measured-EVM evaluations equalize with the true channel
    /// instead of the pilot estimate.
    bool known_channel = false;

    void validate() const;
    std::size_t active_count() const;
};

std::vector<std::uint8_t> full_mask(std::size_t n_pixels);
/// Mask selecting every pixel of one surface.
std::vector<std::uint8_t> surface_mask(const std::vector<std::size_t>& surface_sizes,
                                       std::size_t surface);

/// Goal functions the optimizer can descend. All are "smaller is better".
enum class GoalKind {
    /// Mean EVM of simulated frames (the measured quantity a receiver sees).
    MeasuredEvm,
    /// Infinite-averaging limit of the mean EVM,
    /// sqrt((N0 + J |h_e|^2) / (S |h|^2)); deterministic in the configuration.
    AnalyticEvm,
    /// Negative focused channel power -|h|^2; deterministic.
    NegPower,
};

/// Simulates frames_per_eval frames through the effective channels and
/// returns the mean EVM pooled over all data symbols of all frames.
/// Deterministic given eval_seed: the same seed freezes frame contents, jam
/// and noise, so two configurations can be compared on common random numbers.
double evaluate_goal(const Scenario& scenario, const RisConfiguration& cfg,
                     std::uint64_t eval_seed);

/// sqrt((N0 + J |h_e(cfg)|^2) / (S |h(cfg)|^2)): the mean EVM a perfectly
/// equalized receiver converges to with unlimited averaging.
double analytic_evm(const Scenario& scenario, const RisConfiguration& cfg);

/// -|h(cfg)|^2, so that minimizing it maximizes the focused power.
double power_goal(const Scenario& scenario, const RisConfiguration& cfg);

double goal_value(const Scenario& scenario, GoalKind kind, const RisConfiguration& cfg,
                  std::uint64_t eval_seed);

struct TraceStep {
    int loop = 0;
    std::size_t pixel = 0;
    double goal_before = 0.0;
    double goal_after = 0.0;
    bool accepted = false;
};

/// Ordered record of every flip attempt of one optimization run.
struct OptimizationTrace {
    std::vector<TraceStep> steps;
    double initial_goal = 0.0;
    double final_goal = 0.0;
    int loops_run = 0;
    int flips_accepted = 0;
    /// True when a full loop accepted no flip (as opposed to hitting the
    /// loop budget).
    bool converged = false;
};

struct GreedyOptions {
    GoalKind goal = GoalKind::MeasuredEvm;
    int max_loops = 10;
    /// Common random numbers: reuse one evaluation seed for every measured
    /// goal evaluation of the run, so greedy comparisons reflect the
    /// configuration change rather than fresh noise. When false each
    /// evaluation draws fresh noise, emulating live measurements.
    bool crn = true;
    /// Seed for measured-EVM evaluations. With crn=true it is used directly,
    /// which also makes goal values comparable across runs sharing it.
    std::uint64_t seed = 0;
};

struct GreedyResult {
    RisConfiguration config;
    OptimizationTrace trace;
};

/// Sequential greedy pixel-flip descent. Visits active pixels in ascending
/// global index; each pixel is flipped and the flip is kept iff the goal
/// strictly decreased, otherwise flipped back. Whole passes repeat until a
/// pass accepts no flip or max_loops is reached.
GreedyResult greedy_optimize(const Scenario& scenario, const RisConfiguration& init,
                             const GreedyOptions& options);

struct BruteForceResult {
    RisConfiguration config;
    double goal = 0.0;
};

/// Exhaustively evaluates every assignment of the active pixels (inactive
/// pixels keep their state in `base`) under a deterministic goal and returns
/// the global minimizer. Ties break toward the lowest binary value of the
/// active-pixel assignment (pixel order = significance order, first active
/// pixel least significant, state 0 = bit 0). Enforces active_count <= 20.
BruteForceResult brute_force_optimize(const Scenario& scenario, GoalKind deterministic_goal,
                                      const RisConfiguration& base);

}  // namespace rislink
