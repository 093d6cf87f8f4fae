#include "rislink/optimizer.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

namespace rislink {

void Scenario::validate() const {
    if (active_mask.size() != realization.total_pixels())
        throw std::invalid_argument("Scenario: active_mask length " +
                                    std::to_string(active_mask.size()) +
                                    " does not match pixel count " +
                                    std::to_string(realization.total_pixels()));
    if (frames_per_eval < 1)
        throw std::invalid_argument("Scenario: frames_per_eval must be >= 1");
    if (!(signal_power > 0.0))
        throw std::invalid_argument("Scenario: signal_power must be positive");
    if (noise_power < 0.0)
        throw std::invalid_argument("Scenario: noise_power must be >= 0");
    if (n_pilots == 0)
        throw std::invalid_argument("Scenario: n_pilots must be positive");
    if (n_data_symbols == 0)
        throw std::invalid_argument("Scenario: n_data_symbols must be positive");
}

std::size_t Scenario::active_count() const {
    std::size_t n = 0;
    for (auto m : active_mask) n += (m != 0);
    return n;
}

std::vector<std::uint8_t> full_mask(std::size_t n_pixels) {
    return std::vector<std::uint8_t>(n_pixels, 1);
}

std::vector<std::uint8_t> surface_mask(const std::vector<std::size_t>& surface_sizes,
                                       std::size_t surface) {
    if (surface >= surface_sizes.size())
        throw std::out_of_range("surface_mask: surface index out of range");
    std::size_t total = 0;
    for (std::size_t s : surface_sizes) total += s;
    std::vector<std::uint8_t> mask(total, 0);
    std::size_t base = 0;
    for (std::size_t s = 0; s < surface; ++s) base += surface_sizes[s];
    for (std::size_t i = 0; i < surface_sizes[surface]; ++i) mask[base + i] = 1;
    return mask;
}

double evaluate_goal(const Scenario& scenario, const RisConfiguration& cfg,
                     std::uint64_t eval_seed) {
    scenario.validate();
    const cplx h = effective_channel(scenario.realization, cfg);
    const cplx h_e = effective_jammer_channel(scenario.realization, cfg);
    // Transmit amplitude folds into the channel seen by the receiver; the
    // frame symbols stay unit power.
    const cplx h_tx = h * std::sqrt(scenario.signal_power);
    const double jam = scenario.level.is_off()
                           ? 0.0
                           : jammer_power(scenario.level, scenario.signal_power);

    std::vector<double> pooled;
    pooled.reserve(static_cast<std::size_t>(scenario.frames_per_eval) * scenario.n_data_symbols);
    for (int f = 0; f < scenario.frames_per_eval; ++f) {
        Rng rng(derive_seed(eval_seed, static_cast<std::uint64_t>(f)));
        const Frame frame = random_frame(scenario.n_pilots, scenario.n_data_symbols, rng);
        const std::vector<cplx> y =
            receive_frame(frame, h_tx, h_e, jam, scenario.noise_power, rng);
        const EvmReport report = scenario.known_channel
                                     ? measure_frame_known_channel(frame, y, h_tx)
                                     : measure_frame(frame, y);
        pooled.insert(pooled.end(), report.per_symbol.begin(), report.per_symbol.end());
    }
    return mean_evm(pooled);
}

double analytic_evm(const Scenario& scenario, const RisConfiguration& cfg) {
    const cplx h = effective_channel(scenario.realization, cfg);
    const cplx h_e = effective_jammer_channel(scenario.realization, cfg);
    const double jam = scenario.level.is_off()
                           ? 0.0
                           : jammer_power(scenario.level, scenario.signal_power);
    const double err = scenario.noise_power + jam * std::norm(h_e);
    return std::sqrt(err / (scenario.signal_power * std::norm(h)));
}

double power_goal(const Scenario& scenario, const RisConfiguration& cfg) {
    return -std::norm(effective_channel(scenario.realization, cfg));
}

double goal_value(const Scenario& scenario, GoalKind kind, const RisConfiguration& cfg,
                  std::uint64_t eval_seed) {
    switch (kind) {
        case GoalKind::MeasuredEvm: return evaluate_goal(scenario, cfg, eval_seed);
        case GoalKind::AnalyticEvm: return analytic_evm(scenario, cfg);
        case GoalKind::NegPower: return power_goal(scenario, cfg);
    }
    throw std::logic_error("goal_value: unknown goal kind");
}

GreedyResult greedy_optimize(const Scenario& scenario, const RisConfiguration& init,
                             const GreedyOptions& options) {
    scenario.validate();
    if (init.total_pixels() != scenario.realization.total_pixels())
        throw std::invalid_argument("greedy_optimize: configuration does not match realization");
    if (options.max_loops < 1)
        throw std::invalid_argument("greedy_optimize: max_loops must be >= 1");

    std::uint64_t fresh_counter = 0;
    auto next_eval_seed = [&]() {
        if (options.crn) return options.seed;
        return derive_seed(options.seed, ++fresh_counter);
    };

    RisConfiguration cfg = init;
    double current = goal_value(scenario, options.goal, cfg, next_eval_seed());

    GreedyResult result{cfg, {}};
    result.trace.initial_goal = current;

    const std::size_t n = cfg.total_pixels();
    for (int loop = 0; loop < options.max_loops; ++loop) {
        bool any_accepted = false;
        for (std::size_t i = 0; i < n; ++i) {
            if (!scenario.active_mask[i]) continue;
            const RisConfiguration candidate = cfg.flipped(i);
            const double trial = goal_value(scenario, options.goal, candidate, next_eval_seed());
            const bool accept = trial < current;  // strict decrease; ties revert
            result.trace.steps.push_back({loop, i, current, trial, accept});
            if (accept) {
                cfg = candidate;
                current = trial;
                any_accepted = true;
                ++result.trace.flips_accepted;
            }
        }
        ++result.trace.loops_run;
        if (!any_accepted) {
            result.trace.converged = true;
            break;
        }
    }

    result.config = std::move(cfg);
    result.trace.final_goal = current;
    return result;
}

BruteForceResult brute_force_optimize(const Scenario& scenario, GoalKind deterministic_goal,
                                      const RisConfiguration& base) {
    scenario.validate();
    if (deterministic_goal == GoalKind::MeasuredEvm)
        throw std::invalid_argument("brute_force_optimize: goal must be deterministic");
    if (base.total_pixels() != scenario.realization.total_pixels())
        throw std::invalid_argument("brute_force_optimize: configuration does not match realization");

    std::vector<std::size_t> active;
    for (std::size_t i = 0; i < scenario.active_mask.size(); ++i)
        if (scenario.active_mask[i]) active.push_back(i);
    if (active.size() > 20)
        throw std::invalid_argument("brute_force_optimize: " + std::to_string(active.size()) +
                                    " active pixels exceed the cap of 20");

    BruteForceResult best{base, 0.0};
    bool have_best = false;
    std::vector<PixelState> states = base.states();
    const std::uint64_t count = 1ULL << active.size();
    for (std::uint64_t m = 0; m < count; ++m) {
        for (std::size_t j = 0; j < active.size(); ++j)
            states[active[j]] = ((m >> j) & 1) ? PixelState::Pi : PixelState::Zero;
        RisConfiguration cfg(base.surface_sizes(), states);
        const double g = goal_value(scenario, deterministic_goal, cfg, 0);
        // Strict comparison keeps the first (lowest binary value) minimizer.
        if (!have_best || g < best.goal) {
            best = {std::move(cfg), g};
            have_best = true;
        }
    }
    return best;
}

}  // namespace rislink
