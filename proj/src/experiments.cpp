#include "rislink/experiments.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <exception>
#include <stdexcept>
#include <thread>

namespace rislink {

namespace {

// Stream indices hung off a master seed. Shared by experiments and the
// calibration so their ensembles see identical channels.
enum Stream : std::uint64_t { kCavity = 1, kInitConfig = 2, kEval = 3 };

Scenario make_scenario(CavityRealization realization, const LinkBudget& budget,
                       const OptimizerSettings& settings, InterferenceLevel level,
                       std::vector<std::uint8_t> mask) {
    return Scenario{std::move(realization),
                    budget.signal_power,
                    budget.noise_power,
                    level,
                    settings.frames_per_eval,
                    std::move(mask),
                    settings.n_pilots,
                    settings.n_data_symbols,
                    /*known_channel=*/false};
}

GreedyOptions measured_options(const OptimizerSettings& settings, std::uint64_t eval_seed) {
    GreedyOptions o;
    o.goal = GoalKind::MeasuredEvm;
    o.max_loops = settings.max_loops;
    o.crn = settings.crn;
    o.seed = eval_seed;
    return o;
}

double median(std::vector<double> v) {
    if (v.empty()) throw std::invalid_argument("median: empty sample");
    std::sort(v.begin(), v.end());
    const std::size_t mid = v.size() / 2;
    if (v.size() % 2 == 1) return v[mid];
    return 0.5 * (v[mid - 1] + v[mid]);
}

double fit_slope(const std::vector<double>& x, const std::vector<double>& y) {
    const double n = static_cast<double>(x.size());
    double mx = 0.0, my = 0.0;
    for (std::size_t i = 0; i < x.size(); ++i) {
        mx += x[i];
        my += y[i];
    }
    mx /= n;
    my /= n;
    double sxy = 0.0, sxx = 0.0;
    for (std::size_t i = 0; i < x.size(); ++i) {
        sxy += (x[i] - mx) * (y[i] - my);
        sxx += (x[i] - mx) * (x[i] - mx);
    }
    return sxy / sxx;
}

}  // namespace

std::vector<ConstellationPoint> capture_constellation(const Scenario& scenario,
                                                      const RisConfiguration& cfg,
                                                      std::uint64_t eval_seed) {
    scenario.validate();
    const cplx h = effective_channel(scenario.realization, cfg);
    const cplx h_e = effective_jammer_channel(scenario.realization, cfg);
    const cplx h_tx = h * std::sqrt(scenario.signal_power);
    const double jam = scenario.level.is_off()
                           ? 0.0
                           : jammer_power(scenario.level, scenario.signal_power);

    std::vector<ConstellationPoint> points;
    points.reserve(static_cast<std::size_t>(scenario.frames_per_eval) * scenario.n_data_symbols);
    for (int f = 0; f < scenario.frames_per_eval; ++f) {
        Rng rng(derive_seed(eval_seed, static_cast<std::uint64_t>(f)));
        const Frame frame = random_frame(scenario.n_pilots, scenario.n_data_symbols, rng);
        const std::vector<cplx> y =
            receive_frame(frame, h_tx, h_e, jam, scenario.noise_power, rng);
        cplx h_hat = scenario.known_channel
                         ? h_tx
                         : equalize(std::span<const cplx>(y).subspan(0, frame.n_pilots()),
                                    frame.pilot_symbols);
        const bool ok = h_hat != cplx{0.0, 0.0};
        if (!ok) h_hat = {1.0, 0.0};
        for (std::size_t k = 0; k < frame.n_data(); ++k) {
            ConstellationPoint p;
            p.symbol_index = static_cast<std::size_t>(f) * scenario.n_data_symbols + k;
            p.bit_first = frame.data_bits[2 * k];
            p.bit_second = frame.data_bits[2 * k + 1];
            p.ideal = frame.data_symbols[k];
            p.received = y[frame.n_pilots() + k] / h_hat;
            p.sigma = ok ? per_symbol_evm(p.received, p.ideal) : 1.0;
            points.push_back(p);
        }
    }
    return points;
}

namespace {

ExperimentResult run_stage(const Scenario& scenario, const RisConfiguration& init,
                           const OptimizerSettings& settings, std::uint64_t eval_seed,
                           std::uint64_t master_seed, std::string label) {
    const GreedyResult greedy = greedy_optimize(scenario, init, measured_options(settings, eval_seed));
    ExperimentResult result{std::move(label),
                            greedy.trace.initial_goal,
                            greedy.trace.final_goal,
                            greedy.trace,
                            capture_constellation(scenario, init, eval_seed),
                            capture_constellation(scenario, greedy.config, eval_seed),
                            greedy.config,
                            master_seed};
    return result;
}

}  // namespace

SingleVsDualResult run_single_vs_dual_ris(const CavityParameters& params,
                                          const LinkBudget& budget,
                                          const OptimizerSettings& settings,
                                          std::uint64_t seed) {
    params.validate();
    if (params.n_surfaces < 2)
        throw std::invalid_argument("run_single_vs_dual_ris: needs at least two surfaces");

    CavityParameters p = params;
    p.seed = derive_seed(seed, kCavity);
    const CavityRealization realization = sample_realization(p);
    const std::vector<std::size_t> sizes = p.surface_sizes();
    const RisConfiguration init = RisConfiguration::random(sizes, derive_seed(seed, kInitConfig));
    const std::uint64_t eval_seed = derive_seed(seed, kEval);

    const Scenario stage1 = make_scenario(realization, budget, settings,
                                          InterferenceLevel::off(), surface_mask(sizes, 0));
    ExperimentResult one = run_stage(stage1, init, settings, eval_seed, seed, "one_ris");

    const Scenario stage2 = make_scenario(realization, budget, settings,
                                          InterferenceLevel::off(), full_mask(init.total_pixels()));
    ExperimentResult two =
        run_stage(stage2, one.config_final, settings, eval_seed, seed, "two_ris");

    return {std::move(one), std::move(two)};
}

std::vector<EscalationStep> run_interference_escalation(
    const CavityParameters& params, const std::vector<InterferenceLevel>& schedule,
    const LinkBudget& budget, const OptimizerSettings& settings, std::uint64_t seed) {
    params.validate();
    if (schedule.empty())
        throw std::invalid_argument("run_interference_escalation: empty schedule");

    CavityParameters p = params;
    p.seed = derive_seed(seed, kCavity);
    const CavityRealization realization = sample_realization(p);
    const std::vector<std::size_t> sizes = p.surface_sizes();
    RisConfiguration cfg = RisConfiguration::random(sizes, derive_seed(seed, kInitConfig));
    const std::uint64_t eval_seed = derive_seed(seed, kEval);

    std::vector<EscalationStep> steps;
    steps.reserve(schedule.size());
    for (const InterferenceLevel& level : schedule) {
        const Scenario scenario =
            make_scenario(realization, budget, settings, level, full_mask(cfg.total_pixels()));
        char label[48];
        if (level.is_off())
            std::snprintf(label, sizeof(label), "int_off");
        else
            std::snprintf(label, sizeof(label), "int_%+gdB", level.int_db);
        ExperimentResult result = run_stage(scenario, cfg, settings, eval_seed, seed, label);
        cfg = result.config_final;
        steps.push_back({level, std::move(result)});
    }
    return steps;
}

void parallel_for_index(std::size_t n_jobs, int workers,
                        const std::function<void(std::size_t)>& fn) {
    if (workers < 1) throw std::invalid_argument("parallel_for_index: workers must be >= 1");
    const std::size_t n_threads = std::min<std::size_t>(static_cast<std::size_t>(workers), n_jobs);
    if (n_threads <= 1) {
        for (std::size_t i = 0; i < n_jobs; ++i) fn(i);
        return;
    }
    std::atomic<std::size_t> next{0};
    std::exception_ptr error;
    std::mutex error_mutex;
    auto worker = [&]() {
        for (;;) {
            const std::size_t i = next.fetch_add(1);
            if (i >= n_jobs) return;
            try {
                fn(i);
            } catch (...) {
                std::lock_guard<std::mutex> lock(error_mutex);
                if (!error) error = std::current_exception();
                return;
            }
        }
    };
    std::vector<std::thread> pool;
    pool.reserve(n_threads);
    for (std::size_t t = 0; t < n_threads; ++t) pool.emplace_back(worker);
    for (auto& t : pool) t.join();
    if (error) std::rethrow_exception(error);
}

HardeningSweepResult run_hardening_sweep(const std::vector<std::size_t>& m_values,
                                         std::size_t realizations_per_m,
                                         const CavityParameters& cavity_template,
                                         const LinkBudget& budget,
                                         const OptimizerSettings& settings,
                                         std::uint64_t seed, int jobs) {
    if (m_values.empty())
        throw std::invalid_argument("run_hardening_sweep: m_values must be nonempty");
    for (std::size_t i = 1; i < m_values.size(); ++i)
        if (m_values[i] <= m_values[i - 1])
            throw std::invalid_argument("run_hardening_sweep: m_values must be strictly increasing");
    if (realizations_per_m < 50)
        throw std::invalid_argument("run_hardening_sweep: realizations_per_m must be >= 50");

    const std::size_t n_jobs = m_values.size() * realizations_per_m;
    std::vector<double> h_abs(n_jobs, 0.0);
    std::vector<double> evm(n_jobs, 0.0);

    parallel_for_index(n_jobs, jobs, [&](std::size_t job) {
        const std::size_t mi = job / realizations_per_m;
        const std::size_t r = job % realizations_per_m;
        CavityParameters p = cavity_template;
        p.n_surfaces = 1;
        p.n_pixels_per_surface = m_values[mi];
        const std::uint64_t job_seed = derive_seed(seed, mi, r);
        p.seed = derive_seed(job_seed, kCavity);
        const CavityRealization realization = sample_realization(p);
        const RisConfiguration init =
            RisConfiguration::random(p.surface_sizes(), derive_seed(job_seed, kInitConfig));
        const std::uint64_t eval_seed = derive_seed(job_seed, kEval);

        Scenario scenario = make_scenario(realization, budget, settings,
                                          InterferenceLevel::off(), full_mask(m_values[mi]));

        GreedyOptions power_options = measured_options(settings, eval_seed);
        power_options.goal = GoalKind::NegPower;
        const GreedyResult focused = greedy_optimize(scenario, init, power_options);
        h_abs[job] = std::sqrt(-focused.trace.final_goal);

        const GreedyResult evm_run =
            greedy_optimize(scenario, init, measured_options(settings, eval_seed));
        evm[job] = evm_run.trace.final_goal;
    });

    HardeningSweepResult result;
    std::vector<double> log_m, log_rel;
    for (std::size_t mi = 0; mi < m_values.size(); ++mi) {
        const auto begin = mi * realizations_per_m;
        double mean = 0.0, mean_evm_acc = 0.0;
        for (std::size_t r = 0; r < realizations_per_m; ++r) {
            mean += h_abs[begin + r];
            mean_evm_acc += evm[begin + r];
        }
        mean /= static_cast<double>(realizations_per_m);
        mean_evm_acc /= static_cast<double>(realizations_per_m);
        double var = 0.0;
        for (std::size_t r = 0; r < realizations_per_m; ++r) {
            const double d = h_abs[begin + r] - mean;
            var += d * d;
        }
        var /= static_cast<double>(realizations_per_m - 1);
        HardeningPoint point;
        point.m = m_values[mi];
        point.mean_h_abs = mean;
        point.std_h_abs = std::sqrt(var);
        point.rel_fluctuation = point.std_h_abs / mean;
        point.mean_evm = mean_evm_acc;
        result.points.push_back(point);
        log_m.push_back(std::log(static_cast<double>(point.m)));
        log_rel.push_back(std::log(point.rel_fluctuation));
    }
    if (result.points.size() >= 2) result.slope = fit_slope(log_m, log_rel);
    return result;
}

double median_initial_evm(const CavityParameters& params, const LinkBudget& budget,
                          const OptimizerSettings& settings, std::uint64_t seed,
                          std::size_t ensemble) {
    if (ensemble == 0) throw std::invalid_argument("median_initial_evm: empty ensemble");
    std::vector<double> evms(ensemble);
    for (std::size_t k = 0; k < ensemble; ++k) {
        const std::uint64_t member = derive_seed(seed, k);
        CavityParameters p = params;
        p.seed = derive_seed(member, kCavity);
        const CavityRealization realization = sample_realization(p);
        const RisConfiguration cfg =
            RisConfiguration::random(p.surface_sizes(), derive_seed(member, kInitConfig));
        const Scenario scenario = make_scenario(realization, budget, settings,
                                                InterferenceLevel::off(),
                                                full_mask(cfg.total_pixels()));
        evms[k] = evaluate_goal(scenario, cfg, derive_seed(member, kEval));
    }
    return median(std::move(evms));
}

double calibrate_noise_power(const CavityParameters& params, double target_initial_evm,
                             const OptimizerSettings& settings, std::uint64_t seed,
                             std::size_t ensemble) {
    if (!(target_initial_evm > 0.0))
        throw std::invalid_argument("calibrate_noise_power: target must be positive");
    double lo = 1e-8, hi = 1e6;
    LinkBudget budget;
    // The median initial EVM is monotone in noise power; bisect in log space.
    for (int iter = 0; iter < 60; ++iter) {
        const double mid = std::sqrt(lo * hi);
        budget.noise_power = mid;
        const double evm = median_initial_evm(params, budget, settings, seed, ensemble);
        if (evm < target_initial_evm)
            lo = mid;
        else
            hi = mid;
    }
    return std::sqrt(lo * hi);
}

}  // namespace rislink
