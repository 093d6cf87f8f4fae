#include <pybind11/complex.h>
#include <pybind11/operators.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "rislink/experiments.hpp"

namespace py = pybind11;
using namespace rislink;

PYBIND11_MODULE(_rislink, m) {
    m.doc() = "Link-level simulator for binary-pixel reconfigurable surfaces in a "
              "rich-multipath cavity: channel model, QPSK/EVM link, greedy pixel-flip "
              "optimization and the bundled experiments.";

    // --- cavity ---
    py::enum_<PixelState>(m, "PixelState")
        .value("ZERO", PixelState::Zero)
        .value("PI", PixelState::Pi);

    py::class_<RisConfiguration>(m, "RisConfiguration")
        .def(py::init<std::vector<std::size_t>, std::vector<PixelState>>(),
             py::arg("surface_sizes"), py::arg("states"))
        .def_static("zeros", &RisConfiguration::zeros, py::arg("surface_sizes"))
        .def_static("random", &RisConfiguration::random, py::arg("surface_sizes"),
                    py::arg("seed"))
        .def_property_readonly("total_pixels", &RisConfiguration::total_pixels)
        .def_property_readonly("surface_count", &RisConfiguration::surface_count)
        .def("surface_size", &RisConfiguration::surface_size, py::arg("surface"))
        .def("state", &RisConfiguration::state, py::arg("global_index"))
        .def("sign", &RisConfiguration::sign, py::arg("global_index"))
        .def("flipped", &RisConfiguration::flipped, py::arg("global_index"))
        .def("locate", &RisConfiguration::locate, py::arg("global_index"))
        .def("global_index", &RisConfiguration::global_index, py::arg("surface"),
             py::arg("local_index"))
        .def_property_readonly("states", &RisConfiguration::states)
        .def_property_readonly("surface_sizes", &RisConfiguration::surface_sizes)
        .def(py::self == py::self);

    m.def("flip_pixel", &flip_pixel, py::arg("cfg"), py::arg("i"));

    py::class_<CavityParameters>(m, "CavityParameters")
        .def(py::init([](std::size_t n_pixels_per_surface, std::size_t n_surfaces, double kappa,
                         double eve_kappa, std::uint64_t seed) {
                 CavityParameters p{n_pixels_per_surface, n_surfaces, kappa, eve_kappa, seed};
                 p.validate();
                 return p;
             }),
             py::arg("n_pixels_per_surface") = 152, py::arg("n_surfaces") = 2,
             py::arg("kappa") = 0.25, py::arg("eve_kappa") = 0.25, py::arg("seed") = 0)
        .def_readwrite("n_pixels_per_surface", &CavityParameters::n_pixels_per_surface)
        .def_readwrite("n_surfaces", &CavityParameters::n_surfaces)
        .def_readwrite("kappa", &CavityParameters::kappa)
        .def_readwrite("eve_kappa", &CavityParameters::eve_kappa)
        .def_readwrite("seed", &CavityParameters::seed)
        .def_property_readonly("total_pixels", &CavityParameters::total_pixels)
        .def("surface_sizes", &CavityParameters::surface_sizes)
        .def("validate", &CavityParameters::validate);

    py::class_<CavityRealization>(m, "CavityRealization")
        .def_property_readonly("alice_coupling", &CavityRealization::alice_coupling)
        .def_property_readonly("bob_coupling", &CavityRealization::bob_coupling)
        .def_property_readonly("eve_coupling", &CavityRealization::eve_coupling)
        .def_property_readonly("direct_alice_bob", &CavityRealization::direct_alice_bob)
        .def_property_readonly("direct_eve_bob", &CavityRealization::direct_eve_bob)
        .def_property_readonly("params", &CavityRealization::params)
        .def_property_readonly("total_pixels", &CavityRealization::total_pixels);

    m.def("sample_realization", &sample_realization, py::arg("params"));
    m.def("effective_channel", &effective_channel, py::arg("realization"), py::arg("cfg"));
    m.def("effective_jammer_channel", &effective_jammer_channel, py::arg("realization"),
          py::arg("cfg"));

    // --- qpsk link ---
    m.def("modulate_qpsk",
          [](const std::vector<std::uint8_t>& bits) { return modulate_qpsk(bits); },
          py::arg("bits"));
    m.def("demodulate_qpsk",
          [](const std::vector<cplx>& symbols) { return demodulate_qpsk(symbols); },
          py::arg("symbols"));
    m.def("pilot_bits", &pilot_bits, py::arg("n_pilots"));

    py::class_<Frame>(m, "Frame")
        .def_readonly("pilot_symbols", &Frame::pilot_symbols)
        .def_readonly("data_bits", &Frame::data_bits)
        .def_readonly("data_symbols", &Frame::data_symbols)
        .def_property_readonly("n_pilots", &Frame::n_pilots)
        .def_property_readonly("n_data", &Frame::n_data);

    m.def("make_frame", &make_frame, py::arg("n_pilots"), py::arg("data_bits"));
    m.def("receive_frame",
          [](const Frame& frame, cplx h, cplx h_e, double jam_power, double noise_power,
             std::uint64_t seed) {
              return receive_frame(frame, h, h_e, jam_power, noise_power, seed);
          },
          py::arg("frame"), py::arg("h"), py::arg("h_e"), py::arg("jam_power"),
          py::arg("noise_power"), py::arg("seed"));
    m.def("equalize",
          [](const std::vector<cplx>& received_pilots, const std::vector<cplx>& known_pilots) {
              return equalize(received_pilots, known_pilots);
          },
          py::arg("received_pilots"), py::arg("known_pilots"));
    m.def("per_symbol_evm", &per_symbol_evm, py::arg("received"), py::arg("ideal"));
    m.def("mean_evm",
          [](const std::vector<double>& per_symbol) { return mean_evm(per_symbol); },
          py::arg("per_symbol"));
    m.def("sinr_db", &sinr_db, py::arg("h"), py::arg("h_e"), py::arg("signal_power"),
          py::arg("jam_power"), py::arg("noise_power"));

    py::class_<EvmReport>(m, "EvmReport")
        .def_readonly("per_symbol", &EvmReport::per_symbol)
        .def_readonly("mean", &EvmReport::mean)
        .def_readonly("quadrant_barycenters", &EvmReport::quadrant_barycenters)
        .def_readonly("quadrant_counts", &EvmReport::quadrant_counts)
        .def_readonly("equalized", &EvmReport::equalized);

    m.def("measure_frame",
          [](const Frame& frame, const std::vector<cplx>& received) {
              return measure_frame(frame, received);
          },
          py::arg("frame"), py::arg("received"));
    m.def("measure_frame_known_channel",
          [](const Frame& frame, const std::vector<cplx>& received, cplx h) {
              return measure_frame_known_channel(frame, received, h);
          },
          py::arg("frame"), py::arg("received"), py::arg("h"));

    // --- interference ---
    py::class_<InterferenceLevel>(m, "InterferenceLevel")
        .def_static("off", &InterferenceLevel::off)
        .def_static("from_db", &InterferenceLevel::from_db, py::arg("db"))
        .def_readwrite("int_db", &InterferenceLevel::int_db)
        .def("is_off", &InterferenceLevel::is_off)
        .def("linear_ratio", &InterferenceLevel::linear_ratio)
        .def(py::self == py::self);

    m.def("jammer_power", &jammer_power, py::arg("level"), py::arg("signal_power"));
    m.def("escalation_schedule", &escalation_schedule, py::arg("start_db"), py::arg("step_db"),
          py::arg("end_db"));

    // --- optimizer ---
    py::enum_<GoalKind>(m, "GoalKind")
        .value("MEASURED_EVM", GoalKind::MeasuredEvm)
        .value("ANALYTIC_EVM", GoalKind::AnalyticEvm)
        .value("NEG_POWER", GoalKind::NegPower);

    py::class_<Scenario>(m, "Scenario")
        .def(py::init([](const CavityRealization& realization, double signal_power,
                         double noise_power, InterferenceLevel level, int frames_per_eval,
                         std::optional<std::vector<std::uint8_t>> active_mask,
                         std::size_t n_pilots, std::size_t n_data_symbols, bool known_channel) {
                 Scenario s{realization};
                 s.signal_power = signal_power;
                 s.noise_power = noise_power;
                 s.level = level;
                 s.frames_per_eval = frames_per_eval;
                 s.active_mask =
                     active_mask ? *active_mask : full_mask(realization.total_pixels());
                 s.n_pilots = n_pilots;
                 s.n_data_symbols = n_data_symbols;
                 s.known_channel = known_channel;
                 s.validate();
                 return s;
             }),
             py::arg("realization"), py::arg("signal_power") = 1.0,
             py::arg("noise_power") = 0.0, py::arg("level") = InterferenceLevel::off(),
             py::arg("frames_per_eval") = 4, py::arg("active_mask") = std::nullopt,
             py::arg("n_pilots") = 16, py::arg("n_data_symbols") = 256,
             py::arg("known_channel") = false)
        .def_readonly("realization", &Scenario::realization)
        .def_readwrite("signal_power", &Scenario::signal_power)
        .def_readwrite("noise_power", &Scenario::noise_power)
        .def_readwrite("level", &Scenario::level)
        .def_readwrite("frames_per_eval", &Scenario::frames_per_eval)
        .def_readwrite("active_mask", &Scenario::active_mask)
        .def_readwrite("n_pilots", &Scenario::n_pilots)
        .def_readwrite("n_data_symbols", &Scenario::n_data_symbols)
        .def_readwrite("known_channel", &Scenario::known_channel);

    m.def("full_mask", &full_mask, py::arg("n_pixels"));
    m.def("surface_mask", &surface_mask, py::arg("surface_sizes"), py::arg("surface"));
    m.def("evaluate_goal", &evaluate_goal, py::arg("scenario"), py::arg("cfg"),
          py::arg("eval_seed"));
    m.def("analytic_evm", &analytic_evm, py::arg("scenario"), py::arg("cfg"));
    m.def("power_goal", &power_goal, py::arg("scenario"), py::arg("cfg"));

    py::class_<TraceStep>(m, "TraceStep")
        .def_readonly("loop", &TraceStep::loop)
        .def_readonly("pixel", &TraceStep::pixel)
        .def_readonly("goal_before", &TraceStep::goal_before)
        .def_readonly("goal_after", &TraceStep::goal_after)
        .def_readonly("accepted", &TraceStep::accepted);

    py::class_<OptimizationTrace>(m, "OptimizationTrace")
        .def_readonly("steps", &OptimizationTrace::steps)
        .def_readonly("initial_goal", &OptimizationTrace::initial_goal)
        .def_readonly("final_goal", &OptimizationTrace::final_goal)
        .def_readonly("loops_run", &OptimizationTrace::loops_run)
        .def_readonly("flips_accepted", &OptimizationTrace::flips_accepted)
        .def_readonly("converged", &OptimizationTrace::converged);

    py::class_<GreedyOptions>(m, "GreedyOptions")
        .def(py::init([](GoalKind goal, int max_loops, bool crn, std::uint64_t seed) {
                 return GreedyOptions{goal, max_loops, crn, seed};
             }),
             py::arg("goal") = GoalKind::MeasuredEvm, py::arg("max_loops") = 10,
             py::arg("crn") = true, py::arg("seed") = 0)
        .def_readwrite("goal", &GreedyOptions::goal)
        .def_readwrite("max_loops", &GreedyOptions::max_loops)
        .def_readwrite("crn", &GreedyOptions::crn)
        .def_readwrite("seed", &GreedyOptions::seed);

    py::class_<GreedyResult>(m, "GreedyResult")
        .def_readonly("config", &GreedyResult::config)
        .def_readonly("trace", &GreedyResult::trace);

    m.def("greedy_optimize", &greedy_optimize, py::arg("scenario"), py::arg("init"),
          py::arg("options"));

    py::class_<BruteForceResult>(m, "BruteForceResult")
        .def_readonly("config", &BruteForceResult::config)
        .def_readonly("goal", &BruteForceResult::goal);

    m.def("brute_force_optimize", &brute_force_optimize, py::arg("scenario"),
          py::arg("deterministic_goal"), py::arg("base"));

    // --- experiments ---
    py::class_<LinkBudget>(m, "LinkBudget")
        .def(py::init([](double signal_power, double noise_power) {
                 return LinkBudget{signal_power, noise_power};
             }),
             py::arg("signal_power") = 1.0, py::arg("noise_power") = 0.6)
        .def_readwrite("signal_power", &LinkBudget::signal_power)
        .def_readwrite("noise_power", &LinkBudget::noise_power);

    py::class_<OptimizerSettings>(m, "OptimizerSettings")
        .def(py::init([](int max_loops, int frames_per_eval, bool crn, std::size_t n_pilots,
                         std::size_t n_data_symbols) {
                 return OptimizerSettings{max_loops, frames_per_eval, crn, n_pilots,
                                          n_data_symbols};
             }),
             py::arg("max_loops") = 10, py::arg("frames_per_eval") = 4, py::arg("crn") = true,
             py::arg("n_pilots") = 16, py::arg("n_data_symbols") = 256)
        .def_readwrite("max_loops", &OptimizerSettings::max_loops)
        .def_readwrite("frames_per_eval", &OptimizerSettings::frames_per_eval)
        .def_readwrite("crn", &OptimizerSettings::crn)
        .def_readwrite("n_pilots", &OptimizerSettings::n_pilots)
        .def_readwrite("n_data_symbols", &OptimizerSettings::n_data_symbols);

    py::class_<ConstellationPoint>(m, "ConstellationPoint")
        .def_readonly("symbol_index", &ConstellationPoint::symbol_index)
        .def_readonly("bit_first", &ConstellationPoint::bit_first)
        .def_readonly("bit_second", &ConstellationPoint::bit_second)
        .def_readonly("ideal", &ConstellationPoint::ideal)
        .def_readonly("received", &ConstellationPoint::received)
        .def_readonly("sigma", &ConstellationPoint::sigma);

    py::class_<ExperimentResult>(m, "ExperimentResult")
        .def_readonly("label", &ExperimentResult::label)
        .def_readonly("evm_initial", &ExperimentResult::evm_initial)
        .def_readonly("evm_final", &ExperimentResult::evm_final)
        .def_readonly("trace", &ExperimentResult::trace)
        .def_readonly("constellation_before", &ExperimentResult::constellation_before)
        .def_readonly("constellation_after", &ExperimentResult::constellation_after)
        .def_readonly("config_final", &ExperimentResult::config_final)
        .def_readonly("seed", &ExperimentResult::seed);

    m.def("capture_constellation", &capture_constellation, py::arg("scenario"), py::arg("cfg"),
          py::arg("eval_seed"));

    py::class_<SingleVsDualResult>(m, "SingleVsDualResult")
        .def_readonly("one_ris", &SingleVsDualResult::one_ris)
        .def_readonly("two_ris", &SingleVsDualResult::two_ris);

    m.def("run_single_vs_dual_ris", &run_single_vs_dual_ris, py::arg("params"),
          py::arg("budget"), py::arg("settings"), py::arg("seed"));

    py::class_<EscalationStep>(m, "EscalationStep")
        .def_readonly("level", &EscalationStep::level)
        .def_readonly("result", &EscalationStep::result);

    m.def("run_interference_escalation", &run_interference_escalation, py::arg("params"),
          py::arg("schedule"), py::arg("budget"), py::arg("settings"), py::arg("seed"));

    py::class_<HardeningPoint>(m, "HardeningPoint")
        .def_readonly("m", &HardeningPoint::m)
        .def_readonly("mean_h_abs", &HardeningPoint::mean_h_abs)
        .def_readonly("std_h_abs", &HardeningPoint::std_h_abs)
        .def_readonly("rel_fluctuation", &HardeningPoint::rel_fluctuation)
        .def_readonly("mean_evm", &HardeningPoint::mean_evm);

    py::class_<HardeningSweepResult>(m, "HardeningSweepResult")
        .def_readonly("points", &HardeningSweepResult::points)
        .def_readonly("slope", &HardeningSweepResult::slope);

    m.def("run_hardening_sweep", &run_hardening_sweep, py::arg("m_values"),
          py::arg("realizations_per_m"), py::arg("cavity_template"), py::arg("budget"),
          py::arg("settings"), py::arg("seed"), py::arg("jobs") = 1,
          py::call_guard<py::gil_scoped_release>());

    m.def("calibrate_noise_power", &calibrate_noise_power, py::arg("params"),
          py::arg("target_initial_evm"), py::arg("settings"), py::arg("seed"),
          py::arg("ensemble") = 20);
    m.def("median_initial_evm", &median_initial_evm, py::arg("params"), py::arg("budget"),
          py::arg("settings"), py::arg("seed"), py::arg("ensemble") = 20);
}
