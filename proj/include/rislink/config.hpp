#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "rislink/cavity.hpp"
#include "rislink/experiments.hpp"

namespace rislink {

enum class ExperimentKind { SingleVsDual, Escalation, Hardening, Custom };

std::string to_string(ExperimentKind kind);
ExperimentKind experiment_from_string(const std::string& name);

/// Fully-specified, validated run description. Parsed from the sectioned
/// key=value config format (see parse_config_text); every field has a
/// documented default, unknown keys are rejected by name.
struct RunConfig {
    ExperimentKind experiment = ExperimentKind::SingleVsDual;
    std::uint64_t seed = 1;
    std::string output_dir = "results";
    int jobs = 1;

    CavityParameters cavity;  // seed field unused; experiments derive it

    double signal_power = 1.0;
    /// Exactly one of noise_power / target_initial_evm is active. When the
    /// target is set the runner calibrates noise_power before executing.
    std::optional<double> noise_power;
    std::optional<double> target_initial_evm;

    double int_start_db = -10.0;
    double int_step_db = 5.0;
    double int_end_db = 0.0;
    bool jammer_on = true;

    OptimizerSettings optimizer;

    std::vector<std::size_t> m_values{8, 16, 32, 64, 128, 256};
    std::size_t realizations_per_m = 200;
    /// Uncontrolled-power fraction used by the hardening sweep (kept separate
    /// from the link experiments so the sweep isolates pixel-path statistics).
    double hardening_kappa = 0.0;

    bool operator==(const RunConfig&) const = default;
};

/// Raised on malformed config text, unknown keys, or out-of-range values;
/// the message names the offending section/key.
struct ConfigError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// Parses config text (sections of key = value lines, # or ; comments).
/// Omitted keys take the documented defaults; RISLINK_OUTPUT_DIR, when set,
/// provides the default output_dir.
RunConfig parse_config_text(const std::string& text);
RunConfig parse_config_file(const std::string& path);

/// Applies one "section.key" override (the CLI flag path shares the parser's
/// validation).
void apply_override(RunConfig& config, const std::string& dotted_key, const std::string& value);

/// Canonical text form; parse_config_text(emit_config(c)) == c.
std::string emit_config(const RunConfig& config);

/// Cross-field validation (value ranges, exclusive link keys, schedule and
/// sweep grids). Called by the parser; throws ConfigError.
void validate(const RunConfig& config);

}  // namespace rislink
