#pragma once

#include <iosfwd>

#include "rislink/config.hpp"

namespace rislink {

/// Resolved link budget for a run: either the configured noise power or the
/// result of calibrating to the configured target initial EVM.
LinkBudget resolve_link_budget(const RunConfig& config, std::ostream& out);

/// Executes the selected experiment, persists the config snapshot, traces,
/// constellations and summary under config.output_dir, and prints the final
/// EVM values (percent, one decimal) to `out`. Returns 0 on success; errors
/// are reported on `err` with a nonzero return.
int run(const RunConfig& config, std::ostream& out, std::ostream& err);

}  // namespace rislink
