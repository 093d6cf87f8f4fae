#pragma once

#include <filesystem>
#include <map>
#include <string>
#include <vector>

#include "rislink/experiments.hpp"

namespace rislink {

/// Percent with one decimal, the format used on stdout ("36.4").
std::string format_pct(double fraction);

void write_trace_csv(const std::filesystem::path& path, const OptimizationTrace& trace);
OptimizationTrace read_trace_csv(const std::filesystem::path& path);

void write_constellation_csv(const std::filesystem::path& path,
                             const std::vector<ConstellationPoint>& points);
std::vector<ConstellationPoint> read_constellation_csv(const std::filesystem::path& path);

void write_hardening_csv(const std::filesystem::path& path, const HardeningSweepResult& sweep);
HardeningSweepResult read_hardening_csv(const std::filesystem::path& path);

/// summary.txt is "key = value" lines; values are deterministic decimal text.
void write_summary(const std::filesystem::path& path,
                   const std::vector<std::pair<std::string, std::string>>& entries);
std::map<std::string, std::string> read_summary(const std::filesystem::path& path);

}  // namespace rislink
