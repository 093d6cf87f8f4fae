#include "rislink/report.hpp"

#include <cstdio>
#include <fstream>
#include <sstream>
#include <stdexcept>

namespace rislink {

namespace {

std::string num(double v) {
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%.12g", v);
    return buf;
}

std::ofstream open_out(const std::filesystem::path& path) {
    std::ofstream out(path);
    if (!out) throw std::runtime_error("cannot write '" + path.string() + "'");
    return out;
}

std::ifstream open_in(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot read '" + path.string() + "'");
    return in;
}

std::vector<std::string> split_csv_line(const std::string& line) {
    std::vector<std::string> fields;
    std::stringstream ss(line);
    std::string field;
    while (std::getline(ss, field, ',')) fields.push_back(field);
    return fields;
}

}  // namespace

std::string format_pct(double fraction) {
    char buf[32];
    std::snprintf(buf, sizeof(buf), "%.1f", 100.0 * fraction);
    return buf;
}

void write_trace_csv(const std::filesystem::path& path, const OptimizationTrace& trace) {
    auto out = open_out(path);
    out << "loop,pixel,goal_before,goal_after,accepted\n";
    for (const TraceStep& s : trace.steps)
        out << s.loop << "," << s.pixel << "," << num(s.goal_before) << "," << num(s.goal_after)
            << "," << (s.accepted ? 1 : 0) << "\n";
}

OptimizationTrace read_trace_csv(const std::filesystem::path& path) {
    auto in = open_in(path);
    OptimizationTrace trace;
    std::string line;
    std::getline(in, line);  // header
    while (std::getline(in, line)) {
        if (line.empty()) continue;
        const auto f = split_csv_line(line);
        if (f.size() != 5)
            throw std::runtime_error("malformed trace row in '" + path.string() + "'");
        TraceStep step;
        step.loop = std::stoi(f[0]);
        step.pixel = static_cast<std::size_t>(std::stoull(f[1]));
        step.goal_before = std::stod(f[2]);
        step.goal_after = std::stod(f[3]);
        step.accepted = f[4] == "1";
        trace.steps.push_back(step);
        if (step.accepted) ++trace.flips_accepted;
        trace.loops_run = std::max(trace.loops_run, step.loop + 1);
    }
    if (!trace.steps.empty()) {
        trace.initial_goal = trace.steps.front().goal_before;
        trace.final_goal = trace.steps.back().accepted ? trace.steps.back().goal_after
                                                       : trace.steps.back().goal_before;
    }
    return trace;
}

void write_constellation_csv(const std::filesystem::path& path,
                             const std::vector<ConstellationPoint>& points) {
    auto out = open_out(path);
    out << "symbol_index,bits,ideal_re,ideal_im,rx_re,rx_im,sigma_k\n";
    for (const ConstellationPoint& p : points)
        out << p.symbol_index << "," << int(p.bit_first) << int(p.bit_second) << ","
            << num(p.ideal.real()) << "," << num(p.ideal.imag()) << "," << num(p.received.real())
            << "," << num(p.received.imag()) << "," << num(p.sigma) << "\n";
}

std::vector<ConstellationPoint> read_constellation_csv(const std::filesystem::path& path) {
    auto in = open_in(path);
    std::vector<ConstellationPoint> points;
    std::string line;
    std::getline(in, line);
    while (std::getline(in, line)) {
        if (line.empty()) continue;
        const auto f = split_csv_line(line);
        if (f.size() != 7 || f[1].size() != 2)
            throw std::runtime_error("malformed constellation row in '" + path.string() + "'");
        ConstellationPoint p;
        p.symbol_index = static_cast<std::size_t>(std::stoull(f[0]));
        p.bit_first = f[1][0] == '1';
        p.bit_second = f[1][1] == '1';
        p.ideal = {std::stod(f[2]), std::stod(f[3])};
        p.received = {std::stod(f[4]), std::stod(f[5])};
        p.sigma = std::stod(f[6]);
        points.push_back(p);
    }
    return points;
}

void write_hardening_csv(const std::filesystem::path& path, const HardeningSweepResult& sweep) {
    auto out = open_out(path);
    out << "m,mean_h_abs,std_h_abs,rel_fluctuation,mean_evm\n";
    for (const HardeningPoint& p : sweep.points)
        out << p.m << "," << num(p.mean_h_abs) << "," << num(p.std_h_abs) << ","
            << num(p.rel_fluctuation) << "," << num(p.mean_evm) << "\n";
}

HardeningSweepResult read_hardening_csv(const std::filesystem::path& path) {
    auto in = open_in(path);
    HardeningSweepResult sweep;
    std::string line;
    std::getline(in, line);
    std::vector<double> log_m, log_rel;
    while (std::getline(in, line)) {
        if (line.empty()) continue;
        const auto f = split_csv_line(line);
        if (f.size() != 5)
            throw std::runtime_error("malformed hardening row in '" + path.string() + "'");
        HardeningPoint p;
        p.m = static_cast<std::size_t>(std::stoull(f[0]));
        p.mean_h_abs = std::stod(f[1]);
        p.std_h_abs = std::stod(f[2]);
        p.rel_fluctuation = std::stod(f[3]);
        p.mean_evm = std::stod(f[4]);
        sweep.points.push_back(p);
    }
    return sweep;
}

void write_summary(const std::filesystem::path& path,
                   const std::vector<std::pair<std::string, std::string>>& entries) {
    auto out = open_out(path);
    for (const auto& [key, value] : entries) out << key << " = " << value << "\n";
}

std::map<std::string, std::string> read_summary(const std::filesystem::path& path) {
    auto in = open_in(path);
    std::map<std::string, std::string> entries;
    std::string line;
    while (std::getline(in, line)) {
        if (line.empty()) continue;
        const auto eq = line.find(" = ");
        if (eq == std::string::npos)
            throw std::runtime_error("malformed summary line in '" + path.string() + "'");
        entries[line.substr(0, eq)] = line.substr(eq + 3);
    }
    return entries;
}

}  // namespace rislink
