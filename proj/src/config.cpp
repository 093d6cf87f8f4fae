#include "rislink/config.hpp"

#include <algorithm>
#include <array>
#include <cctype>
#include <charconv>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <functional>
#include <sstream>

namespace rislink {

namespace {

std::string trim(const std::string& s) {
    std::size_t b = 0, e = s.size();
    while (b < e && std::isspace(static_cast<unsigned char>(s[b]))) ++b;
    while (e > b && std::isspace(static_cast<unsigned char>(s[e - 1]))) --e;
    return s.substr(b, e - b);
}

std::string lower(std::string s) {
    std::transform(s.begin(), s.end(), s.begin(),
                   [](unsigned char c) { return static_cast<char>(std::tolower(c)); });
    return s;
}

double parse_double(const std::string& where, const std::string& value) {
    double out = 0.0;
    const char* first = value.data();
    const char* last = value.data() + value.size();
    const auto [ptr, ec] = std::from_chars(first, last, out);
    if (ec != std::errc{} || ptr != last)
        throw ConfigError("config: " + where + ": expected a number, got '" + value + "'");
    return out;
}

std::uint64_t parse_u64(const std::string& where, const std::string& value) {
    std::uint64_t out = 0;
    const char* first = value.data();
    const char* last = value.data() + value.size();
    const auto [ptr, ec] = std::from_chars(first, last, out);
    if (ec != std::errc{} || ptr != last)
        throw ConfigError("config: " + where + ": expected a non-negative integer, got '" +
                          value + "'");
    return out;
}

int parse_int(const std::string& where, const std::string& value) {
    int out = 0;
    const char* first = value.data();
    const char* last = value.data() + value.size();
    const auto [ptr, ec] = std::from_chars(first, last, out);
    if (ec != std::errc{} || ptr != last)
        throw ConfigError("config: " + where + ": expected an integer, got '" + value + "'");
    return out;
}

std::size_t parse_size(const std::string& where, const std::string& value) {
    return static_cast<std::size_t>(parse_u64(where, value));
}

bool parse_bool(const std::string& where, const std::string& value) {
    const std::string v = lower(value);
    if (v == "true" || v == "on" || v == "yes" || v == "1") return true;
    if (v == "false" || v == "off" || v == "no" || v == "0") return false;
    throw ConfigError("config: " + where + ": expected a boolean, got '" + value + "'");
}

std::vector<std::size_t> parse_size_list(const std::string& where, const std::string& value) {
    std::vector<std::size_t> out;
    std::stringstream ss(value);
    std::string item;
    while (std::getline(ss, item, ',')) out.push_back(parse_size(where, trim(item)));
    if (out.empty()) throw ConfigError("config: " + where + ": expected a list of integers");
    return out;
}

/// Shortest decimal form that parses back to the same double.
std::string format_double(double v) {
    char buf[64];
    for (int prec = 1; prec <= 17; ++prec) {
        std::snprintf(buf, sizeof(buf), "%.*g", prec, v);
        if (std::strtod(buf, nullptr) == v) return buf;
    }
    return buf;
}

std::string format_size_list(const std::vector<std::size_t>& v) {
    std::string out;
    for (std::size_t i = 0; i < v.size(); ++i) {
        if (i) out += ",";
        out += std::to_string(v[i]);
    }
    return out;
}

struct KeyEntry {
    const char* section;
    const char* key;
    std::function<void(RunConfig&, const std::string& where, const std::string& value)> set;
    /// Canonical value or nullopt to omit the line.
    std::function<std::optional<std::string>(const RunConfig&)> get;
};

const std::vector<KeyEntry>& key_table() {
    static const std::vector<KeyEntry> table = {
        {"run", "experiment",
         [](RunConfig& c, const std::string& w, const std::string& v) {
             try {
                 c.experiment = experiment_from_string(v);
             } catch (const std::invalid_argument& e) {
                 throw ConfigError("config: " + w + ": " + e.what());
             }
         },
         [](const RunConfig& c) { return std::optional(to_string(c.experiment)); }},
        {"run", "seed",
         [](RunConfig& c, const std::string& w, const std::string& v) {
             c.seed = parse_u64(w, v);
         },
         [](const RunConfig& c) { return std::optional(std::to_string(c.seed)); }},
        {"run", "output_dir",
         [](RunConfig& c, const std::string&, const std::string& v) { c.output_dir = v; },
         [](const RunConfig& c) { return std::optional(c.output_dir); }},
        {"run", "jobs",
         [](RunConfig& c, const std::string& w, const std::string& v) {
             c.jobs = parse_int(w, v);
         },
         [](const RunConfig& c) { return std::optional(std::to_string(c.jobs)); }},

        {"cavity", "n_pixels_per_surface",
         [](RunConfig& c, const std::string& w, const std::string& v) {
             c.cavity.n_pixels_per_surface = parse_size(w, v);
         },
         [](const RunConfig& c) {
             return std::optional(std::to_string(c.cavity.n_pixels_per_surface));
         }},
        {"cavity", "n_surfaces",
         [](RunConfig& c, const std::string& w, const std::string& v) {
             c.cavity.n_surfaces = parse_size(w, v);
         },
         [](const RunConfig& c) { return std::optional(std::to_string(c.cavity.n_surfaces)); }},
        {"cavity", "kappa",
         [](RunConfig& c, const std::string& w, const std::string& v) {
             c.cavity.kappa = parse_double(w, v);
         },
         [](const RunConfig& c) { return std::optional(format_double(c.cavity.kappa)); }},
        {"cavity", "eve_kappa",
         [](RunConfig& c, const std::string& w, const std::string& v) {
             c.cavity.eve_kappa = parse_double(w, v);
         },
         [](const RunConfig& c) { return std::optional(format_double(c.cavity.eve_kappa)); }},

        {"link", "signal_power",
         [](RunConfig& c, const std::string& w, const std::string& v) {
             c.signal_power = parse_double(w, v);
         },
         [](const RunConfig& c) { return std::optional(format_double(c.signal_power)); }},
        {"link", "noise_power",
         [](RunConfig& c, const std::string& w, const std::string& v) {
             c.noise_power = parse_double(w, v);
         },
         [](const RunConfig& c) -> std::optional<std::string> {
             if (!c.noise_power) return std::nullopt;
             return format_double(*c.noise_power);
         }},
        {"link", "target_initial_evm",
         [](RunConfig& c, const std::string& w, const std::string& v) {
             c.target_initial_evm = parse_double(w, v);
         },
         [](const RunConfig& c) -> std::optional<std::string> {
             if (!c.target_initial_evm) return std::nullopt;
             return format_double(*c.target_initial_evm);
         }},

        {"interference", "start_db",
         [](RunConfig& c, const std::string& w, const std::string& v) {
             c.int_start_db = parse_double(w, v);
         },
         [](const RunConfig& c) { return std::optional(format_double(c.int_start_db)); }},
        {"interference", "step_db",
         [](RunConfig& c, const std::string& w, const std::string& v) {
             c.int_step_db = parse_double(w, v);
         },
         [](const RunConfig& c) { return std::optional(format_double(c.int_step_db)); }},
        {"interference", "end_db",
         [](RunConfig& c, const std::string& w, const std::string& v) {
             c.int_end_db = parse_double(w, v);
         },
         [](const RunConfig& c) { return std::optional(format_double(c.int_end_db)); }},
        {"interference", "jammer",
         [](RunConfig& c, const std::string& w, const std::string& v) {
             c.jammer_on = parse_bool(w, v);
         },
         [](const RunConfig& c) { return std::optional(std::string(c.jammer_on ? "on" : "off")); }},

        {"optimizer", "max_loops",
         [](RunConfig& c, const std::string& w, const std::string& v) {
             c.optimizer.max_loops = parse_int(w, v);
         },
         [](const RunConfig& c) { return std::optional(std::to_string(c.optimizer.max_loops)); }},
        {"optimizer", "frames_per_eval",
         [](RunConfig& c, const std::string& w, const std::string& v) {
             c.optimizer.frames_per_eval = parse_int(w, v);
         },
         [](const RunConfig& c) {
             return std::optional(std::to_string(c.optimizer.frames_per_eval));
         }},
        {"optimizer", "crn",
         [](RunConfig& c, const std::string& w, const std::string& v) {
             c.optimizer.crn = parse_bool(w, v);
         },
         [](const RunConfig& c) {
             return std::optional(std::string(c.optimizer.crn ? "true" : "false"));
         }},
        {"optimizer", "n_pilots",
         [](RunConfig& c, const std::string& w, const std::string& v) {
             c.optimizer.n_pilots = parse_size(w, v);
         },
         [](const RunConfig& c) { return std::optional(std::to_string(c.optimizer.n_pilots)); }},
        {"optimizer", "n_data_symbols",
         [](RunConfig& c, const std::string& w, const std::string& v) {
             c.optimizer.n_data_symbols = parse_size(w, v);
         },
         [](const RunConfig& c) {
             return std::optional(std::to_string(c.optimizer.n_data_symbols));
         }},

        {"hardening", "m_values",
         [](RunConfig& c, const std::string& w, const std::string& v) {
             c.m_values = parse_size_list(w, v);
         },
         [](const RunConfig& c) { return std::optional(format_size_list(c.m_values)); }},
        {"hardening", "realizations_per_m",
         [](RunConfig& c, const std::string& w, const std::string& v) {
             c.realizations_per_m = parse_size(w, v);
         },
         [](const RunConfig& c) { return std::optional(std::to_string(c.realizations_per_m)); }},
        {"hardening", "kappa",
         [](RunConfig& c, const std::string& w, const std::string& v) {
             c.hardening_kappa = parse_double(w, v);
         },
         [](const RunConfig& c) { return std::optional(format_double(c.hardening_kappa)); }},
    };
    return table;
}

const KeyEntry* find_entry(const std::string& section, const std::string& key) {
    for (const KeyEntry& e : key_table())
        if (section == e.section && key == e.key) return &e;
    return nullptr;
}

bool known_section(const std::string& section) {
    for (const KeyEntry& e : key_table())
        if (section == e.section) return true;
    return false;
}

}  // namespace

std::string to_string(ExperimentKind kind) {
    switch (kind) {
        case ExperimentKind::SingleVsDual: return "single_vs_dual";
        case ExperimentKind::Escalation: return "escalation";
        case ExperimentKind::Hardening: return "hardening";
        case ExperimentKind::Custom: return "custom";
    }
    throw std::logic_error("unknown ExperimentKind");
}

ExperimentKind experiment_from_string(const std::string& name) {
    if (name == "single_vs_dual") return ExperimentKind::SingleVsDual;
    if (name == "escalation") return ExperimentKind::Escalation;
    if (name == "hardening") return ExperimentKind::Hardening;
    if (name == "custom") return ExperimentKind::Custom;
    throw std::invalid_argument("unknown experiment '" + name +
                                "' (expected single_vs_dual, escalation, hardening or custom)");
}

void validate(const RunConfig& c) {
    if (c.cavity.n_pixels_per_surface == 0)
        throw ConfigError("config: [cavity] n_pixels_per_surface must be positive");
    if (c.cavity.n_surfaces == 0)
        throw ConfigError("config: [cavity] n_surfaces must be positive");
    if (!(c.cavity.kappa >= 0.0)) throw ConfigError("config: [cavity] kappa must be >= 0");
    if (!(c.cavity.eve_kappa >= 0.0))
        throw ConfigError("config: [cavity] eve_kappa must be >= 0");
    if (!(c.signal_power > 0.0))
        throw ConfigError("config: [link] signal_power must be positive");
    if (c.noise_power && !(*c.noise_power >= 0.0))
        throw ConfigError("config: [link] noise_power must be >= 0");
    if (c.target_initial_evm && !(*c.target_initial_evm > 0.0))
        throw ConfigError("config: [link] target_initial_evm must be positive");
    if (c.noise_power && c.target_initial_evm)
        throw ConfigError(
            "config: [link] noise_power and target_initial_evm are mutually exclusive");
    if (!(c.int_step_db > 0.0))
        throw ConfigError("config: [interference] step_db must be positive");
    if (c.int_start_db > c.int_end_db)
        throw ConfigError("config: [interference] start_db must not exceed end_db");
    if (c.optimizer.max_loops < 1)
        throw ConfigError("config: [optimizer] max_loops must be >= 1");
    if (c.optimizer.frames_per_eval < 1)
        throw ConfigError("config: [optimizer] frames_per_eval must be >= 1");
    if (c.optimizer.n_pilots == 0)
        throw ConfigError("config: [optimizer] n_pilots must be positive");
    if (c.optimizer.n_data_symbols == 0)
        throw ConfigError("config: [optimizer] n_data_symbols must be positive");
    if (c.jobs < 1) throw ConfigError("config: [run] jobs must be >= 1");
    if (c.m_values.empty()) throw ConfigError("config: [hardening] m_values must be nonempty");
    for (std::size_t i = 0; i < c.m_values.size(); ++i) {
        if (c.m_values[i] == 0)
            throw ConfigError("config: [hardening] m_values must be positive");
        if (i > 0 && c.m_values[i] <= c.m_values[i - 1])
            throw ConfigError("config: [hardening] m_values must be strictly increasing");
    }
    if (c.realizations_per_m < 50)
        throw ConfigError("config: [hardening] realizations_per_m must be >= 50");
    if (!(c.hardening_kappa >= 0.0))
        throw ConfigError("config: [hardening] kappa must be >= 0");
}

RunConfig parse_config_text(const std::string& text) {
    RunConfig config;
    if (const char* env = std::getenv("RISLINK_OUTPUT_DIR"); env && *env)
        config.output_dir = env;

    std::vector<std::string> seen;
    std::string section;
    std::stringstream ss(text);
    std::string raw;
    int line_no = 0;
    while (std::getline(ss, raw)) {
        ++line_no;
        std::string line = raw;
        if (const auto pos = line.find_first_of("#;"); pos != std::string::npos)
            line = line.substr(0, pos);
        line = trim(line);
        if (line.empty()) continue;
        if (line.front() == '[') {
            if (line.back() != ']')
                throw ConfigError("config: line " + std::to_string(line_no) +
                                  ": malformed section header '" + raw + "'");
            section = trim(line.substr(1, line.size() - 2));
            if (!known_section(section))
                throw ConfigError("config: line " + std::to_string(line_no) +
                                  ": unknown section [" + section + "]");
            continue;
        }
        const auto eq = line.find('=');
        if (eq == std::string::npos)
            throw ConfigError("config: line " + std::to_string(line_no) +
                              ": expected 'key = value', got '" + raw + "'");
        const std::string key = trim(line.substr(0, eq));
        const std::string value = trim(line.substr(eq + 1));
        if (section.empty())
            throw ConfigError("config: line " + std::to_string(line_no) + ": key '" + key +
                              "' outside any section");
        const KeyEntry* entry = find_entry(section, key);
        if (!entry)
            throw ConfigError("config: line " + std::to_string(line_no) + ": unknown key '" +
                              key + "' in [" + section + "]");
        const std::string dotted = section + "." + key;
        if (std::find(seen.begin(), seen.end(), dotted) != seen.end())
            throw ConfigError("config: line " + std::to_string(line_no) + ": duplicate key '" +
                              key + "' in [" + section + "]");
        seen.push_back(dotted);
        entry->set(config, "[" + section + "] " + key, value);
    }
    validate(config);
    return config;
}

RunConfig parse_config_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ConfigError("config: cannot read '" + path + "'");
    std::stringstream buffer;
    buffer << in.rdbuf();
    return parse_config_text(buffer.str());
}

void apply_override(RunConfig& config, const std::string& dotted_key, const std::string& value) {
    const auto dot = dotted_key.find('.');
    if (dot == std::string::npos)
        throw ConfigError("config: override '" + dotted_key + "' must be section.key");
    const std::string section = dotted_key.substr(0, dot);
    const std::string key = dotted_key.substr(dot + 1);
    const KeyEntry* entry = find_entry(section, key);
    if (!entry)
        throw ConfigError("config: unknown key '" + key + "' in [" + section + "]");
    // Override semantics: picking one side of the link budget drops the other.
    if (section == "link" && key == "noise_power") config.target_initial_evm.reset();
    if (section == "link" && key == "target_initial_evm") config.noise_power.reset();
    entry->set(config, "[" + section + "] " + key, value);
    validate(config);
}

std::string emit_config(const RunConfig& config) {
    std::string out;
    std::string current_section;
    for (const KeyEntry& e : key_table()) {
        const auto value = e.get(config);
        if (!value) continue;
        if (current_section != e.section) {
            if (!current_section.empty()) out += "\n";
            current_section = e.section;
            out += "[" + current_section + "]\n";
        }
        out += std::string(e.key) + " = " + *value + "\n";
    }
    return out;
}

}  // namespace rislink
