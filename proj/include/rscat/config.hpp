#pragma once

#include <algorithm>
#include <cctype>
#include <cmath>
#include <cstdint>
#include <cstdlib>
#include <fstream>
#include <map>
#include <string>
#include <string_view>
#include <vector>

#include "rscat/errors.hpp"
#include "rscat/units.hpp"

namespace rscat {

// Flat key-value run configuration: one `key = value` per line in a config
// file, '#' starts a comment, and `--set key=value` overrides on the command
// line. Chosen flat so configs diff cleanly.

namespace detail {

inline std::string trim(std::string_view s) {
    const auto* ws = " \t\r\n";
    const auto begin = s.find_first_not_of(ws);
    if (begin == std::string_view::npos) return "";
    const auto end = s.find_last_not_of(ws);
    return std::string(s.substr(begin, end - begin + 1));
}

inline std::string lower(std::string s) {
    std::transform(s.begin(), s.end(), s.begin(),
                   [](unsigned char c) { return static_cast<char>(std::tolower(c)); });
    return s;
}

}  // namespace detail

/// Strict double parse: the whole token must be consumed.
inline double parse_number(const std::string& text, const std::string& what) {
    const std::string t = detail::trim(text);
    if (t.empty()) throw ConfigError(what + ": empty value");
    char* end = nullptr;
    const double v = std::strtod(t.c_str(), &end);
    if (end != t.c_str() + t.size() || !std::isfinite(v)) {
        throw ConfigError(what + ": cannot parse number from '" + text + "'");
    }
    return v;
}

/// Energy with an optional unit suffix, normalized to ueV. Accepted suffixes
/// (case-insensitive): uev, mev, ev, ghz, mhz. A bare number is already ueV.
inline double parse_energy_uev(const std::string& text, const std::string& what) {
    const std::string t = detail::lower(detail::trim(text));
    struct Suffix {
        const char* name;
        double factor;
    };
    // Longest suffixes first, so "uev"/"mev" are not misread as "ev".
    static constexpr Suffix suffixes[] = {
        {"uev", 1.0},
        {"mev", uev_per_mev},
        {"ghz", planck_h_uev_per_ghz},
        {"mhz", planck_h_uev_per_ghz * 1e-3},
        {"ev", uev_per_ev},
    };
    for (const auto& suffix : suffixes) {
        const std::string_view name(suffix.name);
        if (t.size() > name.size() &&
            t.compare(t.size() - name.size(), name.size(), name) == 0) {
            const std::string number = detail::trim(t.substr(0, t.size() - name.size()));
            return parse_number(number, what) * suffix.factor;
        }
    }
    return parse_number(t, what);
}

class RunConfig {
  public:
    void set(std::string key, std::string value) {
        values_[detail::trim(key)] = detail::trim(value);
    }

    /// Parse one "key=value" token (used for --set and config lines).
    void set_pair(const std::string& pair) {
        const auto eq = pair.find('=');
        if (eq == std::string::npos) {
            throw ConfigError("expected key=value, got '" + pair + "'");
        }
        const std::string key = detail::trim(pair.substr(0, eq));
        if (key.empty()) throw ConfigError("empty key in '" + pair + "'");
        set(key, pair.substr(eq + 1));
    }

    void load_file(const std::string& path) {
        std::ifstream in(path);
        if (!in) throw ConfigError("cannot open config file '" + path + "'");
        std::string line;
        int lineno = 0;
        while (std::getline(in, line)) {
            ++lineno;
            const auto hash = line.find('#');
            if (hash != std::string::npos) line.erase(hash);
            const std::string trimmed = detail::trim(line);
            if (trimmed.empty()) continue;
            try {
                set_pair(trimmed);
            } catch (const ConfigError& e) {
                throw ConfigError(path + ":" + std::to_string(lineno) + ": " + e.what());
            }
        }
    }

    bool has(const std::string& key) const { return values_.count(key) > 0; }

    std::string require_string(const std::string& key) const {
        const auto it = values_.find(key);
        if (it == values_.end()) {
            throw ConfigError("missing required parameter '" + key + "'");
        }
        return it->second;
    }

    std::string get_string(const std::string& key, const std::string& fallback) const {
        const auto it = values_.find(key);
        return it == values_.end() ? fallback : it->second;
    }

    double require_double(const std::string& key) const {
        return parse_number(require_string(key), "parameter '" + key + "'");
    }

    double get_double(const std::string& key, double fallback) const {
        if (!has(key)) return fallback;
        return require_double(key);
    }

    double require_energy_uev(const std::string& key) const {
        return parse_energy_uev(require_string(key), "parameter '" + key + "'");
    }

    double get_energy_uev(const std::string& key, double fallback) const {
        if (!has(key)) return fallback;
        return require_energy_uev(key);
    }

    /// Integer-valued parameter; scientific notation like 1e5 is accepted.
    long long require_int(const std::string& key) const {
        const double v = require_double(key);
        const double r = std::round(v);
        if (std::abs(v - r) > 1e-9 * std::max(1.0, std::abs(v))) {
            throw ConfigError("parameter '" + key + "' must be an integer");
        }
        return static_cast<long long>(r);
    }

    long long get_int(const std::string& key, long long fallback) const {
        if (!has(key)) return fallback;
        return require_int(key);
    }

    bool get_bool(const std::string& key, bool fallback) const {
        if (!has(key)) return fallback;
        const std::string v = detail::lower(require_string(key));
        if (v == "true" || v == "1" || v == "yes" || v == "on") return true;
        if (v == "false" || v == "0" || v == "no" || v == "off") return false;
        throw ConfigError("parameter '" + key + "' must be a boolean");
    }

    std::uint64_t require_seed() const {
        const std::string text = require_string("seed");
        try {
            std::size_t pos = 0;
            const std::uint64_t v = std::stoull(text, &pos);
            if (pos != text.size()) throw std::invalid_argument(text);
            return v;
        } catch (const std::exception&) {
            throw ConfigError("parameter 'seed' must be an unsigned integer, got '" +
                              text + "'");
        }
    }

    const std::map<std::string, std::string>& entries() const { return values_; }

  private:
    std::map<std::string, std::string> values_;
};

/// Grid specification for the sweep commands.
struct SweepSpec {
    double start = 0.0;
    double stop = 0.0;
    int points = 0;
    bool log_scale = false;
};

/// Reads sweep_start / sweep_stop / sweep_points / sweep_scale; an optional
/// `sweep` key must name the command's swept variable.
inline SweepSpec sweep_from_config(const RunConfig& cfg, const std::string& variable,
                                   bool default_log) {
    if (cfg.has("sweep") && cfg.require_string("sweep") != variable) {
        throw ConfigError("sweep variable '" + cfg.require_string("sweep") +
                          "' not available here; this command sweeps '" + variable + "'");
    }
    SweepSpec spec;
    spec.start = cfg.require_double("sweep_start");
    spec.stop = cfg.require_double("sweep_stop");
    spec.points = static_cast<int>(cfg.get_int("sweep_points", 201));
    const std::string scale = cfg.get_string("sweep_scale", default_log ? "log" : "linear");
    if (scale == "log") {
        spec.log_scale = true;
    } else if (scale == "linear") {
        spec.log_scale = false;
    } else {
        throw ConfigError("parameter 'sweep_scale' must be 'linear' or 'log'");
    }
    if (spec.points < 2) throw ConfigError("parameter 'sweep_points' must be >= 2");
    if (spec.log_scale && (spec.start <= 0.0 || spec.stop <= 0.0)) {
        throw ConfigError("log sweep requires positive sweep_start and sweep_stop");
    }
    return spec;
}

inline std::vector<double> sweep_grid(const SweepSpec& spec) {
    std::vector<double> grid;
    grid.reserve(static_cast<std::size_t>(spec.points));
    const int n = spec.points;
    if (spec.log_scale) {
        const double la = std::log(spec.start);
        const double lb = std::log(spec.stop);
        for (int i = 0; i < n; ++i) {
            grid.push_back(std::exp(la + (lb - la) * i / (n - 1)));
        }
    } else {
        for (int i = 0; i < n; ++i) {
            grid.push_back(spec.start + (spec.stop - spec.start) * i / (n - 1));
        }
    }
    grid.front() = spec.start;
    grid.back() = spec.stop;
    return grid;
}

}  // namespace rscat
