#pragma once

#include <string>

namespace dq {

// Engine configuration. Text format: one `key = value` per line, `#` comments.
// Missing file or missing keys fall back to the defaults below.
struct Config {
    double hbar = 1.0;

    double fk_tau0 = 1.0;
    double fk_growth = 1.25;
    int fk_max_steps = 40;
    double fk_tol = 1e-3;

    double quad_tol = 1e-11;
    double quad_window = 60.0;

    double regime_ratio_threshold = 0.2;
    double regime_weak_threshold = 1e-3;

    static Config defaults() { return Config{}; }
};

Config load_config(const std::string& path);          // throws on malformed lines
Config parse_config_text(const std::string& text);    // same, from a string
std::string config_summary(const Config& cfg);

} // namespace dq
