#include "dq/config.hpp"

#include <fstream>
#include <sstream>
#include <stdexcept>

namespace dq {

namespace {

std::string trim(const std::string& s) {
    std::size_t b = s.find_first_not_of(" \t\r");
    if (b == std::string::npos) return "";
    std::size_t e = s.find_last_not_of(" \t\r");
    return s.substr(b, e - b + 1);
}

void apply(Config& cfg, const std::string& key, const std::string& value, int line) {
    auto bad = [&](const std::string& why) {
        throw std::invalid_argument("config line " + std::to_string(line) + ": " + why);
    };
    double d = 0.0;
    int i = 0;
    bool is_int = false;
    try {
        if (key == "fk.max_steps") {
            i = std::stoi(value);
            is_int = true;
        } else {
            d = std::stod(value);
        }
    } catch (const std::exception&) {
        bad("malformed value '" + value + "'");
    }
    (void)is_int;
    if (key == "hbar") {
        if (!(d > 0.0)) bad("hbar must be > 0");
        cfg.hbar = d;
    } else if (key == "fk.tau0") {
        if (!(d > 0.0)) bad("fk.tau0 must be > 0");
        cfg.fk_tau0 = d;
    } else if (key == "fk.growth") {
        if (!(d > 1.0)) bad("fk.growth must be > 1");
        cfg.fk_growth = d;
    } else if (key == "fk.max_steps") {
        if (i < 3) bad("fk.max_steps must be >= 3");
        cfg.fk_max_steps = i;
    } else if (key == "fk.tol") {
        if (!(d > 0.0)) bad("fk.tol must be > 0");
        cfg.fk_tol = d;
    } else if (key == "quad.tol") {
        if (!(d > 0.0)) bad("quad.tol must be > 0");
        cfg.quad_tol = d;
    } else if (key == "quad.window") {
        if (!(d > 0.0)) bad("quad.window must be > 0");
        cfg.quad_window = d;
    } else if (key == "regime.ratio_threshold") {
        if (!(d > 0.0)) bad("regime.ratio_threshold must be > 0");
        cfg.regime_ratio_threshold = d;
    } else if (key == "regime.weak_threshold") {
        if (!(d > 0.0)) bad("regime.weak_threshold must be > 0");
        cfg.regime_weak_threshold = d;
    } else {
        bad("unknown key '" + key + "'");
    }
}

} // namespace

Config parse_config_text(const std::string& text) {
    Config cfg = Config::defaults();
    std::istringstream is(text);
    std::string line;
    int lineno = 0;
    while (std::getline(is, line)) {
        ++lineno;
        std::size_t hash = line.find('#');
        if (hash != std::string::npos) line = line.substr(0, hash);
        line = trim(line);
        if (line.empty()) continue;
        std::size_t eq = line.find('=');
        if (eq == std::string::npos)
            throw std::invalid_argument("config line " + std::to_string(lineno) +
                                        ": expected key = value");
        std::string key = trim(line.substr(0, eq));
        std::string value = trim(line.substr(eq + 1));
        if (key.empty() || value.empty())
            throw std::invalid_argument("config line " + std::to_string(lineno) +
                                        ": empty key or value");
        apply(cfg, key, value, lineno);
    }
    return cfg;
}

Config load_config(const std::string& path) {
    std::ifstream f(path);
    if (!f) throw std::invalid_argument("config file not readable: " + path);
    std::ostringstream buf;
    buf << f.rdbuf();
    return parse_config_text(buf.str());
}

std::string config_summary(const Config& cfg) {
    std::ostringstream os;
    os << "hbar = " << cfg.hbar << "\n"
       << "fk.tau0 = " << cfg.fk_tau0 << "\n"
       << "fk.growth = " << cfg.fk_growth << "\n"
       << "fk.max_steps = " << cfg.fk_max_steps << "\n"
       << "fk.tol = " << cfg.fk_tol << "\n"
       << "quad.tol = " << cfg.quad_tol << "\n"
       << "quad.window = " << cfg.quad_window << "\n"
       << "regime.ratio_threshold = " << cfg.regime_ratio_threshold << "\n"
       << "regime.weak_threshold = " << cfg.regime_weak_threshold << "\n";
    return os.str();
}

} // namespace dq
