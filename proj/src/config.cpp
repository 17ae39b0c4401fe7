#include "swiptlab/config.hpp"

#include <cmath>
#include <fstream>
#include <sstream>

#include "swiptlab/errors.hpp"

namespace swiptlab {
namespace {

std::string trim(const std::string& s) {
    const auto first = s.find_first_not_of(" \t\r");
    if (first == std::string::npos) return "";
    const auto last = s.find_last_not_of(" \t\r");
    return s.substr(first, last - first + 1);
}

}  // namespace

KeyValues parse_config_text(const std::string& text) {
    KeyValues out;
    std::istringstream in(text);
    std::string line;
    int lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        const auto hash = line.find('#');
        if (hash != std::string::npos) line.erase(hash);
        line = trim(line);
        if (line.empty()) continue;
        const auto eq = line.find('=');
        if (eq == std::string::npos)
            throw ConfigError("config line " + std::to_string(lineno) +
                              ": expected key=value, got '" + line + "'");
        const std::string key = trim(line.substr(0, eq));
        const std::string value = trim(line.substr(eq + 1));
        if (key.empty())
            throw ConfigError("config line " + std::to_string(lineno) +
                              ": empty key");
        out[key] = value;
    }
    return out;
}

KeyValues load_config_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ConfigError("cannot read config file: " + path);
    std::ostringstream buf;
    buf << in.rdbuf();
    return parse_config_text(buf.str());
}

double config_double(const std::string& key, const std::string& value) {
    try {
        std::size_t pos = 0;
        const double d = std::stod(value, &pos);
        if (pos != value.size() || !std::isfinite(d))
            throw std::invalid_argument(value);
        return d;
    } catch (const std::exception&) {
        throw ConfigError("config key '" + key + "': not a finite number: '" +
                          value + "'");
    }
}

SystemConfig build_system_config(const KeyValues& file_values,
                                 const KeyValues& overrides) {
    KeyValues merged = file_values;
    for (const auto& [k, v] : overrides) merged[k] = v;

    SystemConfig c;
    for (const auto& [key, value] : merged) {
        if (key == "snr_db") continue;  // sweep default, consumed by the CLI
        double* field = nullptr;
        if (key == "r_da") field = &c.geo.r_da;
        else if (key == "r_dc") field = &c.geo.r_dc;
        else if (key == "r_db") field = &c.geo.r_db;
        else if (key == "lambda_a") field = &c.geo.lambda_a;
        else if (key == "lambda_b") field = &c.geo.lambda_b;
        else if (key == "alpha") field = &c.alpha;
        else if (key == "eta") field = &c.eta;
        else if (key == "p1_sq") field = &c.p1;
        else if (key == "p2_sq") field = &c.p2;
        else if (key == "r1") field = &c.rate1;
        else if (key == "r2") field = &c.rate2;
        else throw ConfigError("unknown config key '" + key + "'");
        *field = config_double(key, value);
    }

    if (!(c.geo.r_db > 0.0 && c.geo.r_db < c.geo.r_dc && c.geo.r_dc < c.geo.r_da))
        throw ConfigError("radii must satisfy 0 < r_db < r_dc < r_da");
    if (!(c.geo.lambda_a > 0.0 && c.geo.lambda_b > 0.0))
        throw ConfigError("densities must be positive");
    if (!(c.alpha >= 2.0))
        throw ConfigError("path loss exponent alpha must be >= 2");
    if (!(c.eta > 0.0 && c.eta <= 1.0))
        throw ConfigError("conversion efficiency eta must lie in (0, 1]");
    if (!(c.p1 > c.p2 && c.p2 > 0.0))
        throw ConfigError("power shares must satisfy p1_sq > p2_sq > 0");
    if (std::fabs(c.p1 + c.p2 - 1.0) > 1e-9)
        throw ConfigError("power shares must sum to 1");
    if (!(c.rate1 >= 0.0 && c.rate2 >= 0.0))
        throw ConfigError("target rates must be nonnegative");
    return c;
}

}  // namespace swiptlab
