// config.hpp - flat key=value configuration files
//
// Recognized keys mirror the network parameterization: r_da, r_dc, r_db,
// lambda_a, lambda_b, alpha, eta, p1_sq, p2_sq, r1, r2, and the optional
// snr_db sweep default.  '#' starts a comment, blank lines are ignored,
// later duplicates win.
#pragma once

#include <map>
#include <string>

#include "swiptlab/analytic.hpp"

namespace swiptlab {

using KeyValues = std::map<std::string, std::string>;

KeyValues parse_config_text(const std::string& text);
KeyValues load_config_file(const std::string& path);

// defaults, overlaid with file values, overlaid with command-line
// overrides; unknown keys and invariant violations raise ConfigError
SystemConfig build_system_config(const KeyValues& file_values,
                                 const KeyValues& overrides);

double config_double(const std::string& key, const std::string& value);

}  // namespace swiptlab
