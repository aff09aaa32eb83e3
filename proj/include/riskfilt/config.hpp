#ifndef RISKFILT_CONFIG_HPP
#define RISKFILT_CONFIG_HPP

#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include "riskfilt/model.hpp"

namespace riskfilt {

/// One value of the key-value config format: a number or a quoted string.
struct ConfigValue {
    bool is_string = false;
    double num = 0.0;
    std::string str;
};

using ConfigSection = std::map<std::string, ConfigValue>;
using ConfigDoc = std::map<std::string, ConfigSection>;

/// Minimal TOML-style reader: [section] headers, `key = value` lines, `#`
/// comments, double-quoted strings, plain numbers.
ConfigDoc parse_config_file(const std::string& path);

/// Model file layout:
///   [model]  a, A, mu, T   (a and A as numbers, "const:<v>" or "samples:<csv>")
///   [lambda] l11, l12, l22 (same forms)
///   [grid]   N
/// Sample CSVs hold `t,value` with a header and must match the grid nodes;
/// relative paths resolve against the config file directory.
struct LoadedModel {
    TimeGrid grid;
    ModelSpec spec;
    ConfigDoc doc;
};

LoadedModel load_model_file(const std::string& path);

/// FNV-1a hash of the canonical serialization of the resolved experiment
/// inputs (config document plus the run parameters that affect output
/// content). Thread count and output directory are excluded so reruns are
/// comparable byte-for-byte.
std::string config_hash(const ConfigDoc& doc,
                        const std::vector<std::pair<std::string, std::string>>& run_params);

}  // namespace riskfilt

#endif
