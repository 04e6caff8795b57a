#pragma once

#include <fstream>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include "ampcalc.hpp"
#include "modbgg/scenario_data.hpp"

namespace modbgg::amp {

inline std::vector<std::string> scenario_names() {
    std::vector<std::string> out;
    for (const auto& [name, text] : embedded::scenarios) out.emplace_back(name);
    return out;
}

inline std::string scenario_text(const std::string& name) {
    for (const auto& [n, text] : embedded::scenarios)
        if (n == name) return std::string(text);
    throw std::invalid_argument("unknown scenario '" + name + "'");
}

inline Script load_scenario(const std::string& name) { return parse_script(scenario_text(name)); }

/// A shipped scenario by name, otherwise a path to a script file.
inline Script load_script(const std::string& name_or_path) {
    for (const auto& [n, text] : embedded::scenarios)
        if (n == name_or_path) return parse_script(std::string(text));
    std::ifstream in(name_or_path);
    if (!in) throw std::invalid_argument("no scenario or readable file named '" + name_or_path + "'");
    std::stringstream ss;
    ss << in.rdbuf();
    return parse_script(ss.str());
}

inline Verdict run_scenario(const std::string& name) { return run_script(load_scenario(name)); }

}  // namespace modbgg::amp
