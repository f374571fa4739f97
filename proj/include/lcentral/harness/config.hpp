#pragma once

// Flat key=value configuration files. Blank lines and lines starting with '#'
// are ignored; whitespace around keys and values is trimmed.

#include <fstream>
#include <map>
#include <string>

#include "lcentral/arith.hpp"

namespace lcentral::harness {

using ConfigMap = std::map<std::string, std::string>;

namespace detail {

inline std::string trim(const std::string& s) {
    const auto b = s.find_first_not_of(" \t\r");
    if (b == std::string::npos) return {};
    return s.substr(b, s.find_last_not_of(" \t\r") - b + 1);
}

}  // namespace detail

inline ConfigMap parse_config(std::istream& in) {
    ConfigMap out;
    std::string line;
    for (int lineno = 1; std::getline(in, line); ++lineno) {
        const std::string t = detail::trim(line);
        if (t.empty() || t[0] == '#') continue;
        const auto eq = t.find('=');
        if (eq == std::string::npos) {
            throw precondition_error("config line " + std::to_string(lineno) + ": expected key=value");
        }
        const std::string key = detail::trim(t.substr(0, eq));
        if (key.empty()) throw precondition_error("config line " + std::to_string(lineno) + ": empty key");
        out[key] = detail::trim(t.substr(eq + 1));
    }
    return out;
}

inline ConfigMap load_config(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw precondition_error("cannot read config file: " + path);
    return parse_config(in);
}

}  // namespace lcentral::harness
