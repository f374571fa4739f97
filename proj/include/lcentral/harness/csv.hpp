#pragma once

// CSV emission with a fixed schema. Floats use 12 significant digits.

#include <cstdint>
#include <cstdio>
#include <fstream>
#include <ostream>
#include <sstream>
#include <stdexcept>
#include <string>
#include <variant>
#include <vector>

#include "lcentral/arith.hpp"

namespace lcentral::harness {

class output_error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

using Cell = std::variant<std::int64_t, double, std::string>;
using Row = std::vector<Cell>;
using Schema = std::vector<std::string>;

inline std::string format_double(double x) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.12g", x);
    return buf;
}

inline std::string format_cell(const Cell& c) {
    if (const auto* i = std::get_if<std::int64_t>(&c)) return std::to_string(*i);
    if (const auto* d = std::get_if<double>(&c)) return format_double(*d);
    const auto& s = std::get<std::string>(c);
    if (s.find_first_of(",\"\n") == std::string::npos) return s;
    std::string quoted = "\"";
    for (char ch : s) {
        if (ch == '"') quoted += '"';
        quoted += ch;
    }
    return quoted + '"';
}

inline void write_csv(std::ostream& os, const Schema& schema, const std::vector<Row>& rows) {
    if (schema.empty()) throw precondition_error("emit_csv: empty schema");
    for (const auto& row : rows) {
        if (row.size() != schema.size()) {
            throw precondition_error("emit_csv: row has " + std::to_string(row.size()) + " cells, schema has " +
                                     std::to_string(schema.size()));
        }
    }
    auto line = [&os](const auto& cells, auto&& fmt) {
        for (std::size_t i = 0; i < cells.size(); ++i) os << (i ? "," : "") << fmt(cells[i]);
        os << '\n';
    };
    line(schema, [](const std::string& s) { return format_cell(s); });
    for (const auto& row : rows) line(row, format_cell);
}

inline std::string to_csv(const Schema& schema, const std::vector<Row>& rows) {
    std::ostringstream os;
    write_csv(os, schema, rows);
    return os.str();
}

/// Writes the table to `path`; "-" means stdout.
inline void emit_csv(const std::vector<Row>& rows, const Schema& schema, const std::string& path) {
    const std::string text = to_csv(schema, rows);
    if (path == "-") {
        std::fwrite(text.data(), 1, text.size(), stdout);
        return;
    }
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out) throw output_error("cannot open output file: " + path);
    out << text;
    if (!out.flush()) throw output_error("write failed: " + path);
}

}  // namespace lcentral::harness
