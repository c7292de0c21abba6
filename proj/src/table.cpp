#include "surecp/table.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>
#include <stdexcept>

namespace surecp {

namespace {

std::string quote_field(const std::string& field) {
    if (field.find_first_of(",\"\n\r") == std::string::npos) {
        return field;
    }
    std::string quoted = "\"";
    for (char c : field) {
        if (c == '"') quoted += '"';
        quoted += c;
    }
    return quoted + '"';
}

std::vector<std::string> split_csv_line(const std::string& line) {
    std::vector<std::string> fields;
    std::string current;
    bool in_quotes = false;
    for (std::size_t i = 0; i < line.size(); ++i) {
        const char c = line[i];
        if (in_quotes) {
            if (c == '"' && i + 1 < line.size() && line[i + 1] == '"') {
                current += '"';
                ++i;
            } else if (c == '"') {
                in_quotes = false;
            } else {
                current += c;
            }
        } else if (c == '"') {
            in_quotes = true;
        } else if (c == ',') {
            fields.push_back(std::move(current));
            current.clear();
        } else {
            current += c;
        }
    }
    fields.push_back(std::move(current));
    return fields;
}

double parse_double(const std::string& text) {
    if (text == "inf") return INFINITY;
    if (text == "-inf") return -INFINITY;
    std::size_t used = 0;
    const double v = std::stod(text, &used);
    if (used != text.size()) {
        throw std::invalid_argument("not a number: '" + text + "'");
    }
    return v;
}

}  // namespace

std::string format_double(double value) {
    if (std::isinf(value)) {
        return value > 0 ? "inf" : "-inf";
    }
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.17g", value);
    return buf;
}

std::string render_table(const std::vector<std::string>& column_names,
                         const std::vector<std::vector<double>>& rows) {
    std::string text;
    for (std::size_t c = 0; c < column_names.size(); ++c) {
        if (c) text += ',';
        text += quote_field(column_names[c]);
    }
    text += '\n';
    for (std::size_t r = 0; r < rows.size(); ++r) {
        if (rows[r].size() != column_names.size()) {
            throw std::invalid_argument("write_table: row " + std::to_string(r) + " has " +
                                        std::to_string(rows[r].size()) + " fields, expected " +
                                        std::to_string(column_names.size()));
        }
        for (std::size_t c = 0; c < rows[r].size(); ++c) {
            if (c) text += ',';
            text += format_double(rows[r][c]);
        }
        text += '\n';
    }
    return text;
}

void write_table(const std::filesystem::path& path, const std::vector<std::string>& column_names,
                 const std::vector<std::vector<double>>& rows) {
    const std::string text = render_table(column_names, rows);
    std::ofstream out(path, std::ios::binary);
    if (!out) {
        throw std::runtime_error("cannot open " + path.string() + " for writing");
    }
    out << text;
    if (!out) {
        throw std::runtime_error("write failed: " + path.string());
    }
}

std::size_t Table::column(const std::string& name) const {
    for (std::size_t i = 0; i < column_names.size(); ++i) {
        if (column_names[i] == name) return i;
    }
    throw std::out_of_range("no column named '" + name + "'");
}

Table read_table(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) {
        throw std::runtime_error("cannot open " + path.string());
    }
    Table table;
    std::string line;
    if (!std::getline(in, line)) {
        throw std::runtime_error(path.string() + ": empty table");
    }
    table.column_names = split_csv_line(line);
    std::size_t line_no = 1;
    while (std::getline(in, line)) {
        ++line_no;
        if (line.empty()) continue;
        const auto fields = split_csv_line(line);
        if (fields.size() != table.column_names.size()) {
            throw std::runtime_error(path.string() + ":" + std::to_string(line_no) +
                                     ": arity mismatch");
        }
        std::vector<double> row;
        row.reserve(fields.size());
        for (const auto& f : fields) row.push_back(parse_double(f));
        table.rows.push_back(std::move(row));
    }
    return table;
}

}  // namespace surecp
