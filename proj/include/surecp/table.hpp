#pragma once

#include <filesystem>
#include <string>
#include <vector>

namespace surecp {

/// Formats with 17 significant digits ("%.17g"); parsing the text recovers
/// the same double. Infinities print as "inf" / "-inf".
std::string format_double(double value);

/// Writes a CSV file: header row, then one line per row. Fields containing a
/// comma, quote or newline are quoted with doubled quotes.
/// Throws std::invalid_argument on a row whose arity differs from the header.
void write_table(const std::filesystem::path& path, const std::vector<std::string>& column_names,
                 const std::vector<std::vector<double>>& rows);

std::string render_table(const std::vector<std::string>& column_names,
                         const std::vector<std::vector<double>>& rows);

struct Table {
    std::vector<std::string> column_names;
    std::vector<std::vector<double>> rows;

    /// Index of a named column; throws std::out_of_range when absent.
    std::size_t column(const std::string& name) const;
};

/// Reads a numeric CSV produced by write_table.
Table read_table(const std::filesystem::path& path);

}  // namespace surecp
