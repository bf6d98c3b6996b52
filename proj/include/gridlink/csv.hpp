#pragma once

// RFC-4180-style CSV with a leading block of '#' comment lines. Numbers are
// written with 9 significant digits and '.' as decimal separator; an absent
// value is an empty cell.

#include <filesystem>
#include <optional>
#include <ostream>
#include <string>
#include <string_view>
#include <vector>

namespace gridlink {

struct CsvTable {
    std::vector<std::string> comments;  ///< written as "# <line>"
    std::vector<std::string> columns;
    std::vector<std::vector<std::string>> rows;
};

std::string format_number(double value);
std::string format_number(const std::optional<double>& value);

/// Strict decimal parse of a whole cell; throws Error{validation}.
double parse_number(std::string_view text);

void write_csv(const CsvTable& table, std::ostream& out);

/// Throws Error{io} if the file cannot be written.
void emit_csv(const CsvTable& table, const std::filesystem::path& path);

/// Parses text written by write_csv (comment lines are collected, not parsed).
CsvTable read_csv_text(std::string_view text);
CsvTable read_csv(const std::filesystem::path& path);

}  // namespace gridlink
