#include "gridlink/csv.hpp"

#include "gridlink/error.hpp"

#include <cerrno>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <sstream>

namespace gridlink {

namespace {

std::string escape(const std::string& cell) {
    if (cell.find_first_of(",\"\r\n") == std::string::npos) return cell;
    std::string out = "\"";
    for (char ch : cell) {
        if (ch == '"') out += '"';
        out += ch;
    }
    out += '"';
    return out;
}

void write_row(const std::vector<std::string>& cells, std::ostream& out) {
    for (std::size_t i = 0; i < cells.size(); ++i) {
        if (i) out << ',';
        out << escape(cells[i]);
    }
    out << "\r\n";
}

std::vector<std::string> split_record(std::string_view line) {
    std::vector<std::string> cells(1);
    bool quoted = false;
    for (std::size_t i = 0; i < line.size(); ++i) {
        const char ch = line[i];
        if (quoted) {
            if (ch == '"' && i + 1 < line.size() && line[i + 1] == '"') {
                cells.back() += '"';
                ++i;
            } else if (ch == '"') {
                quoted = false;
            } else {
                cells.back() += ch;
            }
        } else if (ch == '"') {
            quoted = true;
        } else if (ch == ',') {
            cells.emplace_back();
        } else {
            cells.back() += ch;
        }
    }
    return cells;
}

}  // namespace

std::string format_number(double value) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.9g", value);
    return buf;
}

std::string format_number(const std::optional<double>& value) {
    return value ? format_number(*value) : std::string{};
}

double parse_number(std::string_view text) {
    const std::string s(text);
    if (s.empty()) fail(ErrorCategory::validation, "expected a number, got an empty value");
    char* end = nullptr;
    errno = 0;
    const double v = std::strtod(s.c_str(), &end);
    if (end != s.c_str() + s.size() || errno == ERANGE || !std::isfinite(v)) {
        fail(ErrorCategory::validation, "'" + s + "' is not a finite number");
    }
    return v;
}

void write_csv(const CsvTable& table, std::ostream& out) {
    for (const auto& line : table.comments) out << "# " << line << "\r\n";
    write_row(table.columns, out);
    for (const auto& row : table.rows) write_row(row, out);
}

void emit_csv(const CsvTable& table, const std::filesystem::path& path) {
    std::ofstream out(path, std::ios::binary);
    if (!out) fail(ErrorCategory::io, "cannot open " + path.string() + " for writing");
    write_csv(table, out);
    out.flush();
    if (!out) fail(ErrorCategory::io, "write to " + path.string() + " failed");
}

CsvTable read_csv_text(std::string_view text) {
    CsvTable table;
    bool have_header = false;
    std::size_t pos = 0;
    while (pos < text.size()) {
        auto eol = text.find('\n', pos);
        if (eol == std::string_view::npos) eol = text.size();
        auto line = text.substr(pos, eol - pos);
        pos = eol + 1;
        if (!line.empty() && line.back() == '\r') line.remove_suffix(1);
        if (line.empty()) continue;
        if (line.front() == '#') {
            line.remove_prefix(1);
            if (!line.empty() && line.front() == ' ') line.remove_prefix(1);
            table.comments.emplace_back(line);
            continue;
        }
        if (!have_header) {
            table.columns = split_record(line);
            have_header = true;
        } else {
            table.rows.push_back(split_record(line));
        }
    }
    return table;
}

CsvTable read_csv(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) fail(ErrorCategory::io, "cannot open " + path.string());
    std::ostringstream buf;
    buf << in.rdbuf();
    return read_csv_text(buf.str());
}

}  // namespace gridlink
