#include "gridlink/cable_library.hpp"

#include "gridlink/csv.hpp"
#include "gridlink/error.hpp"

#include <cmath>
#include <fstream>
#include <sstream>
#include <string>

namespace gridlink {

namespace {

constexpr std::string_view kHeader = "area_mm2,r90_ohm_per_km,alpha_per_k,i_rated_a,ac_dc_ratio";

}  // namespace

CableLibrary::CableLibrary(std::vector<CableSpec> rows) : rows_(std::move(rows)) {
    for (std::size_t i = 0; i < rows_.size(); ++i) {
        rows_[i].validate();
        if (i > 0 && !(rows_[i].area_mm2 > rows_[i - 1].area_mm2)) {
            fail(ErrorCategory::validation, "cable library areas must be unique and ascending");
        }
    }
}

const CableLibrary& CableLibrary::reference() {
    static const CableLibrary library({
        {150.0, 0.2641, 0.00403, 300.0, 1.01},
        {240.0, 0.1603, 0.00403, 385.0, 1.01},
        {300.0, 0.1282, 0.00403, 425.0, 1.015},
        {400.0, 0.0997, 0.00403, 470.0, 1.02},
        {500.0, 0.0776, 0.00403, 525.0, 1.03},
        {630.0, 0.0601, 0.00403, 590.0, 1.04},
    });
    return library;
}

CableLibrary CableLibrary::parse_csv(std::string_view text) {
    const auto table = read_csv_text(text);
    std::string header;
    for (std::size_t i = 0; i < table.columns.size(); ++i) {
        header += (i ? "," : "") + table.columns[i];
    }
    if (header != kHeader) {
        fail(ErrorCategory::validation,
             "cable library header must be '" + std::string(kHeader) + "'");
    }
    std::vector<CableSpec> rows;
    for (std::size_t r = 0; r < table.rows.size(); ++r) {
        const auto& cells = table.rows[r];
        if (cells.size() != 5) {
            fail(ErrorCategory::validation,
                 "cable library row " + std::to_string(r + 1) + " must have 5 fields");
        }
        double v[5];
        for (int i = 0; i < 5; ++i) v[i] = parse_number(cells[static_cast<std::size_t>(i)]);
        rows.push_back({v[0], v[1], v[2], v[3], v[4]});
    }
    return CableLibrary(std::move(rows));
}

CableLibrary CableLibrary::load(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) fail(ErrorCategory::io, "cannot open cable library " + path.string());
    std::ostringstream buf;
    buf << in.rdbuf();
    return parse_csv(buf.str());
}

std::optional<CableSpec> CableLibrary::find(double area_mm2) const {
    for (const auto& row : rows_) {
        if (std::abs(row.area_mm2 - area_mm2) < 1e-9) return row;
    }
    return std::nullopt;
}

std::vector<double> CableLibrary::areas() const {
    std::vector<double> out;
    for (const auto& row : rows_) out.push_back(row.area_mm2);
    return out;
}

}  // namespace gridlink
