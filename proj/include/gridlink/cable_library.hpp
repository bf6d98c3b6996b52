#pragma once

#include "gridlink/core_model.hpp"

#include <filesystem>
#include <optional>
#include <span>
#include <string_view>
#include <vector>

namespace gridlink {

/// Datasheet rows keyed by conductor area, ascending and unique.
///
/// File format (CSV, header required):
///   area_mm2,r90_ohm_per_km,alpha_per_k,i_rated_a,ac_dc_ratio
class CableLibrary {
public:
    CableLibrary() = default;
    explicit CableLibrary(std::vector<CableSpec> rows);

    /// 6/10 kV XLPE single-core aluminium cables, 150..630 mm2, direct
    /// buried in trefoil. r90 is the IEC 60228 20 degC DC resistance
    /// referred to 90 degC; identical to data/reference_cables.csv.
    static const CableLibrary& reference();

    static CableLibrary parse_csv(std::string_view text);
    static CableLibrary load(const std::filesystem::path& path);

    std::optional<CableSpec> find(double area_mm2) const;
    std::span<const CableSpec> rows() const noexcept { return rows_; }
    std::vector<double> areas() const;

private:
    std::vector<CableSpec> rows_;
};

}  // namespace gridlink
