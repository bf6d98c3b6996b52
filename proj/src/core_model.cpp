#include "gridlink/core_model.hpp"

#include "gridlink/error.hpp"

#include <cmath>
#include <string>

namespace gridlink {

std::string_view to_string(ErrorCategory category) noexcept {
    switch (category) {
        case ErrorCategory::validation: return "validation";
        case ErrorCategory::infeasible: return "infeasible";
        case ErrorCategory::numerical: return "numerical";
        case ErrorCategory::io: return "io";
    }
    return "unknown";
}

namespace {

void require(bool ok, const std::string& message) {
    if (!ok) fail(ErrorCategory::validation, message);
}

void require_n_ori(int n_ori) {
    require(n_ori >= 3 && n_ori % 3 == 0,
            "n_ori must be a positive multiple of 3 (got " + std::to_string(n_ori) + ")");
}

}  // namespace

void SystemParams::validate() const {
    require(std::isfinite(v_ll_rms_kv) && v_ll_rms_kv > 0.0, "v_ll_rms must be > 0");
    require(std::isfinite(s_actual_mva) && s_actual_mva >= 0.0, "s_actual must be >= 0");
    require(std::isfinite(pf) && pf > 0.0 && pf <= 1.0, "pf out of (0,1]");
    require(std::isfinite(link_length_km) && link_length_km >= 0.0, "link_length must be >= 0");
    require(std::isfinite(eta) && eta > 0.0 && eta < 1.0, "eta out of (0,1)");
    require(std::isfinite(t_amb_c) && t_amb_c < 90.0, "t_amb must be below 90 degC");
    require_n_ori(n_ori);
}

void CableSpec::validate() const {
    require(std::isfinite(area_mm2) && area_mm2 > 0.0, "cable area must be > 0");
    require(std::isfinite(r90_ohm_per_km) && r90_ohm_per_km > 0.0, "cable r90 must be > 0");
    require(std::isfinite(alpha_per_k) && alpha_per_k > 0.0, "cable alpha must be > 0");
    require(std::isfinite(i_rated_a) && i_rated_a > 0.0, "cable i_rated must be > 0");
    require(std::isfinite(ac_dc_ratio) && ac_dc_ratio >= 1.0, "cable ac_dc_ratio must be >= 1");
}

std::string Configuration::label() const { return "C" + std::to_string(index); }

std::vector<Configuration> enumerate_configurations(int n_ori) {
    require_n_ori(n_ori);
    const int groups = n_ori / 3;

    std::vector<Configuration> configs;
    configs.reserve(static_cast<std::size_t>(groups) + 1);
    configs.push_back({});  // C0, sized below from C1
    for (int n = 1; n <= groups; ++n) {
        Configuration c;
        c.index = n;
        c.n_ac = 3 * (n - 1);
        const int rest = n_ori - c.n_ac;
        c.n_dc = rest % 2 == 0 ? rest : rest - 1;
        c.n_red = n_ori - c.n_ac - c.n_dc;
        configs.push_back(c);
    }

    // 1.5x the all-DC conductor count, rounded up to whole three-phase links.
    const int n_dc_c1 = configs[1].n_dc;
    const int links = (3 * n_dc_c1 + 5) / 6;  // ceil(1.5 * n_dc / 3)
    configs[0].n_ac = 3 * links;
    return configs;
}

Configuration configuration(int n_ori, int index) {
    const auto configs = enumerate_configurations(n_ori);
    require(index >= 0 && index < static_cast<int>(configs.size()),
            "configuration C" + std::to_string(index) + " does not exist for n_ori = " +
                std::to_string(n_ori));
    return configs[static_cast<std::size_t>(index)];
}

CapacityLimits capacity_limits(const Configuration& config, double s_link_mva) {
    require(s_link_mva > 0.0, "s_link must be > 0");
    return {config.n_ac / 3.0 * s_link_mva, config.n_dc / 2.0 * s_link_mva};
}

double link_capacity(const CableSpec& cable, double v_ll_rms_kv) {
    require(cable.i_rated_a > 0.0, "cable i_rated must be > 0");
    require(v_ll_rms_kv > 0.0, "v_ll_rms must be > 0");
    return std::sqrt(3.0) * v_ll_rms_kv * cable.i_rated_a * 1e-3;
}

ShareLimits y_limits(double s_actual_mva, const CapacityLimits& limits) {
    require(s_actual_mva > 0.0, "y limits need s_actual > 0");
    ShareLimits out;
    out.y_min = s_actual_mva <= limits.s_max_ac
                    ? 0.0
                    : (s_actual_mva - limits.s_max_ac) / s_actual_mva;
    out.y_max = s_actual_mva <= limits.s_max_dc ? 1.0 : limits.s_max_dc / s_actual_mva;
    if (out.y_min > out.y_max) {
        // demand equal to combined capacity up to rounding pins y to one value
        if (s_actual_mva <= (limits.s_max_ac + limits.s_max_dc) * (1.0 + kCapacitySlack)) {
            out.y_min = out.y_max;
            return out;
        }
        fail(ErrorCategory::infeasible,
             "demand " + std::to_string(s_actual_mva) + " MVA exceeds combined capacity " +
                 std::to_string(limits.s_max_ac + limits.s_max_dc) + " MVA");
    }
    return out;
}

bool is_feasible(const Configuration& config, double s_actual_mva, double s_link_mva) {
    const auto limits = capacity_limits(config, s_link_mva);
    return s_actual_mva <= (limits.s_max_ac + limits.s_max_dc) * (1.0 + kCapacitySlack);
}

double full_load_share(const Configuration& config) {
    const double dc = config.n_dc / 2.0;
    const double ac = config.n_ac / 3.0;
    return dc + ac > 0.0 ? dc / (dc + ac) : 0.0;
}

}  // namespace gridlink
