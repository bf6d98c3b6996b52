#include "gridlink/losses.hpp"

#include "gridlink/error.hpp"

#include <algorithm>
#include <cmath>
#include <string>

namespace gridlink {

namespace {

constexpr double kShareSlack = 1e-9;

void require_family(const Configuration& config, bool ok, const char* expected) {
    if (!ok) {
        fail(ErrorCategory::validation,
             config.label() + " is not " + expected);
    }
}

void require_capacity(double demand_mva, double capacity_mva, const Configuration& config) {
    if (demand_mva > capacity_mva * (1.0 + kCapacitySlack)) {
        fail(ErrorCategory::infeasible,
             "demand " + std::to_string(demand_mva) + " MVA exceeds " + config.label() +
                 " capacity " + std::to_string(capacity_mva) + " MVA");
    }
}

void finish(LossBreakdown& out, const SystemParams& params) {
    out.conductor_loss_w = out.conductor_loss_per_km_w * params.link_length_km;
    out.total_loss_w = out.conductor_loss_w + out.converter_loss_w;
    out.normalized_loss =
        params.s_actual_mva > 0.0 ? out.total_loss_w / (params.s_actual_mva * 1e6) : 0.0;
    for (const auto* state : {&out.ac_state, &out.dc_state}) {
        if (*state && (*state)->overloaded) {
            out.warnings.push_back((state == &out.ac_state ? "AC" : "DC") +
                                   std::string(" conductors above 90 degC"));
        }
    }
}

// 2 stations, each losing (1 - eta) of the DC active power it converts.
double converter_loss(const SystemParams& params, double y) {
    return 2.0 * (1.0 - params.eta) * y * params.s_actual_mva * params.pf * 1e6;
}

}  // namespace

double dc_link_voltage(double v_ll_rms_kv) {
    return 2.0 * std::sqrt(2.0) / std::sqrt(3.0) * v_ll_rms_kv;
}

ShareLimits share_limits(const SystemParams& params, const CableSpec& cable,
                         const Configuration& config) {
    if (params.s_actual_mva <= 0.0) return {};
    const double s_link = link_capacity(cable, params.v_ll_rms_kv);
    return y_limits(params.s_actual_mva, capacity_limits(config, s_link));
}

LossBreakdown loss_c0(const SystemParams& params, const CableSpec& cable,
                      const Configuration& config) {
    params.validate();
    require_family(config, config.index == 0 && config.n_ac > 0 && config.n_dc == 0,
                   "an all-AC configuration");
    const double s_link = link_capacity(cable, params.v_ll_rms_kv);
    require_capacity(params.s_actual_mva, capacity_limits(config, s_link).s_max_ac, config);

    const double links = config.n_ac / 3.0;
    const double current =
        params.s_actual_mva * 1e3 / (links * std::sqrt(3.0) * params.v_ll_rms_kv);
    const auto ac = solve_thermal(current, cable, params.t_amb_c, ConductorMode::ac);

    LossBreakdown out;
    out.conductor_loss_per_km_w = config.n_ac * current * current * ac.resistance_ohm_per_km;
    out.converter_loss_w = 0.0;
    out.y = 0.0;
    out.ac_state = ac;
    finish(out, params);
    return out;
}

LossBreakdown loss_c1(const SystemParams& params, const CableSpec& cable,
                      const Configuration& config) {
    params.validate();
    require_family(config, config.index == 1 && config.n_ac == 0 && config.n_dc > 0,
                   "an all-DC configuration");
    const double s_link = link_capacity(cable, params.v_ll_rms_kv);
    const double active = params.s_actual_mva * params.pf;
    require_capacity(active, capacity_limits(config, s_link).s_max_dc, config);

    const double links = config.n_dc / 2.0;
    const double current = active * 1e3 / (links * dc_link_voltage(params.v_ll_rms_kv));
    const auto dc = solve_thermal(current, cable, params.t_amb_c, ConductorMode::dc);

    LossBreakdown out;
    out.conductor_loss_per_km_w = config.n_dc * current * current * dc.resistance_ohm_per_km;
    out.converter_loss_w = converter_loss(params, 1.0);
    out.y = 1.0;
    out.dc_state = dc;
    finish(out, params);
    return out;
}

LossBreakdown loss_cn(const SystemParams& params, const CableSpec& cable,
                      const Configuration& config, double y) {
    params.validate();
    require_family(config, config.is_hybrid() && config.n_ac > 0 && config.n_dc > 0,
                   "a hybrid AC-DC configuration");
    if (!std::isfinite(y) || y < 0.0 || y > 1.0) {
        fail(ErrorCategory::validation, "y out of [0,1]");
    }
    const auto limits = share_limits(params, cable, config);
    if (y < limits.y_min - kShareSlack || y > limits.y_max + kShareSlack) {
        fail(ErrorCategory::infeasible,
             "y = " + std::to_string(y) + " outside [" + std::to_string(limits.y_min) + ", " +
                 std::to_string(limits.y_max) + "] for " + config.label());
    }
    y = std::clamp(y, limits.y_min, limits.y_max);

    const double active = params.s_actual_mva * params.pf;
    const double dc_links = config.n_dc / 2.0;
    const double ac_links = config.n_ac / 3.0;
    const double i_dc = y * active * 1e3 / (dc_links * dc_link_voltage(params.v_ll_rms_kv));
    const double i_ac =
        (1.0 - y) * active * 1e3 / (std::sqrt(3.0) * ac_links * params.v_ll_rms_kv);
    const auto dc = solve_thermal(i_dc, cable, params.t_amb_c, ConductorMode::dc);
    const auto ac = solve_thermal(i_ac, cable, params.t_amb_c, ConductorMode::ac);

    LossBreakdown out;
    out.conductor_loss_per_km_w = config.n_ac * i_ac * i_ac * ac.resistance_ohm_per_km +
                                  config.n_dc * i_dc * i_dc * dc.resistance_ohm_per_km;
    out.converter_loss_w = converter_loss(params, y);
    out.y = y;
    out.ac_state = ac;
    out.dc_state = dc;
    finish(out, params);
    return out;
}

LossBreakdown loss_breakdown(const SystemParams& params, const CableSpec& cable,
                             const Configuration& config, std::optional<double> y) {
    if (config.is_hybrid()) {
        return loss_cn(params, cable, config, y.value_or(full_load_share(config)));
    }
    auto out = config.index == 0 ? loss_c0(params, cable, config)
                                 : loss_c1(params, cable, config);
    if (y) out.warnings.push_back("y ignored for " + config.label());
    return out;
}

}  // namespace gridlink
