#pragma once

// System loss models for the three configuration families: all-AC (C0),
// all-DC (C1) and parallel AC-DC hybrids (C2..). Inputs are in kV, MVA and
// km; every loss is returned in W.
//
// Conductor currents do not depend on the link length, so each loss is
// affine in L: total = conductor_loss_per_km * L + converter_loss.

#include "gridlink/core_model.hpp"
#include "gridlink/thermal.hpp"

#include <optional>
#include <string>
#include <vector>

namespace gridlink {

struct LossBreakdown {
    double conductor_loss_w = 0.0;
    double converter_loss_w = 0.0;  ///< both converter stations
    double total_loss_w = 0.0;
    double normalized_loss = 0.0;   ///< total / s_actual, 0 when s_actual = 0
    double conductor_loss_per_km_w = 0.0;
    double y = 0.0;                 ///< DC share actually used (0 for C0, 1 for C1)
    std::optional<ThermalState> ac_state;
    std::optional<ThermalState> dc_state;
    std::vector<std::string> warnings;
};

/// Pole-to-pole DC voltage of a refurbished link: sqrt(2) times the AC
/// phase-to-ground peak rating on each pole, 2*sqrt(2)/sqrt(3) * V_LL.
double dc_link_voltage(double v_ll_rms_kv);

LossBreakdown loss_c0(const SystemParams& params, const CableSpec& cable,
                      const Configuration& config);

LossBreakdown loss_c1(const SystemParams& params, const CableSpec& cable,
                      const Configuration& config);

/// Hybrid loss at DC active-power share y. Both the DC and the AC current
/// carry the cos(theta) factor; each conductor class is solved thermally on
/// its own current.
LossBreakdown loss_cn(const SystemParams& params, const CableSpec& cable,
                      const Configuration& config, double y);

/// Dispatches on config.index. Hybrids default to full_load_share(config);
/// a share passed for C0/C1 is ignored with a warning.
LossBreakdown loss_breakdown(const SystemParams& params, const CableSpec& cable,
                             const Configuration& config,
                             std::optional<double> y = std::nullopt);

/// Limits on y for a hybrid at the params' demand (empty demand gives [0, 1]).
ShareLimits share_limits(const SystemParams& params, const CableSpec& cable,
                         const Configuration& config);

}  // namespace gridlink
