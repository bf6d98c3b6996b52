#pragma once

// Crossover lengths, optimal DC share, most-efficient-configuration maps and
// sensitivity sweeps.
//
// Crossover naming follows the usual loss-vs-length picture:
//   A  C0 <-> hybrid (depends on y)
//   B  C0 <-> C1
//   C  C1 <-> hybrid (depends on y)
// An absent optional means the two loss lines never cross at a positive
// length (the configuration with the lower intercept also has the lower slope).

#include "gridlink/core_model.hpp"
#include "gridlink/losses.hpp"

#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace gridlink {

inline constexpr double kShareTolerance = 1e-4;
/// Disagreements between the argmin winner and the crossover region rule are
/// tolerated when the runner-up is within this relative loss gap.
inline constexpr double kRegionRuleBand = 0.01;

std::optional<double> crossover_b(const SystemParams& params, const CableSpec& cable);

std::optional<double> crossover_a(const SystemParams& params, const CableSpec& cable, double y,
                                  int hybrid_index = 2);

std::optional<double> crossover_c(const SystemParams& params, const CableSpec& cable, double y,
                                  int hybrid_index = 2);

struct OptimalShare {
    double y = 0.0;
    LossBreakdown loss;
};

/// Minimises hybrid loss over the admissible y interval (golden section to
/// |dy| < 1e-4, endpoints also checked).
OptimalShare optimal_y(const SystemParams& params, const CableSpec& cable,
                       const Configuration& config);

struct CrossoverSet {
    double y = 0.0;                        ///< share used for l_cr_a / l_cr_c
    std::optional<double> l_cr_a;
    std::optional<double> l_cr_b;
    std::optional<double> l_cr_c;
    std::optional<double> l_cr_a_min;      ///< min over admissible y
    std::optional<double> l_cr_c_max;      ///< max over admissible y
    std::optional<double> y_at_a_min;
    std::optional<double> y_at_c_max;

    /// C2 is most efficient on [l_cr_a_min, l_cr_c_max) when this holds.
    bool has_c2_region() const;
};

/// `y` defaults to the C2 full-load share.
CrossoverSet crossover_extrema(const SystemParams& params, const CableSpec& cable,
                               std::optional<double> y = std::nullopt);

/// Region rule over C0/C1/C2 using the extremal crossovers; absent crossovers
/// count as infinitely far. Returns nullopt when no branch applies.
std::optional<int> region_rule(const CrossoverSet& set, double length_km);

struct Selection {
    Configuration config;
    double y = 0.0;
    LossBreakdown loss;
    std::optional<int> rule_index;        ///< region rule verdict over C0/C1/C2
    std::optional<int> runner_up_index;
    double runner_up_gap = 0.0;           ///< (runner-up - best) / best, inf if best is 0
    bool agrees_with_rule = true;
};

/// Argmin of (optimised) total loss over every feasible configuration.
/// Throws Error{infeasible} if none can carry the demand.
Selection select_configuration(const SystemParams& params, const CableSpec& cable);

/// Same as above with the crossover set supplied; crossovers do not depend on
/// the link length, so map builders compute them once per demand.
Selection select_configuration(const SystemParams& params, const CableSpec& cable,
                               const CrossoverSet& crossovers);

struct RuleDisagreement {
    std::size_t row = 0;
    std::size_t col = 0;
    int winner = 0;
    std::optional<int> rule_index;
    double runner_up_gap = 0.0;
};

inline constexpr int kInfeasibleCell = -1;

struct BoundaryMap {
    std::vector<double> demand_axis;   ///< s_actual / s_link
    std::vector<double> length_axis;   ///< km
    std::vector<std::vector<int>> winner;  ///< [demand][length], kInfeasibleCell if none
    std::vector<std::vector<double>> y_opt;
    double pf = 0.0;
    std::vector<RuleDisagreement> disagreements;
};

/// Evaluates select_configuration on the grid. The output does not depend on
/// `workers`; rows are computed independently and assembled by index.
BoundaryMap boundary_map(const SystemParams& params_template, const CableSpec& cable,
                         std::span<const double> demand_axis_pu,
                         std::span<const double> length_axis_km, unsigned workers = 1);

/// Lengths at which C2 wins in one row of a boundary map.
std::vector<double> c2_band(const BoundaryMap& map, std::size_t row);

enum class SweepAxis { voltage, area, eta };

std::string_view to_string(SweepAxis axis) noexcept;
SweepAxis parse_sweep_axis(std::string_view name);

struct SweepResult {
    SweepAxis axis = SweepAxis::voltage;
    double demand_pu = 0.0;
    std::vector<double> axis_values;
    std::vector<double> s_link_mva;
    std::vector<std::optional<double>> l_cr_b;
    std::vector<std::optional<double>> l_c2_min;
    std::vector<std::optional<double>> l_c2_max;
};

/// Recomputes s_link and the extremal crossovers at each axis value while
/// holding the normalised demand of the template fixed. The area axis looks
/// up each value in `cable_table` (exact area match).
SweepResult sensitivity_sweep(SweepAxis axis, std::span<const double> values,
                              const SystemParams& params_template,
                              const CableSpec& cable_template,
                              std::span<const CableSpec> cable_table = {});

}  // namespace gridlink
