#pragma once

// Domain types for a refurbishable medium-voltage corridor and the
// combinatorial rules that split its conductors into AC links (groups of 3),
// DC links (symmetric monopoles, groups of 2) and spares.
//
// Units throughout: kV, MVA, km, A, ohm/km, degC.

#include <string>
#include <vector>

namespace gridlink {

/// Relative tolerance when comparing demand against a capacity limit.
inline constexpr double kCapacitySlack = 1e-12;

struct SystemParams {
    double v_ll_rms_kv = 10.0;    ///< line-to-line RMS voltage at the sending substation
    double s_actual_mva = 0.0;    ///< apparent power demand at the receiving substation
    double pf = 0.9;              ///< load power factor, (0, 1]
    double link_length_km = 0.0;
    double eta = 0.9934;          ///< average efficiency of one converter station, (0, 1)
    double t_amb_c = 20.0;
    int n_ori = 9;                ///< conductors in the original AC corridor, multiple of 3

    /// Throws Error{validation} naming the first violated invariant.
    void validate() const;
};

struct CableSpec {
    double area_mm2 = 0.0;
    double r90_ohm_per_km = 0.0;  ///< DC resistance at 90 degC
    double alpha_per_k = 0.0;     ///< temperature coefficient of resistance
    double i_rated_a = 0.0;       ///< ampacity
    double ac_dc_ratio = 1.0;     ///< AC/DC resistance multiplier (skin and proximity allowance)

    void validate() const;
};

/// One operating strategy Cn. Index 0 is the conventional all-AC expansion,
/// 1 the all-DC refurbishment, 2.. the parallel AC-DC hybrids.
struct Configuration {
    int index = 0;
    int n_ac = 0;
    int n_dc = 0;
    int n_red = 0;

    bool is_hybrid() const noexcept { return index >= 2; }
    std::string label() const;

    friend bool operator==(const Configuration&, const Configuration&) = default;
};

struct CapacityLimits {
    double s_max_ac = 0.0;
    double s_max_dc = 0.0;
};

/// Admissible range of the DC active-power share y.
struct ShareLimits {
    double y_min = 0.0;
    double y_max = 1.0;
};

/// C0..C(n_ori/3). Throws Error{validation} unless n_ori is a positive multiple of 3.
std::vector<Configuration> enumerate_configurations(int n_ori);

/// Single entry of enumerate_configurations; throws if index is out of range.
Configuration configuration(int n_ori, int index);

CapacityLimits capacity_limits(const Configuration& config, double s_link_mva);

/// Rating of one 3-conductor AC link, also taken as the rating of one
/// 2-conductor DC link. This is the per-unit base for demand.
double link_capacity(const CableSpec& cable, double v_ll_rms_kv);

/// Share limits under the unity power factor assumption. Throws
/// Error{infeasible} when the demand exceeds the combined capacity.
ShareLimits y_limits(double s_actual_mva, const CapacityLimits& limits);

bool is_feasible(const Configuration& config, double s_actual_mva, double s_link_mva);

/// DC share at full-load rated operation, s_max_dc / (s_max_dc + s_max_ac).
/// Gives 0.75 for C2 and 1/3 for C3 when n_ori = 9.
double full_load_share(const Configuration& config);

}  // namespace gridlink
