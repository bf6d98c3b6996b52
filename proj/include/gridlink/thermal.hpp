#pragma once

#include "gridlink/core_model.hpp"

namespace gridlink {

enum class ConductorMode { ac, dc };

/// Converged operating point of one conductor.
struct ThermalState {
    double current_a = 0.0;
    double temperature_c = 0.0;
    double resistance_ohm_per_km = 0.0;  ///< includes the AC/DC ratio in AC mode
    int iterations = 0;
    bool overloaded = false;             ///< converged above the 90 degC rating
};

inline constexpr double kRatedTemperatureC = 90.0;
inline constexpr double kResistanceTolerance = 1e-6;  // ohm/km
inline constexpr int kMaxThermalIterations = 1000;

/// Temperature/resistance fixed point for a conductor carrying `current_a`.
///
/// Starting from R = r90, the temperature rise is scaled by the I^2 R heating
/// relative to rated heating, and the resistance is re-referenced from 90 degC
/// to the new temperature with the coefficient taken relative to ambient.
/// Iteration stops once successive resistances differ by less than 1e-6 ohm/km.
/// In AC mode the converged ohmic resistance is multiplied by ac_dc_ratio.
///
/// Throws Error{validation} for negative current or t_amb >= 90 degC and
/// Error{numerical} if no fixed point is reached within 1000 iterations
/// (thermal runaway, roughly I > 2 i_rated for aluminium).
ThermalState solve_thermal(double current_a, const CableSpec& cable, double t_amb_c,
                           ConductorMode mode);

}  // namespace gridlink
