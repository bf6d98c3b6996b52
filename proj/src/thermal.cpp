#include "gridlink/thermal.hpp"

#include "gridlink/error.hpp"

#include <cmath>
#include <string>

namespace gridlink {

ThermalState solve_thermal(double current_a, const CableSpec& cable, double t_amb_c,
                           ConductorMode mode) {
    if (!(current_a >= 0.0) || !std::isfinite(current_a)) {
        fail(ErrorCategory::validation, "conductor current must be finite and >= 0");
    }
    if (!(t_amb_c < kRatedTemperatureC)) {
        fail(ErrorCategory::validation, "t_amb must be below 90 degC");
    }

    const double r90 = cable.r90_ohm_per_km;
    const double rise_at_rating = kRatedTemperatureC - t_amb_c;
    const double i_sq = current_a * current_a;
    const double rated_heating = cable.i_rated_a * cable.i_rated_a * r90;
    const double denom = 1.0 + cable.alpha_per_k * rise_at_rating;

    double resistance = r90;
    double temperature = kRatedTemperatureC;
    for (int k = 1; k <= kMaxThermalIterations; ++k) {
        temperature = t_amb_c + (i_sq * resistance / rated_heating) * rise_at_rating;
        const double next = r90 * ((1.0 + cable.alpha_per_k * (temperature - t_amb_c)) / denom);
        const double step = std::abs(next - resistance);
        resistance = next;
        if (step < kResistanceTolerance) {
            ThermalState state;
            state.current_a = current_a;
            state.temperature_c = temperature;
            state.resistance_ohm_per_km =
                mode == ConductorMode::ac ? resistance * cable.ac_dc_ratio : resistance;
            state.iterations = k;
            state.overloaded = temperature > kRatedTemperatureC;
            return state;
        }
    }
    fail(ErrorCategory::numerical,
         "thermal iteration did not converge for I = " + std::to_string(current_a) +
             " A (i_rated = " + std::to_string(cable.i_rated_a) + " A)");
}

}  // namespace gridlink
