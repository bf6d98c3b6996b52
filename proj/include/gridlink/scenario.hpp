#pragma once

// Scenario files: flat "key = value" text, one entry per line, '#' starts a
// comment. Units are part of the key names. Unknown or repeated keys are
// rejected and the whole scenario is validated before anything runs.
//
//   v_ll_rms_kv      required
//   demand_pu | s_actual_mva   exactly one; demand_pu is s_actual / s_link
//   pf, eta, t_amb_c, n_ori, link_length_km   required
//   cable_area_mm2   required; looked up in the cable library unless all of
//                    cable_r90_ohm_per_km, cable_alpha_per_k, cable_i_rated_a,
//                    cable_ac_dc_ratio are given inline
//   cable_library    optional CSV path, relative to the scenario file
//   y_preset_c<n>    optional DC share preset per hybrid, default full-load share
//   grid_demand_pu   optional axis, default 0.05:4:0.05
//   grid_length_km   optional axis, default 0:50:0.1
//   sweep_axis       voltage | area | eta, default voltage
//   sweep_values     optional axis; defaults 5:35:5, library areas, 0.985:0.999:0.002
//
// Axes are "start:stop:step" or a comma-separated list.

#include "gridlink/boundaries.hpp"
#include "gridlink/cable_library.hpp"
#include "gridlink/core_model.hpp"

#include <filesystem>
#include <map>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace gridlink {

/// Parses an axis spec. Throws Error{validation} on malformed or empty axes.
std::vector<double> parse_axis(std::string_view spec);

struct Scenario {
    SystemParams system;
    double demand_pu = 0.0;
    double s_link_mva = 0.0;
    CableSpec cable;
    std::string cable_source;          ///< "library" or "inline"
    std::string cable_library_path;    ///< empty for the built-in reference library
    CableLibrary library;
    std::map<int, double> y_presets;   ///< hybrid index -> share
    std::string grid_demand_spec;
    std::string grid_length_spec;
    std::vector<double> grid_demand_pu;
    std::vector<double> grid_length_km;
    SweepAxis sweep_axis = SweepAxis::voltage;
    std::string sweep_values_spec;
    std::vector<double> sweep_values;

    /// Every effective parameter, in a fixed order, as (key, value) text.
    std::vector<std::pair<std::string, std::string>> echo() const;
};

/// `base_dir` resolves a relative cable_library path.
Scenario parse_scenario_text(std::string_view text,
                             const std::filesystem::path& base_dir = {});

Scenario parse_scenario(const std::filesystem::path& path);

}  // namespace gridlink
