#pragma once

// Subcommand dispatch for the gridlink CLI. Each subcommand turns a validated
// scenario into one CSV table; column orders are fixed:
//
//   configs    config,n_ac,n_dc,n_red,s_max_ac_pu,s_max_dc_pu,y_preset
//   losses     length_km,config,y,conductor_loss_w,converter_loss_w,total_loss_w,
//              normalized_loss,ac_temperature_c,dc_temperature_c
//   crossover  demand_pu,pf,y,l_cr_a_km,l_cr_b_km,l_cr_c_km,l_cr_a_min_km,
//              y_at_a_min,l_cr_c_max_km,y_at_c_max
//              (with --axis over y: y,l_cr_a_km,l_cr_c_km)
//   optimal-y  length_km,config,y_min,y_max,y_opt,total_loss_w,normalized_loss
//   boundary   demand_pu,<one column per length> with winner labels per cell
//   sweep      <axis>,s_link_mva,demand_pu,l_cr_b_km,l_c2_min_km,l_c2_max_km

#include "gridlink/csv.hpp"
#include "gridlink/error.hpp"
#include "gridlink/scenario.hpp"

#include <optional>
#include <ostream>
#include <string>
#include <string_view>
#include <vector>

namespace gridlink {

inline constexpr std::string_view kToolVersion = "0.1.0";

struct RunOptions {
    std::optional<std::string> axis;
    std::optional<int> config;   ///< configuration index filter
    std::optional<double> y;
    unsigned workers = 1;        ///< not echoed: output is independent of it
};

struct CommandResult {
    CsvTable table;
    std::vector<std::string> notes;  ///< diagnostics for stderr
};

CommandResult run_subcommand(std::string_view name, const Scenario& scenario,
                             const RunOptions& options);

/// "C2" -> 2. Throws Error{validation}.
int parse_config_label(std::string_view label);

/// 2 validation, 3 infeasible or numerical, 4 io.
int exit_code(ErrorCategory category) noexcept;

/// Full command line handling; returns the process exit status.
int run_cli(int argc, char** argv, std::ostream& out, std::ostream& err);

}  // namespace gridlink
