#include "gridlink/commands.hpp"

#include "gridlink/boundaries.hpp"
#include "gridlink/losses.hpp"

#include <CLI11.hpp>

#include <algorithm>
#include <cmath>
#include <sstream>

namespace gridlink {

namespace {

std::string label(int index) { return index == kInfeasibleCell ? "infeasible" : "C" + std::to_string(index); }

std::vector<Configuration> selected_configs(const Scenario& s, const RunOptions& o,
                                            bool hybrids_only) {
    std::vector<Configuration> out;
    for (const auto& c : enumerate_configurations(s.system.n_ori)) {
        if (hybrids_only && !c.is_hybrid()) continue;
        if (o.config && c.index != *o.config) continue;
        out.push_back(c);
    }
    if (o.config && out.empty()) {
        fail(ErrorCategory::validation,
             label(*o.config) + (hybrids_only ? " is not a hybrid configuration"
                                              : " does not exist for this n_ori"));
    }
    return out;
}

std::vector<double> axis_or(const RunOptions& o, const std::vector<double>& fallback) {
    return o.axis ? parse_axis(*o.axis) : fallback;
}

std::string temperature(const std::optional<ThermalState>& state) {
    return state ? format_number(state->temperature_c) : std::string{};
}

CsvTable configs_table(const Scenario& s) {
    CsvTable t;
    t.columns = {"config", "n_ac", "n_dc", "n_red", "s_max_ac_pu", "s_max_dc_pu", "y_preset"};
    for (const auto& c : enumerate_configurations(s.system.n_ori)) {
        const auto cap = capacity_limits(c, 1.0);
        const auto preset = s.y_presets.find(c.index);
        t.rows.push_back({c.label(), std::to_string(c.n_ac), std::to_string(c.n_dc),
                          std::to_string(c.n_red), format_number(cap.s_max_ac),
                          format_number(cap.s_max_dc),
                          preset != s.y_presets.end() ? format_number(preset->second) : ""});
    }
    return t;
}

CsvTable losses_table(const Scenario& s, const RunOptions& o, std::vector<std::string>& notes) {
    CsvTable t;
    t.columns = {"length_km",        "config",       "y",
                 "conductor_loss_w", "converter_loss_w", "total_loss_w",
                 "normalized_loss",  "ac_temperature_c", "dc_temperature_c"};
    const auto lengths = axis_or(o, s.grid_length_km);
    auto configs = selected_configs(s, o, false);

    // Drop configurations that cannot carry the demand at all.
    std::vector<Configuration> usable;
    for (const auto& c : configs) {
        SystemParams p = s.system;
        try {
            const auto y = c.is_hybrid() ? std::optional(o.y.value_or(s.y_presets.at(c.index)))
                                         : std::nullopt;
            (void)loss_breakdown(p, s.cable, c, y);
            usable.push_back(c);
        } catch (const Error& e) {
            if (e.category() != ErrorCategory::infeasible) throw;
            notes.push_back("skipping " + c.label() + ": " + e.what());
        }
    }
    if (usable.empty()) fail(ErrorCategory::infeasible, "no configuration can be evaluated");

    for (const double length : lengths) {
        SystemParams p = s.system;
        p.link_length_km = length;
        for (const auto& c : usable) {
            const auto y = c.is_hybrid() ? std::optional(o.y.value_or(s.y_presets.at(c.index)))
                                         : std::nullopt;
            const auto loss = loss_breakdown(p, s.cable, c, y);
            t.rows.push_back({format_number(length), c.label(), format_number(loss.y),
                              format_number(loss.conductor_loss_w),
                              format_number(loss.converter_loss_w),
                              format_number(loss.total_loss_w), format_number(loss.normalized_loss),
                              temperature(loss.ac_state), temperature(loss.dc_state)});
        }
    }
    for (const auto& c : usable) {
        if (!c.is_hybrid() && o.y) notes.push_back("y ignored for " + c.label());
    }
    return t;
}

CsvTable crossover_table(const Scenario& s, const RunOptions& o) {
    CsvTable t;
    if (o.axis) {
        t.columns = {"y", "l_cr_a_km", "l_cr_c_km"};
        const auto c2 = configuration(s.system.n_ori, 2);
        const auto limits = share_limits(s.system, s.cable, c2);
        for (const double y : parse_axis(*o.axis)) {
            if (y < limits.y_min || y > limits.y_max) {
                t.rows.push_back({format_number(y), "", ""});
                continue;
            }
            t.rows.push_back({format_number(y), format_number(crossover_a(s.system, s.cable, y)),
                              format_number(crossover_c(s.system, s.cable, y))});
        }
        return t;
    }
    t.columns = {"demand_pu", "pf",         "y",             "l_cr_a_km",  "l_cr_b_km",
                 "l_cr_c_km", "l_cr_a_min_km", "y_at_a_min", "l_cr_c_max_km", "y_at_c_max"};
    const double y = o.y.value_or(s.y_presets.at(2));
    const auto set = crossover_extrema(s.system, s.cable, y);
    t.rows.push_back({format_number(s.demand_pu), format_number(s.system.pf), format_number(set.y),
                      format_number(set.l_cr_a), format_number(set.l_cr_b),
                      format_number(set.l_cr_c), format_number(set.l_cr_a_min),
                      format_number(set.y_at_a_min), format_number(set.l_cr_c_max),
                      format_number(set.y_at_c_max)});
    return t;
}

CsvTable optimal_y_table(const Scenario& s, const RunOptions& o) {
    CsvTable t;
    t.columns = {"length_km", "config", "y_min", "y_max", "y_opt", "total_loss_w", "normalized_loss"};
    const auto lengths = axis_or(o, s.grid_length_km);
    const auto configs = selected_configs(s, o, true);
    for (const double length : lengths) {
        SystemParams p = s.system;
        p.link_length_km = length;
        for (const auto& c : configs) {
            const auto limits = share_limits(p, s.cable, c);
            const auto opt = optimal_y(p, s.cable, c);
            t.rows.push_back({format_number(length), c.label(), format_number(limits.y_min),
                              format_number(limits.y_max), format_number(opt.y),
                              format_number(opt.loss.total_loss_w),
                              format_number(opt.loss.normalized_loss)});
        }
    }
    return t;
}

CsvTable boundary_table(const Scenario& s, const RunOptions& o, std::vector<std::string>& notes) {
    const auto lengths = axis_or(o, s.grid_length_km);
    const auto map = boundary_map(s.system, s.cable, s.grid_demand_pu, lengths, o.workers);

    CsvTable t;
    t.columns.push_back("demand_pu");
    for (const double l : map.length_axis) t.columns.push_back(format_number(l));
    for (std::size_t r = 0; r < map.demand_axis.size(); ++r) {
        std::vector<std::string> row = {format_number(map.demand_axis[r])};
        for (const int w : map.winner[r]) row.push_back(label(w));
        t.rows.push_back(std::move(row));
    }

    double worst = 0.0;
    for (const auto& d : map.disagreements) {
        worst = std::max(worst, d.runner_up_gap);
        notes.push_back("rule-disagreement demand_pu=" + format_number(map.demand_axis[d.row]) +
                        " length_km=" + format_number(map.length_axis[d.col]) +
                        " winner=" + label(d.winner) +
                        " rule=" + (d.rule_index ? label(*d.rule_index) : std::string("none")) +
                        " runner_up_gap=" + format_number(d.runner_up_gap));
    }
    if (!map.disagreements.empty()) {
        notes.push_back(std::to_string(map.disagreements.size()) +
                        " cells resolved by argmin against the region rule; largest runner-up gap " +
                        format_number(worst));
    }
    return t;
}

CsvTable sweep_table(const Scenario& s, const RunOptions& o) {
    const auto values = axis_or(o, s.sweep_values);
    const auto result =
        sensitivity_sweep(s.sweep_axis, values, s.system, s.cable, s.library.rows());
    CsvTable t;
    t.columns = {std::string(to_string(result.axis)), "s_link_mva", "demand_pu", "l_cr_b_km",
                 "l_c2_min_km", "l_c2_max_km"};
    for (std::size_t i = 0; i < result.axis_values.size(); ++i) {
        t.rows.push_back({format_number(result.axis_values[i]), format_number(result.s_link_mva[i]),
                          format_number(result.demand_pu), format_number(result.l_cr_b[i]),
                          format_number(result.l_c2_min[i]), format_number(result.l_c2_max[i])});
    }
    return t;
}

}  // namespace

int parse_config_label(std::string_view text) {
    if (text.size() >= 2 && (text[0] == 'C' || text[0] == 'c')) {
        const std::string digits(text.substr(1));
        if (std::all_of(digits.begin(), digits.end(), [](char ch) { return ch >= '0' && ch <= '9'; }) &&
            digits.size() < 6) {
            return std::stoi(digits);
        }
    }
    fail(ErrorCategory::validation, "configuration must look like C0, C1, C2, ... (got '" +
                                        std::string(text) + "')");
}

int exit_code(ErrorCategory category) noexcept {
    switch (category) {
        case ErrorCategory::validation: return 2;
        case ErrorCategory::infeasible: return 3;
        case ErrorCategory::numerical: return 3;
        case ErrorCategory::io: return 4;
    }
    return 1;
}

CommandResult run_subcommand(std::string_view name, const Scenario& scenario,
                             const RunOptions& options) {
    CommandResult result;
    if (name == "configs") {
        result.table = configs_table(scenario);
    } else if (name == "losses") {
        result.table = losses_table(scenario, options, result.notes);
    } else if (name == "crossover") {
        result.table = crossover_table(scenario, options);
    } else if (name == "optimal-y") {
        result.table = optimal_y_table(scenario, options);
    } else if (name == "boundary") {
        result.table = boundary_table(scenario, options, result.notes);
    } else if (name == "sweep") {
        result.table = sweep_table(scenario, options);
    } else {
        fail(ErrorCategory::validation, "unknown subcommand '" + std::string(name) + "'");
    }

    auto& c = result.table.comments;
    c.push_back("gridlink " + std::string(kToolVersion));
    c.push_back("subcommand = " + std::string(name));
    for (const auto& [key, value] : scenario.echo()) c.push_back(key + " = " + value);
    if (options.axis) c.push_back("flag.axis = " + *options.axis);
    if (options.config) c.push_back("flag.config = C" + std::to_string(*options.config));
    if (options.y) c.push_back("flag.y = " + format_number(*options.y));
    return result;
}

int run_cli(int argc, char** argv, std::ostream& out, std::ostream& err) {
    CLI::App app{"Efficiency boundaries of refurbished parallel AC-DC distribution links", "gridlink"};
    app.set_version_flag("--version", std::string(kToolVersion));

    std::string subcommand;
    std::string scenario_path;
    std::string out_path;
    std::string axis;
    std::string config;
    double y = 0.0;
    unsigned workers = 1;
    app.add_option("subcommand", subcommand, "configs | losses | crossover | optimal-y | boundary | sweep")
        ->required()
        ->check(CLI::IsMember({"configs", "losses", "crossover", "optimal-y", "boundary", "sweep"}));
    app.add_option("--scenario", scenario_path, "scenario file")->required();
    app.add_option("--out", out_path, "output CSV (default: stdout)");
    auto* axis_opt = app.add_option("--axis", axis, "axis override, start:stop:step");
    auto* config_opt = app.add_option("--config", config, "restrict to one configuration (C0, C1, ...)");
    auto* y_opt = app.add_option("--y", y, "DC share for hybrid configurations");
    app.add_option("--workers", workers, "worker threads for boundary maps")->check(CLI::Range(1u, 1024u));

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e, out, err);
        return code == 0 ? 0 : exit_code(ErrorCategory::validation);
    }

    try {
        RunOptions options;
        options.workers = workers;
        if (*axis_opt) options.axis = axis;
        if (*config_opt) options.config = parse_config_label(config);
        if (*y_opt) {
            if (!(y >= 0.0 && y <= 1.0)) fail(ErrorCategory::validation, "--y out of [0,1]");
            options.y = y;
        }
        const auto scenario = parse_scenario(scenario_path);
        const auto result = run_subcommand(subcommand, scenario, options);
        for (const auto& note : result.notes) err << "note: " << note << '\n';
        if (out_path.empty()) {
            write_csv(result.table, out);
        } else {
            emit_csv(result.table, out_path);
        }
        return 0;
    } catch (const Error& e) {
        err << "error[" << to_string(e.category()) << "]: " << e.what() << '\n';
        return exit_code(e.category());
    }
}

}  // namespace gridlink
