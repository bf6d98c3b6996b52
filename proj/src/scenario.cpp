#include "gridlink/scenario.hpp"

#include "gridlink/csv.hpp"
#include "gridlink/error.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <set>
#include <sstream>

namespace gridlink {

namespace {

std::string trim(std::string_view s) {
    const auto first = s.find_first_not_of(" \t\r");
    if (first == std::string_view::npos) return {};
    const auto last = s.find_last_not_of(" \t\r");
    return std::string(s.substr(first, last - first + 1));
}

const std::set<std::string, std::less<>> kFixedKeys = {
    "v_ll_rms_kv",       "demand_pu",         "s_actual_mva",   "pf",
    "eta",               "t_amb_c",           "n_ori",          "link_length_km",
    "cable_area_mm2",    "cable_r90_ohm_per_km", "cable_alpha_per_k", "cable_i_rated_a",
    "cable_ac_dc_ratio", "cable_library",     "grid_demand_pu", "grid_length_km",
    "sweep_axis",        "sweep_values",
};

constexpr std::string_view kPresetPrefix = "y_preset_c";

struct Entry {
    std::string value;
    int line = 0;
};

class Fields {
public:
    explicit Fields(std::map<std::string, Entry, std::less<>> entries)
        : entries_(std::move(entries)) {}

    bool has(std::string_view key) const { return entries_.count(key) != 0; }

    const Entry& at(std::string_view key) const {
        const auto it = entries_.find(key);
        if (it == entries_.end()) {
            fail(ErrorCategory::validation, "missing required key '" + std::string(key) + "'");
        }
        return it->second;
    }

    double number(std::string_view key) const {
        const auto& e = at(key);
        try {
            return parse_number(e.value);
        } catch (const Error& err) {
            fail(ErrorCategory::validation,
                 "line " + std::to_string(e.line) + ": " + std::string(key) + ": " + err.what());
        }
    }

    int integer(std::string_view key) const {
        const double v = number(key);
        if (std::floor(v) != v || std::abs(v) > 1e9) {
            fail(ErrorCategory::validation, "line " + std::to_string(at(key).line) + ": " +
                                                std::string(key) + " must be an integer");
        }
        return static_cast<int>(v);
    }

    const auto& all() const { return entries_; }

private:
    std::map<std::string, Entry, std::less<>> entries_;
};

std::string join_numbers(const std::vector<double>& values) {
    std::string out;
    for (std::size_t i = 0; i < values.size(); ++i) {
        out += (i ? "," : "") + format_number(values[i]);
    }
    return out;
}

std::vector<double> axis_field(const Fields& f, std::string_view key, const std::string& fallback,
                               std::string& spec_out) {
    spec_out = f.has(key) ? f.at(key).value : fallback;
    try {
        return parse_axis(spec_out);
    } catch (const Error& err) {
        const std::string where =
            f.has(key) ? "line " + std::to_string(f.at(key).line) + ": " : std::string{};
        fail(ErrorCategory::validation, where + std::string(key) + ": " + err.what());
    }
}

}  // namespace

std::vector<double> parse_axis(std::string_view spec) {
    const std::string text = trim(spec);
    if (text.empty()) fail(ErrorCategory::validation, "empty axis");

    std::vector<double> values;
    if (text.find(':') != std::string::npos) {
        std::vector<std::string> parts;
        std::stringstream ss(text);
        for (std::string part; std::getline(ss, part, ':');) parts.push_back(trim(part));
        if (parts.size() != 3) {
            fail(ErrorCategory::validation, "axis '" + text + "' must be start:stop:step");
        }
        const double start = parse_number(parts[0]);
        const double stop = parse_number(parts[1]);
        const double step = parse_number(parts[2]);
        if (!(step > 0.0) || stop < start) {
            fail(ErrorCategory::validation,
                 "axis '" + text + "' needs step > 0 and stop >= start");
        }
        const auto count = static_cast<std::size_t>(std::floor((stop - start) / step + 1e-9)) + 1;
        if (count > 10'000'000) fail(ErrorCategory::validation, "axis '" + text + "' too long");
        values.reserve(count);
        for (std::size_t i = 0; i < count; ++i) values.push_back(start + static_cast<double>(i) * step);
    } else {
        std::stringstream ss(text);
        for (std::string part; std::getline(ss, part, ',');) values.push_back(parse_number(trim(part)));
    }
    for (std::size_t i = 1; i < values.size(); ++i) {
        if (!(values[i] > values[i - 1])) {
            fail(ErrorCategory::validation, "axis '" + text + "' must be strictly ascending");
        }
    }
    return values;
}

Scenario parse_scenario_text(std::string_view text, const std::filesystem::path& base_dir) {
    std::map<std::string, Entry, std::less<>> entries;
    int line_no = 0;
    std::size_t pos = 0;
    while (pos <= text.size()) {
        auto eol = text.find('\n', pos);
        if (eol == std::string_view::npos) eol = text.size();
        std::string_view raw = text.substr(pos, eol - pos);
        pos = eol + 1;
        ++line_no;
        if (const auto hash = raw.find('#'); hash != std::string_view::npos) raw = raw.substr(0, hash);
        const std::string line = trim(raw);
        if (line.empty()) continue;

        const auto eq = line.find('=');
        const std::string where = "line " + std::to_string(line_no) + ": ";
        if (eq == std::string::npos) {
            fail(ErrorCategory::validation, where + "expected 'key = value'");
        }
        std::string key = trim(std::string_view(line).substr(0, eq));
        std::string value = trim(std::string_view(line).substr(eq + 1));
        const bool preset = key.rfind(kPresetPrefix, 0) == 0;
        if (!preset && !kFixedKeys.count(key)) {
            fail(ErrorCategory::validation, where + "unknown key '" + key + "'");
        }
        if (value.empty()) fail(ErrorCategory::validation, where + "empty value for '" + key + "'");
        if (!entries.emplace(key, Entry{value, line_no}).second) {
            fail(ErrorCategory::validation, where + "duplicate key '" + key + "'");
        }
    }
    const Fields f(std::move(entries));

    Scenario s;
    s.system.v_ll_rms_kv = f.number("v_ll_rms_kv");
    s.system.pf = f.number("pf");
    s.system.eta = f.number("eta");
    s.system.t_amb_c = f.number("t_amb_c");
    s.system.n_ori = f.integer("n_ori");
    s.system.link_length_km = f.number("link_length_km");
    s.system.s_actual_mva = 0.0;
    s.system.validate();

    // Cable: library reference or a complete inline datasheet row.
    if (f.has("cable_library")) {
        std::filesystem::path p = f.at("cable_library").value;
        if (p.is_relative() && !base_dir.empty()) p = base_dir / p;
        s.cable_library_path = p.string();
        s.library = CableLibrary::load(p);
    } else {
        s.library = CableLibrary::reference();
    }
    const double area = f.number("cable_area_mm2");
    const std::vector<std::string> inline_keys = {"cable_r90_ohm_per_km", "cable_alpha_per_k",
                                                  "cable_i_rated_a", "cable_ac_dc_ratio"};
    const auto inline_count = std::count_if(inline_keys.begin(), inline_keys.end(),
                                            [&](const std::string& k) { return f.has(k); });
    if (inline_count == 0) {
        const auto row = s.library.find(area);
        if (!row) {
            fail(ErrorCategory::validation, "line " + std::to_string(f.at("cable_area_mm2").line) +
                                                ": no cable library entry for area " +
                                                format_number(area) + " mm2");
        }
        s.cable = *row;
        s.cable_source = "library";
    } else if (inline_count == static_cast<long>(inline_keys.size())) {
        s.cable = {area, f.number("cable_r90_ohm_per_km"), f.number("cable_alpha_per_k"),
                   f.number("cable_i_rated_a"), f.number("cable_ac_dc_ratio")};
        s.cable_source = "inline";
    } else {
        fail(ErrorCategory::validation,
             "inline cable needs all of cable_r90_ohm_per_km, cable_alpha_per_k, "
             "cable_i_rated_a, cable_ac_dc_ratio");
    }
    s.cable.validate();
    s.s_link_mva = link_capacity(s.cable, s.system.v_ll_rms_kv);

    if (f.has("demand_pu") == f.has("s_actual_mva")) {
        fail(ErrorCategory::validation, "give exactly one of demand_pu and s_actual_mva");
    }
    if (f.has("demand_pu")) {
        s.demand_pu = f.number("demand_pu");
        s.system.s_actual_mva = s.demand_pu * s.s_link_mva;
    } else {
        s.system.s_actual_mva = f.number("s_actual_mva");
        s.demand_pu = s.system.s_actual_mva / s.s_link_mva;
    }
    s.system.validate();

    const auto configs = enumerate_configurations(s.system.n_ori);
    for (const auto& c : configs) {
        if (c.is_hybrid()) s.y_presets[c.index] = full_load_share(c);
    }
    for (const auto& [key, entry] : f.all()) {
        if (key.rfind(kPresetPrefix, 0) != 0) continue;
        const std::string where = "line " + std::to_string(entry.line) + ": ";
        const std::string suffix = key.substr(kPresetPrefix.size());
        int index = -1;
        try {
            std::size_t used = 0;
            index = std::stoi(suffix, &used);
            if (used != suffix.size()) index = -1;
        } catch (const std::exception&) {
            index = -1;
        }
        if (!s.y_presets.count(index)) {
            fail(ErrorCategory::validation,
                 where + "'" + key + "' does not name a hybrid configuration for n_ori = " +
                     std::to_string(s.system.n_ori));
        }
        const double y = f.number(key);
        if (!(y >= 0.0 && y <= 1.0)) fail(ErrorCategory::validation, where + key + " out of [0,1]");
        s.y_presets[index] = y;
    }

    s.grid_demand_pu = axis_field(f, "grid_demand_pu", "0.05:4:0.05", s.grid_demand_spec);
    s.grid_length_km = axis_field(f, "grid_length_km", "0:50:0.1", s.grid_length_spec);
    if (s.grid_demand_pu.front() <= 0.0) {
        fail(ErrorCategory::validation, "grid_demand_pu values must be > 0");
    }
    if (s.grid_length_km.front() < 0.0) {
        fail(ErrorCategory::validation, "grid_length_km values must be >= 0");
    }

    s.sweep_axis = parse_sweep_axis(f.has("sweep_axis") ? f.at("sweep_axis").value : "voltage");
    std::string default_sweep;
    switch (s.sweep_axis) {
        case SweepAxis::voltage: default_sweep = "5:35:5"; break;
        case SweepAxis::area: default_sweep = join_numbers(s.library.areas()); break;
        case SweepAxis::eta: default_sweep = "0.985:0.999:0.002"; break;
    }
    s.sweep_values = axis_field(f, "sweep_values", default_sweep, s.sweep_values_spec);
    for (const double v : s.sweep_values) {
        const bool ok = s.sweep_axis == SweepAxis::voltage ? v > 0.0
                        : s.sweep_axis == SweepAxis::eta   ? v > 0.0 && v < 1.0
                                                           : s.library.find(v).has_value();
        if (!ok) {
            fail(ErrorCategory::validation, "sweep value " + format_number(v) +
                                                " is invalid for the " +
                                                std::string(to_string(s.sweep_axis)) + " axis");
        }
    }
    return s;
}

Scenario parse_scenario(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) fail(ErrorCategory::io, "cannot open scenario " + path.string());
    std::ostringstream buf;
    buf << in.rdbuf();
    return parse_scenario_text(buf.str(), path.parent_path());
}

std::vector<std::pair<std::string, std::string>> Scenario::echo() const {
    std::vector<std::pair<std::string, std::string>> out = {
        {"v_ll_rms_kv", format_number(system.v_ll_rms_kv)},
        {"demand_pu", format_number(demand_pu)},
        {"s_actual_mva", format_number(system.s_actual_mva)},
        {"s_link_mva", format_number(s_link_mva)},
        {"pf", format_number(system.pf)},
        {"eta", format_number(system.eta)},
        {"t_amb_c", format_number(system.t_amb_c)},
        {"n_ori", std::to_string(system.n_ori)},
        {"link_length_km", format_number(system.link_length_km)},
        {"cable_source", cable_source},
        {"cable_library", cable_library_path.empty() ? "reference" : cable_library_path},
        {"cable_area_mm2", format_number(cable.area_mm2)},
        {"cable_r90_ohm_per_km", format_number(cable.r90_ohm_per_km)},
        {"cable_alpha_per_k", format_number(cable.alpha_per_k)},
        {"cable_i_rated_a", format_number(cable.i_rated_a)},
        {"cable_ac_dc_ratio", format_number(cable.ac_dc_ratio)},
    };
    for (const auto& [index, y] : y_presets) {
        out.emplace_back(std::string(kPresetPrefix) + std::to_string(index), format_number(y));
    }
    out.emplace_back("grid_demand_pu", grid_demand_spec);
    out.emplace_back("grid_length_km", grid_length_spec);
    out.emplace_back("sweep_axis", std::string(to_string(sweep_axis)));
    out.emplace_back("sweep_values", sweep_values_spec);
    return out;
}

}  // namespace gridlink
