#include "gridlink/boundaries.hpp"

#include "gridlink/error.hpp"
#include "gridlink/golden.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <exception>
#include <limits>
#include <mutex>
#include <thread>

namespace gridlink {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();
constexpr int kExtremaSeedPoints = 101;

double v2_over_s(const SystemParams& params) {
    if (!(params.s_actual_mva > 0.0)) {
        fail(ErrorCategory::validation, "crossover lengths need s_actual > 0");
    }
    return params.v_ll_rms_kv * params.v_ll_rms_kv / params.s_actual_mva;
}

// r0 / N_ac,C0 at the C0 operating temperature.
double c0_term(const SystemParams& params, const CableSpec& cable, const Configuration& c0) {
    const auto loss = loss_c0(params, cable, c0);
    return loss.ac_state->resistance_ohm_per_km / c0.n_ac;
}

// r1 / (2 N_dc,C1) at the C1 operating temperature.
double c1_term(const SystemParams& params, const CableSpec& cable, const Configuration& c1) {
    const auto loss = loss_c1(params, cable, c1);
    return loss.dc_state->resistance_ohm_per_km / (2.0 * c1.n_dc);
}

// (1-y)^2 r_ac / N_ac + y^2 r_dc / (2 N_dc) at the hybrid's operating temperatures.
double hybrid_term(const SystemParams& params, const CableSpec& cable, const Configuration& cn,
                   double y) {
    const auto loss = loss_cn(params, cable, cn, y);
    const double ys = loss.y;
    return (1.0 - ys) * (1.0 - ys) * loss.ac_state->resistance_ohm_per_km / cn.n_ac +
           ys * ys * loss.dc_state->resistance_ohm_per_km / (2.0 * cn.n_dc);
}

std::optional<double> ratio_if_positive(double numerator, double denominator) {
    if (!(denominator > 0.0)) return std::nullopt;
    return numerator / denominator;
}

Configuration hybrid(int n_ori, int index) {
    const auto c = configuration(n_ori, index);
    if (!c.is_hybrid()) {
        fail(ErrorCategory::validation, c.label() + " is not a hybrid configuration");
    }
    return c;
}

// Minimises g over [lo, hi], where g may be +inf on part of the interval. A
// uniform seed scan locates the basin, golden section refines inside it.
template <typename G>
std::optional<ScalarMinimum> minimize_extended(G&& g, double lo, double hi) {
    if (hi - lo <= kShareTolerance) {
        const double v = g(lo);
        if (!std::isfinite(v)) return std::nullopt;
        return ScalarMinimum{lo, v, 1};
    }
    const double step = (hi - lo) / (kExtremaSeedPoints - 1);
    int best = -1;
    double best_value = kInf;
    for (int i = 0; i < kExtremaSeedPoints; ++i) {
        const double x = i == kExtremaSeedPoints - 1 ? hi : lo + i * step;
        const double v = g(x);
        if (v < best_value) {
            best_value = v;
            best = i;
        }
    }
    if (best < 0) return std::nullopt;
    const double seed_x = best == kExtremaSeedPoints - 1 ? hi : lo + best * step;
    const double a = std::max(lo, seed_x - step);
    const double b = std::min(hi, seed_x + step);
    const auto refined = golden_section_minimize(g, a, b, kShareTolerance);
    if (refined.value < best_value) return refined;
    return ScalarMinimum{seed_x, best_value, refined.evaluations};
}

struct ScoredConfig {
    Configuration config;
    double y = 0.0;
    LossBreakdown loss;
};

Selection select_impl(const SystemParams& params, const CableSpec& cable,
                      const CrossoverSet* crossovers) {
    params.validate();
    const double s_link = link_capacity(cable, params.v_ll_rms_kv);

    std::vector<ScoredConfig> scored;
    for (const auto& config : enumerate_configurations(params.n_ori)) {
        if (!is_feasible(config, params.s_actual_mva, s_link)) continue;
        if (config.is_hybrid()) {
            auto opt = optimal_y(params, cable, config);
            scored.push_back({config, opt.y, std::move(opt.loss)});
        } else {
            auto loss = loss_breakdown(params, cable, config);
            scored.push_back({config, loss.y, std::move(loss)});
        }
    }
    if (scored.empty()) {
        fail(ErrorCategory::infeasible, "no configuration can carry the demand");
    }

    std::size_t best = 0;
    for (std::size_t i = 1; i < scored.size(); ++i) {
        if (scored[i].loss.total_loss_w < scored[best].loss.total_loss_w) best = i;
    }

    Selection out;
    out.config = scored[best].config;
    out.y = scored[best].y;
    out.loss = scored[best].loss;

    std::optional<std::size_t> runner_up;
    for (std::size_t i = 0; i < scored.size(); ++i) {
        if (i == best) continue;
        if (!runner_up || scored[i].loss.total_loss_w < scored[*runner_up].loss.total_loss_w) {
            runner_up = i;
        }
    }
    if (runner_up) {
        const double lo = scored[best].loss.total_loss_w;
        const double hi = scored[*runner_up].loss.total_loss_w;
        out.runner_up_index = scored[*runner_up].config.index;
        out.runner_up_gap = lo > 0.0 ? (hi - lo) / lo : (hi > lo ? kInf : 0.0);
    } else {
        out.runner_up_gap = kInf;
    }

    if (crossovers) {
        out.rule_index = region_rule(*crossovers, params.link_length_km);
        out.agrees_with_rule = out.rule_index && *out.rule_index == out.config.index;
    }
    return out;
}

std::optional<CrossoverSet> try_crossovers(const SystemParams& params, const CableSpec& cable) {
    if (params.n_ori < 6 || !(params.s_actual_mva > 0.0)) return std::nullopt;
    try {
        return crossover_extrema(params, cable);
    } catch (const Error& e) {
        if (e.category() == ErrorCategory::infeasible) return std::nullopt;
        throw;
    }
}

}  // namespace

std::optional<double> crossover_b(const SystemParams& params, const CableSpec& cable) {
    params.validate();
    const auto c0 = configuration(params.n_ori, 0);
    const auto c1 = configuration(params.n_ori, 1);
    const double cos2 = params.pf * params.pf;
    const double numerator = 2.0 * (1.0 - params.eta) * params.pf * v2_over_s(params);
    const double denominator =
        3.0 * (c0_term(params, cable, c0) - cos2 * c1_term(params, cable, c1));
    return ratio_if_positive(numerator, denominator);
}

std::optional<double> crossover_a(const SystemParams& params, const CableSpec& cable, double y,
                                  int hybrid_index) {
    params.validate();
    const auto c0 = configuration(params.n_ori, 0);
    const auto cn = hybrid(params.n_ori, hybrid_index);
    const double cos2 = params.pf * params.pf;
    const double numerator = 2.0 * (1.0 - params.eta) * y * params.pf * v2_over_s(params);
    const double denominator =
        3.0 * (c0_term(params, cable, c0) - cos2 * hybrid_term(params, cable, cn, y));
    return ratio_if_positive(numerator, denominator);
}

std::optional<double> crossover_c(const SystemParams& params, const CableSpec& cable, double y,
                                  int hybrid_index) {
    params.validate();
    const auto c1 = configuration(params.n_ori, 1);
    const auto cn = hybrid(params.n_ori, hybrid_index);
    const double numerator = 2.0 * (1.0 - params.eta) * (1.0 - y) * v2_over_s(params);
    const double denominator = 3.0 * params.pf *
                               (hybrid_term(params, cable, cn, y) - c1_term(params, cable, c1));
    return ratio_if_positive(numerator, denominator);
}

OptimalShare optimal_y(const SystemParams& params, const CableSpec& cable,
                       const Configuration& config) {
    if (!config.is_hybrid()) {
        fail(ErrorCategory::validation, config.label() + " has no DC share to optimise");
    }
    const auto limits = share_limits(params, cable, config);
    const auto total = [&](double y) { return loss_cn(params, cable, config, y).total_loss_w; };

    double best_y = limits.y_min;
    double best = total(limits.y_min);
    if (limits.y_max > limits.y_min) {
        const double at_max = total(limits.y_max);
        if (at_max < best) {
            best = at_max;
            best_y = limits.y_max;
        }
        const auto inner =
            golden_section_minimize(total, limits.y_min, limits.y_max, kShareTolerance);
        if (inner.value < best) best_y = inner.x;
    }
    return {best_y, loss_cn(params, cable, config, best_y)};
}

bool CrossoverSet::has_c2_region() const {
    if (!l_cr_a_min) return false;
    return !l_cr_c_max || *l_cr_a_min < *l_cr_c_max;
}

CrossoverSet crossover_extrema(const SystemParams& params, const CableSpec& cable,
                               std::optional<double> y) {
    params.validate();
    const auto c2 = hybrid(params.n_ori, 2);
    const auto limits = share_limits(params, cable, c2);

    CrossoverSet set;
    set.y = std::clamp(y.value_or(full_load_share(c2)), limits.y_min, limits.y_max);
    set.l_cr_b = crossover_b(params, cable);
    set.l_cr_a = crossover_a(params, cable, set.y);
    set.l_cr_c = crossover_c(params, cable, set.y);

    const auto a_of = [&](double share) { return crossover_a(params, cable, share).value_or(kInf); };
    if (const auto m = minimize_extended(a_of, limits.y_min, limits.y_max)) {
        set.l_cr_a_min = m->value;
        set.y_at_a_min = m->x;
    }

    // No crossover with C1 means the hybrid beats C1 at every length for that
    // share, so the maximum is unbounded and stays absent.
    const auto neg_c_of = [&](double share) {
        const auto l = crossover_c(params, cable, share);
        return l ? -*l : -kInf;
    };
    const auto m = minimize_extended(neg_c_of, limits.y_min, limits.y_max);
    if (m && std::isfinite(m->value)) {
        set.l_cr_c_max = -m->value;
        set.y_at_c_max = m->x;
    }
    return set;
}

std::optional<int> region_rule(const CrossoverSet& set, double length_km) {
    const double a = set.l_cr_a_min.value_or(kInf);
    const double b = set.l_cr_b.value_or(kInf);
    const double c = set.l_cr_c_max.value_or(kInf);
    if (length_km < a && length_km < b) return 0;
    if (length_km >= b && length_km >= c) return 1;
    if (length_km >= a && length_km < c) return 2;
    return std::nullopt;
}

Selection select_configuration(const SystemParams& params, const CableSpec& cable) {
    const auto set = try_crossovers(params, cable);
    return select_impl(params, cable, set ? &*set : nullptr);
}

Selection select_configuration(const SystemParams& params, const CableSpec& cable,
                               const CrossoverSet& crossovers) {
    return select_impl(params, cable, &crossovers);
}

BoundaryMap boundary_map(const SystemParams& params_template, const CableSpec& cable,
                         std::span<const double> demand_axis_pu,
                         std::span<const double> length_axis_km, unsigned workers) {
    params_template.validate();
    cable.validate();
    for (auto axis : {demand_axis_pu, length_axis_km}) {
        if (!std::is_sorted(axis.begin(), axis.end())) {
            fail(ErrorCategory::validation, "boundary map axes must be ascending");
        }
    }

    BoundaryMap map;
    map.demand_axis.assign(demand_axis_pu.begin(), demand_axis_pu.end());
    map.length_axis.assign(length_axis_km.begin(), length_axis_km.end());
    map.pf = params_template.pf;
    const std::size_t rows = map.demand_axis.size();
    const std::size_t cols = map.length_axis.size();
    map.winner.assign(rows, std::vector<int>(cols, kInfeasibleCell));
    map.y_opt.assign(rows, std::vector<double>(cols, 0.0));
    std::vector<std::vector<RuleDisagreement>> row_notes(rows);

    const double s_link = link_capacity(cable, params_template.v_ll_rms_kv);

    const auto compute_row = [&](std::size_t r) {
        SystemParams params = params_template;
        params.s_actual_mva = map.demand_axis[r] * s_link;
        const auto set = try_crossovers(params, cable);
        for (std::size_t c = 0; c < cols; ++c) {
            params.link_length_km = map.length_axis[c];
            try {
                const auto sel = select_impl(params, cable, set ? &*set : nullptr);
                map.winner[r][c] = sel.config.index;
                map.y_opt[r][c] = sel.y;
                if (set && !sel.agrees_with_rule) {
                    row_notes[r].push_back(
                        {r, c, sel.config.index, sel.rule_index, sel.runner_up_gap});
                }
            } catch (const Error& e) {
                if (e.category() != ErrorCategory::infeasible) throw;
            }
        }
    };

    const unsigned n_workers =
        std::max(1u, std::min<unsigned>(workers, static_cast<unsigned>(std::max<std::size_t>(rows, 1))));
    if (n_workers == 1) {
        for (std::size_t r = 0; r < rows; ++r) compute_row(r);
    } else {
        std::atomic<std::size_t> next{0};
        std::exception_ptr failure;
        std::mutex failure_mutex;
        std::vector<std::thread> pool;
        pool.reserve(n_workers);
        for (unsigned w = 0; w < n_workers; ++w) {
            pool.emplace_back([&] {
                for (std::size_t r = next++; r < rows; r = next++) {
                    try {
                        compute_row(r);
                    } catch (...) {
                        std::lock_guard lock(failure_mutex);
                        if (!failure) failure = std::current_exception();
                    }
                }
            });
        }
        for (auto& t : pool) t.join();
        if (failure) std::rethrow_exception(failure);
    }

    for (auto& notes : row_notes) {
        map.disagreements.insert(map.disagreements.end(), notes.begin(), notes.end());
    }
    return map;
}

std::vector<double> c2_band(const BoundaryMap& map, std::size_t row) {
    std::vector<double> band;
    for (std::size_t c = 0; c < map.length_axis.size(); ++c) {
        if (map.winner.at(row)[c] == 2) band.push_back(map.length_axis[c]);
    }
    return band;
}

std::string_view to_string(SweepAxis axis) noexcept {
    switch (axis) {
        case SweepAxis::voltage: return "voltage";
        case SweepAxis::area: return "area";
        case SweepAxis::eta: return "eta";
    }
    return "unknown";
}

SweepAxis parse_sweep_axis(std::string_view name) {
    if (name == "voltage") return SweepAxis::voltage;
    if (name == "area") return SweepAxis::area;
    if (name == "eta") return SweepAxis::eta;
    fail(ErrorCategory::validation,
         "unknown sweep axis '" + std::string(name) + "' (expected voltage, area or eta)");
}

SweepResult sensitivity_sweep(SweepAxis axis, std::span<const double> values,
                              const SystemParams& params_template,
                              const CableSpec& cable_template,
                              std::span<const CableSpec> cable_table) {
    params_template.validate();
    cable_template.validate();
    for (std::size_t i = 1; i < values.size(); ++i) {
        if (!(values[i] > values[i - 1])) {
            fail(ErrorCategory::validation, "sweep values must be strictly ascending");
        }
    }

    SweepResult out;
    out.axis = axis;
    out.demand_pu =
        params_template.s_actual_mva / link_capacity(cable_template, params_template.v_ll_rms_kv);
    out.axis_values.assign(values.begin(), values.end());

    for (const double value : values) {
        SystemParams params = params_template;
        CableSpec cable = cable_template;
        switch (axis) {
            case SweepAxis::voltage: params.v_ll_rms_kv = value; break;
            case SweepAxis::eta: params.eta = value; break;
            case SweepAxis::area: {
                const auto it = std::find_if(cable_table.begin(), cable_table.end(),
                                             [&](const CableSpec& c) {
                                                 return std::abs(c.area_mm2 - value) < 1e-9;
                                             });
                if (it == cable_table.end()) {
                    fail(ErrorCategory::validation,
                         "no cable library entry for area " + std::to_string(value) + " mm2");
                }
                cable = *it;
                break;
            }
        }
        params.validate();
        const double s_link = link_capacity(cable, params.v_ll_rms_kv);
        params.s_actual_mva = out.demand_pu * s_link;
        const auto set = crossover_extrema(params, cable);
        out.s_link_mva.push_back(s_link);
        out.l_cr_b.push_back(set.l_cr_b);
        out.l_c2_min.push_back(set.l_cr_a_min);
        out.l_c2_max.push_back(set.l_cr_c_max);
    }
    return out;
}

}  // namespace gridlink
