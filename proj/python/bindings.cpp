#include <pybind11/pybind11.h>
#include <pybind11/stl.h>
#include <pybind11/stl/filesystem.h>

#include "gridlink/boundaries.hpp"
#include "gridlink/cable_library.hpp"
#include "gridlink/commands.hpp"
#include "gridlink/core_model.hpp"
#include "gridlink/error.hpp"
#include "gridlink/losses.hpp"
#include "gridlink/scenario.hpp"
#include "gridlink/thermal.hpp"

#include <sstream>

namespace py = pybind11;
using namespace gridlink;

namespace {


std::string csv_text(const CsvTable& table) {
    std::ostringstream os;
    write_csv(table, os);
    return os.str();
}

}  // namespace

PYBIND11_MODULE(_gridlink, m) {
    m.doc() = "Loss and efficiency-boundary model for AC, DC and hybrid corridor refurbishment";

    static py::exception<Error> error_type(m, "GridlinkError", PyExc_RuntimeError);
    py::register_exception_translator([](std::exception_ptr p) {
        try {
            if (p) std::rethrow_exception(p);
        } catch (const Error& e) {
            py::object exc = py::reinterpret_borrow<py::object>(error_type.ptr())(e.what());
            exc.attr("category") = std::string(to_string(e.category()));
            PyErr_SetObject(error_type.ptr(), exc.ptr());
        }
    });

    py::class_<SystemParams>(m, "SystemParams")
        .def(py::init<>())
        .def(py::init([](double v, double s, double pf, double length, double eta, double t_amb, int n_ori) {
                 SystemParams p{v, s, pf, length, eta, t_amb, n_ori};
                 p.validate();
                 return p;
             }),
             py::arg("v_ll_rms_kv"), py::arg("s_actual_mva"), py::arg("pf") = 0.9,
             py::arg("link_length_km") = 0.0, py::arg("eta") = 0.9934, py::arg("t_amb_c") = 20.0,
             py::arg("n_ori") = 9)
        .def_readwrite("v_ll_rms_kv", &SystemParams::v_ll_rms_kv)
        .def_readwrite("s_actual_mva", &SystemParams::s_actual_mva)
        .def_readwrite("pf", &SystemParams::pf)
        .def_readwrite("link_length_km", &SystemParams::link_length_km)
        .def_readwrite("eta", &SystemParams::eta)
        .def_readwrite("t_amb_c", &SystemParams::t_amb_c)
        .def_readwrite("n_ori", &SystemParams::n_ori)
        .def("validate", &SystemParams::validate);

    py::class_<CableSpec>(m, "CableSpec")
        .def(py::init([](double area, double r90, double alpha, double i_rated, double ratio) {
                 CableSpec c{area, r90, alpha, i_rated, ratio};
                 c.validate();
                 return c;
             }),
             py::arg("area_mm2"), py::arg("r90_ohm_per_km"), py::arg("alpha_per_k"),
             py::arg("i_rated_a"), py::arg("ac_dc_ratio") = 1.0)
        .def_readwrite("area_mm2", &CableSpec::area_mm2)
        .def_readwrite("r90_ohm_per_km", &CableSpec::r90_ohm_per_km)
        .def_readwrite("alpha_per_k", &CableSpec::alpha_per_k)
        .def_readwrite("i_rated_a", &CableSpec::i_rated_a)
        .def_readwrite("ac_dc_ratio", &CableSpec::ac_dc_ratio)
        .def("__repr__", [](const CableSpec& c) {
            return "CableSpec(area_mm2=" + std::to_string(c.area_mm2) + ")";
        });

    py::class_<Configuration>(m, "Configuration")
        .def_readonly("index", &Configuration::index)
        .def_readonly("n_ac", &Configuration::n_ac)
        .def_readonly("n_dc", &Configuration::n_dc)
        .def_readonly("n_red", &Configuration::n_red)
        .def_property_readonly("is_hybrid", &Configuration::is_hybrid)
        .def_property_readonly("label", &Configuration::label)
        .def("__eq__", [](const Configuration& a, const Configuration& b) { return a == b; })
        .def("__repr__", [](const Configuration& c) {
            return c.label() + "(n_ac=" + std::to_string(c.n_ac) + ", n_dc=" + std::to_string(c.n_dc) +
                   ", n_red=" + std::to_string(c.n_red) + ")";
        });

    py::class_<ShareLimits>(m, "ShareLimits")
        .def_readonly("y_min", &ShareLimits::y_min)
        .def_readonly("y_max", &ShareLimits::y_max);

    py::class_<ThermalState>(m, "ThermalState")
        .def_readonly("current_a", &ThermalState::current_a)
        .def_readonly("temperature_c", &ThermalState::temperature_c)
        .def_readonly("resistance_ohm_per_km", &ThermalState::resistance_ohm_per_km)
        .def_readonly("iterations", &ThermalState::iterations)
        .def_readonly("overloaded", &ThermalState::overloaded);

    py::class_<LossBreakdown>(m, "LossBreakdown")
        .def_readonly("conductor_loss_w", &LossBreakdown::conductor_loss_w)
        .def_readonly("converter_loss_w", &LossBreakdown::converter_loss_w)
        .def_readonly("total_loss_w", &LossBreakdown::total_loss_w)
        .def_readonly("normalized_loss", &LossBreakdown::normalized_loss)
        .def_readonly("y", &LossBreakdown::y)
        .def_readonly("ac_state", &LossBreakdown::ac_state)
        .def_readonly("dc_state", &LossBreakdown::dc_state)
        .def_readonly("warnings", &LossBreakdown::warnings);

    py::class_<CrossoverSet>(m, "CrossoverSet")
        .def_readonly("y", &CrossoverSet::y)
        .def_readonly("l_cr_a", &CrossoverSet::l_cr_a)
        .def_readonly("l_cr_b", &CrossoverSet::l_cr_b)
        .def_readonly("l_cr_c", &CrossoverSet::l_cr_c)
        .def_readonly("l_cr_a_min", &CrossoverSet::l_cr_a_min)
        .def_readonly("l_cr_c_max", &CrossoverSet::l_cr_c_max)
        .def_readonly("y_at_a_min", &CrossoverSet::y_at_a_min)
        .def_readonly("y_at_c_max", &CrossoverSet::y_at_c_max)
        .def_property_readonly("has_c2_region", &CrossoverSet::has_c2_region);

    py::class_<BoundaryMap>(m, "BoundaryMap")
        .def_readonly("demand_axis", &BoundaryMap::demand_axis)
        .def_readonly("length_axis", &BoundaryMap::length_axis)
        .def_readonly("winner", &BoundaryMap::winner)
        .def_readonly("y_opt", &BoundaryMap::y_opt)
        .def_readonly("pf", &BoundaryMap::pf);

    py::class_<SweepResult>(m, "SweepResult")
        .def_property_readonly("axis", [](const SweepResult& r) { return std::string(to_string(r.axis)); })
        .def_readonly("demand_pu", &SweepResult::demand_pu)
        .def_readonly("axis_values", &SweepResult::axis_values)
        .def_readonly("s_link_mva", &SweepResult::s_link_mva)
        .def_readonly("l_cr_b", &SweepResult::l_cr_b)
        .def_readonly("l_c2_min", &SweepResult::l_c2_min)
        .def_readonly("l_c2_max", &SweepResult::l_c2_max);

    m.def("reference_cables", [] {
        const auto rows = CableLibrary::reference().rows();
        return std::vector<CableSpec>(rows.begin(), rows.end());
    });
    m.def("reference_cable", [](double area) {
        const auto c = CableLibrary::reference().find(area);
        if (!c) fail(ErrorCategory::validation, "no reference cable with that area");
        return *c;
    }, py::arg("area_mm2"));
    m.def("load_cable_library", [](const std::filesystem::path& path) {
        const auto lib = CableLibrary::load(path);
        return std::vector<CableSpec>(lib.rows().begin(), lib.rows().end());
    }, py::arg("path"));

    m.def("enumerate_configurations", &enumerate_configurations, py::arg("n_ori"));
    m.def("configuration", &configuration, py::arg("n_ori"), py::arg("index"));
    m.def("link_capacity", &link_capacity, py::arg("cable"), py::arg("v_ll_rms_kv"));
    m.def("share_limits", &share_limits, py::arg("params"), py::arg("cable"), py::arg("config"));
    m.def("solve_thermal", [](double current, const CableSpec& cable, double t_amb, bool ac) {
        return solve_thermal(current, cable, t_amb, ac ? ConductorMode::ac : ConductorMode::dc);
    }, py::arg("current_a"), py::arg("cable"), py::arg("t_amb_c") = 20.0, py::arg("ac") = false);
    m.def("loss", &loss_breakdown, py::arg("params"), py::arg("cable"), py::arg("config"),
          py::arg("y") = py::none());
    m.def("crossover_a", &crossover_a, py::arg("params"), py::arg("cable"), py::arg("y"),
          py::arg("hybrid_index") = 2);
    m.def("crossover_b", &crossover_b, py::arg("params"), py::arg("cable"));
    m.def("crossover_c", &crossover_c, py::arg("params"), py::arg("cable"), py::arg("y"),
          py::arg("hybrid_index") = 2);
    m.def("crossover_extrema", &crossover_extrema, py::arg("params"), py::arg("cable"),
          py::arg("y") = py::none());
    m.def("optimal_y", [](const SystemParams& p, const CableSpec& c, const Configuration& cfg) {
        const auto opt = optimal_y(p, c, cfg);
        return py::make_tuple(opt.y, opt.loss);
    }, py::arg("params"), py::arg("cable"), py::arg("config"));
    m.def("select_configuration", [](const SystemParams& p, const CableSpec& c) {
        const auto s = select_configuration(p, c);
        return py::make_tuple(s.config, s.y, s.loss);
    }, py::arg("params"), py::arg("cable"));
    m.def("boundary_map", [](const SystemParams& p, const CableSpec& c, const std::vector<double>& demand,
                             const std::vector<double>& length, unsigned workers) {
        py::gil_scoped_release release;
        return boundary_map(p, c, demand, length, workers);
    }, py::arg("params"), py::arg("cable"), py::arg("demand_pu"), py::arg("length_km"),
       py::arg("workers") = 1);
    m.def("sensitivity_sweep", [](const std::string& axis, const std::vector<double>& values,
                                  const SystemParams& p, const CableSpec& c) {
        const auto rows = CableLibrary::reference().rows();
        return sensitivity_sweep(parse_sweep_axis(axis), values, p, c, rows);
    }, py::arg("axis"), py::arg("values"), py::arg("params"), py::arg("cable"));

    m.def("run", [](const std::string& subcommand, const std::filesystem::path& scenario) {
        const auto scn = parse_scenario(scenario);
        return csv_text(run_subcommand(subcommand, scn, {}).table);
    }, py::arg("subcommand"), py::arg("scenario"),
       "Runs a CLI subcommand on a scenario file and returns the CSV text.");

    m.attr("__version__") = std::string(kToolVersion);
}
