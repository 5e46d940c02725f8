#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <memory>
#include <sstream>

#include "rspgame/demand.hpp"
#include "rspgame/equilibrium.hpp"
#include "rspgame/json_io.hpp"

namespace py = pybind11;

namespace {

using InstancePtr = std::shared_ptr<rsp::ProblemInstance>;

py::dict edge_table_dict(const rsp::ProblemInstance& inst, const rsp::EdgeSlotTable& table) {
  py::dict out;
  for (int e = 0; e < inst.num_edges(); ++e) {
    const auto [j, l] = inst.network.edges[e];
    for (int t = 1; t <= inst.horizon; ++t)
      out[py::make_tuple(j, l, t)] = table[e][t - 1];
  }
  return out;
}

py::dict state_table_dict(const rsp::ProblemInstance& inst, const rsp::NodeSlotTable& table) {
  py::dict out;
  for (int j = 0; j < inst.num_nodes(); ++j)
    for (int t = 1; t <= inst.horizon; ++t) out[py::make_tuple(j, t)] = table[j][t - 1];
  return out;
}

struct PyGneSolution {
  InstancePtr instance;
  rsp::GneSolution solution;
};

struct PyMonopolySolution {
  InstancePtr instance;
  rsp::MonopolySolution solution;
};

struct PyEquivalenceReport {
  InstancePtr instance;
  rsp::EquivalenceReport report;
};

rsp::ScenarioSet scenarios_from_dicts(const rsp::ProblemInstance& inst,
                                      const std::vector<double>& weights,
                                      const std::vector<py::dict>& demand_fields) {
  rsp::ScenarioSet set;
  set.weights = weights;
  for (const auto& field_dict : demand_fields) {
    rsp::DemandField field;
    field.base.assign(inst.num_edges(), std::vector<double>(inst.horizon, 0.0));
    for (const auto& item : field_dict) {
      const auto key = item.first.cast<py::tuple>();
      const int e = inst.network.edge_index(key[0].cast<int>(), key[1].cast<int>());
      const int t = key[2].cast<int>();
      if (e < 0 || t < 1 || t > inst.horizon)
        throw std::invalid_argument("scenario key does not match the instance");
      field.base[e][t - 1] = item.second.cast<double>();
    }
    set.demands.push_back(std::move(field));
  }
  return set;
}

}  // namespace

PYBIND11_MODULE(_rspgame, m) {
  m.doc() = "Ride-service duopoly pricing and routing equilibria";

  m.def("duopoly_demand",
        [](double base, double own, double rival, double p_max) {
          return rsp::duopoly_demand(base, {own, rival, p_max});
        },
        py::arg("base"), py::arg("own"), py::arg("rival"), py::arg("p_max") = 1.0);
  m.def("linear_demand",
        [](double base, double own, double rival, double p_max) {
          return rsp::linear_demand(base, {own, rival, p_max});
        },
        py::arg("base"), py::arg("own"), py::arg("rival"), py::arg("p_max") = 1.0);
  m.def("zero_demand_threshold", &rsp::zero_demand_threshold, py::arg("rival_price"),
        py::arg("p_max") = 1.0);
  m.def("deterrence_price", &rsp::deterrence_price, py::arg("rival_price"),
        py::arg("p_max") = 1.0);
  m.def("total_served",
        [](double base, double own, double rival, double p_max) {
          return rsp::total_served(base, {own, rival, p_max});
        },
        py::arg("base"), py::arg("own"), py::arg("rival"), py::arg("p_max") = 1.0);
  m.def("monopoly_demand", &rsp::monopoly_demand, py::arg("base"), py::arg("price"),
        py::arg("p_max") = 1.0);

  py::class_<rsp::ProblemInstance, InstancePtr>(m, "ProblemInstance")
      .def_property_readonly("num_nodes", &rsp::ProblemInstance::num_nodes)
      .def_property_readonly("num_edges", &rsp::ProblemInstance::num_edges)
      .def_property_readonly("horizon",
                             [](const rsp::ProblemInstance& inst) { return inst.horizon; })
      .def_property_readonly("p_max",
                             [](const rsp::ProblemInstance& inst) { return inst.p_max; })
      .def_property_readonly("capacities",
                             [](const rsp::ProblemInstance& inst) {
                               return std::vector<double>(inst.fleets.capacity.begin(),
                                                          inst.fleets.capacity.end());
                             })
      .def("base_demand",
           [](const rsp::ProblemInstance& inst, int j, int l, int t) {
             const int e = inst.network.edge_index(j, l);
             if (e < 0 || t < 1 || t > inst.horizon)
               throw std::out_of_range("no such edge or slot");
             return inst.demand.at(e, t);
           },
           py::arg("j"), py::arg("l"), py::arg("t"))
      .def("validate",
           [](const rsp::ProblemInstance& inst) {
             std::vector<std::pair<std::string, std::string>> out;
             for (const auto& v : rsp::validate_instance(inst)) out.emplace_back(v.field, v.message);
             return out;
           })
      .def("to_json",
           [](const rsp::ProblemInstance& inst) { return rsp::instance_to_json(inst).dump(2); })
      .def_static("from_json", [](const std::string& text) {
        return std::make_shared<rsp::ProblemInstance>(
            rsp::instance_from_json(nlohmann::json::parse(text)));
      });

  m.def("build_two_cluster_instance",
        [](int n, double q, const std::vector<double>& demand_profile, double capacity,
           double intra_ride_cost, double intra_reroute_cost, double inter_ride_cost,
           double inter_reroute_cost, double p_max) {
          return std::make_shared<rsp::ProblemInstance>(rsp::build_two_cluster_instance(
              n, q, demand_profile, capacity, intra_ride_cost, intra_reroute_cost,
              inter_ride_cost, inter_reroute_cost, p_max));
        },
        py::arg("n"), py::arg("q"), py::arg("demand_profile"), py::arg("capacity"),
        py::arg("intra_ride_cost") = 0.1, py::arg("intra_reroute_cost") = 0.05,
        py::arg("inter_ride_cost") = 0.2, py::arg("inter_reroute_cost") = 0.1,
        py::arg("p_max") = 1.0);

  py::class_<rsp::SolverSettings>(m, "SolverSettings")
      .def(py::init<>())
      .def_readwrite("feas_tol", &rsp::SolverSettings::feas_tol)
      .def_readwrite("opt_tol", &rsp::SolverSettings::opt_tol)
      .def_readwrite("max_iterations", &rsp::SolverSettings::max_iterations)
      .def_readwrite("scaling", &rsp::SolverSettings::scaling)
      .def_readwrite("adaptive_rho", &rsp::SolverSettings::adaptive_rho)
      .def_readwrite("polish", &rsp::SolverSettings::polish);

  py::class_<PyGneSolution>(m, "GneSolution")
      .def_property_readonly("status",
                             [](const PyGneSolution& s) {
                               return rsp::qp_status_name(s.solution.status);
                             })
      .def_property_readonly("iterations",
                             [](const PyGneSolution& s) { return s.solution.iterations; })
      .def_property_readonly("potential",
                             [](const PyGneSolution& s) { return s.solution.potential; })
      .def_property_readonly("primal_residual",
                             [](const PyGneSolution& s) { return s.solution.primal_residual; })
      .def_property_readonly(
          "stationarity_residual",
          [](const PyGneSolution& s) { return s.solution.stationarity_residual; })
      .def_property_readonly("profit",
                             [](const PyGneSolution& s) {
                               return std::vector<double>{s.solution.provider[0].profit,
                                                          s.solution.provider[1].profit};
                             })
      .def_property_readonly("deviation_gain",
                             [](const PyGneSolution& s) {
                               return std::vector<double>{s.solution.deviation_gain[0],
                                                          s.solution.deviation_gain[1]};
                             })
      .def("prices",
           [](const PyGneSolution& s, int provider) {
             return edge_table_dict(*s.instance, s.solution.provider.at(provider).price);
           },
           py::arg("provider"))
      .def("demands",
           [](const PyGneSolution& s, int provider) {
             return edge_table_dict(*s.instance, s.solution.provider.at(provider).demand);
           },
           py::arg("provider"))
      .def("reroutes",
           [](const PyGneSolution& s, int provider) {
             return edge_table_dict(*s.instance, s.solution.provider.at(provider).reroute);
           },
           py::arg("provider"))
      .def("states",
           [](const PyGneSolution& s, int provider) {
             return state_table_dict(*s.instance, s.solution.provider.at(provider).state);
           },
           py::arg("provider"))
      .def("to_json", [](const PyGneSolution& s) {
        return rsp::gne_to_json(*s.instance, s.solution).dump(2);
      });

  py::class_<PyMonopolySolution>(m, "MonopolySolution")
      .def_property_readonly("status",
                             [](const PyMonopolySolution& s) {
                               return rsp::qp_status_name(s.solution.status);
                             })
      .def_property_readonly("profit",
                             [](const PyMonopolySolution& s) { return s.solution.profit; })
      .def("prices",
           [](const PyMonopolySolution& s) { return edge_table_dict(*s.instance, s.solution.price); })
      .def("demands",
           [](const PyMonopolySolution& s) {
             return edge_table_dict(*s.instance, s.solution.demand);
           })
      .def("to_json", [](const PyMonopolySolution& s) {
        return rsp::monopoly_to_json(*s.instance, s.solution).dump(2);
      });

  py::class_<rsp::SymmetryReport>(m, "SymmetryReport")
      .def_readonly("preconditions_hold", &rsp::SymmetryReport::preconditions_hold)
      .def_readonly("failed_precondition", &rsp::SymmetryReport::failed_precondition)
      .def_readonly("max_price_gap", &rsp::SymmetryReport::max_price_gap)
      .def_readonly("max_demand_gap", &rsp::SymmetryReport::max_demand_gap)
      .def_readonly("symmetric", &rsp::SymmetryReport::symmetric);

  py::class_<PyEquivalenceReport>(m, "EquivalenceReport")
      .def_property_readonly(
          "partition_condition_holds",
          [](const PyEquivalenceReport& r) { return r.report.partition_condition_holds; })
      .def_property_readonly("max_split_product",
                             [](const PyEquivalenceReport& r) {
                               return r.report.max_split_product;
                             })
      .def_property_readonly("verdict",
                             [](const PyEquivalenceReport& r) { return r.report.verdict; })
      .def_property_readonly("deviation_gain",
                             [](const PyEquivalenceReport& r) {
                               return std::vector<double>{r.report.deviation_gain[0],
                                                          r.report.deviation_gain[1]};
                             })
      .def_property_readonly("constructed_profile", [](const PyEquivalenceReport& r) {
        return PyGneSolution{r.instance, r.report.constructed};
      });

  m.def("solve_gne",
        [](const InstancePtr& inst, const rsp::SolverSettings& settings, bool verify,
           double tol) {
          return PyGneSolution{inst, rsp::solve_gne(*inst, settings, verify, tol)};
        },
        py::arg("instance"), py::arg("settings") = rsp::SolverSettings{},
        py::arg("verify") = true, py::arg("tol") = 1e-4);
  m.def("verify_gne",
        [](const InstancePtr& inst, PyGneSolution& profile, double tol,
           const rsp::SolverSettings& settings) {
          const auto gains = rsp::verify_gne(*inst, profile.solution, tol, settings);
          return std::vector<double>(gains.begin(), gains.end());
        },
        py::arg("instance"), py::arg("profile"), py::arg("tol") = 1e-4,
        py::arg("settings") = rsp::SolverSettings{});
  m.def("check_symmetry",
        [](const InstancePtr& inst, const PyGneSolution& sol, double eps_zero, double tol) {
          return rsp::check_symmetry(*inst, sol.solution, eps_zero, tol);
        },
        py::arg("instance"), py::arg("solution"), py::arg("eps_zero") = -1.0,
        py::arg("tol") = 1e-4);
  m.def("solve_monopoly",
        [](const InstancePtr& inst, bool merged, const rsp::SolverSettings& settings) {
          return PyMonopolySolution{inst, rsp::solve_monopoly(*inst, merged, settings)};
        },
        py::arg("instance"), py::arg("merged") = true,
        py::arg("settings") = rsp::SolverSettings{});
  m.def("monopoly_duopoly_equivalence",
        [](const InstancePtr& inst, double eps_zero, const rsp::SolverSettings& settings,
           double tol) {
          return PyEquivalenceReport{inst,
                                     rsp::monopoly_duopoly_equivalence(*inst, eps_zero,
                                                                        settings, tol)};
        },
        py::arg("instance"), py::arg("eps_zero") = -1.0,
        py::arg("settings") = rsp::SolverSettings{}, py::arg("tol") = 1e-4);
  m.def("solve_stochastic_gne",
        [](const InstancePtr& inst, const std::vector<double>& weights,
           const std::vector<py::dict>& demand_fields, const rsp::SolverSettings& settings) {
          const auto scenarios = scenarios_from_dicts(*inst, weights, demand_fields);
          return PyGneSolution{inst, rsp::solve_stochastic_gne(*inst, scenarios, settings)};
        },
        py::arg("instance"), py::arg("weights"), py::arg("demand_fields"),
        py::arg("settings") = rsp::SolverSettings{});
}
