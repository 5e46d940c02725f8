#include "rspgame/json_io.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <stdexcept>

namespace rsp {

namespace {

using nlohmann::json;

std::string edge_key(int j, int l, int t) {
  return std::to_string(j) + "," + std::to_string(l) + "," + std::to_string(t);
}

std::vector<int> parse_key(const std::string& key, size_t parts) {
  std::vector<int> out;
  size_t pos = 0;
  while (out.size() < parts) {
    const size_t comma = key.find(',', pos);
    const std::string piece =
        comma == std::string::npos ? key.substr(pos) : key.substr(pos, comma - pos);
    if (piece.empty()) throw std::invalid_argument("malformed table key '" + key + "'");
    out.push_back(std::stoi(piece));
    if (comma == std::string::npos) break;
    pos = comma + 1;
  }
  if (out.size() != parts) throw std::invalid_argument("malformed table key '" + key + "'");
  return out;
}

json edge_table_to_json(const ProblemInstance& inst, const EdgeSlotTable& table,
                        int provider = -1) {
  json out = json::object();
  for (int e = 0; e < inst.num_edges(); ++e) {
    const auto [j, l] = inst.network.edges[e];
    for (int t = 1; t <= inst.horizon; ++t) {
      const std::string key = provider < 0
                                  ? edge_key(j, l, t)
                                  : std::to_string(provider + 1) + "," + edge_key(j, l, t);
      out[key] = table[e][t - 1];
    }
  }
  return out;
}

json state_table_to_json(const ProblemInstance& inst, const NodeSlotTable& table,
                         int provider = -1) {
  json out = json::object();
  for (int j = 0; j < inst.num_nodes(); ++j)
    for (int t = 1; t <= inst.horizon; ++t) {
      const std::string key =
          (provider < 0 ? "" : std::to_string(provider + 1) + ",") + std::to_string(j) + "," +
          std::to_string(t);
      out[key] = table[j][t - 1];
    }
  return out;
}

}  // namespace

nlohmann::json instance_to_json(const ProblemInstance& inst) {
  json doc;
  doc["node_count"] = inst.network.node_count;
  doc["horizon"] = inst.horizon;
  doc["p_max"] = inst.p_max;
  json edges = json::array();
  for (const auto& [j, l] : inst.network.edges) edges.push_back({j, l});
  doc["edges"] = edges;

  json travel = json::object(), demand = json::object(), ride = json::object(),
       reroute = json::object();
  for (int e = 0; e < inst.num_edges(); ++e) {
    const auto [j, l] = inst.network.edges[e];
    for (int t = 1; t <= inst.horizon; ++t) {
      const std::string key = edge_key(j, l, t);
      travel[key] = inst.travel.at(e, t);
      if (inst.demand.at(e, t) != 0.0) demand[key] = inst.demand.at(e, t);
      if (inst.costs.ride_at(e, t) != 0.0) ride[key] = inst.costs.ride_at(e, t);
      if (inst.costs.reroute_at(e, t) != 0.0) reroute[key] = inst.costs.reroute_at(e, t);
    }
  }
  doc["travel_time"] = travel;
  doc["base_demand"] = demand;
  doc["ride_cost"] = ride;
  doc["reroute_cost"] = reroute;

  json fleets = json::array();
  for (int i = 0; i < kNumProviders; ++i) {
    json placement = json::object();
    for (int j = 0; j < inst.num_nodes(); ++j)
      placement[std::to_string(j)] = inst.fleets.initial_placement[i][j];
    fleets.push_back({{"capacity", inst.fleets.capacity[i]},
                      {"initial_placement", placement}});
  }
  doc["fleets"] = fleets;
  return doc;
}

ProblemInstance instance_from_json(const nlohmann::json& doc) {
  ProblemInstance inst;
  inst.network.node_count = doc.at("node_count").get<int>();
  inst.horizon = doc.at("horizon").get<int>();
  inst.p_max = doc.at("p_max").get<double>();
  for (const auto& e : doc.at("edges"))
    inst.network.edges.emplace_back(e.at(0).get<int>(), e.at(1).get<int>());
  std::sort(inst.network.edges.begin(), inst.network.edges.end());

  const int edges = inst.num_edges();
  const int T = inst.horizon;
  inst.travel.slots.assign(edges, std::vector<int>(T, 0));
  inst.demand.base.assign(edges, std::vector<double>(T, 0.0));
  inst.costs.ride.assign(edges, std::vector<double>(T, 0.0));
  inst.costs.reroute.assign(edges, std::vector<double>(T, 0.0));

  const auto fill = [&inst, T](const json& table, auto& target, const char* what) {
    for (const auto& [key, value] : table.items()) {
      const auto ids = parse_key(key, 3);
      const int e = inst.network.edge_index(ids[0], ids[1]);
      if (e < 0)
        throw std::invalid_argument(std::string(what) + " key '" + key + "' is not an edge");
      if (ids[2] < 1 || ids[2] > T)
        throw std::invalid_argument(std::string(what) + " key '" + key + "' slot out of range");
      target[e][ids[2] - 1] = value;
    }
  };
  fill(doc.at("travel_time"), inst.travel.slots, "travel_time");
  fill(doc.at("base_demand"), inst.demand.base, "base_demand");
  fill(doc.at("ride_cost"), inst.costs.ride, "ride_cost");
  fill(doc.at("reroute_cost"), inst.costs.reroute, "reroute_cost");

  const auto& fleets = doc.at("fleets");
  if (fleets.size() != kNumProviders)
    throw std::invalid_argument("instance must describe exactly two fleets");
  for (int i = 0; i < kNumProviders; ++i) {
    inst.fleets.capacity[i] = fleets.at(i).at("capacity").get<double>();
    inst.fleets.initial_placement[i].assign(inst.network.node_count, 0.0);
    for (const auto& [key, value] : fleets.at(i).at("initial_placement").items()) {
      const int j = std::stoi(key);
      if (j < 0 || j >= inst.network.node_count)
        throw std::invalid_argument("initial placement node out of range");
      inst.fleets.initial_placement[i][j] = value;
    }
  }
  return inst;
}

ProblemInstance load_instance(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open instance file " + path);
  json doc;
  in >> doc;
  return instance_from_json(doc);
}

void save_instance(const ProblemInstance& inst, const std::string& path) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot write instance file " + path);
  out << instance_to_json(inst).dump(2) << "\n";
}

std::string qp_status_name(QpStatus status) {
  switch (status) {
    case QpStatus::optimal: return "optimal";
    case QpStatus::max_iterations: return "max_iterations";
    case QpStatus::infeasible: return "infeasible";
  }
  return "?";
}

nlohmann::json gne_to_json(const ProblemInstance& inst, const GneSolution& sol) {
  json doc;
  json price = json::object(), reroute = json::object(), demand = json::object(),
       state = json::object();
  for (int i = 0; i < kNumProviders; ++i) {
    price.update(edge_table_to_json(inst, sol.provider[i].price, i));
    reroute.update(edge_table_to_json(inst, sol.provider[i].reroute, i));
    demand.update(edge_table_to_json(inst, sol.provider[i].demand, i));
    state.update(state_table_to_json(inst, sol.provider[i].state, i));
  }
  doc["price"] = price;
  doc["reroute"] = reroute;
  doc["demand"] = demand;
  doc["state"] = state;
  doc["profit"] = {sol.provider[0].profit, sol.provider[1].profit};
  doc["potential"] = sol.potential;
  doc["deviation_gain"] = {sol.deviation_gain[0], sol.deviation_gain[1]};
  doc["status"] = qp_status_name(sol.status);
  doc["iterations"] = sol.iterations;
  doc["primal_residual"] = sol.primal_residual;
  doc["stationarity_residual"] = sol.stationarity_residual;
  return doc;
}

GneSolution gne_from_json(const ProblemInstance& inst, const nlohmann::json& doc) {
  GneSolution sol;
  const int T = inst.horizon;
  const auto read_edge_tables = [&](const char* name, bool required, auto setter) {
    if (!doc.contains(name)) {
      if (required) throw std::invalid_argument(std::string("solution lacks table ") + name);
      return false;
    }
    for (const auto& [key, value] : doc.at(name).items()) {
      const auto ids = parse_key(key, 4);
      const int i = ids[0] - 1;
      const int e = inst.network.edge_index(ids[1], ids[2]);
      if (i < 0 || i >= kNumProviders || e < 0 || ids[3] < 1 || ids[3] > T)
        throw std::invalid_argument("solution key '" + key + "' does not match the instance");
      const double entry = value;
      setter(i, e, ids[3], entry);
    }
    return true;
  };

  for (int i = 0; i < kNumProviders; ++i) {
    sol.provider[i].price.assign(inst.num_edges(), std::vector<double>(T, 0.0));
    sol.provider[i].reroute.assign(inst.num_edges(), std::vector<double>(T, 0.0));
  }
  read_edge_tables("price", true,
                   [&](int i, int e, int t, double v) { sol.provider[i].price[e][t - 1] = v; });
  read_edge_tables("reroute", true,
                   [&](int i, int e, int t, double v) { sol.provider[i].reroute[e][t - 1] = v; });

  bool have_demand = doc.contains("demand");
  if (have_demand) {
    for (int i = 0; i < kNumProviders; ++i)
      sol.provider[i].demand.assign(inst.num_edges(), std::vector<double>(T, 0.0));
    read_edge_tables("demand", false,
                     [&](int i, int e, int t, double v) { sol.provider[i].demand[e][t - 1] = v; });
  } else {
    sol.provider[0].demand =
        linear_demand_table(inst, sol.provider[0].price, sol.provider[1].price);
    sol.provider[1].demand =
        linear_demand_table(inst, sol.provider[1].price, sol.provider[0].price);
  }

  if (doc.contains("state")) {
    for (int i = 0; i < kNumProviders; ++i)
      sol.provider[i].state.assign(inst.num_nodes(), std::vector<double>(T, 0.0));
    for (const auto& [key, value] : doc.at("state").items()) {
      const auto ids = parse_key(key, 3);
      const int i = ids[0] - 1;
      if (i < 0 || i >= kNumProviders || ids[1] < 0 || ids[1] >= inst.num_nodes() || ids[2] < 1 ||
          ids[2] > T)
        throw std::invalid_argument("solution state key '" + key + "' does not match");
      sol.provider[i].state[ids[1]][ids[2] - 1] = value.get<double>();
    }
  } else {
    for (int i = 0; i < kNumProviders; ++i)
      sol.provider[i].state = propagate_states(inst, sol.provider[i].demand,
                                               sol.provider[i].reroute,
                                               inst.fleets.initial_placement[i]);
  }

  sol.provider[0].profit = provider_profit(inst, sol.provider[0].price, sol.provider[1].price,
                                           sol.provider[0].reroute);
  sol.provider[1].profit = provider_profit(inst, sol.provider[1].price, sol.provider[0].price,
                                           sol.provider[1].reroute);
  sol.potential = potential_value(inst, sol.provider[0].price, sol.provider[1].price,
                                  sol.provider[0].reroute, sol.provider[1].reroute);
  if (doc.contains("status"))
    sol.status = doc.at("status") == "optimal" ? QpStatus::optimal : QpStatus::max_iterations;
  return sol;
}

nlohmann::json monopoly_to_json(const ProblemInstance& inst, const MonopolySolution& sol) {
  json doc;
  doc["price"] = edge_table_to_json(inst, sol.price);
  doc["reroute"] = edge_table_to_json(inst, sol.reroute);
  doc["demand"] = edge_table_to_json(inst, sol.demand);
  doc["state"] = state_table_to_json(inst, sol.state);
  doc["profit"] = sol.profit;
  doc["status"] = qp_status_name(sol.status);
  doc["iterations"] = sol.iterations;
  doc["primal_residual"] = sol.primal_residual;
  doc["stationarity_residual"] = sol.stationarity_residual;
  if (sol.has_partition) {
    json split_demand = json::object(), split_reroute = json::object(),
         split_state = json::object();
    for (int s = 0; s < kNumProviders; ++s) {
      split_demand.update(edge_table_to_json(inst, sol.split_demand[s], s));
      split_reroute.update(edge_table_to_json(inst, sol.split_reroute[s], s));
      split_state.update(state_table_to_json(inst, sol.split_state[s], s));
    }
    doc["split_demand"] = split_demand;
    doc["split_reroute"] = split_reroute;
    doc["split_state"] = split_state;
  }
  return doc;
}

namespace {

void csv_table_rows(std::ostream& os, const ProblemInstance& inst, const char* table,
                    const EdgeSlotTable& values, int provider) {
  char buf[64];
  for (int e = 0; e < inst.num_edges(); ++e) {
    const auto [j, l] = inst.network.edges[e];
    for (int t = 1; t <= inst.horizon; ++t) {
      std::snprintf(buf, sizeof buf, "%.10g", values[e][t - 1]);
      os << table << ',' << (provider < 0 ? std::string() : std::to_string(provider + 1)) << ','
         << j << ',' << l << ',' << t << ',' << buf << '\n';
    }
  }
}

void csv_state_rows(std::ostream& os, const ProblemInstance& inst, const NodeSlotTable& values,
                    int provider) {
  char buf[64];
  for (int j = 0; j < inst.num_nodes(); ++j)
    for (int t = 1; t <= inst.horizon; ++t) {
      std::snprintf(buf, sizeof buf, "%.10g", values[j][t - 1]);
      os << "state," << (provider < 0 ? std::string() : std::to_string(provider + 1)) << ',' << j
         << ",," << t << ',' << buf << '\n';
    }
}

}  // namespace

void write_solution_csv(const ProblemInstance& inst, const GneSolution& sol, std::ostream& os) {
  os << "table,i,j,l,t,value\n";
  for (int i = 0; i < kNumProviders; ++i) {
    csv_table_rows(os, inst, "price", sol.provider[i].price, i);
    csv_table_rows(os, inst, "reroute", sol.provider[i].reroute, i);
    csv_table_rows(os, inst, "demand", sol.provider[i].demand, i);
    csv_state_rows(os, inst, sol.provider[i].state, i);
  }
}

void write_solution_csv(const ProblemInstance& inst, const MonopolySolution& sol,
                        std::ostream& os) {
  os << "table,i,j,l,t,value\n";
  csv_table_rows(os, inst, "price", sol.price, -1);
  csv_table_rows(os, inst, "reroute", sol.reroute, -1);
  csv_table_rows(os, inst, "demand", sol.demand, -1);
  csv_state_rows(os, inst, sol.state, -1);
}

ScenarioSet scenarios_from_json(const ProblemInstance& inst, const nlohmann::json& doc) {
  ScenarioSet set;
  for (const auto& w : doc.at("weights")) set.weights.push_back(w.get<double>());

  if (doc.contains("demand_fields")) {
    for (const auto& field_doc : doc.at("demand_fields")) {
      DemandField field;
      field.base.assign(inst.num_edges(), std::vector<double>(inst.horizon, 0.0));
      for (const auto& [key, value] : field_doc.items()) {
        const auto ids = parse_key(key, 3);
        const int e = inst.network.edge_index(ids[0], ids[1]);
        if (e < 0 || ids[2] < 1 || ids[2] > inst.horizon)
          throw std::invalid_argument("scenario key '" + key + "' does not match the instance");
        field.base[e][ids[2] - 1] = value.get<double>();
      }
      set.demands.push_back(std::move(field));
    }
  } else if (doc.contains("demand_scales")) {
    for (const auto& scales_doc : doc.at("demand_scales")) {
      const auto scales = scales_doc.get<std::vector<double>>();
      if (static_cast<int>(scales.size()) != inst.horizon)
        throw std::invalid_argument("demand_scales entries must have one value per slot");
      DemandField field;
      field.base = inst.demand.base;
      for (auto& row : field.base)
        for (int t = 0; t < inst.horizon; ++t) row[t] *= scales[t];
      set.demands.push_back(std::move(field));
    }
  } else {
    throw std::invalid_argument("scenarios need demand_fields or demand_scales");
  }
  return set;
}

}  // namespace rsp
