#include "rspgame/instance.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <vector>

namespace rsp {

int Network::edge_index(int j, int l) const {
  auto it = std::lower_bound(edges.begin(), edges.end(), std::make_pair(j, l));
  if (it == edges.end() || *it != std::make_pair(j, l)) return -1;
  return static_cast<int>(it - edges.begin());
}

namespace {

// Reachability of every node from node 0 along the given adjacency.
bool all_reachable(int n, const std::vector<std::vector<int>>& adj) {
  std::vector<char> seen(n, 0);
  std::vector<int> stack{0};
  seen[0] = 1;
  int count = 1;
  while (!stack.empty()) {
    int v = stack.back();
    stack.pop_back();
    for (int w : adj[v]) {
      if (!seen[w]) {
        seen[w] = 1;
        ++count;
        stack.push_back(w);
      }
    }
  }
  return count == n;
}

}  // namespace

bool Network::strongly_connected() const {
  if (node_count <= 0) return false;
  if (node_count == 1) return true;
  std::vector<std::vector<int>> fwd(node_count), bwd(node_count);
  for (const auto& [j, l] : edges) {
    fwd[j].push_back(l);
    bwd[l].push_back(j);
  }
  return all_reachable(node_count, fwd) && all_reachable(node_count, bwd);
}

double ProblemInstance::max_base_demand() const {
  double m = 0.0;
  for (const auto& row : demand.base)
    for (double d : row) m = std::max(m, d);
  return m;
}

std::vector<Violation> validate_instance(const ProblemInstance& instance) {
  std::vector<Violation> out;
  const auto add = [&out](const std::string& field, const std::string& msg) {
    out.push_back({field, msg});
  };

  const int nodes = instance.network.node_count;
  const int edges = instance.num_edges();
  if (nodes < 1) add("network.node_count", "must be positive");
  if (instance.horizon < 1) add("horizon", "must be positive");
  if (instance.p_max <= 0.0) add("p_max", "must be positive");

  for (const auto& [j, l] : instance.network.edges) {
    if (j == l) add("network.edges", "self-loop edge (" + std::to_string(j) + ")");
    if (j < 0 || j >= nodes || l < 0 || l >= nodes)
      add("network.edges", "edge endpoint outside node range");
  }
  if (!std::is_sorted(instance.network.edges.begin(), instance.network.edges.end()))
    add("network.edges", "edge list must be sorted");
  if (std::adjacent_find(instance.network.edges.begin(), instance.network.edges.end()) !=
      instance.network.edges.end())
    add("network.edges", "duplicate edge");
  if (nodes >= 1 && !instance.network.strongly_connected())
    add("network", "not strongly connected");

  const auto check_table = [&](const auto& table, const std::string& field) {
    if (static_cast<int>(table.size()) != edges) {
      add(field, "must have one row per edge");
      return false;
    }
    for (const auto& row : table)
      if (static_cast<int>(row.size()) != instance.horizon) {
        add(field, "must have one entry per slot");
        return false;
      }
    return true;
  };

  const auto has_bad_value = [](const std::vector<std::vector<double>>& table) {
    for (const auto& row : table)
      for (double v : row)
        if (v < 0.0 || !std::isfinite(v)) return true;
    return false;
  };

  if (check_table(instance.travel.slots, "travel.slots")) {
    bool ok = true;
    for (const auto& row : instance.travel.slots)
      for (int tau : row) ok = ok && tau >= 1;
    if (!ok) add("travel.slots", "travel time must be >= 1");
  }
  if (check_table(instance.demand.base, "demand.base") && has_bad_value(instance.demand.base))
    add("demand.base", "entries must be finite and nonnegative");
  if (check_table(instance.costs.ride, "costs.ride") && has_bad_value(instance.costs.ride))
    add("costs.ride", "entries must be finite and nonnegative");
  if (check_table(instance.costs.reroute, "costs.reroute") &&
      has_bad_value(instance.costs.reroute))
    add("costs.reroute", "entries must be finite and nonnegative");

  for (int i = 0; i < kNumProviders; ++i) {
    const auto& placement = instance.fleets.initial_placement[i];
    const std::string field = "fleets.initial_placement[" + std::to_string(i) + "]";
    if (static_cast<int>(placement.size()) != nodes) {
      add(field, "must have one entry per node");
      continue;
    }
    double sum = 0.0;
    for (double v : placement) {
      if (v < 0.0) add(field, "entries must be nonnegative");
      sum += v;
    }
    const double cap = instance.fleets.capacity[i];
    if (cap < 0.0) add("fleets.capacity[" + std::to_string(i) + "]", "must be nonnegative");
    if (std::abs(sum - cap) > 1e-9 * std::max(1.0, std::abs(cap)))
      add(field, "placements must sum to the fleet capacity");
  }

  return out;
}

ProblemInstance build_two_cluster_instance(int n, double q,
                                           const std::vector<double>& demand_profile,
                                           double capacity, double intra_ride_cost,
                                           double intra_reroute_cost, double inter_ride_cost,
                                           double inter_reroute_cost, double p_max) {
  if (n < 2) throw std::invalid_argument("cluster size n must be >= 2");
  if (!(q > 0.0 && q <= 0.5)) throw std::invalid_argument("q must lie in (0, 0.5]");
  if (demand_profile.empty()) throw std::invalid_argument("demand profile must be nonempty");
  for (double d : demand_profile)
    if (d < 0.0) throw std::invalid_argument("demand profile entries must be nonnegative");
  if (capacity < 0.0) throw std::invalid_argument("capacity must be nonnegative");
  if (p_max <= 0.0) throw std::invalid_argument("p_max must be positive");

  ProblemInstance inst;
  const int nodes = 2 * n;
  const int T = static_cast<int>(demand_profile.size());
  inst.horizon = T;
  inst.p_max = p_max;
  inst.network.node_count = nodes;
  for (int j = 0; j < nodes; ++j)
    for (int l = 0; l < nodes; ++l)
      if (j != l) inst.network.edges.emplace_back(j, l);

  const auto cluster = [n](int node) { return node < n ? 0 : 1; };
  const int edges = inst.num_edges();
  inst.travel.slots.resize(edges);
  inst.demand.base.resize(edges);
  inst.costs.ride.resize(edges);
  inst.costs.reroute.resize(edges);
  for (int e = 0; e < edges; ++e) {
    const auto [j, l] = inst.network.edges[e];
    const bool intra = cluster(j) == cluster(l);
    inst.travel.slots[e].assign(T, intra ? 1 : 2);
    inst.costs.ride[e].assign(T, intra ? intra_ride_cost : inter_ride_cost);
    inst.costs.reroute[e].assign(T, intra ? intra_reroute_cost : inter_reroute_cost);
    inst.demand.base[e].resize(T);
    for (int t = 0; t < T; ++t)
      inst.demand.base[e][t] =
          intra ? (1.0 - q) * demand_profile[t] / (n - 1) : q * demand_profile[t] / n;
  }

  for (int i = 0; i < kNumProviders; ++i) {
    inst.fleets.capacity[i] = capacity;
    auto& placement = inst.fleets.initial_placement[i];
    placement.resize(nodes);
    for (int j = 0; j < nodes; ++j)
      placement[j] = (cluster(j) == i ? (1.0 - q) : q) * capacity / n;
  }
  return inst;
}

ArrivalSchedule::ArrivalSchedule(const ProblemInstance& instance) {
  const int nodes = instance.num_nodes();
  const int T = instance.horizon;
  arrivals_.assign(nodes, std::vector<std::vector<std::pair<int, int>>>(T));
  for (int e = 0; e < instance.num_edges(); ++e) {
    const int dest = instance.network.edges[e].second;
    for (int tau = 1; tau <= T; ++tau) {
      const int arrive = tau + instance.travel.at(e, tau);
      if (arrive <= T) arrivals_[dest][arrive - 1].emplace_back(e, tau);
    }
  }
}

}  // namespace rsp
