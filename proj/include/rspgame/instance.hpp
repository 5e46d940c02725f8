#pragma once

#include <array>
#include <string>
#include <utility>
#include <vector>

namespace rsp {

inline constexpr int kNumProviders = 2;

/// Directed service region. Edges are ordered (origin, destination) pairs,
/// kept sorted and free of self loops; the graph must be strongly connected.
struct Network {
  int node_count = 0;
  std::vector<std::pair<int, int>> edges;

  /// Position of (j,l) in the sorted edge list, or -1 when absent.
  int edge_index(int j, int l) const;
  bool strongly_connected() const;
};

/// One positive integer per (edge, departure slot): the number of slots a
/// vehicle departing on that edge at that slot spends travelling. Asymmetric
/// values between (j,l) and (l,j) are allowed.
struct TravelTimeTensor {
  std::vector<std::vector<int>> slots;  // [edge][t-1]
  int at(int edge, int t) const { return slots[edge][t - 1]; }
};

/// Customers per slot wanting each trip, before any price response.
struct DemandField {
  std::vector<std::vector<double>> base;  // [edge][t-1]
  double at(int edge, int t) const { return base[edge][t - 1]; }
};

/// Per-trip vehicle operating costs: `ride` while carrying a customer,
/// `reroute` while repositioning empty.
struct CostSchedule {
  std::vector<std::vector<double>> ride;     // [edge][t-1]
  std::vector<std::vector<double>> reroute;  // [edge][t-1]
  double ride_at(int edge, int t) const { return ride[edge][t - 1]; }
  double reroute_at(int edge, int t) const { return reroute[edge][t - 1]; }
};

/// Fleet sizes and where each provider's vehicles sit before the first slot.
/// Initial placements must sum to the capacity, provider by provider.
struct FleetConfig {
  std::array<double, kNumProviders> capacity{};
  std::array<std::vector<double>, kNumProviders> initial_placement;  // [provider][node]
};

/// Immutable description of one pricing-and-routing problem. Slots are
/// 1-based (1..horizon) to match the accessors above.
struct ProblemInstance {
  Network network;
  TravelTimeTensor travel;
  DemandField demand;
  CostSchedule costs;
  FleetConfig fleets;
  int horizon = 0;
  double p_max = 1.0;

  int num_nodes() const { return network.node_count; }
  int num_edges() const { return static_cast<int>(network.edges.size()); }
  double max_base_demand() const;
};

struct Violation {
  std::string field;
  std::string message;
};

/// Checks every structural invariant; returns one entry per failure instead
/// of throwing so callers can report them all at once.
std::vector<Violation> validate_instance(const ProblemInstance& instance);

/// Benchmark generator: two complete clusters of n nodes each, unit travel
/// time inside a cluster and two slots across, demand mix q in (0, 0.5]
/// (fraction of each node's outgoing demand headed to the far cluster).
/// Provider i starts with (1-q)*capacity/n vehicles on each node of cluster i
/// and q*capacity/n on each node of the other cluster.
ProblemInstance build_two_cluster_instance(int n, double q,
                                           const std::vector<double>& demand_profile,
                                           double capacity, double intra_ride_cost,
                                           double intra_reroute_cost, double inter_ride_cost,
                                           double inter_reroute_cost, double p_max);

/// arrivals[j][t-1] lists the (edge, departure slot) pairs landing at node j
/// in slot t. Computed once per instance and shared by every assembler.
class ArrivalSchedule {
 public:
  explicit ArrivalSchedule(const ProblemInstance& instance);
  const std::vector<std::pair<int, int>>& at(int node, int t) const {
    return arrivals_[node][t - 1];
  }

 private:
  std::vector<std::vector<std::vector<std::pair<int, int>>>> arrivals_;
};

}  // namespace rsp
