#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>
#include <unordered_map>
#include <vector>

namespace rsp {

enum class VarKind : uint8_t {
  price,          // p(owner, j, l, t); owner -1 when a single provider owns the market
  reroute,        // u(owner, j, l, t)
  state,          // x(owner, j, t)
  scenario_state, // x(owner, j, t, m)
  demand_split,   // dhat(set, j, l, t), partitioned monopoly only
};

/// Coordinates of one decision variable. Unused coordinates stay -1.
struct VarKey {
  VarKind kind = VarKind::price;
  int owner = -1;      // provider or vehicle-set index
  int node_from = -1;  // j (origin, or the state's node)
  int node_to = -1;    // l
  int slot = -1;       // t, 1-based
  int scenario = -1;   // m, 0-based

  friend bool operator==(const VarKey&, const VarKey&) = default;
};

/// Bijection between variable keys and dense column positions. Columns are
/// assigned in insertion order; the assemblers insert in a fixed lexicographic
/// sweep (kind, owner, scenario, edge, slot), which pins the ordering.
class VariableIndex {
 public:
  int add(const VarKey& key) {
    const uint64_t code = encode(key);
    if (map_.count(code)) throw std::logic_error("duplicate variable key");
    const int col = static_cast<int>(keys_.size());
    keys_.push_back(key);
    map_.emplace(code, col);
    return col;
  }

  int at(const VarKey& key) const {
    const auto it = map_.find(encode(key));
    if (it == map_.end()) throw std::out_of_range("unknown variable key");
    return it->second;
  }

  bool contains(const VarKey& key) const { return map_.count(encode(key)) > 0; }
  const VarKey& key(int column) const { return keys_.at(column); }
  int size() const { return static_cast<int>(keys_.size()); }

  std::string name(int column) const {
    const VarKey& k = keys_.at(column);
    const auto own = [&k] { return std::to_string(k.owner + 1) + ","; };
    switch (k.kind) {
      case VarKind::price:
        return "p(" + (k.owner >= 0 ? own() : "") + std::to_string(k.node_from) + "," +
               std::to_string(k.node_to) + "," + std::to_string(k.slot) + ")";
      case VarKind::reroute:
        return "u(" + (k.owner >= 0 ? own() : "") + std::to_string(k.node_from) + "," +
               std::to_string(k.node_to) + "," + std::to_string(k.slot) + ")";
      case VarKind::state:
        return "x(" + (k.owner >= 0 ? own() : "") + std::to_string(k.node_from) + "," +
               std::to_string(k.slot) + ")";
      case VarKind::scenario_state:
        return "x(" + (k.owner >= 0 ? own() : "") + std::to_string(k.node_from) + "," +
               std::to_string(k.slot) + "," + std::to_string(k.scenario) + ")";
      case VarKind::demand_split:
        return "dhat(" + own() + std::to_string(k.node_from) + "," +
               std::to_string(k.node_to) + "," + std::to_string(k.slot) + ")";
    }
    return "?";
  }

 private:
  static uint64_t encode(const VarKey& k) {
    const auto f = [](int v) { return static_cast<uint64_t>(v + 1) & 0xfff; };
    return (static_cast<uint64_t>(k.kind) << 60) | (f(k.owner) << 48) |
           (f(k.node_from) << 36) | (f(k.node_to) << 24) | (f(k.slot) << 12) | f(k.scenario);
  }

  std::vector<VarKey> keys_;
  std::unordered_map<uint64_t, int> map_;
};

}  // namespace rsp
