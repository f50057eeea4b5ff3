#pragma once

#include <cstdint>
#include <optional>
#include <vector>

namespace abcprop {

struct FlowArc {
  int from;
  int to;
  std::int64_t lower;
  std::int64_t capacity;
  std::int64_t cost;
};

// Directed network with integral bounds and costs. Arc indices are stable and
// index the flow vectors returned by the solvers.
class FlowNetwork {
 public:
  FlowNetwork(int num_nodes, int source, int sink);

  int add_arc(int from, int to, std::int64_t capacity, std::int64_t cost = 0, std::int64_t lower = 0);

  int num_nodes() const { return num_nodes_; }
  int source() const { return source_; }
  int sink() const { return sink_; }
  const std::vector<FlowArc>& arcs() const { return arcs_; }

 private:
  int num_nodes_;
  int source_;
  int sink_;
  std::vector<FlowArc> arcs_;
};

struct FlowResult {
  std::int64_t value = 0;
  std::int64_t cost = 0;
  std::vector<std::int64_t> arc_flow;
};

// Maximum s-t flow (Dinic). Throws InputError if any arc carries a lower
// bound.
FlowResult max_flow(const FlowNetwork& net);

// Minimum-cost feasible flow of exactly `required_value` from source to sink
// honouring every arc's [lower, capacity]. nullopt when no such flow exists.
// Negative costs are allowed; there must be no negative-cost cycle of
// unbounded capacity, which cannot happen since all capacities are finite.
std::optional<FlowResult> min_cost_flow_with_bounds(const FlowNetwork& net, std::int64_t required_value);

// Conservation at non-terminals, bounds on every arc, and net outflow of the
// source equal to `value`.
bool is_valid_flow(const FlowNetwork& net, const std::vector<std::int64_t>& arc_flow, std::int64_t value);

}  // namespace abcprop
