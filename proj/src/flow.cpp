#include "abcprop/flow.hpp"

#include <algorithm>
#include <functional>
#include <limits>
#include <queue>
#include <string>

#include "abcprop/errors.hpp"

namespace abcprop {

namespace {

constexpr std::int64_t kInf = std::numeric_limits<std::int64_t>::max() / 4;

struct ResidualEdge {
  int to;
  int rev;
  std::int64_t cap;
  std::int64_t cost;
};

class ResidualGraph {
 public:
  explicit ResidualGraph(int n) : adj_(n) {}

  // Returns {node, position} of the forward edge.
  std::pair<int, int> add(int from, int to, std::int64_t cap, std::int64_t cost) {
    const int fwd = static_cast<int>(adj_[from].size());
    const int bwd = static_cast<int>(adj_[to].size()) + (from == to ? 1 : 0);
    adj_[from].push_back({to, bwd, cap, cost});
    adj_[to].push_back({from, fwd, 0, -cost});
    return {from, fwd};
  }

  int size() const { return static_cast<int>(adj_.size()); }
  std::vector<ResidualEdge>& out(int node) { return adj_[node]; }
  ResidualEdge& edge(std::pair<int, int> handle) { return adj_[handle.first][handle.second]; }
  ResidualEdge& reverse_of(const ResidualEdge& e) { return adj_[e.to][e.rev]; }

  std::int64_t dinic(int s, int t) {
    std::int64_t total = 0;
    std::vector<int> level(adj_.size()), it(adj_.size());
    while (true) {
      std::fill(level.begin(), level.end(), -1);
      std::queue<int> q;
      level[s] = 0;
      q.push(s);
      while (!q.empty()) {
        int u = q.front();
        q.pop();
        for (auto& e : adj_[u])
          if (e.cap > 0 && level[e.to] < 0) {
            level[e.to] = level[u] + 1;
            q.push(e.to);
          }
      }
      if (level[t] < 0) return total;
      std::fill(it.begin(), it.end(), 0);
      std::function<std::int64_t(int, std::int64_t)> push = [&](int u, std::int64_t limit) -> std::int64_t {
        if (u == t) return limit;
        for (int& i = it[u]; i < static_cast<int>(adj_[u].size()); ++i) {
          auto& e = adj_[u][i];
          if (e.cap <= 0 || level[e.to] != level[u] + 1) continue;
          std::int64_t got = push(e.to, std::min(limit, e.cap));
          if (got > 0) {
            e.cap -= got;
            adj_[e.to][e.rev].cap += got;
            return got;
          }
        }
        return 0;
      };
      while (std::int64_t f = push(s, kInf)) total += f;
    }
  }

  // Successive shortest paths with Johnson potentials. All residual costs
  // must be non-negative on entry.
  std::int64_t min_cost_flow(int s, int t, std::int64_t want) {
    const int n = size();
    std::vector<std::int64_t> potential(n, 0), dist(n);
    std::vector<int> prev_node(n), prev_edge(n);
    std::int64_t sent = 0;
    while (sent < want) {
      std::fill(dist.begin(), dist.end(), kInf);
      dist[s] = 0;
      using Item = std::pair<std::int64_t, int>;
      std::priority_queue<Item, std::vector<Item>, std::greater<>> pq;
      pq.push({0, s});
      while (!pq.empty()) {
        auto [d, u] = pq.top();
        pq.pop();
        if (d > dist[u]) continue;
        for (int i = 0; i < static_cast<int>(adj_[u].size()); ++i) {
          const auto& e = adj_[u][i];
          if (e.cap <= 0) continue;
          const std::int64_t nd = d + e.cost + potential[u] - potential[e.to];
          if (nd < dist[e.to]) {
            dist[e.to] = nd;
            prev_node[e.to] = u;
            prev_edge[e.to] = i;
            pq.push({nd, e.to});
          }
        }
      }
      if (dist[t] >= kInf) break;
      for (int v = 0; v < n; ++v)
        if (dist[v] < kInf) potential[v] += dist[v];
      std::int64_t push = want - sent;
      for (int v = t; v != s; v = prev_node[v]) push = std::min(push, adj_[prev_node[v]][prev_edge[v]].cap);
      for (int v = t; v != s; v = prev_node[v]) {
        auto& e = adj_[prev_node[v]][prev_edge[v]];
        e.cap -= push;
        adj_[e.to][e.rev].cap += push;
      }
      sent += push;
    }
    return sent;
  }

 private:
  std::vector<std::vector<ResidualEdge>> adj_;
};

void check_node(const FlowNetwork& net, int v) {
  if (v < 0 || v >= net.num_nodes()) throw InputError("flow node " + std::to_string(v) + " out of range");
}

}  // namespace

FlowNetwork::FlowNetwork(int num_nodes, int source, int sink) : num_nodes_(num_nodes), source_(source), sink_(sink) {
  if (num_nodes < 1) throw InputError("flow network needs at least one node");
  check_node(*this, source);
  check_node(*this, sink);
}

int FlowNetwork::add_arc(int from, int to, std::int64_t capacity, std::int64_t cost, std::int64_t lower) {
  check_node(*this, from);
  check_node(*this, to);
  if (lower < 0 || lower > capacity) throw InputError("arc bounds must satisfy 0 <= lower <= capacity");
  arcs_.push_back({from, to, lower, capacity, cost});
  return static_cast<int>(arcs_.size()) - 1;
}

FlowResult max_flow(const FlowNetwork& net) {
  ResidualGraph g(net.num_nodes());
  std::vector<std::pair<int, int>> handles;
  handles.reserve(net.arcs().size());
  for (const auto& a : net.arcs()) {
    if (a.lower != 0) throw InputError("max_flow does not accept lower bounds");
    handles.push_back(g.add(a.from, a.to, a.capacity, a.cost));
  }
  FlowResult out;
  if (net.source() != net.sink()) out.value = g.dinic(net.source(), net.sink());
  out.arc_flow.resize(net.arcs().size());
  for (std::size_t i = 0; i < handles.size(); ++i) {
    out.arc_flow[i] = net.arcs()[i].capacity - g.edge(handles[i]).cap;
    out.cost += out.arc_flow[i] * net.arcs()[i].cost;
  }
  return out;
}

std::optional<FlowResult> min_cost_flow_with_bounds(const FlowNetwork& net, std::int64_t required_value) {
  if (required_value < 0) throw InputError("required flow value must be non-negative");
  if (net.source() == net.sink() && required_value != 0) return std::nullopt;

  std::vector<FlowArc> arcs = net.arcs();
  if (net.source() != net.sink()) arcs.push_back({net.sink(), net.source(), required_value, required_value, 0});

  // Every arc starts at a base flow: its lower bound, or its capacity when
  // the cost is negative. The residual network then only has non-negative
  // costs and the imbalance is routed from a super source to a super sink.
  const int n = net.num_nodes();
  const int super_source = n;
  const int super_sink = n + 1;
  ResidualGraph g(n + 2);
  std::vector<std::int64_t> balance(n, 0), base(arcs.size());
  std::vector<std::pair<int, int>> handles(arcs.size());
  for (std::size_t i = 0; i < arcs.size(); ++i) {
    const auto& a = arcs[i];
    if (a.cost >= 0) {
      base[i] = a.lower;
      handles[i] = g.add(a.from, a.to, a.capacity - a.lower, a.cost);
    } else {
      base[i] = a.capacity;
      handles[i] = g.add(a.to, a.from, a.capacity - a.lower, -a.cost);
    }
    balance[a.to] += base[i];
    balance[a.from] -= base[i];
  }
  std::int64_t need = 0;
  for (int v = 0; v < n; ++v) {
    if (balance[v] > 0) {
      g.add(super_source, v, balance[v], 0);
      need += balance[v];
    } else if (balance[v] < 0) {
      g.add(v, super_sink, -balance[v], 0);
    }
  }
  if (g.min_cost_flow(super_source, super_sink, need) < need) return std::nullopt;

  FlowResult out;
  out.value = required_value;
  out.arc_flow.resize(net.arcs().size());
  for (std::size_t i = 0; i < net.arcs().size(); ++i) {
    const auto& a = arcs[i];
    const std::int64_t pushed = (a.capacity - a.lower) - g.edge(handles[i]).cap;
    out.arc_flow[i] = a.cost >= 0 ? base[i] + pushed : base[i] - pushed;
    out.cost += out.arc_flow[i] * a.cost;
  }
  return out;
}

bool is_valid_flow(const FlowNetwork& net, const std::vector<std::int64_t>& arc_flow, std::int64_t value) {
  if (arc_flow.size() != net.arcs().size()) return false;
  std::vector<std::int64_t> net_out(net.num_nodes(), 0);
  for (std::size_t i = 0; i < arc_flow.size(); ++i) {
    const auto& a = net.arcs()[i];
    if (arc_flow[i] < a.lower || arc_flow[i] > a.capacity) return false;
    net_out[a.from] += arc_flow[i];
    net_out[a.to] -= arc_flow[i];
  }
  for (int v = 0; v < net.num_nodes(); ++v) {
    if (v == net.source() || v == net.sink()) continue;
    if (net_out[v] != 0) return false;
  }
  if (net.source() == net.sink()) return value == 0;
  return net_out[net.source()] == value && net_out[net.sink()] == -value;
}

}  // namespace abcprop
