#include "kbp/oracle.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <limits>
#include <map>
#include <queue>
#include <string>

#include "kbp/errors.hpp"

namespace kbp {

namespace {

// Plain Dinic; unit and small integer capacities only.
class MaxFlow {
 public:
  explicit MaxFlow(int n) : head_(static_cast<std::size_t>(n), -1), level_(n), iter_(n) {}

  // Returns the forward edge index.
  int addEdge(int from, int to, int cap) {
    edges_.push_back({to, head_[static_cast<std::size_t>(from)], cap});
    head_[static_cast<std::size_t>(from)] = static_cast<int>(edges_.size()) - 1;
    edges_.push_back({from, head_[static_cast<std::size_t>(to)], 0});
    head_[static_cast<std::size_t>(to)] = static_cast<int>(edges_.size()) - 1;
    return static_cast<int>(edges_.size()) - 2;
  }

  int run(int source, int sink) {
    int total = 0;
    while (bfs(source, sink)) {
      iter_ = head_;
      int pushed = 0;
      while ((pushed = dfs(source, sink, std::numeric_limits<int>::max())) > 0)
        total += pushed;
    }
    return total;
  }

  // Flow actually carried by forward edge index e (even indices).
  int flowOn(int e) const { return edges_[static_cast<std::size_t>(e ^ 1)].cap; }

 private:
  struct Edge {
    int to;
    int next;
    int cap;
  };

  bool bfs(int source, int sink) {
    std::fill(level_.begin(), level_.end(), -1);
    std::queue<int> queue;
    level_[static_cast<std::size_t>(source)] = 0;
    queue.push(source);
    while (!queue.empty()) {
      int v = queue.front();
      queue.pop();
      for (int e = head_[static_cast<std::size_t>(v)]; e != -1;
           e = edges_[static_cast<std::size_t>(e)].next) {
        const Edge& edge = edges_[static_cast<std::size_t>(e)];
        if (edge.cap > 0 && level_[static_cast<std::size_t>(edge.to)] < 0) {
          level_[static_cast<std::size_t>(edge.to)] =
              level_[static_cast<std::size_t>(v)] + 1;
          queue.push(edge.to);
        }
      }
    }
    return level_[static_cast<std::size_t>(sink)] >= 0;
  }

  int dfs(int v, int sink, int limit) {
    if (v == sink) return limit;
    for (int& e = iter_[static_cast<std::size_t>(v)]; e != -1;
         e = edges_[static_cast<std::size_t>(e)].next) {
      Edge& edge = edges_[static_cast<std::size_t>(e)];
      if (edge.cap <= 0 ||
          level_[static_cast<std::size_t>(edge.to)] !=
              level_[static_cast<std::size_t>(v)] + 1)
        continue;
      int pushed = dfs(edge.to, sink, std::min(limit, edge.cap));
      if (pushed > 0) {
        edge.cap -= pushed;
        edges_[static_cast<std::size_t>(e ^ 1)].cap += pushed;
        return pushed;
      }
    }
    return 0;
  }

  std::vector<Edge> edges_;
  std::vector<int> head_;
  std::vector<int> level_;
  std::vector<int> iter_;
};

struct FlowInstance {
  // Node index maps: chooser i -> 1+i, target j -> 1+n+j; 0 source, last sink.
  std::vector<NodeId> nodes;
  std::map<NodeId, int> indexOf;
};

// Feasibility of load cap T; fills witness choices when feasible.
bool feasible(const Graph& g, int k, int cap, Placement* witness) {
  const int n = static_cast<int>(g.nodeCount());
  FlowInstance inst;
  inst.nodes = g.nodes();
  for (int i = 0; i < n; ++i) inst.indexOf[inst.nodes[static_cast<std::size_t>(i)]] = i;

  const int source = 0;
  const int sink = 1 + 2 * n;
  MaxFlow flow(2 * n + 2);
  std::vector<std::pair<int, std::pair<NodeId, NodeId>>> middleEdges;
  for (int i = 0; i < n; ++i) {
    NodeId v = inst.nodes[static_cast<std::size_t>(i)];
    flow.addEdge(source, 1 + i, k);
    flow.addEdge(1 + n + i, sink, cap);
    for (NodeId u : g.neighbors(v)) {
      int j = inst.indexOf.at(u);
      int edgeIndex = flow.addEdge(1 + i, 1 + n + j, 1);
      middleEdges.push_back({edgeIndex, {v, u}});
    }
  }
  int value = flow.run(source, sink);
  if (value != n * k) return false;
  if (witness) {
    witness->k = k;
    for (NodeId v : inst.nodes) witness->choices[v];
    for (const auto& [edgeIndex, pair] : middleEdges)
      if (flow.flowOn(edgeIndex) > 0) witness->choices[pair.first].push_back(pair.second);
    for (auto& [v, list] : witness->choices) std::sort(list.begin(), list.end());
  }
  return true;
}

}  // namespace

OptimalPlacementResult optimalMaxLoad(const Graph& g, int k, std::size_t nodeCap) {
  if (k < 1) throw ParameterError("k must be >= 1");
  if (g.nodeCount() > nodeCap)
    throw SizeError("graph exceeds oracle node cap of " + std::to_string(nodeCap));
  if (g.minDegree() < static_cast<std::size_t>(k))
    throw ParameterError("oracle requires minDegree >= k");

  int lo = k;  // sum of loads is n*k spread over n targets
  int hi = static_cast<int>(g.maxDegree());
  if (!feasible(g, k, hi, nullptr))
    throw ProtocolError("flow oracle infeasible at cap = maxDegree");
  // Monotonicity of feasibility in the cap, checked over all probes.
  int maxInfeasible = -1;
  int minFeasible = hi;
  while (lo < hi) {
    int mid = lo + (hi - lo) / 2;
    if (feasible(g, k, mid, nullptr)) {
      minFeasible = std::min(minFeasible, mid);
      hi = mid;
    } else {
      maxInfeasible = std::max(maxInfeasible, mid);
      lo = mid + 1;
    }
  }
  if (maxInfeasible >= minFeasible)
    throw ProtocolError("flow feasibility not monotone in cap");
  OptimalPlacementResult result;
  result.optimalMaxLoad = lo;
  if (!feasible(g, k, lo, &result.witness))
    throw ProtocolError("flow oracle lost feasibility at optimum");
  validatePlacement(g, result.witness);
  return result;
}

OptimalPlacementResult exhaustiveOptimal(const Graph& g, int k, double searchSpaceCap) {
  if (k < 1) throw ParameterError("k must be >= 1");
  if (g.minDegree() < static_cast<std::size_t>(k))
    throw ParameterError("oracle requires minDegree >= k");

  const auto& nodes = g.nodes();
  double space = 1.0;
  for (NodeId v : nodes) {
    double c = 1.0;
    std::size_t d = g.degree(v);
    for (int i = 0; i < k; ++i)
      c = c * static_cast<double>(d - static_cast<std::size_t>(i)) /
          static_cast<double>(i + 1);
    space *= c;
    if (space > searchSpaceCap)
      throw SizeError("exhaustive search space exceeds cap");
  }

  std::map<NodeId, int> loads;
  for (NodeId v : nodes) loads[v] = 0;
  OptimalPlacementResult best;
  best.optimalMaxLoad = std::numeric_limits<int>::max();
  Placement current;
  current.k = k;

  // Depth-first over per-node neighbor combinations, pruning on max load.
  std::function<void(std::size_t, int)> recurse = [&](std::size_t idx, int maxSoFar) {
    if (maxSoFar >= best.optimalMaxLoad) return;
    if (idx == nodes.size()) {
      best.optimalMaxLoad = maxSoFar;
      best.witness = current;
      return;
    }
    NodeId v = nodes[idx];
    const auto& nbrs = g.neighbors(v);
    std::vector<std::size_t> pick(static_cast<std::size_t>(k));
    for (std::size_t i = 0; i < pick.size(); ++i) pick[i] = i;
    for (;;) {
      auto& mine = current.choices[v];
      mine.clear();
      int localMax = maxSoFar;
      for (std::size_t i : pick) {
        mine.push_back(nbrs[i]);
        localMax = std::max(localMax, ++loads[nbrs[i]]);
      }
      recurse(idx + 1, localMax);
      for (std::size_t i : pick) --loads[nbrs[i]];
      // Next combination.
      std::size_t pos = pick.size();
      while (pos > 0 && pick[pos - 1] == nbrs.size() - (pick.size() - pos) - 1) --pos;
      if (pos == 0) break;
      ++pick[pos - 1];
      for (std::size_t i = pos; i < pick.size(); ++i) pick[i] = pick[i - 1] + 1;
    }
    current.choices.erase(v);
  };
  recurse(0, 0);
  validatePlacement(g, best.witness);
  return best;
}

}  // namespace kbp
