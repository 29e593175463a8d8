#include "kbp/graph.hpp"

#include <algorithm>
#include <cmath>
#include <istream>
#include <random>
#include <set>
#include <sstream>
#include <string>

#include "kbp/errors.hpp"

namespace kbp {

Graph Graph::fromEdges(const std::vector<std::pair<NodeId, NodeId>>& edges,
                       const std::vector<NodeId>& isolatedNodes) {
  Graph g;
  std::set<std::pair<NodeId, NodeId>> seen;
  for (const auto& [a, b] : edges) {
    if (a <= 0 || b <= 0) throw ParameterError("node IDs must be positive");
    if (a == b) throw ValidationError("self-loop at node " + std::to_string(a));
    auto key = std::minmax(a, b);
    if (!seen.insert(key).second)
      throw ValidationError("duplicate edge {" + std::to_string(key.first) + "," +
                            std::to_string(key.second) + "}");
    g.adjacency_[a].push_back(b);
    g.adjacency_[b].push_back(a);
  }
  for (NodeId v : isolatedNodes) {
    if (v <= 0) throw ParameterError("node IDs must be positive");
    g.adjacency_.try_emplace(v);
  }
  for (auto& [v, nbrs] : g.adjacency_) {
    std::sort(nbrs.begin(), nbrs.end());
    g.nodes_.push_back(v);
  }
  g.edgeCount_ = seen.size();
  return g;
}

bool Graph::contains(NodeId v) const { return adjacency_.count(v) != 0; }

bool Graph::hasEdge(NodeId u, NodeId v) const {
  auto it = adjacency_.find(u);
  if (it == adjacency_.end()) return false;
  return std::binary_search(it->second.begin(), it->second.end(), v);
}

const std::vector<NodeId>& Graph::neighbors(NodeId v) const {
  auto it = adjacency_.find(v);
  if (it == adjacency_.end())
    throw ParameterError("unknown node " + std::to_string(v));
  return it->second;
}

std::size_t Graph::maxDegree() const {
  std::size_t d = 0;
  for (const auto& [v, nbrs] : adjacency_) d = std::max(d, nbrs.size());
  return d;
}

std::size_t Graph::minDegree() const {
  if (adjacency_.empty()) return 0;
  std::size_t d = adjacency_.begin()->second.size();
  for (const auto& [v, nbrs] : adjacency_) d = std::min(d, nbrs.size());
  return d;
}

std::vector<std::pair<NodeId, NodeId>> Graph::edges() const {
  std::vector<std::pair<NodeId, NodeId>> out;
  out.reserve(edgeCount_);
  for (const auto& [v, nbrs] : adjacency_)
    for (NodeId u : nbrs)
      if (v < u) out.emplace_back(v, u);
  return out;
}

namespace {

double unitDouble(std::mt19937_64& rng) {
  // Top 53 bits -> [0,1); bit-identical across platforms.
  return static_cast<double>(rng() >> 11) * 0x1.0p-53;
}

}  // namespace

std::pair<Graph, GeometricLayout> generateUDG(int n, double radius, std::uint64_t seed) {
  if (n < 1) throw ParameterError("UDG requires n >= 1");
  if (!(radius > 0.0) || radius > std::sqrt(2.0) + 1e-12)
    throw ParameterError("UDG radius must be in (0, sqrt(2)]");

  std::mt19937_64 rng(seed);
  GeometricLayout layout;
  layout.radius = radius;
  for (int i = 1; i <= n; ++i) {
    double x = unitDouble(rng);
    double y = unitDouble(rng);
    layout.positions[i] = {x, y};
  }

  std::vector<std::pair<NodeId, NodeId>> edges;
  const double r2 = radius * radius;
  for (int i = 1; i <= n; ++i)
    for (int j = i + 1; j <= n; ++j) {
      auto [xi, yi] = layout.positions[i];
      auto [xj, yj] = layout.positions[j];
      double dx = xi - xj, dy = yi - yj;
      if (dx * dx + dy * dy <= r2) edges.emplace_back(i, j);
    }

  std::vector<NodeId> all(static_cast<std::size_t>(n));
  for (int i = 0; i < n; ++i) all[static_cast<std::size_t>(i)] = i + 1;
  return {Graph::fromEdges(edges, all), std::move(layout)};
}

std::pair<Graph, GeometricLayout> generateBoundedGrowthUDG(int n, double radius,
                                                           std::uint64_t seed,
                                                           double minDegreeFraction,
                                                           int maxAttempts) {
  if (minDegreeFraction < 0.0 || minDegreeFraction > 1.0)
    throw ParameterError("minDegreeFraction must be in [0,1]");
  // Draw attempt seeds from a per-seed stream so that nearby base seeds
  // do not share retry tails (seed+attempt sequences overlap).
  std::mt19937_64 seeder(seed);
  for (int attempt = 0; attempt < maxAttempts; ++attempt) {
    auto [g, layout] = generateUDG(n, radius, seeder());
    if (static_cast<double>(g.minDegree()) >=
        minDegreeFraction * static_cast<double>(g.maxDegree()))
      return {std::move(g), std::move(layout)};
  }
  throw ParameterError("no UDG with minDegree >= fraction*maxDegree within attempt budget");
}

Graph generateCycle(int n) {
  if (n < 3) throw ParameterError("cycle requires n >= 3");
  std::vector<std::pair<NodeId, NodeId>> edges;
  for (int i = 1; i < n; ++i) edges.emplace_back(i, i + 1);
  edges.emplace_back(n, 1);
  return Graph::fromEdges(edges);
}

Graph generateStar(int leaves) {
  if (leaves < 1) throw ParameterError("star requires leaves >= 1");
  std::vector<std::pair<NodeId, NodeId>> edges;
  for (int i = 2; i <= leaves + 1; ++i) edges.emplace_back(1, i);
  return Graph::fromEdges(edges);
}

Graph loadEdgeList(std::istream& in) {
  std::vector<std::pair<NodeId, NodeId>> edges;
  std::string line;
  int lineNo = 0;
  while (std::getline(in, line)) {
    ++lineNo;
    auto firstNonSpace = line.find_first_not_of(" \t\r");
    if (firstNonSpace == std::string::npos) continue;
    if (line[firstNonSpace] == '#') continue;
    std::istringstream ls(line);
    long long a = 0, b = 0;
    if (!(ls >> a >> b)) throw ParseError("expected two integers", lineNo);
    std::string rest;
    if (ls >> rest) throw ParseError("trailing content '" + rest + "'", lineNo);
    if (a <= 0 || b <= 0) throw ParseError("node IDs must be positive", lineNo);
    if (a == b) throw ParseError("self-loop on node " + std::to_string(a), lineNo);
    edges.emplace_back(a, b);
  }
  try {
    return Graph::fromEdges(edges);
  } catch (const ValidationError& e) {
    throw ParseError(e.what(), lineNo);
  }
}

namespace {

// Max independent set on an adjacency-mask graph, branch and bound.
struct MisSearch {
  const std::vector<std::uint64_t>* adj = nullptr;  // only for n <= 64
  const std::vector<std::vector<char>>* adjBig = nullptr;
  std::size_t budget = 0;
  std::size_t used = 0;

  int bestOf(const std::vector<int>& candidates, int chosen, int best) {
    if (++used > budget) throw SizeError("neighborhood too large for exact independence");
    if (candidates.empty()) return std::max(best, chosen);
    if (chosen + static_cast<int>(candidates.size()) <= best) return best;
    // Pick the candidate with the fewest candidate-neighbors. Any maximum
    // independent set contains a vertex of its closed neighborhood, so we
    // branch over N[v], excluding earlier branch choices to avoid overlap.
    std::size_t pickIdx = 0;
    int pickDeg = static_cast<int>(candidates.size());
    for (std::size_t i = 0; i < candidates.size(); ++i) {
      int d = 0;
      for (int u : candidates)
        if (isAdj(candidates[i], u)) ++d;
      if (d < pickDeg) {
        pickDeg = d;
        pickIdx = i;
      }
    }
    int v = candidates[pickIdx];
    std::vector<int> branchSet{v};
    for (int u : candidates)
      if (isAdj(v, u)) branchSet.push_back(u);
    std::vector<int> excluded;
    for (int u : branchSet) {
      std::vector<int> rest;
      for (int w : candidates) {
        if (w == u || isAdj(u, w)) continue;
        bool skip = false;
        for (int e : excluded)
          if (w == e) {
            skip = true;
            break;
          }
        if (!skip) rest.push_back(w);
      }
      best = bestOf(rest, chosen + 1, best);
      excluded.push_back(u);
    }
    return best;
  }

  bool isAdj(int a, int b) const {
    if (adj) return ((*adj)[static_cast<std::size_t>(a)] >> b) & 1u;
    return (*adjBig)[static_cast<std::size_t>(a)][static_cast<std::size_t>(b)] != 0;
  }
};

int neighborhoodMis(const Graph& g, NodeId v, const IndependenceLimits& limits) {
  const auto& nbrs = g.neighbors(v);
  std::size_t m = nbrs.size();
  if (m == 0) return 0;
  if (m > limits.nodeCap)
    throw SizeError("neighborhood of node " + std::to_string(v) +
                    " too large for exact independence (" + std::to_string(m) + " nodes)");

  MisSearch search;
  search.budget = limits.expansionCap;
  std::vector<std::uint64_t> mask;
  std::vector<std::vector<char>> big;
  if (m <= 64) {
    mask.assign(m, 0);
    for (std::size_t i = 0; i < m; ++i)
      for (std::size_t j = 0; j < m; ++j)
        if (i != j && g.hasEdge(nbrs[i], nbrs[j])) mask[i] |= std::uint64_t{1} << j;
    search.adj = &mask;
  } else {
    big.assign(m, std::vector<char>(m, 0));
    for (std::size_t i = 0; i < m; ++i)
      for (std::size_t j = 0; j < m; ++j)
        if (i != j && g.hasEdge(nbrs[i], nbrs[j])) big[i][j] = 1;
    search.adjBig = &big;
  }

  std::vector<int> candidates(m);
  for (std::size_t i = 0; i < m; ++i) candidates[i] = static_cast<int>(i);
  return search.bestOf(std::move(candidates), 0, 1);
}

}  // namespace

int neighborhoodIndependence(const Graph& g, const IndependenceLimits& limits) {
  if (g.nodeCount() == 0) throw ParameterError("empty graph");
  int best = 0;
  for (NodeId v : g.nodes()) best = std::max(best, neighborhoodMis(g, v, limits));
  return best;
}

Graph squareGraph(const Graph& g) {
  std::vector<std::pair<NodeId, NodeId>> edges;
  for (NodeId v : g.nodes()) {
    std::set<NodeId> reach;
    for (NodeId u : g.neighbors(v)) {
      reach.insert(u);
      for (NodeId w : g.neighbors(u)) reach.insert(w);
    }
    reach.erase(v);
    for (NodeId u : reach)
      if (v < u) edges.emplace_back(v, u);
  }
  return Graph::fromEdges(edges, g.nodes());
}

StructuralReport analyzeGraph(const Graph& g, const IndependenceLimits& limits) {
  StructuralReport r;
  r.nodeCount = g.nodeCount();
  r.edgeCount = g.edgeCount();
  r.maxDegree = g.maxDegree();
  r.minDegree = g.minDegree();
  r.neighborhoodIndependence = g.edgeCount() > 0 ? neighborhoodIndependence(g, limits) : 0;
  return r;
}

}  // namespace kbp
