#ifndef KBP_GRAPH_HPP
#define KBP_GRAPH_HPP

#include <cstdint>
#include <iosfwd>
#include <map>
#include <utility>
#include <vector>

namespace kbp {

using NodeId = std::int64_t;

/// Immutable undirected graph over unique positive integer node IDs.
/// Adjacency lists are kept sorted; symmetry and absence of self-loops
/// are enforced at construction.
class Graph {
 public:
  Graph() = default;

  /// Build from an undirected edge list plus optional isolated nodes.
  /// Rejects self-loops and duplicate edges.
  static Graph fromEdges(const std::vector<std::pair<NodeId, NodeId>>& edges,
                         const std::vector<NodeId>& isolatedNodes = {});

  const std::vector<NodeId>& nodes() const { return nodes_; }
  std::size_t nodeCount() const { return nodes_.size(); }
  std::size_t edgeCount() const { return edgeCount_; }

  bool contains(NodeId v) const;
  bool hasEdge(NodeId u, NodeId v) const;

  /// Sorted neighbor list Γ(v). Throws if v is not a node.
  const std::vector<NodeId>& neighbors(NodeId v) const;
  std::size_t degree(NodeId v) const { return neighbors(v).size(); }

  std::size_t maxDegree() const;
  std::size_t minDegree() const;

  std::vector<std::pair<NodeId, NodeId>> edges() const;

 private:
  std::vector<NodeId> nodes_;
  std::map<NodeId, std::vector<NodeId>> adjacency_;
  std::size_t edgeCount_ = 0;
};

struct GeometricLayout {
  std::map<NodeId, std::pair<double, double>> positions;
  double radius = 0.0;
};

struct StructuralReport {
  std::size_t nodeCount = 0;
  std::size_t edgeCount = 0;
  std::size_t maxDegree = 0;
  std::size_t minDegree = 0;
  int neighborhoodIndependence = 0;
};

struct IndependenceLimits {
  // Largest neighborhood the exact search will accept.
  std::size_t nodeCap = 128;
  // Budget on branch-and-bound expansions across one neighborhood.
  std::size_t expansionCap = std::size_t{1} << 25;
};

/// Uniform random points in the unit square, edge iff Euclidean distance
/// <= radius. Node IDs are 1..n in draw order. Deterministic per seed
/// (std::mt19937_64 with 53-bit mantissa coordinate extraction).
std::pair<Graph, GeometricLayout> generateUDG(int n, double radius, std::uint64_t seed);

/// UDG with a minimum-degree acceptance filter: retries seeds drawn from
/// a per-seed stream until minDegree >= minDegreeFraction * maxDegree.
std::pair<Graph, GeometricLayout> generateBoundedGrowthUDG(int n, double radius,
                                                           std::uint64_t seed,
                                                           double minDegreeFraction = 0.5,
                                                           int maxAttempts = 200);

Graph generateCycle(int n);

/// Node 1 adjacent to nodes 2..leaves+1.
Graph generateStar(int leaves);

/// Edge-list text: one "u v" pair per line, '#' comments, duplicates and
/// self-loops rejected.
Graph loadEdgeList(std::istream& in);

/// Exact I(G): max independent set size within any single neighborhood,
/// by branch and bound. Errors when a neighborhood exceeds the caps.
int neighborhoodIndependence(const Graph& g, const IndependenceLimits& limits = {});

/// Same nodes; edge {u,v} iff dist(u,v) in {1,2}.
Graph squareGraph(const Graph& g);

StructuralReport analyzeGraph(const Graph& g, const IndependenceLimits& limits = {});

}  // namespace kbp

#endif
