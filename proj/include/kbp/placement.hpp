#ifndef KBP_PLACEMENT_HPP
#define KBP_PLACEMENT_HPP

#include <iosfwd>
#include <map>
#include <set>
#include <vector>

#include "kbp/congest.hpp"
#include "kbp/graph.hpp"

namespace kbp {

/// Per-node ordered backup choices. Each list holds min(k, deg(v))
/// distinct neighbors of the chooser.
struct Placement {
  int k = 1;
  std::map<NodeId, std::vector<NodeId>> choices;
};

struct LoadReport {
  std::map<NodeId, int> loads;  // b_j: number of choosers of j
  int maxLoad = 0;
  int cTimesK = 0;
};

/// Circular-ID selection: the first min(k, |neighbors|) neighbors whose
/// IDs follow v in ascending order, wrapping past the largest ID.
std::vector<NodeId> kNextModulo(NodeId v, const std::vector<NodeId>& neighbors, int k);

/// Distributed run: every node computes its choices from its initial
/// neighbor knowledge and notifies each chosen neighbor; one round total.
std::pair<Placement, RunResult> runKBP(const Graph& g, int k, const RunOptions& options = {});

/// Throws ValidationError unless every choice list is a set of distinct
/// graph neighbors of the chooser, of size min(k, deg(v)), for all nodes.
void validatePlacement(const Graph& g, const Placement& p);

LoadReport computeLoads(const Graph& g, const Placement& p, int c);

/// Surviving backup count per live node after the given crash set.
std::map<NodeId, int> survivability(const Graph& g, const Placement& p,
                                    const std::set<NodeId>& crashed);

/// G' = (V, E') with {v,u} in E' iff u in choices[v] or v in choices[u].
Graph selectionSubgraph(const Graph& g, const Placement& p);

void writePlacementJson(std::ostream& out, const Placement& p);
Placement readPlacementJson(std::istream& in);
void writeLoadsCsv(std::ostream& out, const LoadReport& report);

}  // namespace kbp

#endif
