#ifndef KBP_ORACLE_HPP
#define KBP_ORACLE_HPP

#include "kbp/graph.hpp"
#include "kbp/placement.hpp"

namespace kbp {

struct OptimalPlacementResult {
  int optimalMaxLoad = 0;
  Placement witness;
};

/// Exact minimum achievable max load for any K-placement, by binary
/// search on a load cap T with feasibility decided by integral max flow
/// (source -> chooser capacity k, chooser -> neighbor capacity 1,
/// neighbor -> sink capacity T). Requires minDegree >= k.
OptimalPlacementResult optimalMaxLoad(const Graph& g, int k, std::size_t nodeCap = 60);

/// Full enumeration over all choice vectors; the oracle for the oracle.
/// Requires the product of per-node C(deg, k) counts to stay under
/// searchSpaceCap.
OptimalPlacementResult exhaustiveOptimal(const Graph& g, int k,
                                         double searchSpaceCap = 1e6);

}  // namespace kbp

#endif
