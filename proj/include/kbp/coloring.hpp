#ifndef KBP_COLORING_HPP
#define KBP_COLORING_HPP

#include <map>
#include <vector>

#include "kbp/congest.hpp"
#include "kbp/graph.hpp"

namespace kbp {

struct Coloring {
  std::map<NodeId, int> colors;
  int colorCount = 0;
  int hopRadius = 1;  // 1 or 2
  int roundsUsed = 0;
};

struct SuperClassPartition {
  std::vector<int> classOf;  // indexed by color
  int classCount = 0;
  int colorsPerClass = 0;
};

struct ColoringOptions {
  // All node IDs must be <= this bound; it sizes the first color palette.
  long long idSpaceBound = 1 << 20;
  int bandwidthFactor = 32;
  int maxRounds = 100000;
};

/// Round budget slack over log*(idSpaceBound) for the color reduction.
inline constexpr int kLinialRoundSlack = 3;

/// Final palette bound of the iterated reduction: p^2 for the smallest
/// prime p >= 2*maxDegree + 1.
long long linialColorBound(std::size_t maxDegree);

/// log* base 2: applications of log2 until the value drops to <= 2.
int iteratedLog2(long long x);

/// Proper 1-hop coloring by iterated polynomial color reduction over
/// GF(q), run as a message-passing program; colors start from node IDs.
Coloring linialColoring(const Graph& g, const ColoringOptions& options = {});

/// Proper 2-hop coloring: the same reduction driven on the square graph,
/// with each node learning 2-hop colors through chunked neighbor relays.
Coloring distance2Coloring(const Graph& g, const ColoringOptions& options = {});

/// Iterated color elimination down to maxDegree+1 colors: one round per
/// eliminated color, highest color first. Callers provide a proper start
/// coloring; each node is assumed to know its neighbors' start colors
/// (any coloring produced by this module leaves that knowledge behind).
Coloring reduceToDeltaPlus1(const Graph& g, const Coloring& start,
                            const ColoringOptions& options = {});

/// Contiguous ranges of ceil(colorCount/R) colors each; exactly R classes
/// (trailing ones may be empty).
SuperClassPartition partitionSuperClasses(int colorCount, int R);

/// Exhaustive properness check at the coloring's hop radius.
bool verifyColoring(const Graph& g, const Coloring& col);

}  // namespace kbp

#endif
