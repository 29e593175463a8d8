#ifndef KBP_CONGEST_HPP
#define KBP_CONGEST_HPP

#include <cstdint>
#include <functional>
#include <iosfwd>
#include <map>
#include <memory>
#include <set>
#include <vector>

#include "kbp/graph.hpp"

namespace kbp {

struct Message {
  NodeId src = 0;
  NodeId dst = 0;
  std::vector<std::uint8_t> payload;
};

/// What a node sees when its step function runs. Nothing outside this
/// context is visible to the program.
struct NodeContext {
  NodeId self = 0;
  const std::vector<NodeId>* neighbors = nullptr;  // live neighbors, sorted
  int round = 0;
  const std::vector<Message>* inbox = nullptr;  // sorted by src ID
};

struct StepResult {
  std::vector<Message> outgoing;
  bool halt = false;
};

/// Per-node program instance; holds the node's private state.
class NodeProcess {
 public:
  virtual ~NodeProcess() = default;
  virtual StepResult step(const NodeContext& ctx) = 0;
  virtual std::vector<std::int64_t> output() const = 0;
};

/// Creates one process per node; receives the node's initial neighbor list.
using ProgramFactory =
    std::function<std::unique_ptr<NodeProcess>(NodeId, const std::vector<NodeId>&)>;

struct FaultPlan {
  std::map<NodeId, int> crashRoundOf;

  static FaultPlan fromCrashes(const std::vector<std::pair<NodeId, int>>& crashes);
  static FaultPlan loadCsv(std::istream& in);

  bool crashedBy(NodeId v, int round) const {
    auto it = crashRoundOf.find(v);
    return it != crashRoundOf.end() && it->second <= round;
  }
};

struct TraceEntry {
  int round = 0;
  NodeId src = 0;
  NodeId dst = 0;
  std::size_t bytes = 0;
};

struct RunResult {
  int roundsUsed = 0;
  std::map<NodeId, std::vector<std::int64_t>> perNodeOutput;
  std::vector<TraceEntry> trace;
  std::set<NodeId> crashedNodes;
};

struct RunOptions {
  int bandwidthFactor = 32;
  int maxRounds = 100000;
  bool captureTrace = false;
};

/// Per-edge per-round payload capacity: bandwidthFactor * ceil(log2(n+1))
/// bits, rounded up to whole bytes.
std::size_t messageCapacityBytes(std::size_t n, int bandwidthFactor);

/// Deterministic synchronous execution. A message sent in round t is in
/// the inbox at round t+1. Nodes crashed at round t are never invoked at
/// or after t; their in-flight messages are dropped and they disappear
/// from neighbor lists.
RunResult runSynchronous(const Graph& g, const ProgramFactory& program,
                         const FaultPlan& faults, const RunOptions& options = {});

void writeTraceJsonl(std::ostream& out, const std::vector<TraceEntry>& trace);

}  // namespace kbp

#endif
