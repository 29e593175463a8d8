#ifndef KBP_VM_SCHED_HPP
#define KBP_VM_SCHED_HPP

#include <iosfwd>
#include <map>
#include <set>
#include <vector>

#include <boost/rational.hpp>

#include "kbp/coloring.hpp"
#include "kbp/graph.hpp"
#include "kbp/placement.hpp"

namespace kbp {

/// Exact memory share; keeps over-commit and exclusivity checks crisp.
using Share = boost::rational<long long>;

struct Phase {
  int index = 0;
  std::set<NodeId> activeNodes;
  std::vector<std::pair<NodeId, NodeId>> backupEdges;  // (active, target)
  std::map<std::pair<NodeId, NodeId>, Share> sharePerTarget;
};

enum class VmAlgorithm { EfficientVM, ExtendedVM };

struct Schedule {
  VmAlgorithm algorithm = VmAlgorithm::EfficientVM;
  std::vector<Phase> phases;
  int totalRounds = 0;
};

struct MemoryLedger {
  Share physicalMemory{1};
  std::map<NodeId, Share> virtualOf;
  std::map<NodeId, Share> gainOf;
};

struct VmOptions {
  ColoringOptions coloring;
  Share physicalMemory{1};
};

struct EfficientVmResult {
  Schedule schedule;
  MemoryLedger ledger;
  Coloring coloring;  // 2-hop coloring of the selection subgraph
  Placement placement;
  Graph selectionGraph;
};

/// Backup placement, then distance-2 coloring of the selection subgraph;
/// one phase per non-empty color class, each active node owning the full
/// memory of each of its chosen backups.
EfficientVmResult efficientVM(const Graph& g, int k, const VmOptions& options = {});

struct ExtendedVmResult {
  Schedule schedule;
  MemoryLedger ledger;
  Coloring coloring;  // (maxDegree+1)-coloring of g
  SuperClassPartition partition;
  // Nodes whose neighbors all share their super-class: zero virtual memory.
  std::vector<NodeId> starvedNodes;
};

/// (Delta+1)-coloring grouped into R super-classes; phase s activates
/// class s, each active node targeting all neighbors outside the class,
/// each target splitting its memory evenly among that phase's selectors.
ExtendedVmResult extendedVM(const Graph& g, int R, const VmOptions& options = {});

struct LedgerSummary {
  Share minGain{0};
  Share medianGain{0};
  Share maxGain{0};
};

LedgerSummary ledgerReport(const MemoryLedger& ledger);

/// Every phase's outgoing shares per target sum to <= physicalMemory.
void checkNoOvercommit(const Schedule& schedule, const Share& physicalMemory);

void writeScheduleJson(std::ostream& out, const Schedule& schedule);
Schedule readScheduleJson(std::istream& in);  // shares are not serialized
void writeLedgerCsv(std::ostream& out, const MemoryLedger& ledger);
MemoryLedger readLedgerCsv(std::istream& in, const Share& physicalMemory);

}  // namespace kbp

#endif
