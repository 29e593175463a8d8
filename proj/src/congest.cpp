#include "kbp/congest.hpp"

#include <algorithm>
#include <cmath>
#include <istream>
#include <ostream>
#include <sstream>
#include <string>

#include "kbp/errors.hpp"

namespace kbp {

FaultPlan FaultPlan::fromCrashes(const std::vector<std::pair<NodeId, int>>& crashes) {
  FaultPlan plan;
  for (const auto& [v, round] : crashes) {
    if (round < 0) throw ParameterError("crash round must be >= 0");
    if (!plan.crashRoundOf.emplace(v, round).second)
      throw ParameterError("duplicate crash entry for node " + std::to_string(v));
  }
  return plan;
}

FaultPlan FaultPlan::loadCsv(std::istream& in) {
  std::vector<std::pair<NodeId, int>> crashes;
  std::string line;
  int lineNo = 0;
  while (std::getline(in, line)) {
    ++lineNo;
    if (line.empty() || line[0] == '#') continue;
    if (lineNo == 1 && line.rfind("node", 0) == 0) continue;  // header
    std::replace(line.begin(), line.end(), ',', ' ');
    std::istringstream ls(line);
    long long v = 0;
    int round = 0;
    if (!(ls >> v >> round)) throw ParseError("expected 'node,round'", lineNo);
    crashes.emplace_back(v, round);
  }
  return fromCrashes(crashes);
}

std::size_t messageCapacityBytes(std::size_t n, int bandwidthFactor) {
  std::size_t logTerm = static_cast<std::size_t>(
      std::ceil(std::log2(static_cast<double>(n) + 1.0)));
  logTerm = std::max<std::size_t>(logTerm, 1);
  std::size_t bits = static_cast<std::size_t>(bandwidthFactor) * logTerm;
  return (bits + 7) / 8;
}

RunResult runSynchronous(const Graph& g, const ProgramFactory& program,
                         const FaultPlan& faults, const RunOptions& options) {
  if (options.maxRounds < 1) throw ParameterError("maxRounds must be >= 1");
  if (options.bandwidthFactor < 1) throw ParameterError("bandwidthFactor must be >= 1");
  for (const auto& [v, round] : faults.crashRoundOf)
    if (!g.contains(v)) throw ParameterError("fault plan names unknown node " + std::to_string(v));

  const std::size_t capacity = messageCapacityBytes(g.nodeCount(), options.bandwidthFactor);

  struct NodeSlot {
    std::unique_ptr<NodeProcess> process;
    std::vector<NodeId> liveNeighbors;
    std::vector<Message> inbox;
    bool halted = false;
  };
  std::map<NodeId, NodeSlot> slots;
  for (NodeId v : g.nodes()) {
    NodeSlot slot;
    slot.process = program(v, g.neighbors(v));
    slots.emplace(v, std::move(slot));
  }

  const bool hasFaults = !faults.crashRoundOf.empty();
  if (!hasFaults)
    for (auto& [v, slot] : slots) slot.liveNeighbors = g.neighbors(v);

  RunResult result;
  for (int round = 0; round < options.maxRounds; ++round) {
    if (hasFaults) {
      // Crash set as of this round.
      for (const auto& [v, crashRound] : faults.crashRoundOf)
        if (crashRound <= round) result.crashedNodes.insert(v);
      for (auto& [v, slot] : slots) {
        slot.liveNeighbors.clear();
        for (NodeId u : g.neighbors(v))
          if (!result.crashedNodes.count(u)) slot.liveNeighbors.push_back(u);
      }
    }

    std::map<NodeId, std::vector<Message>> nextInbox;
    bool allHalted = true;
    for (auto& [v, slot] : slots) {
      if (result.crashedNodes.count(v)) continue;
      if (slot.halted) continue;

      NodeContext ctx{v, &slot.liveNeighbors, round, &slot.inbox};
      StepResult step = slot.process->step(ctx);

      std::set<NodeId> sentTo;
      for (Message& msg : step.outgoing) {
        msg.src = v;
        if (!std::binary_search(slot.liveNeighbors.begin(), slot.liveNeighbors.end(),
                                msg.dst))
          throw ProtocolError("node " + std::to_string(v) + " sent to non-neighbor " +
                              std::to_string(msg.dst) + " in round " +
                              std::to_string(round));
        if (!sentTo.insert(msg.dst).second)
          throw ProtocolError("node " + std::to_string(v) +
                              " sent two messages to node " + std::to_string(msg.dst) +
                              " in round " + std::to_string(round));
        if (msg.payload.size() > capacity)
          throw BandwidthError("node " + std::to_string(v) + " exceeded bandwidth in round " +
                               std::to_string(round) + ": " +
                               std::to_string(msg.payload.size()) + " > " +
                               std::to_string(capacity) + " bytes");
        if (options.captureTrace)
          result.trace.push_back({round, v, msg.dst, msg.payload.size()});
        nextInbox[msg.dst].push_back(std::move(msg));
      }
      if (step.halt) slot.halted = true;
      if (!slot.halted) allHalted = false;
    }

    // Deliver; drop messages to nodes that crash at round+1 later (checked
    // at invocation time), and from nodes that crash at round+1 now.
    for (auto& [v, slot] : slots) {
      auto it = nextInbox.find(v);
      slot.inbox = it == nextInbox.end() ? std::vector<Message>{} : std::move(it->second);
      if (hasFaults)
        std::erase_if(slot.inbox, [&](const Message& m) {
          return faults.crashedBy(m.src, round + 1);
        });
      std::sort(slot.inbox.begin(), slot.inbox.end(),
                [](const Message& a, const Message& b) { return a.src < b.src; });
    }

    if (allHalted) {
      result.roundsUsed = round + 1;
      for (auto& [v, slot] : slots)
        if (!result.crashedNodes.count(v) && slot.halted)
          result.perNodeOutput[v] = slot.process->output();
      return result;
    }
  }
  throw TimeoutError("maxRounds=" + std::to_string(options.maxRounds) +
                     " exhausted before all live nodes halted");
}

void writeTraceJsonl(std::ostream& out, const std::vector<TraceEntry>& trace) {
  for (const TraceEntry& t : trace)
    out << "{\"round\":" << t.round << ",\"src\":" << t.src << ",\"dst\":" << t.dst
        << ",\"bytes\":" << t.bytes << "}\n";
}

}  // namespace kbp
