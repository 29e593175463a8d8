#include "kbp/vm_sched.hpp"

#include <algorithm>
#include <istream>
#include <ostream>
#include <sstream>
#include <string>

#include <nlohmann/json.hpp>

#include "kbp/errors.hpp"

namespace kbp {

namespace {

void fillGains(MemoryLedger& ledger) {
  for (const auto& [v, vm] : ledger.virtualOf)
    ledger.gainOf[v] = vm / ledger.physicalMemory;
}

}  // namespace

EfficientVmResult efficientVM(const Graph& g, int k, const VmOptions& options) {
  if (k < 1) throw ParameterError("k must be >= 1");
  if (g.minDegree() < static_cast<std::size_t>(k))
    throw ParameterError("efficientVM requires minDegree >= k");

  EfficientVmResult result;
  RunOptions runOptions;
  runOptions.bandwidthFactor = options.coloring.bandwidthFactor;
  runOptions.maxRounds = options.coloring.maxRounds;
  auto [placement, run] = runKBP(g, k, runOptions);
  result.placement = std::move(placement);
  result.selectionGraph = selectionSubgraph(g, result.placement);
  result.coloring = distance2Coloring(result.selectionGraph, options.coloring);

  result.schedule.algorithm = VmAlgorithm::EfficientVM;
  result.ledger.physicalMemory = options.physicalMemory;
  for (NodeId v : g.nodes()) result.ledger.virtualOf[v] = Share{0};

  // Group nodes by color; one phase per non-empty class, ascending color.
  std::map<int, std::set<NodeId>> byColor;
  for (NodeId v : g.nodes()) byColor[result.coloring.colors.at(v)].insert(v);
  int phaseIndex = 0;
  for (const auto& [color, active] : byColor) {
    Phase phase;
    phase.index = phaseIndex++;
    phase.activeNodes = active;
    for (NodeId v : active)
      for (NodeId u : result.placement.choices.at(v)) {
        phase.backupEdges.emplace_back(v, u);
        phase.sharePerTarget[{v, u}] = options.physicalMemory;
        result.ledger.virtualOf[v] += options.physicalMemory;
      }
    result.schedule.phases.push_back(std::move(phase));
  }
  fillGains(result.ledger);

  result.schedule.totalRounds = run.roundsUsed + result.coloring.roundsUsed +
                                static_cast<int>(result.schedule.phases.size());
  checkNoOvercommit(result.schedule, options.physicalMemory);
  return result;
}

ExtendedVmResult extendedVM(const Graph& g, int R, const VmOptions& options) {
  if (g.nodeCount() == 0) throw ParameterError("empty graph");
  if (g.minDegree() < 1) throw ParameterError("extendedVM requires minDegree >= 1");
  if (R < 1 || R >= static_cast<int>(g.maxDegree()))
    throw ParameterError("R must satisfy 1 <= R < maxDegree");

  ExtendedVmResult result;
  Coloring base = linialColoring(g, options.coloring);
  result.coloring = reduceToDeltaPlus1(g, base, options.coloring);
  result.partition = partitionSuperClasses(result.coloring.colorCount, R);

  result.schedule.algorithm = VmAlgorithm::ExtendedVM;
  result.ledger.physicalMemory = options.physicalMemory;
  for (NodeId v : g.nodes()) result.ledger.virtualOf[v] = Share{0};

  auto superClassOf = [&](NodeId v) {
    return result.partition.classOf[static_cast<std::size_t>(result.coloring.colors.at(v))];
  };

  for (int s = 0; s < R; ++s) {
    Phase phase;
    phase.index = s;
    for (NodeId v : g.nodes())
      if (superClassOf(v) == s) phase.activeNodes.insert(v);

    // Selector count per target within this phase.
    std::map<NodeId, int> selectorsOf;
    for (NodeId v : phase.activeNodes)
      for (NodeId u : g.neighbors(v))
        if (superClassOf(u) != s) {
          phase.backupEdges.emplace_back(v, u);
          ++selectorsOf[u];
        }
    for (const auto& [v, u] : phase.backupEdges) {
      Share share = options.physicalMemory / selectorsOf.at(u);
      phase.sharePerTarget[{v, u}] = share;
      result.ledger.virtualOf[v] += share;
    }
    result.schedule.phases.push_back(std::move(phase));
  }
  fillGains(result.ledger);
  for (NodeId v : g.nodes())
    if (result.ledger.virtualOf.at(v) == Share{0}) result.starvedNodes.push_back(v);

  result.schedule.totalRounds = result.coloring.roundsUsed + R;
  checkNoOvercommit(result.schedule, options.physicalMemory);
  return result;
}

LedgerSummary ledgerReport(const MemoryLedger& ledger) {
  if (ledger.gainOf.empty()) throw ParameterError("empty ledger");
  std::vector<Share> gains;
  gains.reserve(ledger.gainOf.size());
  for (const auto& [v, gain] : ledger.gainOf) gains.push_back(gain);
  std::sort(gains.begin(), gains.end());
  LedgerSummary summary;
  summary.minGain = gains.front();
  summary.maxGain = gains.back();
  summary.medianGain = gains[gains.size() / 2];
  return summary;
}

void checkNoOvercommit(const Schedule& schedule, const Share& physicalMemory) {
  for (const Phase& phase : schedule.phases) {
    std::map<NodeId, Share> granted;
    for (const auto& [edge, share] : phase.sharePerTarget) granted[edge.second] += share;
    for (const auto& [target, total] : granted)
      if (total > physicalMemory)
        throw ValidationError("phase " + std::to_string(phase.index) + " over-commits node " +
                              std::to_string(target));
  }
}

namespace {

std::string shareToString(const Share& s) {
  if (s.denominator() == 1) return std::to_string(s.numerator());
  return std::to_string(s.numerator()) + "/" + std::to_string(s.denominator());
}

}  // namespace

void writeScheduleJson(std::ostream& out, const Schedule& schedule) {
  nlohmann::json j;
  j["algorithm"] =
      schedule.algorithm == VmAlgorithm::EfficientVM ? "efficient-vm" : "extended-vm";
  j["totalRounds"] = schedule.totalRounds;
  nlohmann::json phases = nlohmann::json::array();
  for (const Phase& phase : schedule.phases) {
    nlohmann::json p;
    p["index"] = phase.index;
    p["active"] = std::vector<NodeId>(phase.activeNodes.begin(), phase.activeNodes.end());
    nlohmann::json edges = nlohmann::json::array();
    for (const auto& [v, u] : phase.backupEdges) edges.push_back({v, u});
    p["edges"] = edges;
    phases.push_back(std::move(p));
  }
  j["phases"] = phases;
  out << j.dump(2) << "\n";
}

Schedule readScheduleJson(std::istream& in) {
  nlohmann::json j;
  in >> j;
  Schedule schedule;
  std::string algorithm = j.at("algorithm").get<std::string>();
  if (algorithm == "efficient-vm")
    schedule.algorithm = VmAlgorithm::EfficientVM;
  else if (algorithm == "extended-vm")
    schedule.algorithm = VmAlgorithm::ExtendedVM;
  else
    throw ValidationError("unknown schedule algorithm '" + algorithm + "'");
  schedule.totalRounds = j.at("totalRounds").get<int>();
  for (const auto& p : j.at("phases")) {
    Phase phase;
    phase.index = p.at("index").get<int>();
    for (const auto& v : p.at("active")) phase.activeNodes.insert(v.get<NodeId>());
    for (const auto& e : p.at("edges"))
      phase.backupEdges.emplace_back(e.at(0).get<NodeId>(), e.at(1).get<NodeId>());
    schedule.phases.push_back(std::move(phase));
  }
  return schedule;
}

namespace {

Share parseShare(const std::string& text) {
  auto slash = text.find('/');
  if (slash == std::string::npos) return Share{std::stoll(text)};
  return Share{std::stoll(text.substr(0, slash)), std::stoll(text.substr(slash + 1))};
}

}  // namespace

MemoryLedger readLedgerCsv(std::istream& in, const Share& physicalMemory) {
  MemoryLedger ledger;
  ledger.physicalMemory = physicalMemory;
  std::string line;
  int lineNo = 0;
  while (std::getline(in, line)) {
    ++lineNo;
    if (line.empty() || line[0] == '#') continue;
    if (line.rfind("node", 0) == 0) continue;
    std::replace(line.begin(), line.end(), ',', ' ');
    std::istringstream ls(line);
    long long v = 0;
    std::string vm, gain;
    if (!(ls >> v >> vm >> gain)) throw ParseError("expected 'node,virtual,gain'", lineNo);
    ledger.virtualOf[v] = parseShare(vm);
    ledger.gainOf[v] = parseShare(gain);
  }
  return ledger;
}

void writeLedgerCsv(std::ostream& out, const MemoryLedger& ledger) {
  out << "node,virtual,gain\n";
  for (const auto& [v, vm] : ledger.virtualOf)
    out << v << "," << shareToString(vm) << "," << shareToString(ledger.gainOf.at(v)) << "\n";
}

}  // namespace kbp
