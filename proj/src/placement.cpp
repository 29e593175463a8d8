#include "kbp/placement.hpp"

#include <algorithm>
#include <istream>
#include <ostream>
#include <string>

#include <nlohmann/json.hpp>

#include "kbp/errors.hpp"

namespace kbp {

std::vector<NodeId> kNextModulo(NodeId v, const std::vector<NodeId>& neighbors, int k) {
  if (k < 1) throw ParameterError("k must be >= 1");
  if (neighbors.empty()) throw ParameterError("node " + std::to_string(v) + " is isolated");
  if (!std::is_sorted(neighbors.begin(), neighbors.end()))
    throw ParameterError("neighbor list must be sorted");

  // First neighbor strictly above v, wrapping to the smallest ID.
  auto start = std::upper_bound(neighbors.begin(), neighbors.end(), v);
  std::size_t idx = static_cast<std::size_t>(start - neighbors.begin()) % neighbors.size();

  std::size_t take = std::min<std::size_t>(static_cast<std::size_t>(k), neighbors.size());
  std::vector<NodeId> chosen;
  chosen.reserve(take);
  for (std::size_t i = 0; i < take; ++i)
    chosen.push_back(neighbors[(idx + i) % neighbors.size()]);
  return chosen;
}

namespace {

const char kChosenPayload[] = "CHOSEN";

class KbpProcess : public NodeProcess {
 public:
  KbpProcess(NodeId self, std::vector<NodeId> neighbors, int k)
      : self_(self), neighbors_(std::move(neighbors)), k_(k) {}

  StepResult step(const NodeContext& ctx) override {
    StepResult result;
    choices_ = kNextModulo(self_, neighbors_, k_);
    for (NodeId u : choices_) {
      Message msg;
      msg.dst = u;
      msg.payload.assign(kChosenPayload, kChosenPayload + 6);
      result.outgoing.push_back(std::move(msg));
    }
    (void)ctx;
    result.halt = true;
    return result;
  }

  std::vector<std::int64_t> output() const override { return choices_; }

 private:
  NodeId self_;
  std::vector<NodeId> neighbors_;
  int k_;
  std::vector<NodeId> choices_;
};

}  // namespace

std::pair<Placement, RunResult> runKBP(const Graph& g, int k, const RunOptions& options) {
  if (k < 1) throw ParameterError("k must be >= 1");
  std::vector<NodeId> isolated;
  for (NodeId v : g.nodes())
    if (g.degree(v) == 0) isolated.push_back(v);
  if (!isolated.empty()) {
    std::string names;
    for (NodeId v : isolated) names += " " + std::to_string(v);
    throw ParameterError("graph has isolated nodes:" + names);
  }

  ProgramFactory factory = [k](NodeId v, const std::vector<NodeId>& nbrs) {
    return std::make_unique<KbpProcess>(v, nbrs, k);
  };
  RunResult run = runSynchronous(g, factory, FaultPlan{}, options);

  Placement p;
  p.k = k;
  for (const auto& [v, out] : run.perNodeOutput) p.choices[v] = out;
  return {std::move(p), std::move(run)};
}

void validatePlacement(const Graph& g, const Placement& p) {
  if (p.k < 1) throw ValidationError("placement k must be >= 1");
  for (NodeId v : g.nodes()) {
    auto it = p.choices.find(v);
    if (it == p.choices.end())
      throw ValidationError("placement misses node " + std::to_string(v));
    const auto& list = it->second;
    std::size_t expected =
        std::min<std::size_t>(static_cast<std::size_t>(p.k), g.degree(v));
    if (list.size() != expected)
      throw ValidationError("node " + std::to_string(v) + " has " +
                            std::to_string(list.size()) + " choices, expected " +
                            std::to_string(expected));
    std::set<NodeId> distinct(list.begin(), list.end());
    if (distinct.size() != list.size())
      throw ValidationError("node " + std::to_string(v) + " repeats a choice");
    for (NodeId u : list) {
      if (u == v) throw ValidationError("node " + std::to_string(v) + " chose itself");
      if (!g.hasEdge(v, u))
        throw ValidationError("node " + std::to_string(v) + " chose non-neighbor " +
                              std::to_string(u));
    }
  }
  for (const auto& [v, list] : p.choices)
    if (!g.contains(v))
      throw ValidationError("placement names unknown node " + std::to_string(v));
}

LoadReport computeLoads(const Graph& g, const Placement& p, int c) {
  validatePlacement(g, p);
  LoadReport report;
  for (NodeId v : g.nodes()) report.loads[v] = 0;
  for (const auto& [v, list] : p.choices)
    for (NodeId u : list) ++report.loads[u];
  for (const auto& [v, load] : report.loads) report.maxLoad = std::max(report.maxLoad, load);
  report.cTimesK = c * p.k;
  return report;
}

std::map<NodeId, int> survivability(const Graph& g, const Placement& p,
                                    const std::set<NodeId>& crashed) {
  validatePlacement(g, p);
  std::map<NodeId, int> surviving;
  for (const auto& [v, list] : p.choices) {
    if (crashed.count(v)) continue;
    int alive = 0;
    for (NodeId u : list)
      if (!crashed.count(u)) ++alive;
    surviving[v] = alive;
  }
  return surviving;
}

Graph selectionSubgraph(const Graph& g, const Placement& p) {
  validatePlacement(g, p);
  std::set<std::pair<NodeId, NodeId>> selected;
  for (const auto& [v, list] : p.choices)
    for (NodeId u : list) selected.insert(std::minmax(v, u));
  std::vector<std::pair<NodeId, NodeId>> edges(selected.begin(), selected.end());
  return Graph::fromEdges(edges, g.nodes());
}

void writePlacementJson(std::ostream& out, const Placement& p) {
  nlohmann::json j;
  j["k"] = p.k;
  nlohmann::json choices = nlohmann::json::object();
  for (const auto& [v, list] : p.choices) choices[std::to_string(v)] = list;
  j["choices"] = choices;
  out << j.dump(2) << "\n";
}

Placement readPlacementJson(std::istream& in) {
  nlohmann::json j;
  in >> j;
  Placement p;
  p.k = j.at("k").get<int>();
  for (const auto& [key, value] : j.at("choices").items())
    p.choices[std::stoll(key)] = value.get<std::vector<NodeId>>();
  return p;
}

void writeLoadsCsv(std::ostream& out, const LoadReport& report) {
  out << "node,load\n";
  for (const auto& [v, load] : report.loads) out << v << "," << load << "\n";
}

}  // namespace kbp
