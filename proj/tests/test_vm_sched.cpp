#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <map>
#include <set>
#include <sstream>

#include "kbp/errors.hpp"
#include "kbp/graph.hpp"
#include "kbp/vm_sched.hpp"
#include "test_util.hpp"

using namespace kbp;

namespace {

// Center plus four pendant triangles: 1 is adjacent to 2..9, and each
// pair (2,3), (4,5), (6,7), (8,9) closes a triangle with the center.
Graph crossGraph() {
  std::vector<std::pair<NodeId, NodeId>> edges;
  for (NodeId v = 2; v <= 9; ++v) edges.emplace_back(1, v);
  edges.emplace_back(2, 3);
  edges.emplace_back(4, 5);
  edges.emplace_back(6, 7);
  edges.emplace_back(8, 9);
  return Graph::fromEdges(edges);
}

// No target may serve two active selectors in one phase.
void checkExclusivity(const Schedule& schedule) {
  for (const Phase& phase : schedule.phases) {
    std::set<NodeId> targets;
    for (const auto& [active, target] : phase.backupEdges) {
      CHECK(phase.activeNodes.count(active) == 1);
      CHECK(targets.insert(target).second);
    }
  }
}

}  // namespace

TEST_CASE("efficient-vm on star leaves=3, k=1") {
  Graph s3 = generateStar(3);
  EfficientVmResult result = efficientVM(s3, 1);
  CHECK(result.selectionGraph.edges() == s3.edges());
  // The square of the star is complete: four singleton phases.
  CHECK(result.schedule.phases.size() == 4);
  checkExclusivity(result.schedule);
  // Every node, the center included, owns exactly one backup of full size.
  for (NodeId v : s3.nodes()) {
    CHECK(result.ledger.virtualOf.at(v) == Share{1});
    CHECK(result.ledger.gainOf.at(v) == Share{1});
  }
  CHECK(result.placement.choices.at(1) == std::vector<NodeId>{2});
  CHECK(result.schedule.totalRounds ==
        1 + result.coloring.roundsUsed + static_cast<int>(result.schedule.phases.size()));
}

TEST_CASE("efficient-vm on C4, k=1") {
  Graph c4 = generateCycle(4);
  EfficientVmResult result = efficientVM(c4, 1);
  checkExclusivity(result.schedule);
  CHECK(result.schedule.phases.size() <= 4);
  for (NodeId v : c4.nodes()) CHECK(result.ledger.gainOf.at(v) == Share{1});
  // Each node is active in exactly one phase.
  std::map<NodeId, int> activeCount;
  for (const Phase& phase : result.schedule.phases)
    for (NodeId v : phase.activeNodes) ++activeCount[v];
  for (NodeId v : c4.nodes()) CHECK(activeCount[v] == 1);
}

TEST_CASE("efficient-vm requires minDegree >= k") {
  CHECK_THROWS_AS(efficientVM(generateStar(3), 2), ParameterError);
  CHECK_THROWS_AS(efficientVM(generateCycle(4), 0), ParameterError);
}

TEST_CASE("efficient-vm invariants on random instances") {
  int tested = 0;
  for (std::uint64_t seed = 1; tested < 12; ++seed) {
    REQUIRE(seed <= 60);
    auto [g, layout] = generateUDG(25, 0.45, 800 + seed);
    int k = 1 + static_cast<int>(seed % 2);
    if (g.minDegree() < static_cast<std::size_t>(k)) continue;
    EfficientVmResult result = efficientVM(g, k);
    checkExclusivity(result.schedule);
    for (NodeId v : g.nodes()) CHECK(result.ledger.virtualOf.at(v) == Share{k});
    // Active nodes of one phase are pairwise at distance >= 3 in G'.
    for (const Phase& phase : result.schedule.phases)
      for (NodeId a : phase.activeNodes)
        for (NodeId b : phase.activeNodes) {
          if (a >= b) continue;
          int d = test::bfsDistance(result.selectionGraph, a, b);
          CHECK((d == -1 || d >= 3));
        }
    int c = neighborhoodIndependence(g);
    long long width = static_cast<long long>(c) * k + k;
    CHECK(static_cast<long long>(result.schedule.phases.size()) <=
          linialColorBound(static_cast<std::size_t>(width * width + width)));
    CHECK(result.coloring.hopRadius == 2);
    CHECK(verifyColoring(result.selectionGraph, result.coloring));
    ++tested;
  }
}

TEST_CASE("extended-vm targets exactly the out-of-class neighbors") {
  Graph cross = crossGraph();
  ExtendedVmResult result = extendedVM(cross, 2);
  CHECK(result.schedule.phases.size() == 2);
  CHECK(verifyColoring(cross, result.coloring));
  CHECK(result.coloring.colorCount == static_cast<int>(cross.maxDegree()) + 1);

  auto classOf = [&](NodeId v) {
    return result.partition.classOf[static_cast<std::size_t>(result.coloring.colors.at(v))];
  };
  for (const Phase& phase : result.schedule.phases) {
    // Active set is exactly the phase's super-class.
    for (NodeId v : cross.nodes())
      CHECK(phase.activeNodes.count(v) == (classOf(v) == phase.index ? 1u : 0u));
    // Each active node's targets are its neighbors outside the class.
    std::map<NodeId, std::set<NodeId>> targetsOf;
    for (const auto& [active, target] : phase.backupEdges) {
      CHECK(cross.hasEdge(active, target));
      targetsOf[active].insert(target);
    }
    for (NodeId v : phase.activeNodes) {
      std::set<NodeId> expected;
      for (NodeId u : cross.neighbors(v))
        if (classOf(u) != phase.index) expected.insert(u);
      CHECK(targetsOf[v] == expected);
    }
  }
  CHECK(result.schedule.totalRounds == result.coloring.roundsUsed + 2);
}

TEST_CASE("extended-vm splits each target's memory evenly per phase") {
  Graph cross = crossGraph();
  ExtendedVmResult result = extendedVM(cross, 2);
  for (const Phase& phase : result.schedule.phases) {
    std::map<NodeId, int> selectors;
    for (const auto& [active, target] : phase.backupEdges) ++selectors[target];
    Share physical{1};
    std::map<NodeId, Share> granted;
    for (const auto& [edge, share] : phase.sharePerTarget) {
      CHECK(share == physical / selectors.at(edge.second));
      granted[edge.second] += share;
    }
    for (const auto& [target, total] : granted) CHECK(total <= physical);
  }
  checkNoOvercommit(result.schedule, Share{1});
}

TEST_CASE("extended-vm parameter validation") {
  Graph cross = crossGraph();  // maxDegree 8
  CHECK_THROWS_AS(extendedVM(cross, 0), ParameterError);
  CHECK_THROWS_AS(extendedVM(cross, 8), ParameterError);
  CHECK_THROWS_AS(extendedVM(Graph::fromEdges({{1, 2}}, {3}), 1), ParameterError);
}

TEST_CASE("extended-vm R=1 is degenerate: everyone active, nobody gains") {
  // One super-class holds all colors, so no neighbor is ever a target.
  auto [g, layout] = generateUDG(15, 0.6, 11);
  REQUIRE(g.minDegree() >= 1);
  REQUIRE(g.maxDegree() >= 2);
  ExtendedVmResult result = extendedVM(g, 1);
  CHECK(result.schedule.phases.size() == 1);
  CHECK(result.schedule.phases[0].activeNodes.size() == g.nodeCount());
  CHECK(result.schedule.phases[0].backupEdges.empty());
  for (NodeId v : g.nodes()) CHECK(result.ledger.virtualOf.at(v) == Share{0});
  CHECK(result.starvedNodes.size() == g.nodeCount());
}

TEST_CASE("extended-vm lemma bounds on a dense fixture") {
  auto [g, layout] = generateBoundedGrowthUDG(40, 0.8, 21);
  int c = neighborhoodIndependence(g);
  for (int R : {2, 4}) {
    ExtendedVmResult result = extendedVM(g, R);
    CHECK(result.schedule.totalRounds == result.coloring.roundsUsed + R);
    long long cap = static_cast<long long>(c) * result.partition.colorsPerClass;
    for (const Phase& phase : result.schedule.phases) {
      std::map<NodeId, long long> selectors;
      std::map<NodeId, long long> targetsOf;
      for (const auto& [active, target] : phase.backupEdges) {
        ++selectors[target];
        ++targetsOf[active];
      }
      for (const auto& [target, count] : selectors) CHECK(count <= cap);
      for (NodeId v : phase.activeNodes)
        CHECK(targetsOf[v] >= static_cast<long long>(g.degree(v)) - cap);
    }
  }
}

TEST_CASE("extended-vm median gain grows with R") {
  auto [g, layout] = generateBoundedGrowthUDG(40, 0.8, 33);
  Share previous{-1};
  for (int R : {2, 4, 8}) {
    ExtendedVmResult result = extendedVM(g, R);
    LedgerSummary summary = ledgerReport(result.ledger);
    CHECK(summary.medianGain >= previous);
    previous = summary.medianGain;
  }
}

TEST_CASE("ledger report") {
  SUBCASE("uniform gains collapse to one value") {
    MemoryLedger ledger;
    ledger.virtualOf = {{1, Share{2}}, {2, Share{2}}, {3, Share{2}}};
    ledger.gainOf = {{1, Share{2}}, {2, Share{2}}, {3, Share{2}}};
    LedgerSummary summary = ledgerReport(ledger);
    CHECK(summary.minGain == Share{2});
    CHECK(summary.medianGain == Share{2});
    CHECK(summary.maxGain == Share{2});
  }

  SUBCASE("efficient-vm min gain equals k") {
    auto [g, layout] = generateUDG(20, 0.5, 13);
    REQUIRE(g.minDegree() >= 2);
    EfficientVmResult result = efficientVM(g, 2);
    CHECK(ledgerReport(result.ledger).minGain == Share{2});
  }

  SUBCASE("empty ledger rejected") {
    CHECK_THROWS_AS(ledgerReport(MemoryLedger{}), ParameterError);
  }
}

TEST_CASE("over-commit detection") {
  Schedule schedule;
  Phase phase;
  phase.index = 0;
  phase.activeNodes = {1, 2};
  phase.backupEdges = {{1, 3}, {2, 3}};
  phase.sharePerTarget[{1, 3}] = Share{3, 4};
  phase.sharePerTarget[{2, 3}] = Share{1, 2};
  schedule.phases.push_back(phase);
  CHECK_THROWS_AS(checkNoOvercommit(schedule, Share{1}), ValidationError);
  schedule.phases[0].sharePerTarget[{2, 3}] = Share{1, 4};
  CHECK_NOTHROW(checkNoOvercommit(schedule, Share{1}));
}

TEST_CASE("schedule JSON round trip") {
  Graph cross = crossGraph();
  ExtendedVmResult result = extendedVM(cross, 2);
  std::ostringstream out;
  writeScheduleJson(out, result.schedule);
  std::istringstream in(out.str());
  Schedule back = readScheduleJson(in);
  CHECK(back.algorithm == VmAlgorithm::ExtendedVM);
  CHECK(back.totalRounds == result.schedule.totalRounds);
  REQUIRE(back.phases.size() == result.schedule.phases.size());
  for (std::size_t i = 0; i < back.phases.size(); ++i) {
    CHECK(back.phases[i].activeNodes == result.schedule.phases[i].activeNodes);
    CHECK(back.phases[i].backupEdges == result.schedule.phases[i].backupEdges);
  }
}

TEST_CASE("ledger CSV round trip keeps rationals exact") {
  Graph cross = crossGraph();
  ExtendedVmResult result = extendedVM(cross, 2);
  std::ostringstream out;
  writeLedgerCsv(out, result.ledger);
  std::istringstream in(out.str());
  MemoryLedger back = readLedgerCsv(in, Share{1});
  CHECK(back.virtualOf == result.ledger.virtualOf);
  CHECK(back.gainOf == result.ledger.gainOf);
}
