#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>
#include <sstream>

#include "kbp/errors.hpp"
#include "kbp/graph.hpp"
#include "kbp/placement.hpp"
#include "test_util.hpp"

using namespace kbp;

TEST_CASE("k-next-modulo worked examples") {
  CHECK(kNextModulo(4, {1, 2, 3, 5, 6}, 3) == std::vector<NodeId>{5, 6, 1});
  CHECK(kNextModulo(6, {1, 2, 3}, 2) == std::vector<NodeId>{1, 2});  // pure wrap
  CHECK(kNextModulo(2, {1, 3}, 2) == std::vector<NodeId>{3, 1});     // k = deg
  CHECK(kNextModulo(5, {1, 9}, 1) == std::vector<NodeId>{9});
  CHECK(kNextModulo(3, {7}, 5) == std::vector<NodeId>{7});  // k > deg truncates
}

TEST_CASE("k-next-modulo validation") {
  CHECK_THROWS_AS(kNextModulo(4, {1, 2}, 0), ParameterError);
  CHECK_THROWS_AS(kNextModulo(4, {}, 1), ParameterError);
  CHECK_THROWS_AS(kNextModulo(4, {3, 1}, 1), ParameterError);  // unsorted
}

TEST_CASE("k-next-modulo equals an independent circular scan") {
  std::mt19937_64 rng(2024);
  for (int iter = 0; iter < 200; ++iter) {
    NodeId v = 1 + static_cast<NodeId>(rng() % 100);
    std::set<NodeId> pool;
    std::size_t deg = 1 + rng() % 12;
    while (pool.size() < deg) {
      NodeId u = 1 + static_cast<NodeId>(rng() % 100);
      if (u != v) pool.insert(u);
    }
    std::vector<NodeId> neighbors(pool.begin(), pool.end());
    int k = 1 + static_cast<int>(rng() % 5);
    CHECK(kNextModulo(v, neighbors, k) == test::circularScanChoices(v, neighbors, k));
  }
}

TEST_CASE("runKBP on C4, k=1") {
  Graph c4 = generateCycle(4);
  auto [p, run] = runKBP(c4, 1);
  CHECK(run.roundsUsed == 1);
  CHECK(p.choices == std::map<NodeId, std::vector<NodeId>>{
                         {1, {2}}, {2, {3}}, {3, {4}}, {4, {1}}});
  LoadReport report = computeLoads(c4, p, 1);
  for (const auto& [v, load] : report.loads) CHECK(load == 1);
  CHECK(report.maxLoad == 1);
}

TEST_CASE("runKBP on star(5), k=1") {
  Graph s5 = generateStar(5);
  auto [p, run] = runKBP(s5, 1);
  CHECK(run.roundsUsed == 1);
  for (NodeId leaf = 2; leaf <= 6; ++leaf) CHECK(p.choices.at(leaf) == std::vector<NodeId>{1});
  CHECK(p.choices.at(1) == std::vector<NodeId>{2});  // center picks its successor
  LoadReport report = computeLoads(s5, p, 5);
  CHECK(report.loads.at(1) == 5);
  CHECK(report.loads.at(2) == 1);
  CHECK(report.loads.at(3) == 0);
  CHECK(report.maxLoad == 5);
  CHECK(report.cTimesK == 5);  // c=5, K=1: bound met with equality
}

TEST_CASE("k >= maxDegree selects whole neighborhoods") {
  auto [g, layout] = generateUDG(20, 0.5, 3);
  REQUIRE(g.minDegree() >= 1);
  int k = static_cast<int>(g.maxDegree());
  auto [p, run] = runKBP(g, k);
  for (NodeId v : g.nodes()) {
    auto sorted = p.choices.at(v);
    std::sort(sorted.begin(), sorted.end());
    CHECK(sorted == g.neighbors(v));
  }
  LoadReport report = computeLoads(g, p, 1);
  for (NodeId v : g.nodes()) CHECK(report.loads.at(v) == static_cast<int>(g.degree(v)));
}

TEST_CASE("runKBP rejects isolated nodes by name") {
  Graph g = Graph::fromEdges({{1, 2}}, {9});
  try {
    runKBP(g, 1);
    CHECK(false);
  } catch (const ParameterError& e) {
    CHECK(std::string(e.what()).find("9") != std::string::npos);
  }
}

TEST_CASE("distributed run agrees with central rule on random graphs") {
  for (std::uint64_t seed = 1; seed <= 10; ++seed) {
    auto [g, layout] = generateUDG(30, 0.35, 100 + seed);
    if (g.minDegree() == 0) continue;
    for (int k : {1, 2, 3}) {
      auto [p, run] = runKBP(g, k);
      CHECK(run.roundsUsed == 1);
      for (NodeId v : g.nodes()) CHECK(p.choices.at(v) == kNextModulo(v, g.neighbors(v), k));
    }
  }
}

TEST_CASE("max-load bound: maxLoad <= c*K on UDG instances") {
  int tested = 0;
  for (std::uint64_t seed = 1; tested < 40; ++seed) {
    auto [g, layout] = generateUDG(25 + static_cast<int>(seed % 30), 0.3, 500 + seed);
    int c = neighborhoodIndependence(g);
    for (int k : {1, 2, 3}) {
      if (g.minDegree() < static_cast<std::size_t>(k)) continue;
      auto [p, run] = runKBP(g, k);
      LoadReport report = computeLoads(g, p, c);
      CHECK(report.maxLoad <= report.cTimesK);
      ++tested;
    }
    REQUIRE(seed < 200);  // generator must yield usable instances
  }
}

TEST_CASE("placement validation catches malformed placements") {
  Graph c4 = generateCycle(4);
  Placement empty;
  empty.k = 1;
  CHECK_THROWS_AS(validatePlacement(c4, empty), ValidationError);

  Placement nonEdge;
  nonEdge.k = 1;
  nonEdge.choices = {{1, {3}}, {2, {3}}, {3, {4}}, {4, {1}}};  // 1-3 is not an edge
  CHECK_THROWS_AS(validatePlacement(c4, nonEdge), ValidationError);

  Placement repeat;
  repeat.k = 2;
  repeat.choices = {{1, {2, 2}}, {2, {1, 3}}, {3, {2, 4}}, {4, {1, 3}}};
  CHECK_THROWS_AS(validatePlacement(c4, repeat), ValidationError);

  Placement good;
  good.k = 1;
  good.choices = {{1, {2}}, {2, {1}}, {3, {4}}, {4, {3}}};
  CHECK_NOTHROW(validatePlacement(c4, good));
}

TEST_CASE("survivability counts") {
  Graph c4 = generateCycle(4);
  auto [p, run] = runKBP(c4, 2);

  SUBCASE("no crashes: every node keeps all its choices") {
    auto surviving = survivability(c4, p, {});
    for (NodeId v : c4.nodes()) CHECK(surviving.at(v) == 2);
  }

  SUBCASE("crash all of a node's choices") {
    // With k=2 every node chose both cycle neighbors.
    auto surviving = survivability(c4, p, {2, 4});
    CHECK(surviving.at(1) == 0);
    CHECK(surviving.at(3) == 0);
    CHECK(surviving.count(2) == 0);  // crashed nodes are not reported
    auto partial = survivability(c4, p, {2});
    CHECK(partial.at(1) == 1);
    CHECK(partial.at(4) == 2);  // 4 chose {1, 3}
  }
}

TEST_CASE("selection subgraph") {
  SUBCASE("C4, k=1 gives back C4") {
    Graph c4 = generateCycle(4);
    auto [p, run] = runKBP(c4, 1);
    CHECK(selectionSubgraph(c4, p).edges() == c4.edges());
  }

  SUBCASE("star leaves=3, k=1 gives back the star") {
    Graph s3 = generateStar(3);
    auto [p, run] = runKBP(s3, 1);
    CHECK(selectionSubgraph(s3, p).edges() == s3.edges());
  }

  SUBCASE("invalid placement rejected") {
    Graph c4 = generateCycle(4);
    Placement bad;
    bad.k = 1;
    bad.choices = {{1, {3}}, {2, {3}}, {3, {4}}, {4, {1}}};
    CHECK_THROWS_AS(selectionSubgraph(c4, bad), ValidationError);
  }

  SUBCASE("degree bound: selection degree <= cK + K") {
    for (std::uint64_t seed = 1; seed <= 10; ++seed) {
      auto [g, layout] = generateUDG(35, 0.35, 700 + seed);
      int c = neighborhoodIndependence(g);
      for (int k : {1, 2}) {
        if (g.minDegree() < static_cast<std::size_t>(k)) continue;
        auto [p, run] = runKBP(g, k);
        Graph sel = selectionSubgraph(g, p);
        CHECK(sel.maxDegree() <= static_cast<std::size_t>(c * k + k));
      }
    }
  }
}

TEST_CASE("placement JSON round trip") {
  Graph c4 = generateCycle(4);
  auto [p, run] = runKBP(c4, 2);
  std::ostringstream out;
  writePlacementJson(out, p);
  std::istringstream in(out.str());
  Placement back = readPlacementJson(in);
  CHECK(back.k == p.k);
  CHECK(back.choices == p.choices);
}

TEST_CASE("loads CSV output") {
  Graph c4 = generateCycle(4);
  auto [p, run] = runKBP(c4, 1);
  std::ostringstream out;
  writeLoadsCsv(out, computeLoads(c4, p, 1));
  CHECK(out.str() == "node,load\n1,1\n2,1\n3,1\n4,1\n");
}
