#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "kbp/errors.hpp"
#include "kbp/graph.hpp"
#include "kbp/oracle.hpp"
#include "kbp/placement.hpp"

using namespace kbp;

namespace {

Graph completeGraph(int n) {
  std::vector<std::pair<NodeId, NodeId>> edges;
  for (NodeId i = 1; i <= n; ++i)
    for (NodeId j = i + 1; j <= n; ++j) edges.emplace_back(i, j);
  return Graph::fromEdges(edges);
}

int loadOf(const Graph& g, const Placement& p) {
  return computeLoads(g, p, 1).maxLoad;
}

}  // namespace

TEST_CASE("optimal load on fixed graphs") {
  SUBCASE("C4, k=1: a perfect orientation exists") {
    Graph c4 = generateCycle(4);
    OptimalPlacementResult flow = optimalMaxLoad(c4, 1);
    OptimalPlacementResult exhaustive = exhaustiveOptimal(c4, 1);
    CHECK(flow.optimalMaxLoad == 1);
    CHECK(exhaustive.optimalMaxLoad == 1);
    CHECK(loadOf(c4, flow.witness) == 1);
    CHECK(loadOf(c4, exhaustive.witness) == 1);
  }

  SUBCASE("star(5), k=1: leaves have no alternative") {
    Graph s5 = generateStar(5);
    CHECK(optimalMaxLoad(s5, 1).optimalMaxLoad == 5);
    CHECK(exhaustiveOptimal(s5, 1).optimalMaxLoad == 5);
  }

  SUBCASE("K4, k=1: perfect selection exists") {
    Graph k4 = completeGraph(4);
    CHECK(optimalMaxLoad(k4, 1).optimalMaxLoad == 1);
    CHECK(exhaustiveOptimal(k4, 1).optimalMaxLoad == 1);
  }

  SUBCASE("triangle, k=2: everyone must pick both neighbors") {
    Graph triangle = generateCycle(3);
    CHECK(optimalMaxLoad(triangle, 2).optimalMaxLoad == 2);
    CHECK(exhaustiveOptimal(triangle, 2).optimalMaxLoad == 2);
  }

  SUBCASE("path 1-2-3, k=1: both endpoints must pick the middle") {
    Graph path = Graph::fromEdges({{1, 2}, {2, 3}});
    OptimalPlacementResult exhaustive = exhaustiveOptimal(path, 1);
    CHECK(exhaustive.optimalMaxLoad == 2);
    CHECK(optimalMaxLoad(path, 1).optimalMaxLoad == exhaustive.optimalMaxLoad);
  }
}

TEST_CASE("witnesses are valid and achieve the reported load") {
  for (std::uint64_t seed = 1; seed <= 15; ++seed) {
    auto [g, layout] = generateUDG(10, 0.5, 900 + seed);
    for (int k : {1, 2}) {
      if (g.minDegree() < static_cast<std::size_t>(k)) continue;
      OptimalPlacementResult result = optimalMaxLoad(g, k);
      validatePlacement(g, result.witness);
      CHECK(loadOf(g, result.witness) == result.optimalMaxLoad);
    }
  }
}

TEST_CASE("flow oracle agrees with exhaustive enumeration") {
  int tested = 0;
  for (std::uint64_t seed = 1; tested < 50; ++seed) {
    REQUIRE(seed <= 400);
    int n = 5 + static_cast<int>(seed % 8);  // 5..12 nodes
    auto [g, layout] = generateUDG(n, 0.55, 1200 + seed);
    int k = 1 + static_cast<int>(seed % 2);
    if (g.minDegree() < static_cast<std::size_t>(k)) continue;
    OptimalPlacementResult exhaustive;
    try {
      exhaustive = exhaustiveOptimal(g, k);
    } catch (const SizeError&) {
      continue;  // combination space above the enumeration cap
    }
    OptimalPlacementResult flow = optimalMaxLoad(g, k);
    CHECK(flow.optimalMaxLoad == exhaustive.optimalMaxLoad);
    ++tested;
  }
}

TEST_CASE("the distributed rule is sandwiched by the oracle") {
  // optimal <= maxLoad(K-next-modulo) <= c*k whenever minDegree >= k.
  for (std::uint64_t seed = 1; seed <= 20; ++seed) {
    auto [g, layout] = generateUDG(12, 0.5, 1500 + seed);
    int c = neighborhoodIndependence(g);
    for (int k : {1, 2}) {
      if (g.minDegree() < static_cast<std::size_t>(k)) continue;
      auto [p, run] = runKBP(g, k);
      int heuristic = loadOf(g, p);
      CHECK(optimalMaxLoad(g, k).optimalMaxLoad <= heuristic);
      CHECK(heuristic <= c * k);
    }
  }
}

TEST_CASE("oracle validation and size limits") {
  Graph c4 = generateCycle(4);
  CHECK_THROWS_AS(optimalMaxLoad(c4, 0), ParameterError);
  CHECK_THROWS_AS(optimalMaxLoad(c4, 3), ParameterError);  // minDegree < k
  CHECK_THROWS_AS(optimalMaxLoad(generateCycle(80), 1, 60), SizeError);
  CHECK_THROWS_AS(exhaustiveOptimal(completeGraph(12), 5, 1e6), SizeError);
}
