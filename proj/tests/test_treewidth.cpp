#include <doctest.h>

#include "pcsn/errors.hpp"
#include "pcsn/gadgets.hpp"
#include "pcsn/generators.hpp"
#include "pcsn/treewidth.hpp"

using namespace pcsn;

namespace {

Graph path_graph(int n) {
  Graph g(n);
  for (int v = 0; v + 1 < n; ++v) g.add_edge(v, v + 1, rat(1));
  return g;
}

Graph cycle_graph(int n) {
  Graph g = path_graph(n);
  g.add_edge(n - 1, 0, rat(1));
  return g;
}

} // namespace

TEST_CASE("validate_decomposition conditions") {
  Graph g = path_graph(3);
  SUBCASE("single bag holding everything is valid") {
    TreeDecomposition td;
    td.bags = {{0, 1, 2}};
    DecompositionReport rep = validate_decomposition(g, td);
    CHECK(rep.ok());
    CHECK(td.width() == 2);
  }
  SUBCASE("missing joint endpoints violate condition 2") {
    TreeDecomposition td;
    td.bags = {{0, 1}, {2}};
    td.edges = {{0, 1}};
    DecompositionReport rep = validate_decomposition(g, td);
    CHECK(!rep.ok());
    CHECK(rep.uncovered_edges == std::vector<int>{1});
  }
  SUBCASE("vertex in two disconnected bags violates condition 3") {
    TreeDecomposition td;
    td.bags = {{0, 1}, {1, 2}, {0}};
    td.edges = {{0, 1}, {1, 2}};
    DecompositionReport rep = validate_decomposition(g, td);
    CHECK(!rep.ok());
    CHECK(rep.disconnected_vertices == std::vector<int>{0});
  }
  SUBCASE("uncovered vertex violates condition 1") {
    TreeDecomposition td;
    td.bags = {{0, 1}};
    DecompositionReport rep = validate_decomposition(g, td);
    CHECK(!rep.ok());
    CHECK(rep.uncovered_vertices == std::vector<int>{2});
  }
}

TEST_CASE("min-degree heuristic widths") {
  SUBCASE("trees have width 1") {
    Graph g(6);
    g.add_edge(0, 1, rat(1));
    g.add_edge(0, 2, rat(1));
    g.add_edge(1, 3, rat(1));
    g.add_edge(1, 4, rat(1));
    g.add_edge(2, 5, rat(1));
    TreeDecomposition td = heuristic_decompose(g);
    CHECK(validate_decomposition(g, td).ok());
    CHECK(td.width() == 1);
  }
  SUBCASE("C5 has width 2") {
    Graph g = cycle_graph(5);
    TreeDecomposition td = heuristic_decompose(g);
    CHECK(validate_decomposition(g, td).ok());
    CHECK(td.width() == 2);
  }
  SUBCASE("K4 has width 3") {
    Graph g = source_graph_k4();
    TreeDecomposition td = heuristic_decompose(g);
    CHECK(validate_decomposition(g, td).ok());
    CHECK(td.width() == 3);
  }
  SUBCASE("2-tree instances stay at width 2") {
    for (std::uint64_t seed = 1; seed <= 10; ++seed) {
      RandomSpec spec;
      spec.kind = RandomKind::SeriesParallel;
      spec.n = 8;
      spec.demand_count = 1;
      spec.seed = seed;
      Instance inst = gen_random(spec);
      TreeDecomposition td = heuristic_decompose(inst.graph());
      CHECK(validate_decomposition(inst.graph(), td).ok());
      CHECK(td.width() <= 2);
    }
  }
}

TEST_CASE("to_nice produces valid nice decompositions") {
  SUBCASE("single two-vertex bag") {
    Graph g = path_graph(2);
    TreeDecomposition td;
    td.bags = {{0, 1}};
    NiceDecomposition nd = to_nice(td, g, 0);
    CHECK(validate_nice(nd));
    CHECK(nd.width() == td.width());
    CHECK(nd.nodes[nd.root].bag == std::vector<int>{0});
  }
  SUBCASE("P3 with two bags") {
    Graph g = path_graph(3);
    TreeDecomposition td;
    td.bags = {{0, 1}, {1, 2}};
    td.edges = {{0, 1}};
    NiceDecomposition nd = to_nice(td, g);
    CHECK(validate_nice(nd));
    CHECK(nd.width() == 1);
  }
  SUBCASE("star decomposition with several arms") {
    Graph g(4);
    g.add_edge(0, 1, rat(1));
    g.add_edge(0, 2, rat(1));
    g.add_edge(0, 3, rat(1));
    TreeDecomposition td;
    td.bags = {{0, 1}, {0, 2}, {0, 3}};
    td.edges = {{0, 1}, {1, 2}};
    NiceDecomposition nd = to_nice(td, g, 0);
    CHECK(validate_nice(nd));
    CHECK(nd.width() == 1);
    CHECK(nd.nodes[nd.root].bag == std::vector<int>{0});
  }
  SUBCASE("invalid input is rejected") {
    Graph g = path_graph(3);
    TreeDecomposition td;
    td.bags = {{0, 1}};
    CHECK_THROWS_AS(to_nice(td, g), DomainError);
  }
  SUBCASE("random instances normalize cleanly") {
    for (std::uint64_t seed = 20; seed < 35; ++seed) {
      RandomSpec spec;
      spec.kind = seed % 2 ? RandomKind::Grid : RandomKind::SeriesParallel;
      spec.rows = 3;
      spec.cols = 3;
      spec.n = 9;
      spec.demand_count = 2;
      spec.seed = seed;
      Instance inst = gen_random(spec);
      TreeDecomposition td = heuristic_decompose(inst.graph());
      NiceDecomposition nd = to_nice(td, inst.graph(), 0);
      CHECK(validate_nice(nd));
      CHECK(nd.width() == td.width());
      CHECK(nd.nodes[nd.root].bag == std::vector<int>{0});
    }
  }
}

TEST_CASE("PACE round trip") {
  Graph g = cycle_graph(5);
  TreeDecomposition td = heuristic_decompose(g);
  std::string text = decomposition_to_pace(td, g.num_vertices());
  TreeDecomposition back = decomposition_from_pace(text);
  CHECK(back.bags == td.bags);
  CHECK(back.edges == td.edges);
  CHECK(decomposition_to_pace(back, g.num_vertices()) == text);
  CHECK_THROWS_AS(decomposition_from_pace("b 1 2\n"), DomainError);
}
