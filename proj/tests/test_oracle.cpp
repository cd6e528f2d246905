#include <doctest.h>

#include "pcsn/errors.hpp"
#include "pcsn/gadgets.hpp"
#include "pcsn/generators.hpp"
#include "pcsn/oracle.hpp"
#include "pcsn/prng.hpp"
#include "pcsn/steiner.hpp"

using namespace pcsn;

namespace {

Instance two_vertex(Rat edge_cost, Rat penalty, bool rooted = false) {
  Graph g(2);
  g.add_edge(0, 1, std::move(edge_cost));
  return Instance(std::move(g), {{1, 0}}, PenaltyFn::additive({std::move(penalty)}),
                  rooted ? std::optional<int>(0) : std::nullopt);
}

Instance random_small(std::uint64_t seed, int max_edges = 16, bool rooted = false) {
  RandomSpec spec;
  spec.kind = seed % 2 ? RandomKind::ErdosRenyi : RandomKind::SeriesParallel;
  spec.n = 6 + static_cast<int>(seed % 3);
  spec.edge_percent = 45;
  spec.demand_count = 2 + static_cast<int>(seed % 3);
  spec.capped_penalty = seed % 5 == 0;
  spec.rooted = rooted;
  spec.seed = seed;
  Instance inst = gen_random(spec);
  if (inst.graph().num_edges() > max_edges) return random_small(seed + 1000, max_edges, rooted);
  return inst;
}

} // namespace

TEST_CASE("SPCSF oracle on K2") {
  CHECK(oracle_spcsf(two_vertex(rat(2), rat(10))).total == 2);
  CHECK(oracle_spcsf(two_vertex(rat(2), rat(1))).total == 1);
}

TEST_CASE("SPCSF oracle on a triangle with two demands") {
  Graph g(3);
  g.add_edge(0, 1, rat(1));
  g.add_edge(1, 2, rat(1));
  g.add_edge(0, 2, rat(1));
  Instance inst(std::move(g), {{0, 1}, {1, 2}},
                PenaltyFn::additive({rat(5), rat(5)}));
  Solution sol = oracle_spcsf(inst);
  CHECK(sol.total == 2);
  CHECK(sol.satisfied == 0b11);
}

TEST_CASE("edge-subset and satisfied-set routes agree") {
  for (std::uint64_t seed = 1; seed <= 25; ++seed) {
    Instance inst = random_small(seed);
    OracleBudget wide;
    Solution a = oracle_spcsf(inst, wide);
    OracleBudget narrow;
    narrow.max_edges = -1; // force the satisfied-set route
    narrow.max_hub_petal_edges = -1;
    Solution b = oracle_spcsf(inst, narrow);
    INFO("seed ", seed);
    CHECK(a.total == b.total);
  }
}

TEST_CASE("hub route agrees with edge-subset enumeration") {
  Prng rng(17);
  for (int round = 0; round < 25; ++round) {
    // Random hub graph: petals of 1-3 vertices around vertex 0.
    int petals = rng.range(2, 4);
    std::vector<std::vector<int>> petal_vertices;
    int n = 1;
    for (int p = 0; p < petals; ++p) {
      int size = rng.range(1, 3);
      std::vector<int> vs;
      for (int i = 0; i < size; ++i) vs.push_back(n++);
      petal_vertices.push_back(vs);
    }
    Graph g(n);
    for (const auto& vs : petal_vertices) {
      for (std::size_t i = 0; i < vs.size(); ++i) {
        g.add_edge(0, vs[i], Rat(static_cast<long>(rng.range(1, 6))));
        if (i + 1 < vs.size())
          g.add_edge(vs[i], vs[i + 1], Rat(static_cast<long>(rng.range(1, 6))));
      }
    }
    if (g.num_edges() > 18) continue;
    std::vector<Demand> demands;
    std::vector<Rat> pens;
    int nd = rng.range(2, 5);
    for (int d = 0; d < nd; ++d) {
      int s = static_cast<int>(rng.below(n));
      int t = static_cast<int>(rng.below(n));
      if (s == t) t = (t + 1) % n;
      demands.push_back({s, t});
      pens.push_back(Rat(static_cast<long>(rng.range(1, 8))));
    }
    Instance inst(std::move(g), std::move(demands), PenaltyFn::additive(std::move(pens)));

    auto hub = hub_oracle_spcsf(inst);
    REQUIRE(hub.has_value());
    Solution exact = oracle_spcsf(inst); // edge-subset route (<= 18 edges)
    INFO("round ", round);
    CHECK(hub->total == exact.total);
  }
}

TEST_CASE("steiner_forest_len basics") {
  Graph g(4);
  g.add_edge(0, 1, rat(1));
  g.add_edge(1, 2, rat(1));
  g.add_edge(2, 3, rat(1));
  g.add_edge(3, 0, rat(1));
  SUBCASE("no demands") { CHECK(steiner_forest_len(g, {}) == 0); }
  SUBCASE("single demand is a shortest path") {
    CHECK(steiner_forest_len(g, {{0, 2}}) == 2);
  }
  SUBCASE("crossing demands on the 4-cycle share edges") {
    CHECK(steiner_forest_len(g, {{0, 2}, {1, 3}}) == 3);
  }
}

TEST_CASE("Steiner tree witness reconstruction") {
  Prng rng(23);
  for (int round = 0; round < 15; ++round) {
    Instance inst = random_small(100 + round);
    const Graph& g = inst.graph();
    std::vector<int> terminals;
    for (int v = 0; v < g.num_vertices() && terminals.size() < 5; v += 2)
      terminals.push_back(v);
    SteinerTreeTable table(g, terminals);
    std::uint32_t mask = (1u << terminals.size()) - 1;
    auto len = table.tree_length(mask);
    if (!len) continue;
    std::vector<int> edges = table.tree_edges(mask);
    CHECK(g.length_of(edges) == *len);
    CHECK(g.is_forest(edges));
  }
}

TEST_CASE("tour and stroll oracles on K2") {
  Instance cheap = two_vertex(rat(3), rat(10), true);
  CHECK(oracle_tour(cheap).total == 6);   // go and return
  CHECK(oracle_stroll(cheap).total == 3); // one-way walk
  Instance pricey = two_vertex(rat(3), rat(2), true);
  CHECK(oracle_tour(pricey).total == 2);
  CHECK(oracle_stroll(pricey).total == 2);
}

TEST_CASE("root alone with zero penalties") {
  Graph g(3);
  g.add_edge(0, 1, rat(5));
  g.add_edge(1, 2, rat(5));
  Instance inst(std::move(g), {{1, 0}, {2, 0}},
                PenaltyFn::additive({rat(0), rat(0)}), 0);
  CHECK(oracle_tour(inst).total == 0);
  CHECK(oracle_stroll(inst).total == 0);
}

TEST_CASE("unit 4-cycle tour visits everything") {
  Graph g(4);
  g.add_edge(0, 1, rat(1));
  g.add_edge(1, 2, rat(1));
  g.add_edge(2, 3, rat(1));
  g.add_edge(3, 0, rat(1));
  Instance inst(std::move(g), {{1, 0}, {2, 0}, {3, 0}},
                PenaltyFn::additive({rat(10), rat(10), rat(10)}), 0);
  Solution tour = oracle_tour(inst);
  CHECK(tour.total == 4);
  Solution stroll = oracle_stroll(inst);
  CHECK(stroll.total == 3);
}

TEST_CASE("tour dominates stroll dominates the Steiner tree") {
  for (std::uint64_t seed = 300; seed < 320; ++seed) {
    Instance inst = random_small(seed, 14, true);
    if (inst.graph().num_vertices() > 10) continue;
    Solution tour = oracle_tour(inst);
    Solution stroll = oracle_stroll(inst);
    CHECK(stroll.total <= tour.total);
    // On the satisfied set of the tour, a Steiner tree is no longer than the
    // tour and the tour at most doubles it.
    std::vector<Demand> sat;
    for (int d = 0; d < inst.num_demands(); ++d)
      if (tour.satisfied & (DemandMask{1} << d)) sat.push_back(inst.demands()[d]);
    if (sat.empty()) continue;
    Rat tree = steiner_forest_len(inst.graph(), sat);
    CHECK(tree <= tour.length);
    CHECK(tour.length <= 2 * tree);
  }
}

TEST_CASE("vertex cover oracle") {
  CHECK(oracle_vertex_cover(source_graph_k4()).size == 3);
  SUBCASE("single edge") {
    Graph g(2);
    g.add_edge(0, 1, rat(1));
    CHECK(oracle_vertex_cover(g).size == 1);
  }
  SUBCASE("Petersen graph, cross-checked against its independence number") {
    Graph pet = source_graph_petersen();
    VertexCoverResult vc = oracle_vertex_cover(pet);
    CHECK(vc.size == 6);
    CHECK(pet.num_vertices() - vc.size == 4);
    // The complement of a cover is independent.
    std::vector<bool> in_cover(pet.num_vertices(), false);
    for (int v : vc.cover) in_cover[v] = true;
    for (const Edge& e : pet.edges()) CHECK((in_cover[e.u] || in_cover[e.v]));
  }
}

TEST_CASE("oracle budgets refuse oversized inputs") {
  RandomSpec spec;
  spec.kind = RandomKind::Grid;
  spec.rows = 6;
  spec.cols = 6;
  spec.demand_count = 2;
  spec.seed = 3;
  Instance inst = gen_random(spec); // 60 edges
  OracleBudget tight;
  tight.max_edges = 20;
  tight.max_sat_demands = 1;
  tight.max_hub_petal_edges = 1;
  CHECK_THROWS_AS(oracle_spcsf(inst, tight), CapacityError);
  CHECK_THROWS_AS(oracle_tour(two_vertex(rat(1), rat(1), true),
                              [] {
                                OracleBudget b;
                                b.max_tour_vertices = 1;
                                return b;
                              }()),
                  CapacityError);
}
