#include <doctest.h>

#include "pcsn/clustering.hpp"
#include "pcsn/generators.hpp"
#include "pcsn/oracle.hpp"
#include "pcsn/prng.hpp"
#include "pcsn/solution.hpp"
#include "pcsn/verify.hpp"

using namespace pcsn;

namespace {

Instance two_vertex(Rat edge_cost, Rat penalty) {
  Graph g(2);
  g.add_edge(0, 1, std::move(edge_cost));
  return Instance(std::move(g), {{0, 1}}, PenaltyFn::additive({std::move(penalty)}));
}

} // namespace

TEST_CASE("K2 with a rich demand buys the edge") {
  Instance inst = two_vertex(rat(2), rat(10));
  ClusteringOutput out = submodular_pc_clustering(inst);
  CHECK(out.forest == std::vector<int>{0});
  CHECK(out.dead == 0);
  CHECK(out.dual.y_demand[0] == 2);
  CHECK(out.dual.y_of(1) == 2);
  // One growth step of eta = 1, then the edge merge.
  bool merged = false;
  for (const TraceEvent& ev : out.trace) {
    if (ev.kind == TraceEvent::Kind::Grow) CHECK(ev.eta == 1);
    if (ev.kind == TraceEvent::Kind::Merge) merged = true;
  }
  CHECK(merged);
  CHECK(verify_clustering_output(inst, out).ok());
}

TEST_CASE("K2 with a poor demand dies at eta one half") {
  Instance inst = two_vertex(rat(2), rat(1));
  ClusteringOutput out = submodular_pc_clustering(inst);
  CHECK(out.forest.empty());
  CHECK(out.dead == 1);
  CHECK(out.dual.y_demand[0] == 1);
  CHECK(out.dual.y_of(out.dead) == inst.penalty().eval(out.dead));
  CHECK(verify_clustering_output(inst, out).ok());
}

TEST_CASE("no demands, nothing grows") {
  Graph g(3);
  g.add_edge(0, 1, rat(1));
  Instance inst(std::move(g), {}, PenaltyFn::additive({}));
  ClusteringOutput out = submodular_pc_clustering(inst);
  CHECK(out.forest.empty());
  CHECK(out.dual.clusters.size() == 3); // singletons only
  CHECK(out.iterations == 0);
}

TEST_CASE("zero-cost edges merge before any growth") {
  Graph g(3);
  g.add_edge(0, 1, rat(0));
  g.add_edge(1, 2, rat(4));
  Instance inst(std::move(g), {{0, 2}}, PenaltyFn::additive({rat(10)}));
  ClusteringOutput out = submodular_pc_clustering(inst);
  // {0,1} merges at time zero, then both moats grow by 2 until edge 1 goes
  // tight (slack 4 at rate 2), crediting the demand from both sides.
  CHECK(out.dead == 0);
  CHECK(out.forest == std::vector<int>{0, 1});
  CHECK(out.dual.y_demand[0] == 4);
  CHECK(verify_clustering_output(inst, out).ok());
}

TEST_CASE("pruning removes a dead hanging branch") {
  // Demand {0,1} is rich; demand {2,3} pulls the cheap edge (1,2) into F1
  // while its moat grows, then dies against the expensive edge (2,3).
  // Cluster {2} ends up cutting no live demand with exactly one F2 boundary
  // edge, so that edge is pruned.
  Graph g(4);
  g.add_edge(0, 1, rat(2));
  g.add_edge(1, 2, rat(1, 2));
  g.add_edge(2, 3, rat(100));
  Instance inst(std::move(g), {{0, 1}, {2, 3}},
                PenaltyFn::additive({rat(100), rat(2)}));
  ClusteringOutput out = submodular_pc_clustering(inst);
  CHECK(out.dead == 0b10);
  CHECK(out.dual.y_demand[1] == 2);
  CHECK(out.forest == std::vector<int>{0});
  CHECK(verify_clustering_output(inst, out).ok());
  bool pruned = false;
  for (const TraceEvent& ev : out.trace)
    if (ev.kind == TraceEvent::Kind::Prune && ev.edge == 1) pruned = true;
  CHECK(pruned);
}

TEST_CASE("no dead clusters means no pruning") {
  Instance inst = two_vertex(rat(2), rat(10));
  GrowthResult growth = grow(inst);
  std::vector<bool> in_b(growth.dual.clusters.size(), false);
  std::vector<int> pruned = prune(inst.graph(), growth.dual.clusters, in_b,
                                  growth.forest);
  CHECK(pruned == growth.forest);
}

TEST_CASE("a fully dead component is pruned to nothing") {
  // Path 0 - 1 - 2, one spanning demand: the moat around 0 buys edge (0,1)
  // first, then the demand dies against the pricier edge (1,2). Pruning
  // unwinds the dead component bottom-up to the empty forest.
  Graph g(3);
  g.add_edge(0, 1, rat(1));
  g.add_edge(1, 2, rat(3));
  Instance inst(std::move(g), {{0, 2}}, PenaltyFn::additive({rat(5, 2)}));
  ClusteringOutput out = submodular_pc_clustering(inst);
  CHECK(out.dead == 0b1);
  bool bought_then_pruned = false;
  for (const TraceEvent& ev : out.trace)
    if (ev.kind == TraceEvent::Kind::Prune && ev.edge == 0) bought_then_pruned = true;
  CHECK(bought_then_pruned);
  CHECK(out.grown_forest == std::vector<int>{0});
  CHECK(out.forest.empty());
  CHECK(out.dual.y_of(out.dead) == inst.penalty().eval(out.dead));
  CHECK(verify_clustering_output(inst, out).ok());
}

TEST_CASE("clustering contract holds on random instances") {
  for (std::uint64_t seed = 1; seed <= 40; ++seed) {
    RandomSpec spec;
    spec.kind = seed % 2 ? RandomKind::Grid : RandomKind::ErdosRenyi;
    spec.rows = 3;
    spec.cols = 3;
    spec.n = 8;
    spec.demand_count = 1 + static_cast<int>(seed % 5);
    spec.capped_penalty = seed % 3 == 0;
    spec.seed = seed;
    Instance inst = gen_random(spec);
    ClusteringOutput out = submodular_pc_clustering(inst);
    CheckReport report = verify_clustering_output(inst, out, 8);
    INFO("seed ", seed, ": ", report.failures.empty() ? "" : report.failures[0]);
    CHECK(report.ok());
  }
}

TEST_CASE("capped penalties can kill demand pairs jointly") {
  Graph g(4);
  g.add_edge(0, 1, rat(50));
  g.add_edge(2, 3, rat(50));
  Instance inst(std::move(g), {{0, 1}, {2, 3}},
                PenaltyFn::capped_additive({rat(3), rat(3)}, rat(4)));
  ClusteringOutput out = submodular_pc_clustering(inst);
  CHECK(out.dead == 0b11);
  CHECK(out.dual.y_of(out.dead) == 4);
  CHECK(verify_clustering_output(inst, out).ok());
}

TEST_CASE("any satisfying forest pays at least its demands' duals") {
  // For every demand subset: force it to be satisfied (huge penalties there,
  // zero elsewhere), take the oracle's optimal forest, and compare its
  // length against the dual sum over what it actually satisfies.
  for (std::uint64_t seed = 500; seed < 512; ++seed) {
    RandomSpec spec;
    spec.kind = seed % 2 ? RandomKind::ErdosRenyi : RandomKind::Grid;
    spec.rows = 2;
    spec.cols = 3;
    spec.n = 6;
    spec.edge_percent = 50;
    spec.demand_count = 3;
    spec.seed = seed;
    Instance inst = gen_random(spec);
    if (inst.graph().num_edges() > 14) continue;
    ClusteringOutput clus = submodular_pc_clustering(inst);
    for (DemandMask want = 0; want <= inst.all_demands_mask(); ++want) {
      std::vector<Rat> forcing;
      for (int d = 0; d < inst.num_demands(); ++d)
        forcing.push_back(want & (DemandMask{1} << d) ? rat(100000) : rat(0));
      Instance forced = inst.with_penalty(PenaltyFn::additive(std::move(forcing)));
      Solution sol = oracle_spcsf(forced);
      if ((sol.satisfied & want) != want) continue; // disconnected pair
      CHECK(sol.length >= clus.dual.y_of(sol.satisfied));
      if (want == inst.all_demands_mask()) break;
    }
  }
}

TEST_CASE("clustering never beats the exact optimum") {
  for (std::uint64_t seed = 60; seed < 80; ++seed) {
    RandomSpec spec;
    spec.kind = seed % 2 ? RandomKind::ErdosRenyi : RandomKind::SeriesParallel;
    spec.n = 6;
    spec.edge_percent = 40;
    spec.demand_count = 3;
    spec.seed = seed;
    Instance inst = gen_random(spec);
    if (inst.graph().num_edges() > 16) continue;
    Solution approx = solution_cost(inst, submodular_pc_clustering(inst).forest);
    Solution exact = oracle_spcsf(inst);
    CHECK(approx.total >= exact.total);
  }
}

TEST_CASE("trace replays identically") {
  RandomSpec spec;
  spec.kind = RandomKind::Grid;
  spec.demand_count = 4;
  spec.seed = 12;
  Instance inst = gen_random(spec);
  ClusteringOutput a = submodular_pc_clustering(inst);
  ClusteringOutput b = submodular_pc_clustering(inst);
  CHECK(trace_to_jsonl(inst, a) == trace_to_jsonl(inst, b));
  CHECK(a.forest == b.forest);
  CHECK(a.dead == b.dead);
}

TEST_CASE("truncated-coverage tables keep the full contract") {
  // pi(D) = min(cap, weight of elements covered by D): monotone submodular
  // with real interaction between demands, unlike additive or capped kinds.
  for (std::uint64_t seed = 1; seed <= 3; ++seed) {
    Prng rng(seed);
    RandomSpec spec;
    spec.kind = RandomKind::Grid;
    spec.rows = 3;
    spec.cols = 3;
    spec.demand_count = 8;
    spec.seed = seed;
    Instance base = gen_random(spec);
    const int nd = base.num_demands();
    std::vector<std::uint32_t> owns(nd);
    std::vector<Rat> w(12);
    for (auto& x : w) x = rat(rng.range(0, 6), 2);
    for (auto& o : owns) o = static_cast<std::uint32_t>(rng.next() & 0xfff);
    Rat cap = rat(rng.range(4, 30), 2);
    std::vector<Rat> table(std::size_t{1} << nd);
    for (DemandMask m = 1; m < (DemandMask{1} << nd); ++m) {
      std::uint32_t covered = 0;
      for (int d = 0; d < nd; ++d)
        if (m & (DemandMask{1} << d)) covered |= owns[d];
      Rat s = 0;
      for (int e = 0; e < 12; ++e)
        if (covered & (1u << e)) s += w[e];
      table[m] = s > cap ? cap : s;
    }
    Instance inst = base.with_penalty(PenaltyFn::table(nd, std::move(table)));
    REQUIRE(check_penalty_axioms(inst.penalty()).ok());
    ClusteringOutput out = submodular_pc_clustering(inst);
    CheckReport rep = verify_clustering_output(inst, out, 8);
    INFO("seed ", seed, ": ", rep.failures.empty() ? "" : rep.failures[0]);
    CHECK(rep.ok());
  }
}

TEST_CASE("explicit-table penalties drive growth too") {
  Graph g(4);
  g.add_edge(0, 1, rat(6));
  g.add_edge(2, 3, rat(6));
  // Strongly subadditive pair: either demand alone is pricey, both together
  // barely more, so the pair set goes tight first.
  PenaltyFn tab = PenaltyFn::table(2, {rat(0), rat(2), rat(2), rat(5, 2)});
  Instance inst(std::move(g), {{0, 1}, {2, 3}}, tab);
  ClusteringOutput out = submodular_pc_clustering(inst);
  CHECK(out.dead == 0b11);
  CHECK(out.dual.y_of(0b11) == rat(5, 2));
  CHECK(verify_clustering_output(inst, out).ok());
}
