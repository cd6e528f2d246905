#include <doctest.h>

#include "pcsn/errors.hpp"
#include "pcsn/generators.hpp"
#include "pcsn/oracle.hpp"
#include "pcsn/reduction.hpp"
#include "pcsn/steiner.hpp"
#include "pcsn/verify.hpp"

using namespace pcsn;

namespace {

Instance two_vertex(Rat edge_cost, Rat penalty) {
  Graph g(2);
  g.add_edge(0, 1, std::move(edge_cost));
  return Instance(std::move(g), {{0, 1}}, PenaltyFn::additive({std::move(penalty)}));
}

Instance random_oracle_sized(std::uint64_t seed) {
  RandomSpec spec;
  spec.kind = seed % 2 ? RandomKind::ErdosRenyi : RandomKind::SeriesParallel;
  spec.n = 6 + static_cast<int>(seed % 3);
  spec.edge_percent = 40;
  spec.demand_count = 2 + static_cast<int>(seed % 3);
  spec.capped_penalty = seed % 4 == 0;
  spec.seed = seed;
  Instance inst = gen_random(spec);
  if (inst.graph().num_edges() > 16) return random_oracle_sized(seed + 5000);
  return inst;
}

} // namespace

TEST_CASE("restrict_demands rejects nonpositive epsilon") {
  Instance inst = two_vertex(rat(1), rat(1));
  CHECK_THROWS_AS(restrict_demands(inst, rat(0), exact_initial_solver()), DomainError);
}

TEST_CASE("initial forest satisfying everything short-circuits") {
  Graph g(3);
  g.add_edge(0, 1, rat(3));
  g.add_edge(1, 2, rat(4));
  Instance inst(std::move(g), {{0, 2}}, PenaltyFn::additive({rat(100)}));
  RestrictOutput out = restrict_demands(inst, rat(1), exact_initial_solver());
  // All distances inside F+ are zero, so nothing dies and F = F+.
  CHECK(out.dropped == 0);
  CHECK(out.forest == out.initial_forest);
  CHECK(out.forest == std::vector<int>{0, 1});
}

TEST_CASE("cheap penalty is dropped by the scaled clustering") {
  Instance inst = two_vertex(rat(100), rat(1));
  RestrictOutput out = restrict_demands(inst, rat(1), exact_initial_solver());
  CHECK(out.initial_forest.empty()); // oracle pays the penalty
  CHECK(out.dropped == 1);
  CHECK(out.forest.empty());
  CHECK(out.restricted_penalty.eval(0) == 1); // pi'(empty) = pi(dead)
}

TEST_CASE("rich penalty keeps the edge via the initial solution") {
  Instance inst = two_vertex(rat(100), rat(1000));
  RestrictOutput out = restrict_demands(inst, rat(1), exact_initial_solver());
  CHECK(out.initial_forest == std::vector<int>{0});
  CHECK(out.dropped == 0);
  CHECK(out.forest == std::vector<int>{0});
}

TEST_CASE("zero-cost cycles between F+ and the clustering forest are resolved") {
  // The initial forest takes the direct edge; the clustering, seeing it at
  // length zero, routes through the two native zero-cost edges instead. The
  // union would be a (zero-length) cycle; the output must stay a forest
  // containing all of F+.
  Graph g(3);
  g.add_edge(0, 2, rat(0));
  g.add_edge(1, 2, rat(0));
  g.add_edge(0, 1, rat(5));
  Instance inst(std::move(g), {{0, 1}}, PenaltyFn::additive({rat(100)}));
  InitialSolver direct = [](const Instance&) {
    return InitialSolution{{2}, 0b1};
  };
  RestrictOutput out = restrict_demands(inst, rat(1), direct);
  CHECK(inst.graph().is_forest(out.forest));
  bool has_fplus = false;
  for (int e : out.forest) has_fplus = has_fplus || e == 2;
  CHECK(has_fplus);
  CHECK(out.dropped == 0);
  // The merge stage accepts the forest.
  MergeOutput merged = pc_cluster_merge(inst, out.forest, rat(1), out.satisfied);
  CHECK(verify_merge_output(inst, out.forest, merged, rat(1), out.satisfied).ok());
}

TEST_CASE("contract_components") {
  Graph g(4);
  g.add_edge(0, 1, rat(1)); // forest edge
  g.add_edge(1, 2, rat(3));
  g.add_edge(0, 2, rat(5));
  g.add_edge(2, 3, rat(2));
  SUBCASE("empty forest is the identity") {
    ContractionResult res = contract_components(g, {});
    CHECK(res.contracted.num_vertices() == 4);
    CHECK(res.contracted.num_edges() == 4);
  }
  SUBCASE("parallel edges keep the cheapest") {
    ContractionResult res = contract_components(g, {0});
    CHECK(res.contracted.num_vertices() == 3);
    // Edges (1,2) cost 3 and (0,2) cost 5 become parallel; 3 survives.
    bool found = false;
    for (const Edge& e : res.contracted.edges())
      if (e.cost == 3) found = true;
    CHECK(found);
    for (const Edge& e : res.contracted.edges()) CHECK(e.cost != 5);
  }
  SUBCASE("spanning forest contracts to a point") {
    ContractionResult res = contract_components(g, {0, 1, 3});
    CHECK(res.contracted.num_vertices() == 1);
    CHECK(res.contracted.num_edges() == 0);
  }
  SUBCASE("cycles are rejected") {
    CHECK_THROWS_AS(contract_components(g, {0, 1, 2}), DomainError);
  }
}

TEST_CASE("pc_cluster_merge on a single tree component") {
  Graph g(4);
  g.add_edge(0, 1, rat(2)); // the tree
  g.add_edge(1, 2, rat(50));
  g.add_edge(2, 3, rat(50));
  Instance inst(std::move(g), {{0, 1}}, PenaltyFn::additive({rat(1)}));
  MergeOutput out = pc_cluster_merge(inst, {0}, rat(1, 2), 0b1);
  REQUIRE(out.trees.size() == 1);
  CHECK(out.trees[0] == std::vector<int>{0});
  CHECK(out.demand_partition[0] == 0b1);
  CHECK(verify_merge_output(inst, {0}, out, rat(1, 2), 0b1).ok());
}

TEST_CASE("two components merge over a cheap bridge") {
  Graph g(4);
  g.add_edge(0, 1, rat(3));  // tree A, length 3
  g.add_edge(2, 3, rat(3));  // tree B, length 3
  g.add_edge(1, 2, rat(4));  // bridge
  Instance inst(std::move(g), {{0, 1}, {2, 3}},
                PenaltyFn::additive({rat(1), rat(1)}));
  // Potentials are 2 * 3 = 6 each at eps = 1/2; the bridge costs 4 <= 2L/eps,
  // both moats pay 2 and the components join.
  MergeOutput out = pc_cluster_merge(inst, {0, 1}, rat(1, 2), 0b11);
  CHECK(out.trees.size() == 1);
  CHECK(out.connector_edges == std::vector<int>{2});
  CHECK(verify_merge_output(inst, {0, 1}, out, rat(1, 2), 0b11).ok());
}

TEST_CASE("an expensive bridge keeps components apart") {
  Graph g(4);
  g.add_edge(0, 1, rat(3));
  g.add_edge(2, 3, rat(3));
  g.add_edge(1, 2, rat(100));
  Instance inst(std::move(g), {{0, 1}, {2, 3}},
                PenaltyFn::additive({rat(1), rat(1)}));
  MergeOutput out = pc_cluster_merge(inst, {0, 1}, rat(1, 2), 0b11);
  CHECK(out.trees.size() == 2);
  CHECK(out.connector_edges.empty());
  CHECK(out.demand_partition[0] != out.demand_partition[1]);
  CHECK(verify_merge_output(inst, {0, 1}, out, rat(1, 2), 0b11).ok());
}

TEST_CASE("pipeline on an empty demand set") {
  Graph g(3);
  g.add_edge(0, 1, rat(1));
  Instance inst(std::move(g), {}, PenaltyFn::additive({}));
  PipelineOutput out = reduction_pipeline(inst, rat(1, 2), exact_initial_solver());
  CHECK(out.restricted.forest.empty());
  CHECK(out.merged.trees.empty());
}

TEST_CASE("pipeline on a single cheap demand yields one tree, one set") {
  Graph g(3);
  g.add_edge(0, 1, rat(1));
  g.add_edge(1, 2, rat(1));
  Instance inst(std::move(g), {{0, 2}}, PenaltyFn::additive({rat(50)}));
  PipelineOutput out = reduction_pipeline(inst, rat(1, 2), exact_initial_solver());
  CHECK(out.restricted.dropped == 0);
  REQUIRE(out.merged.trees.size() == 1);
  CHECK(out.merged.demand_partition[0] == 0b1);
}

TEST_CASE("pipeline isolates an expensive outlier") {
  Graph g(5);
  g.add_edge(0, 1, rat(1));
  g.add_edge(1, 2, rat(1));
  g.add_edge(3, 4, rat(200)); // outlier pair, cheaper to pay
  Instance inst(std::move(g), {{0, 1}, {1, 2}, {3, 4}},
                PenaltyFn::additive({rat(8), rat(8), rat(2)}));
  PipelineOutput out = reduction_pipeline(inst, rat(1), exact_initial_solver());
  CHECK(out.restricted.dropped == 0b100);
  DemandMask covered = 0;
  for (DemandMask part : out.merged.demand_partition) covered |= part;
  CHECK(covered == 0b011);
  // Piece instances load and keep their demands.
  for (std::size_t piece = 0; piece < out.merged.trees.size(); ++piece) {
    std::vector<int> ids;
    Instance sub = piece_instance(inst, out, static_cast<int>(piece), &ids);
    CHECK(sub.num_demands() == static_cast<int>(ids.size()));
  }
}

TEST_CASE("restriction and merge guarantees at desk scale") {
  int checked = 0;
  for (std::uint64_t seed = 40; seed < 80 && checked < 12; ++seed) {
    Instance inst = random_oracle_sized(seed);
    Solution opt = oracle_spcsf(inst);
    for (Rat eps : {rat(1, 2), rat(1)}) {
      RestrictOutput out = restrict_demands(inst, eps, exact_initial_solver());
      // Condition 1 with an exact starter: length(F) <= (2/eps + 1) OPT.
      CHECK(out.forest_length <= (2 / eps + 1) * opt.total);
      // Condition 2: optimum under pi' within (1 + eps) of OPT.
      Instance restricted = inst.with_penalty(out.restricted_penalty);
      Solution ropt = oracle_spcsf(restricted);
      CHECK(ropt.total <= (1 + eps) * opt.total);
      // Merge conditions on the same run.
      MergeOutput merged = pc_cluster_merge(inst, out.forest, eps, out.satisfied);
      CHECK(verify_merge_output(inst, out.forest, merged, eps, out.satisfied).ok());
    }
    ++checked;
  }
  CHECK(checked == 12);
}

TEST_CASE("piecewise Steiner forests stay near the joint optimum") {
  int checked = 0;
  for (std::uint64_t seed = 400; seed < 440 && checked < 8; ++seed) {
    Instance inst = random_oracle_sized(seed);
    Rat eps = rat(1, 2);
    Solution opt = oracle_spcsf(inst);
    if (opt.satisfied == 0) continue;
    PipelineOutput pipe = reduction_pipeline(inst, eps, exact_initial_solver());
    // D* intersected with the pieces: separate Steiner forests must stay
    // within (1 + eps) of the joint one.
    std::vector<Demand> all_sat;
    Rat parts_total = 0;
    for (int d = 0; d < inst.num_demands(); ++d)
      if (opt.satisfied & (DemandMask{1} << d)) all_sat.push_back(inst.demands()[d]);
    for (std::size_t i = 0; i < pipe.merged.demand_partition.size(); ++i) {
      std::vector<Demand> piece_sat;
      for (int d = 0; d < inst.num_demands(); ++d)
        if ((opt.satisfied & pipe.merged.demand_partition[i]) & (DemandMask{1} << d))
          piece_sat.push_back(inst.demands()[d]);
      if (!piece_sat.empty()) parts_total += steiner_forest_len(inst.graph(), piece_sat);
    }
    CHECK(parts_total <= (1 + eps) * steiner_forest_len(inst.graph(), all_sat));
    ++checked;
  }
  CHECK(checked >= 5);
}

TEST_CASE("restriction ignores the problem-kind label") {
  // The returned satisfied set is the same whether the rooted instance is
  // later solved as a tree, tour or stroll; restriction never looks at it.
  RandomSpec spec;
  spec.kind = RandomKind::SeriesParallel;
  spec.n = 6;
  spec.demand_count = 3;
  spec.rooted = true;
  spec.seed = 9;
  Instance inst = gen_random(spec);
  RestrictOutput a = restrict_demands(inst, rat(1, 2), exact_initial_solver());
  RestrictOutput b = restrict_demands(inst, rat(1, 2), exact_initial_solver());
  CHECK(a.satisfied == b.satisfied);
  CHECK(a.forest == b.forest);
}
