// Acceptance suite: eight exact, property-based gates over the whole solver
// stack. Prints one PASS/FAIL line per criterion and exits nonzero if any
// fails. Every comparison is exact rational arithmetic, zero tolerance.

#include "pcsn/clustering.hpp"
#include "pcsn/errors.hpp"
#include "pcsn/gadgets.hpp"
#include "pcsn/generators.hpp"
#include "pcsn/instance_io.hpp"
#include "pcsn/oracle.hpp"
#include "pcsn/reduction.hpp"
#include "pcsn/steiner.hpp"
#include "pcsn/treedp.hpp"
#include "pcsn/treewidth.hpp"
#include "pcsn/verify.hpp"

#include <chrono>
#include <iostream>
#include <set>
#include <sstream>
#include <vector>

using namespace pcsn;

namespace {

int failures = 0;

void report(int criterion, bool ok, const std::string& detail) {
  std::cout << (ok ? "PASS" : "FAIL") << " criterion-" << criterion << ": " << detail
            << std::endl;
  if (!ok) ++failures;
}

double seconds_since(std::chrono::steady_clock::time_point t0) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

// Seeded instance family for the clustering contract: n <= 30, |D| <= 8,
// additive and capped penalties.
Instance contract_instance(std::uint64_t seed) {
  RandomSpec spec;
  switch (seed % 4) {
  case 0:
    spec.kind = RandomKind::Grid;
    spec.rows = 3 + static_cast<int>(seed % 3);
    spec.cols = 3 + static_cast<int>((seed / 4) % 3);
    break;
  case 1:
    spec.kind = RandomKind::SeriesParallel;
    spec.n = 6 + static_cast<int>(seed % 10);
    break;
  default:
    spec.kind = RandomKind::ErdosRenyi;
    spec.n = 6 + static_cast<int>(seed % 7);
    spec.edge_percent = 35 + static_cast<int>(seed % 30);
    break;
  }
  spec.demand_count = 1 + static_cast<int>(seed % 8);
  spec.capped_penalty = seed % 3 == 0;
  spec.seed = seed;
  return gen_random(spec);
}

// Instances small enough for the edge-subset oracle.
Instance oracle_instance(std::uint64_t seed) {
  RandomSpec spec;
  if (seed % 2) {
    spec.kind = RandomKind::ErdosRenyi;
    spec.n = 6 + static_cast<int>(seed % 3);
    spec.edge_percent = 40;
  } else {
    spec.kind = RandomKind::SeriesParallel;
    spec.n = 5 + static_cast<int>(seed % 4);
  }
  spec.demand_count = 2 + static_cast<int>(seed % 3);
  spec.capped_penalty = seed % 4 == 0;
  spec.seed = seed;
  Instance inst = gen_random(spec);
  if (inst.graph().num_edges() > 16) return oracle_instance(seed + 7919);
  return inst;
}

void criterion_1() {
  auto t0 = std::chrono::steady_clock::now();
  const int target = 500;
  int ran = 0;
  std::string first_failure;
  for (std::uint64_t seed = 1; ran < target; ++seed) {
    Instance inst = contract_instance(seed);
    if (inst.graph().num_vertices() > 30 || inst.num_demands() > 8) continue;
    ClusteringOutput out = submodular_pc_clustering(inst);
    CheckReport rep = verify_clustering_output(inst, out, 8);
    if (!rep.ok() && first_failure.empty()) {
      std::ostringstream os;
      os << "seed " << seed << ": " << rep.failures.front();
      first_failure = os.str();
    }
    ++ran;
  }
  std::ostringstream os;
  os << ran << " instances, tight dead set, live demands satisfied, length <= 2y(D), exhaustive dual feasibility, "
     << seconds_since(t0) << "s";
  if (!first_failure.empty()) os << " [" << first_failure << "]";
  report(1, first_failure.empty(), os.str());
}

void criterion_2() {
  const int target = 100;
  int ran = 0;
  bool ok = true;
  for (std::uint64_t seed = 1000; ran < target; ++seed) {
    Instance inst = oracle_instance(seed);
    ClusteringOutput clus = submodular_pc_clustering(inst);
    Solution opt = oracle_spcsf(inst);
    Rat dual_sum = clus.dual.y_of(opt.satisfied);
    if (!(opt.length >= dual_sum)) ok = false;
    ++ran;
  }
  std::ostringstream os;
  os << ran << " instances, length(F') >= sum of y_d over the satisfied set";
  report(2, ok, os.str());
}

void criterion_3() {
  const int target = 100;
  int ran = 0;
  bool ok = true;
  for (std::uint64_t seed = 2000; ran < target; ++seed) {
    Instance inst = oracle_instance(seed);
    Solution opt = oracle_spcsf(inst);
    for (Rat eps : {rat(1, 2), rat(1)}) {
      RestrictOutput out = restrict_demands(inst, eps, exact_initial_solver());
      if (!(out.forest_length <= (2 / eps + 1) * opt.total)) ok = false;
      Instance restricted = inst.with_penalty(out.restricted_penalty);
      Solution ropt = oracle_spcsf(restricted);
      if (!(ropt.total <= (1 + eps) * opt.total)) ok = false;
    }
    ++ran;
  }
  std::ostringstream os;
  os << ran << " instances x eps in {1/2, 1}: length and penalty-restriction bounds";
  report(3, ok, os.str());
}

void criterion_4() {
  const int target = 50;
  int ran = 0;
  bool ok = true;
  for (std::uint64_t seed = 3000; ran < target; ++seed) {
    Instance inst = oracle_instance(seed);
    Rat eps = (seed % 2) ? rat(1, 2) : rat(1);
    PipelineOutput pipe = reduction_pipeline(inst, eps, exact_initial_solver());
    CheckReport rep = verify_merge_output(inst, pipe.restricted.forest, pipe.merged,
                                          eps, pipe.restricted.satisfied);
    if (!rep.ok()) ok = false;

    // Separation: the oracle-optimal demand set split across the pieces.
    Solution opt = oracle_spcsf(inst);
    std::vector<Demand> all_sat;
    for (int d = 0; d < inst.num_demands(); ++d)
      if (opt.satisfied & (DemandMask{1} << d)) all_sat.push_back(inst.demands()[d]);
    Rat parts = 0;
    for (DemandMask part : pipe.merged.demand_partition) {
      std::vector<Demand> piece;
      for (int d = 0; d < inst.num_demands(); ++d)
        if ((opt.satisfied & part) & (DemandMask{1} << d))
          piece.push_back(inst.demands()[d]);
      if (!piece.empty()) parts += steiner_forest_len(inst.graph(), piece);
    }
    if (!all_sat.empty()) {
      if (!(parts <= (1 + eps) * steiner_forest_len(inst.graph(), all_sat))) ok = false;
    }
    ++ran;
  }
  std::ostringstream os;
  os << ran << " merge runs: coverage, spanning, length bound, piecewise separation";
  report(4, ok, os.str());
}

Instance rooted_dp_instance(std::uint64_t seed, int max_n) {
  RandomSpec spec;
  switch (seed % 3) {
  case 0:
    spec.kind = RandomKind::SeriesParallel;
    spec.n = 4 + static_cast<int>(seed % 7);
    break;
  case 1:
    spec.kind = RandomKind::Grid;
    spec.rows = 2;
    spec.cols = 2 + static_cast<int>(seed % 4);
    break;
  default:
    spec.kind = RandomKind::ErdosRenyi;
    spec.n = 5 + static_cast<int>(seed % 4);
    spec.edge_percent = 45;
    break;
  }
  spec.demand_count = 2 + static_cast<int>(seed % 5);
  spec.rooted = true;
  spec.seed = seed;
  Instance inst = gen_random(spec);
  if (inst.graph().num_vertices() > max_n || inst.graph().num_edges() > 18)
    return rooted_dp_instance(seed + 7919, max_n);
  return inst;
}

void criterion_5() {
  auto t0 = std::chrono::steady_clock::now();
  const int target = 200;
  int st_ok = 0, tsp_ok = 0, stroll_ok = 0, st_ran = 0, walk_ran = 0, sp_seen = 0;
  for (std::uint64_t seed = 1; st_ran < target; ++seed) {
    Instance inst = rooted_dp_instance(seed, 12);
    NiceDecomposition nd =
        to_nice(heuristic_decompose(inst.graph()), inst.graph(), *inst.root());
    if (nd.width() > 3) continue;
    if (seed % 3 == 0) ++sp_seen;
    if (dp_pcst(inst, nd).total == oracle_spcsf(inst).total) ++st_ok;
    ++st_ran;
  }
  for (std::uint64_t seed = 50000; walk_ran < target; ++seed) {
    Instance inst = rooted_dp_instance(seed, 10);
    NiceDecomposition nd =
        to_nice(heuristic_decompose(inst.graph()), inst.graph(), *inst.root());
    if (nd.width() > 3) continue;
    if (dp_pctsp(inst, nd).total == oracle_tour(inst).total) ++tsp_ok;
    if (dp_pcs(inst, nd).total == oracle_stroll(inst).total) ++stroll_ok;
    ++walk_ran;
  }
  bool ok = st_ok == st_ran && tsp_ok == walk_ran && stroll_ok == walk_ran &&
            sp_seen > 0;
  std::ostringstream os;
  os << "pcst " << st_ok << "/" << st_ran << ", pctsp " << tsp_ok << "/" << walk_ran
     << ", pcs " << stroll_ok << "/" << walk_ran << " oracle-exact, "
     << seconds_since(t0) << "s";
  report(5, ok, os.str());
}

void criterion_6() {
  bool ok = true;
  std::ostringstream os;
  for (auto [name, graph] : {std::pair<const char*, Graph>{"k4", source_graph_k4()},
                             {"k33", source_graph_k33()},
                             {"prism", source_graph_prism()},
                             {"petersen", source_graph_petersen()}}) {
    VcGadget g = gen_vc_gadget(graph);
    try {
      GadgetCheck check = gadget_optimum_check(g);
      std::vector<int> cover = cover_from_solution(g, check.witness);
      bool this_ok = check.equal && static_cast<int>(cover.size()) == check.tau;
      ok = ok && this_ok;
      os << name << "=" << rat_to_string(check.pcsf_opt) << " (tau " << check.tau
         << (this_ok ? ") " : " MISMATCH) ");
    } catch (const CapacityError& e) {
      os << name << "=capacity-skip (" << e.what() << ") ";
    }
  }
  report(6, ok, os.str() + "oracle optimum == 2m + 2n + tau, cover recovered");
}

void criterion_7() {
  bool ok = true;
  std::ostringstream os;
  for (auto [name, graph] : {std::pair<const char*, Graph>{"k4", source_graph_k4()},
                             {"k33", source_graph_k33()},
                             {"prism", source_graph_prism()}}) {
    const std::int64_t n = graph.num_vertices();
    const std::int64_t m = graph.num_edges();
    const std::int64_t u_base = 10000 * (n + m);
    EuclideanGadget g = gen_euclidean_gadget(graph, u_base); // U' = 1
    // Independent direct counting from the coordinates themselves.
    std::set<std::pair<std::int64_t, std::int64_t>> zs;
    for (std::int64_t i = 0; i < g.z_count; ++i)
      zs.emplace(g.instance.points()[i][0], g.instance.points()[i][1]);
    bool counts = static_cast<std::int64_t>(zs.size()) == g.z_count &&
                  g.z_count == g.z_formula &&
                  static_cast<std::int64_t>(g.instance.points().size()) ==
                      g.z_count + n + 3 * m &&
                  g.demand_count == g.z_count - 1 + m + 3 * n &&
                  g.instance.num_demands() == g.demand_count;

    // Scaling: halving the divisor doubles every named pairwise distance.
    EuclideanGadget fine = gen_euclidean_gadget(graph, u_base / 2); // U' = 2
    auto sq = [](const Instance& inst, int p, int q) {
      auto a = inst.points()[p];
      auto b = inst.points()[q];
      std::int64_t dx = a[0] - b[0], dy = a[1] - b[1];
      return dx * dx + dy * dy;
    };
    bool scaling = true;
    for (std::size_t i = 0; i < g.a.size(); ++i)
      for (std::size_t j = 0; j < g.b.size(); ++j)
        scaling = scaling && sq(fine.instance, fine.a[i], fine.b[j]) ==
                                 4 * sq(g.instance, g.a[i], g.b[j]);
    for (std::size_t j = 0; j < g.c1.size(); ++j)
      scaling = scaling && sq(fine.instance, fine.c1[j], fine.c2[j]) ==
                               4 * sq(g.instance, g.c1[j], g.c2[j]);
    ok = ok && counts && scaling;
    os << name << (counts && scaling ? " ok " : " MISMATCH ");
  }
  report(7, ok, os.str() + "(direct counts and exact 1/s distance scaling)");
}

void criterion_8() {
  // Library-level determinism: generation, clustering traces and costing are
  // byte-identical across two consecutive runs. The ctest "cli" case repeats
  // this through the installed binary.
  RandomSpec spec;
  spec.kind = RandomKind::Grid;
  spec.rows = 4;
  spec.cols = 4;
  spec.demand_count = 6;
  spec.capped_penalty = true;
  spec.seed = 424242;
  bool ok = true;
  std::string inst_a = instance_to_json(gen_random(spec));
  std::string inst_b = instance_to_json(gen_random(spec));
  ok = ok && inst_a == inst_b;
  Instance inst = parse_instance_json(inst_a);
  ClusteringOutput c1 = submodular_pc_clustering(inst);
  ClusteringOutput c2 = submodular_pc_clustering(inst);
  ok = ok && trace_to_jsonl(inst, c1) == trace_to_jsonl(inst, c2);
  ok = ok && c1.forest == c2.forest && c1.dead == c2.dead;
  Solution s1 = solution_cost(inst, c1.forest);
  Solution s2 = solution_cost(inst, c2.forest);
  ok = ok && s1.total == s2.total && s1.edges == s2.edges;
  report(8, ok, "same seeds and configs give byte-identical artifacts");
}

} // namespace

int main() {
  criterion_1();
  criterion_2();
  criterion_3();
  criterion_4();
  criterion_5();
  criterion_6();
  criterion_7();
  criterion_8();
  if (failures) {
    std::cout << failures << " criterion(s) failed" << std::endl;
    return 1;
  }
  std::cout << "all acceptance criteria passed" << std::endl;
  return 0;
}
