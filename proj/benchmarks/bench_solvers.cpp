#include "pcsn/clustering.hpp"
#include "pcsn/gadgets.hpp"
#include "pcsn/generators.hpp"
#include "pcsn/oracle.hpp"
#include "pcsn/reduction.hpp"
#include "pcsn/steiner.hpp"
#include "pcsn/treedp.hpp"
#include "pcsn/treewidth.hpp"

#include <benchmark/benchmark.h>

using namespace pcsn;

namespace {

Instance grid_instance(int side, int demands) {
  RandomSpec spec;
  spec.kind = RandomKind::Grid;
  spec.rows = side;
  spec.cols = side;
  spec.demand_count = demands;
  spec.seed = 7;
  return gen_random(spec);
}

void BM_clustering_grid(benchmark::State& state) {
  Instance inst = grid_instance(static_cast<int>(state.range(0)), 6);
  for (auto _ : state) {
    ClusteringOutput out = submodular_pc_clustering(inst);
    benchmark::DoNotOptimize(out.forest.size());
  }
}
BENCHMARK(BM_clustering_grid)->Arg(4)->Arg(6)->Arg(8);

void BM_clustering_capped(benchmark::State& state) {
  RandomSpec spec;
  spec.kind = RandomKind::ErdosRenyi;
  spec.n = static_cast<int>(state.range(0));
  spec.edge_percent = 40;
  spec.demand_count = 8;
  spec.capped_penalty = true;
  spec.seed = 11;
  Instance inst = gen_random(spec);
  for (auto _ : state) {
    ClusteringOutput out = submodular_pc_clustering(inst);
    benchmark::DoNotOptimize(out.dead);
  }
}
BENCHMARK(BM_clustering_capped)->Arg(10)->Arg(16);

void BM_oracle_edge_subsets(benchmark::State& state) {
  RandomSpec spec;
  spec.kind = RandomKind::ErdosRenyi;
  spec.n = 8;
  spec.edge_percent = static_cast<int>(state.range(0));
  spec.demand_count = 4;
  spec.seed = 3;
  Instance inst = gen_random(spec);
  for (auto _ : state) {
    Solution sol = oracle_spcsf(inst);
    benchmark::DoNotOptimize(sol.total);
  }
  state.SetLabel(std::to_string(inst.graph().num_edges()) + " edges");
}
BENCHMARK(BM_oracle_edge_subsets)->Arg(40)->Arg(60);

void BM_hub_oracle_petersen_gadget(benchmark::State& state) {
  VcGadget g = gen_vc_gadget(source_graph_petersen());
  for (auto _ : state) {
    Solution sol = oracle_spcsf(g.instance);
    benchmark::DoNotOptimize(sol.total);
  }
}
BENCHMARK(BM_hub_oracle_petersen_gadget);

void BM_dp_pcst(benchmark::State& state) {
  RandomSpec spec;
  spec.kind = RandomKind::SeriesParallel;
  spec.n = static_cast<int>(state.range(0));
  spec.demand_count = 5;
  spec.rooted = true;
  spec.seed = 5;
  Instance inst = gen_random(spec);
  NiceDecomposition nd =
      to_nice(heuristic_decompose(inst.graph()), inst.graph(), *inst.root());
  for (auto _ : state) {
    Solution sol = dp_pcst(inst, nd);
    benchmark::DoNotOptimize(sol.total);
  }
}
BENCHMARK(BM_dp_pcst)->Arg(8)->Arg(12)->Arg(16);

void BM_dp_pctsp(benchmark::State& state) {
  RandomSpec spec;
  spec.kind = RandomKind::SeriesParallel;
  spec.n = static_cast<int>(state.range(0));
  spec.demand_count = 4;
  spec.rooted = true;
  spec.seed = 9;
  Instance inst = gen_random(spec);
  NiceDecomposition nd =
      to_nice(heuristic_decompose(inst.graph()), inst.graph(), *inst.root());
  for (auto _ : state) {
    Solution sol = dp_pctsp(inst, nd);
    benchmark::DoNotOptimize(sol.total);
  }
}
BENCHMARK(BM_dp_pctsp)->Arg(8)->Arg(12);

void BM_steiner_table(benchmark::State& state) {
  Instance inst = grid_instance(4, 2);
  std::vector<int> terminals;
  for (int v = 0; v < inst.graph().num_vertices() && terminals.size() < 8; v += 2)
    terminals.push_back(v);
  for (auto _ : state) {
    SteinerTreeTable table(inst.graph(), terminals);
    benchmark::DoNotOptimize(table.tree_length((1u << terminals.size()) - 1));
  }
}
BENCHMARK(BM_steiner_table);

void BM_restrict_pipeline(benchmark::State& state) {
  RandomSpec spec;
  spec.kind = RandomKind::SeriesParallel;
  spec.n = 8;
  spec.demand_count = 4;
  spec.seed = 21;
  Instance inst = gen_random(spec);
  for (auto _ : state) {
    PipelineOutput out = reduction_pipeline(inst, rat(1, 2), exact_initial_solver());
    benchmark::DoNotOptimize(out.merged.trees.size());
  }
}
BENCHMARK(BM_restrict_pipeline);

} // namespace

BENCHMARK_MAIN();
