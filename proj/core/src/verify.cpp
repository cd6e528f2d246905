#include "pcsn/verify.hpp"

#include "pcsn/union_find.hpp"

#include <algorithm>

namespace pcsn {

CheckReport verify_clustering_output(const Instance& inst, const ClusteringOutput& out,
                                     int exhaustive_limit) {
  CheckReport report;
  const Graph& g = inst.graph();
  const int nd = inst.num_demands();
  const auto& clusters = out.dual.clusters;

  // Laminarity of the history.
  for (std::size_t i = 0; i < clusters.size() && report.ok(); ++i)
    for (std::size_t j = i + 1; j < clusters.size(); ++j) {
      int common = 0;
      for (int v : clusters[j].vertices)
        if (clusters[i].contains(v)) ++common;
      bool disjoint = common == 0;
      bool nested = common == static_cast<int>(clusters[i].vertices.size()) ||
                    common == static_cast<int>(clusters[j].vertices.size());
      if (!disjoint && !nested) {
        report.require(false, "laminarity violated");
        break;
      }
    }

  // The final cluster_of values name maximal clusters partitioning V.
  {
    std::vector<int> seen(g.num_vertices(), 0);
    for (int v = 0; v < g.num_vertices(); ++v) {
      int c = out.cluster_of[v];
      report.require(c >= 0 && c < static_cast<int>(clusters.size()) &&
                         clusters[c].contains(v),
                     "partition does not cover vertex");
      ++seen[v];
    }
    (void)seen;
  }

  // Edge feasibility: sum of y_S over history clusters crossing e.
  for (int e = 0; e < g.num_edges(); ++e) {
    Rat packed = 0;
    for (const ClusterNode& c : clusters)
      if (c.contains(g.edge(e).u) != c.contains(g.edge(e).v)) packed += c.y_total;
    report.require(packed <= g.edge(e).cost, "edge constraint violated");
  }

  // y_demand consistency with the sparse per-cluster entries.
  {
    std::vector<Rat> sums(nd, Rat(0));
    for (const ClusterNode& c : clusters)
      for (const auto& [d, y] : c.y_demand) {
        sums[d] += y;
        report.require(y >= 0, "negative dual entry");
        report.require(c.contains(inst.demands()[d].s) !=
                           c.contains(inst.demands()[d].t),
                       "dual entry on a non-crossing pair");
      }
    for (int d = 0; d < nd; ++d)
      report.require(sums[d] == out.dual.y_demand[d], "y_d aggregate mismatch");
  }

  // Subset feasibility.
  if (nd <= exhaustive_limit) {
    for (DemandMask dset = 0; dset <= inst.all_demands_mask(); ++dset) {
      report.require(out.dual.y_of(dset) <= inst.penalty().eval(dset),
                     "subset constraint violated");
      if (dset == inst.all_demands_mask()) break;
    }
  } else {
    for (int d = 0; d < nd; ++d)
      report.require(out.dual.y_demand[d] <= inst.penalty().eval(DemandMask{1} << d),
                     "singleton subset constraint violated");
    report.require(out.dual.y_of(out.dead) <= inst.penalty().eval(out.dead),
                   "dead-set subset constraint violated");
  }

  // The dead set is exactly tight.
  report.require(out.dual.y_of(out.dead) == inst.penalty().eval(out.dead),
                 "dead set not tight");

  // The forest satisfies every demand outside the dead set.
  {
    UnionFind uf(g.num_vertices());
    for (int e : out.forest) uf.unite(g.edge(e).u, g.edge(e).v);
    for (int d = 0; d < nd; ++d) {
      if (out.dead & (DemandMask{1} << d)) continue;
      report.require(uf.connected(inst.demands()[d].s, inst.demands()[d].t),
                     "live demand left unsatisfied");
    }
  }

  // length(F) <= 2 y(D).
  report.require(g.length_of(out.forest) <= 2 * out.dual.y_of(inst.all_demands_mask()),
                 "forest longer than twice the dual");

  // Event bound, and every growth step makes progress (a merge or a death
  // before the next growth).
  report.require(out.iterations <= 2 * g.num_vertices() + nd, "event bound exceeded");
  {
    bool pending_grow = false;
    bool stalled = false;
    for (const TraceEvent& ev : out.trace) {
      if (ev.kind == TraceEvent::Kind::Grow) {
        if (pending_grow) stalled = true;
        pending_grow = true;
      } else if (ev.kind == TraceEvent::Kind::Merge ||
                 ev.kind == TraceEvent::Kind::Death) {
        pending_grow = false;
      }
    }
    report.require(!stalled && !pending_grow, "growth step without a tight event");
  }

  // A pruned cluster has no proper nonempty intersection with any component
  // of F2.
  {
    UnionFind uf(g.num_vertices());
    for (int e : out.forest) uf.unite(g.edge(e).u, g.edge(e).v);
    std::vector<bool> pruned_cluster(clusters.size(), false);
    for (const TraceEvent& ev : out.trace)
      if (ev.kind == TraceEvent::Kind::Prune && ev.cluster >= 0) {
        // Cluster whose boundary shrank to zero is the pruned one recorded.
        pruned_cluster[ev.cluster] = true;
      }
    for (std::size_t c = 0; c < clusters.size(); ++c) {
      if (!pruned_cluster[c]) continue;
      int boundary = 0;
      for (int e : out.forest)
        if (clusters[c].contains(g.edge(e).u) != clusters[c].contains(g.edge(e).v))
          ++boundary;
      if (boundary != 0) continue; // only fully pruned clusters are claimed
      for (int v = 0; v < g.num_vertices(); ++v) {
        if (clusters[c].contains(v)) continue;
        bool crosses = false;
        for (int u : clusters[c].vertices)
          if (uf.connected(u, v)) crosses = true;
        report.require(!crosses, "pruned cluster intersects a component properly");
        if (crosses) break;
      }
      break; // one witness suffices per run
    }
  }
  return report;
}

CheckReport verify_merge_output(const Instance& inst, const std::vector<int>& base_forest,
                                const MergeOutput& merged, const Rat& epsilon,
                                DemandMask considered) {
  CheckReport report;
  const Graph& g = inst.graph();

  // Condition 1: considered demands are covered by the partition.
  DemandMask covered = 0;
  for (DemandMask part : merged.demand_partition) covered |= part;
  report.require(covered == considered, "demand partition does not cover the demands");

  // Condition 2: each tree spans the terminals of its demand set.
  for (std::size_t i = 0; i < merged.trees.size(); ++i) {
    UnionFind uf(g.num_vertices());
    for (int e : merged.trees[i]) uf.unite(g.edge(e).u, g.edge(e).v);
    for (int d = 0; d < inst.num_demands(); ++d) {
      if (!(merged.demand_partition[i] & (DemandMask{1} << d))) continue;
      report.require(uf.connected(inst.demands()[d].s, inst.demands()[d].t),
                     "tree does not span its demands");
    }
  }

  // Condition 3: total tree length within (2/eps + 1) of the base forest.
  Rat bound = (Rat(2) / epsilon + 1) * g.length_of(base_forest);
  report.require(merged.total_tree_length <= bound, "merge length bound violated");
  return report;
}

} // namespace pcsn
