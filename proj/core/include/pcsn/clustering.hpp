#pragma once

#include "pcsn/instance.hpp"
#include "pcsn/submodular.hpp"

#include <map>
#include <string>
#include <vector>

namespace pcsn {

/// One cluster of the laminar growth history. The first n entries are the
/// vertex singletons; every later entry is the union of exactly two earlier
/// ones, created by a tight edge.
struct ClusterNode {
  std::vector<int> vertices; // sorted
  int child1 = -1;
  int child2 = -1;
  int merge_edge = -1;
  Rat y_total;                 // y_S
  std::map<int, Rat> y_demand; // y_{S,d}, sparse

  bool contains(int v) const;
};

struct TraceEvent {
  enum class Kind { Grow, Merge, Death, Prune };
  Kind kind;
  Rat eta;                  // Grow
  int cluster = -1;         // Merge: created cluster index
  int child1 = -1, child2 = -1;
  int edge = -1;            // Merge / Prune
  int demand = -1;          // Death
  DemandMask tight_set = 0; // Death witness
};

/// The dual vector y restricted to the clusters that ever existed; only a
/// polynomial number of entries are nonzero.
struct DualState {
  std::vector<ClusterNode> clusters; // the history, in creation order
  std::vector<Rat> y_demand;         // y_d aggregates

  Rat y_of(DemandMask demand_set) const;
  Rat y_all() const { return y_of(~DemandMask{0}); }
};

struct GrowthResult {
  std::vector<int> forest;       // F1, ascending edge ids
  DualState dual;
  DemandMask dead = 0;
  std::vector<bool> live;        // final liveness (satisfied demands can stay live)
  std::vector<int> cluster_of;   // final partition: vertex -> cluster index
  std::vector<TraceEvent> trace;
  int iterations = 0;
};

/// Growth phase of Submodular-PC-Clustering: uniform moat growth on active
/// clusters, edge merges, penalty-set deaths. Loops while an active cluster
/// exists. Requires at most kMaxMaskGround demands; explicit-table penalties
/// additionally require <= 20 demands for the eta backend.
GrowthResult grow(const Instance& inst);

/// Pruning phase: B is the set of history clusters that cut no live demand;
/// while some S in B has exactly one F2 boundary edge, that edge is removed.
/// Scans in decreasing creation order, repeated to fixpoint.
std::vector<int> prune(const Graph& g, const std::vector<ClusterNode>& history,
                       const std::vector<bool>& in_pruning_set,
                       std::vector<int> forest,
                       std::vector<TraceEvent>* trace = nullptr);

struct ClusteringOutput {
  std::vector<int> forest;   // F2
  DemandMask dead = 0;       // unsatisfied demands
  DualState dual;
  std::vector<bool> in_pruning_set; // per history cluster: member of B
  std::vector<int> cluster_of;
  std::vector<TraceEvent> trace;
  std::vector<int> grown_forest; // F1, for diagnostics
  int iterations = 0;
};

ClusteringOutput submodular_pc_clustering(const Instance& inst);

/// JSON-lines trace export (one event per line, y snapshot hash included).
std::string trace_to_jsonl(const Instance& inst, const ClusteringOutput& out);

} // namespace pcsn
