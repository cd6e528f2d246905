#pragma once

#include "pcsn/clustering.hpp"
#include "pcsn/instance.hpp"
#include "pcsn/solution.hpp"

#include <functional>
#include <vector>

namespace pcsn {

struct InitialSolution {
  std::vector<int> forest;  // F+
  DemandMask satisfied = 0; // D+
};

/// Pluggable provider of the starting solution for Restrict-Demands: the
/// exact oracle on small instances, the clustering heuristic otherwise.
using InitialSolver = std::function<InitialSolution(const Instance&)>;

InitialSolver exact_initial_solver();
InitialSolver clustering_initial_solver();

struct RestrictOutput {
  std::vector<int> forest;          // F, measured in G (F+ lengths restored)
  DemandMask satisfied = 0;         // D^sat
  DemandMask dropped = 0;           // D^unsat
  std::vector<int> initial_forest;  // F+
  DemandMask initial_satisfied = 0; // D+
  Rat epsilon;
  PenaltyFn restricted_penalty;     // pi'(D) = pi(D | D^unsat)
  ClusteringOutput clustering;      // run on derived_instance
  Instance derived_instance;        // (G*, D, eps^-1 pi): F+ edges zeroed
  Rat forest_length;                // length of F in G
};

/// Algorithm Restrict-Demands: zero out F+ edges, scale penalties by 1/eps,
/// run Submodular-PC-Clustering, return the union forest and the dead set.
RestrictOutput restrict_demands(const Instance& inst, const Rat& epsilon,
                                const InitialSolver& initial);

struct ContractionResult {
  Graph contracted;                        // G*: one vertex per F-component
  std::vector<int> vertex_map;             // original -> contracted vertex
  std::vector<int> edge_origin;            // contracted edge -> original edge
  std::vector<std::vector<int>> component_edges; // per contracted vertex (F edges)
  std::vector<Rat> component_length;
};

/// Contracts each tree component of the forest; drops loops, keeps the
/// cheapest parallel edge. Throws DomainError if the edge set has a cycle.
ContractionResult contract_components(const Graph& g, const std::vector<int>& forest);

struct MergeOutput {
  std::vector<std::vector<int>> trees;          // per tree: original edge ids
  std::vector<std::vector<int>> tree_vertices;  // per tree: original vertices
  std::vector<DemandMask> demand_partition;     // D_i
  std::vector<Rat> potentials;                  // phi_v per contracted vertex
  ContractionResult contraction;
  std::vector<int> connector_edges;             // bought during the merge (original ids)
  Rat total_tree_length;
  Rat base_forest_length;
};

/// Potential-driven PC-Clustering on the contracted graph: phi_v = eps^-1 *
/// component length, moat growth consuming potentials, degree-1 pruning of
/// exhausted clusters, then uncontraction into the trees T_i.
/// consider = demands to partition (they must be satisfied by the forest).
MergeOutput pc_cluster_merge(const Instance& inst, const std::vector<int>& forest,
                             const Rat& epsilon, DemandMask consider);

struct PipelineOutput {
  RestrictOutput restricted;
  MergeOutput merged;
};

/// Restrict-Demands followed by the cluster merge on its forest, restricted
/// to the demands the forest satisfies.
PipelineOutput reduction_pipeline(const Instance& inst, const Rat& epsilon,
                                  const InitialSolver& initial);

/// Per-piece subinstance over the tree T_i with its demands; penalty is the
/// restriction of pi' to the piece (explicit table, needs <= 12 demands for
/// non-additive kinds).
Instance piece_instance(const Instance& inst, const PipelineOutput& pipe, int piece,
                        std::vector<int>* demand_ids = nullptr);

} // namespace pcsn
