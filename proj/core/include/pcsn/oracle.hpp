#pragma once

#include "pcsn/instance.hpp"
#include "pcsn/solution.hpp"

#include <optional>
#include <string>
#include <vector>

namespace pcsn {

/// Enumeration budgets. Oracles refuse inputs over budget (CapacityError)
/// rather than silently approximating.
struct OracleBudget {
  int max_edges = 20;        // edge-subset enumeration
  int max_terminals = 12;    // Dreyfus-Wagner terminal count
  int max_sat_demands = 12;  // satisfied-set enumeration
  int max_tour_vertices = 12;
  int max_vc_vertices = 24;
  int max_hub_petal_edges = 10; // hub route: edges per component of G - w
  int max_hub_pending = 20;     // hub route: concurrent pending cross demands

  /// Reads PCSN_MAX_EDGES, PCSN_MAX_TERMINALS, PCSN_MAX_SAT_DEMANDS,
  /// PCSN_MAX_TOUR_VERTICES, PCSN_MAX_VC_VERTICES from the environment.
  static OracleBudget from_env();
};

/// Exact SPCSF optimum with witness. Routes, tried in order:
///   1. edge-subset enumeration (|E| <= max_edges),
///   2. hub decomposition (additive penalties, some vertex w whose removal
///      leaves components within the petal budgets),
///   3. satisfied-set enumeration + Steiner-forest costing
///      (|D| <= max_sat_demands, terminals <= max_terminals).
Solution oracle_spcsf(const Instance& inst, const OracleBudget& budget = {});

/// Hub-decomposition route alone; nullopt when not applicable.
std::optional<Solution> hub_oracle_spcsf(const Instance& inst,
                                         const OracleBudget& budget = {});

/// Exact prize-collecting tour / stroll optimum (rooted instances, additive
/// penalties). Walks live in the graph metric; witness edges carry
/// multiplicities <= 2.
Solution oracle_tour(const Instance& inst, const OracleBudget& budget = {});
Solution oracle_stroll(const Instance& inst, const OracleBudget& budget = {});

struct VertexCoverResult {
  int size = 0;
  std::vector<int> cover;
};

/// Exact minimum vertex cover by branch and bound.
VertexCoverResult oracle_vertex_cover(const Graph& g, const OracleBudget& budget = {});

} // namespace pcsn
