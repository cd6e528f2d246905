#pragma once

#include "pcsn/instance.hpp"

#include <vector>

namespace pcsn {

/// A costed solution. For forest problems multiplicities are all 1; tour and
/// stroll witnesses carry edge multiplicities up to 2 (closed / open walks).
struct Solution {
  std::vector<int> edges;          // edge ids, strictly increasing
  std::vector<int> multiplicities; // parallel to edges
  DemandMask satisfied = 0;
  Rat length = 0;
  Rat penalty = 0;
  Rat total = 0;
};

/// Costs an edge set as a forest solution: derives the satisfied demands from
/// component membership, pays pi on the rest. Edge ids must be valid.
Solution solution_cost(const Instance& inst, const std::vector<int>& edge_ids);

/// Costs a walk given as (edge id, multiplicity) pairs: a vertex is visited
/// if it is incident to a walk edge (the root alone counts as visited when
/// the walk is empty). Used by the tour/stroll solvers.
Solution walk_cost(const Instance& inst, const std::vector<std::pair<int, int>>& walk_edges);

} // namespace pcsn
