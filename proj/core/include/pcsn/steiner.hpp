#pragma once

#include "pcsn/graph.hpp"
#include "pcsn/instance.hpp"

#include <optional>
#include <vector>

namespace pcsn {

/// All-pairs shortest paths with exact rational lengths (Floyd-Warshall).
/// dist[u][v] is unset when u and v are disconnected.
struct MetricClosure {
  std::vector<std::vector<std::optional<Rat>>> dist;
  std::vector<std::vector<int>> via_edge; // edge id of the first hop, -1 none

  /// Expands the shortest u-v path into original edge ids.
  std::vector<int> path_edges(int u, int v, const Graph& g) const;
};

MetricClosure metric_closure(const Graph& g);

/// Dreyfus-Wagner tables: exact Steiner trees for every subset of the given
/// terminal list at once. Terminal count is capped by the caller.
class SteinerTreeTable {
public:
  SteinerTreeTable(const Graph& g, std::vector<int> terminals);

  /// Minimum Steiner tree connecting the terminals selected by mask
  /// (bit i = terminals[i]). Unset when they cannot be connected.
  std::optional<Rat> tree_length(std::uint32_t mask) const;

  /// Edge ids of a witness tree for the mask (empty for |mask| <= 1).
  std::vector<int> tree_edges(std::uint32_t mask) const;

  const std::vector<int>& terminals() const { return terminals_; }

private:
  const Graph& g_;
  std::vector<int> terminals_;
  MetricClosure mc_;
  // table_[mask][v]: min tree spanning (mask terminals) + vertex v
  std::vector<std::vector<std::optional<Rat>>> table_;

  void collect_edges(std::uint32_t mask, int v, std::vector<int>& out) const;
};

/// Exact minimum Steiner forest length: groups demands by the components of
/// the demand graph, then minimizes over partitions of the groups, costing
/// each part with a Steiner tree. Throws CapacityError when the terminal
/// count exceeds max_terminals.
Rat steiner_forest_len(const Graph& g, const std::vector<Demand>& demands,
                       int max_terminals = 12);

} // namespace pcsn
