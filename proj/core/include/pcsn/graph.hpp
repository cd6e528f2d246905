#pragma once

#include "pcsn/rational.hpp"

#include <vector>

namespace pcsn {

struct Edge {
  int u = 0;
  int v = 0;
  Rat cost;
};

/// Undirected weighted graph with dense vertex ids 0..n-1. No self-loops,
/// costs >= 0. Parallel edges are tolerated only while contracting.
class Graph {
public:
  Graph() = default;
  explicit Graph(int n) : n_(n) {}

  int num_vertices() const { return n_; }
  int num_edges() const { return static_cast<int>(edges_.size()); }
  const std::vector<Edge>& edges() const { return edges_; }
  const Edge& edge(int id) const { return edges_[id]; }

  /// Returns the new edge id. Throws DomainError on loops, negative costs or
  /// out-of-range endpoints.
  int add_edge(int u, int v, Rat cost);

  /// Total cost of the given edge ids.
  Rat length_of(const std::vector<int>& edge_ids) const;

  /// edge id -> incident vertex adjacency, rebuilt on demand.
  std::vector<std::vector<std::pair<int, int>>> adjacency() const; // (neighbor, edge id)

  bool is_forest(const std::vector<int>& edge_ids) const;

private:
  int n_ = 0;
  std::vector<Edge> edges_;
};

} // namespace pcsn
