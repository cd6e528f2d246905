#include "pcsn/graph.hpp"

#include "pcsn/errors.hpp"
#include "pcsn/union_find.hpp"

namespace pcsn {

int Graph::add_edge(int u, int v, Rat cost) {
  if (u < 0 || v < 0 || u >= n_ || v >= n_)
    throw DomainError("edge endpoint out of range");
  if (u == v) throw DomainError("self-loop rejected");
  if (cost < 0) throw DomainError("negative edge cost");
  edges_.push_back(Edge{u, v, std::move(cost)});
  return static_cast<int>(edges_.size()) - 1;
}

Rat Graph::length_of(const std::vector<int>& edge_ids) const {
  Rat total = 0;
  for (int id : edge_ids) {
    if (id < 0 || id >= num_edges()) throw DomainError("edge id out of range");
    total += edges_[id].cost;
  }
  return total;
}

std::vector<std::vector<std::pair<int, int>>> Graph::adjacency() const {
  std::vector<std::vector<std::pair<int, int>>> adj(n_);
  for (int id = 0; id < num_edges(); ++id) {
    adj[edges_[id].u].emplace_back(edges_[id].v, id);
    adj[edges_[id].v].emplace_back(edges_[id].u, id);
  }
  return adj;
}

bool Graph::is_forest(const std::vector<int>& edge_ids) const {
  UnionFind uf(n_);
  for (int id : edge_ids) {
    if (id < 0 || id >= num_edges()) throw DomainError("edge id out of range");
    if (!uf.unite(edges_[id].u, edges_[id].v)) return false;
  }
  return true;
}

} // namespace pcsn
