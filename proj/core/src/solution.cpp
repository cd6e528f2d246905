#include "pcsn/solution.hpp"

#include "pcsn/errors.hpp"
#include "pcsn/union_find.hpp"

#include <algorithm>

namespace pcsn {

Solution solution_cost(const Instance& inst, const std::vector<int>& edge_ids) {
  const Graph& g = inst.graph();
  Solution sol;
  sol.edges = edge_ids;
  std::sort(sol.edges.begin(), sol.edges.end());
  sol.edges.erase(std::unique(sol.edges.begin(), sol.edges.end()), sol.edges.end());
  sol.multiplicities.assign(sol.edges.size(), 1);

  UnionFind uf(g.num_vertices());
  for (int id : sol.edges) {
    if (id < 0 || id >= g.num_edges()) throw DomainError("edge not in graph");
    sol.length += g.edge(id).cost;
    uf.unite(g.edge(id).u, g.edge(id).v);
  }
  DemandMask all = inst.all_demands_mask();
  for (int i = 0; i < inst.num_demands(); ++i) {
    const Demand& d = inst.demands()[i];
    if (uf.connected(d.s, d.t)) sol.satisfied |= DemandMask{1} << i;
  }
  sol.penalty = inst.penalty().eval(all & ~sol.satisfied);
  sol.total = sol.length + sol.penalty;
  return sol;
}

Solution walk_cost(const Instance& inst, const std::vector<std::pair<int, int>>& walk_edges) {
  const Graph& g = inst.graph();
  Solution sol;
  UnionFind uf(g.num_vertices());
  std::vector<bool> visited(g.num_vertices(), false);
  for (auto [id, mult] : walk_edges) {
    if (id < 0 || id >= g.num_edges()) throw DomainError("edge not in graph");
    if (mult < 1 || mult > 2) throw DomainError("walk edge multiplicity must be 1 or 2");
    sol.edges.push_back(id);
    sol.multiplicities.push_back(mult);
    sol.length += g.edge(id).cost * mult;
    uf.unite(g.edge(id).u, g.edge(id).v);
    visited[g.edge(id).u] = visited[g.edge(id).v] = true;
  }
  if (inst.root()) visited[*inst.root()] = true;
  DemandMask all = inst.all_demands_mask();
  for (int i = 0; i < inst.num_demands(); ++i) {
    const Demand& d = inst.demands()[i];
    if (visited[d.s] && visited[d.t] && uf.connected(d.s, d.t))
      sol.satisfied |= DemandMask{1} << i;
  }
  sol.penalty = inst.penalty().eval(all & ~sol.satisfied);
  sol.total = sol.length + sol.penalty;
  return sol;
}

} // namespace pcsn
