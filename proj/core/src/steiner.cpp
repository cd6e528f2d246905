#include "pcsn/steiner.hpp"

#include "pcsn/errors.hpp"
#include "pcsn/union_find.hpp"

#include <algorithm>
#include <bit>
#include <map>

namespace pcsn {

MetricClosure metric_closure(const Graph& g) {
  const int n = g.num_vertices();
  MetricClosure mc;
  mc.dist.assign(n, std::vector<std::optional<Rat>>(n));
  mc.via_edge.assign(n, std::vector<int>(n, -1));
  for (int v = 0; v < n; ++v) mc.dist[v][v] = Rat(0);
  for (int e = 0; e < g.num_edges(); ++e) {
    const Edge& edge = g.edge(e);
    if (!mc.dist[edge.u][edge.v] || edge.cost < *mc.dist[edge.u][edge.v]) {
      mc.dist[edge.u][edge.v] = edge.cost;
      mc.dist[edge.v][edge.u] = edge.cost;
      mc.via_edge[edge.u][edge.v] = e;
      mc.via_edge[edge.v][edge.u] = e;
    }
  }
  for (int k = 0; k < n; ++k)
    for (int i = 0; i < n; ++i) {
      if (!mc.dist[i][k]) continue;
      for (int j = 0; j < n; ++j) {
        if (!mc.dist[k][j]) continue;
        Rat through = *mc.dist[i][k] + *mc.dist[k][j];
        if (!mc.dist[i][j] || through < *mc.dist[i][j]) {
          mc.dist[i][j] = through;
          mc.via_edge[i][j] = mc.via_edge[i][k];
        }
      }
    }
  return mc;
}

std::vector<int> MetricClosure::path_edges(int u, int v, const Graph& g) const {
  std::vector<int> edges;
  int cur = u;
  while (cur != v) {
    int e = via_edge[cur][v];
    if (e < 0) throw DomainError("path requested between disconnected vertices");
    edges.push_back(e);
    cur = g.edge(e).u == cur ? g.edge(e).v : g.edge(e).u;
  }
  return edges;
}

SteinerTreeTable::SteinerTreeTable(const Graph& g, std::vector<int> terminals)
    : g_(g), terminals_(std::move(terminals)), mc_(metric_closure(g)) {
  const int n = g.num_vertices();
  const int k = static_cast<int>(terminals_.size());
  if (k > 20) throw CapacityError("Dreyfus-Wagner beyond 20 terminals");
  table_.assign(std::size_t{1} << k, std::vector<std::optional<Rat>>(n));
  if (k == 0) return;
  for (int i = 0; i < k; ++i)
    for (int v = 0; v < n; ++v)
      table_[std::uint32_t{1} << i][v] = mc_.dist[terminals_[i]][v];
  for (std::uint32_t mask = 1; mask < (std::uint32_t{1} << k); ++mask) {
    if (std::popcount(mask) < 2) continue;
    auto& row = table_[mask];
    // Merge step: two subtrees meeting at v, lowest terminal fixed on one
    // side to halve the enumeration.
    const std::uint32_t first = mask & (~mask + 1);
    for (int v = 0; v < n; ++v) {
      for (std::uint32_t sub = (mask - 1) & mask; sub > 0; sub = (sub - 1) & mask) {
        if (!(sub & first)) continue;
        const std::uint32_t rest = mask ^ sub;
        if (rest == 0) continue;
        if (!table_[sub][v] || !table_[rest][v]) continue;
        Rat cand = *table_[sub][v] + *table_[rest][v];
        if (!row[v] || cand < *row[v]) row[v] = cand;
      }
    }
    // Grow step: move the attachment point through the metric closure,
    // iterated to a fixpoint (costs are nonnegative, so this terminates).
    bool changed = true;
    while (changed) {
      changed = false;
      for (int v = 0; v < n; ++v) {
        if (!row[v]) continue;
        for (int u = 0; u < n; ++u) {
          if (u == v || !mc_.dist[v][u]) continue;
          Rat cand = *row[v] + *mc_.dist[v][u];
          if (!row[u] || cand < *row[u]) {
            row[u] = cand;
            changed = true;
          }
        }
      }
    }
  }
}

std::optional<Rat> SteinerTreeTable::tree_length(std::uint32_t mask) const {
  if (mask == 0) return Rat(0);
  int first = std::countr_zero(mask);
  std::uint32_t rest = mask & (mask - 1);
  if (rest == 0) return Rat(0);
  return table_[rest][terminals_[first]];
}

void SteinerTreeTable::collect_edges(std::uint32_t mask, int v,
                                     std::vector<int>& out) const {
  if (mask == 0) return;
  if (std::popcount(mask) == 1) {
    int t = terminals_[std::countr_zero(mask)];
    for (int e : mc_.path_edges(t, v, g_)) out.push_back(e);
    return;
  }
  const Rat target = *table_[mask][v];
  const std::uint32_t first = mask & (~mask + 1);

  auto try_split_at = [&](int u) {
    for (std::uint32_t sub = (mask - 1) & mask; sub > 0; sub = (sub - 1) & mask) {
      if (!(sub & first)) continue;
      const std::uint32_t rest = mask ^ sub;
      if (rest == 0) continue;
      if (!table_[sub][u] || !table_[rest][u]) continue;
      if (*table_[sub][u] + *table_[rest][u] == *table_[mask][u]) {
        collect_edges(sub, u, out);
        collect_edges(rest, u, out);
        return true;
      }
    }
    return false;
  };

  if (try_split_at(v)) return;
  // Attach case with a strictly smaller subtree value (terminates).
  for (int u = 0; u < g_.num_vertices(); ++u) {
    if (u == v || !table_[mask][u] || !mc_.dist[v][u]) continue;
    if (*table_[mask][u] + *mc_.dist[v][u] == target && *table_[mask][u] < target) {
      for (int e : mc_.path_edges(u, v, g_)) out.push_back(e);
      collect_edges(mask, u, out);
      return;
    }
  }
  // Zero-length attachments: find a vertex at distance zero where the split
  // applies.
  for (int u = 0; u < g_.num_vertices(); ++u) {
    if (u == v || !mc_.dist[v][u] || *mc_.dist[v][u] != 0) continue;
    if (table_[mask][u] && *table_[mask][u] == target && try_split_at(u)) {
      for (int e : mc_.path_edges(u, v, g_)) out.push_back(e);
      return;
    }
  }
  throw DomainError("Steiner witness reconstruction failed");
}

std::vector<int> SteinerTreeTable::tree_edges(std::uint32_t mask) const {
  std::vector<int> out;
  if (mask == 0 || std::popcount(mask) == 1) return out;
  int first = std::countr_zero(mask);
  std::uint32_t rest = mask & (mask - 1);
  if (!table_[rest][terminals_[first]])
    throw DomainError("terminals not connectable");
  collect_edges(rest, terminals_[first], out);
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

Rat steiner_forest_len(const Graph& g, const std::vector<Demand>& demands,
                       int max_terminals) {
  if (demands.empty()) return Rat(0);
  std::vector<int> terminals;
  for (const Demand& d : demands) {
    terminals.push_back(d.s);
    terminals.push_back(d.t);
  }
  std::sort(terminals.begin(), terminals.end());
  terminals.erase(std::unique(terminals.begin(), terminals.end()), terminals.end());
  if (static_cast<int>(terminals.size()) > max_terminals)
    throw CapacityError("Steiner forest oracle beyond terminal budget");
  auto tindex = [&](int v) {
    return static_cast<int>(std::lower_bound(terminals.begin(), terminals.end(), v) -
                            terminals.begin());
  };

  // Components of the demand graph each live inside one tree; distinct trees
  // of an optimal forest are unions of these groups.
  UnionFind uf(static_cast<int>(terminals.size()));
  for (const Demand& d : demands) uf.unite(tindex(d.s), tindex(d.t));
  std::map<int, std::uint32_t> group_masks;
  for (std::size_t i = 0; i < terminals.size(); ++i)
    group_masks[uf.find(static_cast<int>(i))] |= std::uint32_t{1} << i;
  std::vector<std::uint32_t> groups;
  for (const auto& [root, mask] : group_masks) groups.push_back(mask);

  SteinerTreeTable table(g, terminals);
  const int r = static_cast<int>(groups.size());
  std::vector<std::optional<Rat>> f(std::size_t{1} << r);
  f[0] = Rat(0);
  for (std::uint32_t set = 1; set < (std::uint32_t{1} << r); ++set) {
    const std::uint32_t first = set & (~set + 1);
    for (std::uint32_t part = set; part > 0; part = (part - 1) & set) {
      if (!(part & first)) continue;
      if (!f[set ^ part]) continue;
      std::uint32_t term_mask = 0;
      for (int i = 0; i < r; ++i)
        if (part & (std::uint32_t{1} << i)) term_mask |= groups[i];
      auto tree = table.tree_length(term_mask);
      if (!tree) continue;
      Rat cand = *tree + *f[set ^ part];
      if (!f[set] || cand < *f[set]) f[set] = cand;
    }
  }
  if (!f[(std::uint32_t{1} << r) - 1])
    throw DomainError("demands cannot be satisfied in this graph");
  return *f[(std::uint32_t{1} << r) - 1];
}

} // namespace pcsn
