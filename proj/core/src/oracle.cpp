#include "pcsn/oracle.hpp"

#include "pcsn/errors.hpp"
#include "pcsn/steiner.hpp"
#include "pcsn/union_find.hpp"

#include <algorithm>
#include <bit>
#include <cstdlib>
#include <map>

namespace pcsn {

OracleBudget OracleBudget::from_env() {
  OracleBudget b;
  auto read = [](const char* name, int& slot) {
    if (const char* v = std::getenv(name)) slot = std::atoi(v);
  };
  read("PCSN_MAX_EDGES", b.max_edges);
  read("PCSN_MAX_TERMINALS", b.max_terminals);
  read("PCSN_MAX_SAT_DEMANDS", b.max_sat_demands);
  read("PCSN_MAX_TOUR_VERTICES", b.max_tour_vertices);
  read("PCSN_MAX_VC_VERTICES", b.max_vc_vertices);
  return b;
}

namespace {

// Route 1: enumerate all edge subsets in Gray-code order so the running
// length needs one exact add/subtract per mask.
Solution spcsf_by_edge_subsets(const Instance& inst) {
  const Graph& g = inst.graph();
  const int m = g.num_edges();
  const int nd = inst.num_demands();
  const DemandMask all = inst.all_demands_mask();

  if (m > 30) throw CapacityError("edge-subset enumeration beyond 30 edges");
  Rat length = 0;
  std::uint32_t mask = 0;
  std::optional<Rat> best;
  std::uint32_t best_mask = 0;
  const std::uint64_t count = std::uint64_t{1} << m;
  for (std::uint64_t k = 0;; ++k) {
    UnionFind uf(g.num_vertices());
    for (std::uint32_t rest = mask; rest; rest &= rest - 1)
      uf.unite(g.edge(std::countr_zero(rest)).u, g.edge(std::countr_zero(rest)).v);
    DemandMask satisfied = 0;
    for (int d = 0; d < nd; ++d)
      if (uf.connected(inst.demands()[d].s, inst.demands()[d].t))
        satisfied |= DemandMask{1} << d;
    Rat total = length + inst.penalty().eval(all & ~satisfied);
    if (!best || total < *best) {
      best = total;
      best_mask = mask;
    }
    if (k + 1 == count) break;
    int bit = std::countr_zero(k + 1); // Gray-code step
    std::uint32_t flip = std::uint32_t{1} << bit;
    if (mask & flip)
      length -= g.edge(bit).cost;
    else
      length += g.edge(bit).cost;
    mask ^= flip;
  }
  std::vector<int> edges;
  for (int e = 0; e < m; ++e)
    if (best_mask & (std::uint32_t{1} << e)) edges.push_back(e);
  Solution sol = solution_cost(inst, edges);
  if (sol.total != *best) throw DomainError("edge-subset oracle mismatch");
  return sol;
}

// Route 3: enumerate satisfied demand sets, cost each with an exact Steiner
// forest over the demand-graph groups (Dreyfus-Wagner table shared).
Solution spcsf_by_satisfied_sets(const Instance& inst, const OracleBudget& budget) {
  const int nd = inst.num_demands();
  if (nd > budget.max_sat_demands)
    throw CapacityError("satisfied-set oracle beyond demand budget");
  const DemandMask all = inst.all_demands_mask();

  std::vector<int> terminals;
  for (const Demand& d : inst.demands()) {
    terminals.push_back(d.s);
    terminals.push_back(d.t);
  }
  std::sort(terminals.begin(), terminals.end());
  terminals.erase(std::unique(terminals.begin(), terminals.end()), terminals.end());
  if (static_cast<int>(terminals.size()) > budget.max_terminals)
    throw CapacityError("satisfied-set oracle beyond terminal budget");
  auto tindex = [&](int v) {
    return static_cast<int>(std::lower_bound(terminals.begin(), terminals.end(), v) -
                            terminals.begin());
  };
  SteinerTreeTable table(inst.graph(), terminals);

  std::optional<Rat> best;
  std::vector<std::uint32_t> best_parts;
  for (DemandMask sat = 0; sat <= all; ++sat) {
    UnionFind uf(static_cast<int>(terminals.size()));
    for (int d = 0; d < nd; ++d)
      if (sat & (DemandMask{1} << d))
        uf.unite(tindex(inst.demands()[d].s), tindex(inst.demands()[d].t));
    std::map<int, std::uint32_t> group_of;
    for (int d = 0; d < nd; ++d)
      if (sat & (DemandMask{1} << d)) {
        int root = uf.find(tindex(inst.demands()[d].s));
        group_of[root] |= std::uint32_t{1} << tindex(inst.demands()[d].s);
        group_of[root] |= std::uint32_t{1} << tindex(inst.demands()[d].t);
      }
    std::vector<std::uint32_t> groups;
    for (const auto& [root, gmask] : group_of) groups.push_back(gmask);
    const int r = static_cast<int>(groups.size());

    std::vector<std::optional<Rat>> f(std::size_t{1} << r);
    std::vector<std::uint32_t> choice(std::size_t{1} << r, 0);
    f[0] = Rat(0);
    for (std::uint32_t set = 1; set < (std::uint32_t{1} << r); ++set) {
      const std::uint32_t first = set & (~set + 1);
      for (std::uint32_t part = set; part > 0; part = (part - 1) & set) {
        if (!(part & first) || !f[set ^ part]) continue;
        std::uint32_t tmask = 0;
        for (int i = 0; i < r; ++i)
          if (part & (std::uint32_t{1} << i)) tmask |= groups[i];
        auto tree = table.tree_length(tmask);
        if (!tree) continue;
        Rat cand = *tree + *f[set ^ part];
        if (!f[set] || cand < *f[set]) {
          f[set] = cand;
          choice[set] = part;
        }
      }
    }
    const std::uint32_t full = (std::uint32_t{1} << r) - 1;
    if (!f[full]) continue;
    Rat total = *f[full] + inst.penalty().eval(all & ~sat);
    if (!best || total < *best) {
      best = total;
      best_parts.clear();
      std::uint32_t cur = full;
      while (cur) {
        std::uint32_t tmask = 0;
        for (int i = 0; i < r; ++i)
          if (choice[cur] & (std::uint32_t{1} << i)) tmask |= groups[i];
        best_parts.push_back(tmask);
        cur ^= choice[cur];
      }
    }
  }
  if (!best) throw DomainError("no feasible satisfied set");
  std::vector<int> edges;
  for (std::uint32_t tmask : best_parts)
    for (int e : table.tree_edges(tmask)) edges.push_back(e);
  Solution sol = solution_cost(inst, edges);
  if (sol.total != *best) throw DomainError("satisfied-set oracle witness mismatch");
  return sol;
}

} // namespace

Solution oracle_spcsf(const Instance& inst, const OracleBudget& budget) {
  if (inst.num_demands() > kMaxMaskGround)
    throw CapacityError("oracle requires mask-sized demand sets");
  if (inst.graph().num_edges() <= budget.max_edges)
    return spcsf_by_edge_subsets(inst);
  if (auto hub = hub_oracle_spcsf(inst, budget)) return *hub;
  return spcsf_by_satisfied_sets(inst, budget);
}

namespace {

struct WalkTables {
  MetricClosure mc;
  // path[S][v]: cheapest walk visiting exactly the vertex set S, ending at
  // v in S. start >= 0 fixes the start vertex (tours), start < 0 leaves it
  // free (strolls).
  std::vector<std::vector<std::optional<Rat>>> path;
  std::vector<std::vector<int>> parent;
  int start = -1;
};

WalkTables build_walk_tables(const Graph& g, int start) {
  const int n = g.num_vertices();
  WalkTables t;
  t.start = start;
  t.mc = metric_closure(g);
  t.path.assign(std::size_t{1} << n, {});
  t.parent.assign(std::size_t{1} << n, {});
  for (std::uint32_t s = 1; s < (std::uint32_t{1} << n); ++s) {
    t.path[s].assign(n, std::nullopt);
    t.parent[s].assign(n, -1);
    for (int v = 0; v < n; ++v) {
      if (!(s & (std::uint32_t{1} << v))) continue;
      if (s == (std::uint32_t{1} << v)) {
        if (start < 0 || v == start) t.path[s][v] = Rat(0);
        continue;
      }
      const std::uint32_t prev = s ^ (std::uint32_t{1} << v);
      for (int u = 0; u < n; ++u) {
        if (!(prev & (std::uint32_t{1} << u))) continue;
        if (!t.path[prev][u] || !t.mc.dist[u][v]) continue;
        Rat cand = *t.path[prev][u] + *t.mc.dist[u][v];
        if (!t.path[s][v] || cand < *t.path[s][v]) {
          t.path[s][v] = cand;
          t.parent[s][v] = u;
        }
      }
    }
  }
  return t;
}

std::vector<int> walk_vertices(const WalkTables& t, std::uint32_t s, int end) {
  std::vector<int> order;
  std::uint32_t cur = s;
  int v = end;
  while (v >= 0) {
    order.push_back(v);
    int p = t.parent[cur][v];
    cur ^= std::uint32_t{1} << v;
    v = p;
  }
  std::reverse(order.begin(), order.end());
  return order;
}

Solution finish_walk(const Instance& inst, const WalkTables& t,
                     const std::vector<int>& visit_order, bool close,
                     const Rat& expected) {
  const Graph& g = inst.graph();
  std::map<int, int> mult;
  auto add_leg = [&](int a, int b) {
    for (int e : t.mc.path_edges(a, b, g)) ++mult[e];
  };
  for (std::size_t i = 1; i < visit_order.size(); ++i)
    add_leg(visit_order[i - 1], visit_order[i]);
  if (close && visit_order.size() > 1)
    add_leg(visit_order.back(), visit_order.front());
  // Parity-preserving reduction: a minimal walk never needs an edge more
  // than twice.
  std::vector<std::pair<int, int>> edges;
  for (auto [e, k] : mult) edges.emplace_back(e, k >= 2 ? (k % 2 ? 1 : 2) : k);
  Solution sol = walk_cost(inst, edges);
  if (sol.total > expected) throw DomainError("walk witness exceeds DP value");
  return sol;
}

Solution oracle_walk(const Instance& inst, bool close, const OracleBudget& budget) {
  const Graph& g = inst.graph();
  const int n = g.num_vertices();
  if (n > budget.max_tour_vertices)
    throw CapacityError("tour/stroll oracle beyond vertex budget");
  if (!inst.root()) throw DomainError("tour/stroll instances need a root");
  const int r = *inst.root();
  const DemandMask all = inst.all_demands_mask();
  WalkTables t = build_walk_tables(g, close ? r : -1);

  std::optional<Rat> best;
  std::uint32_t best_set = 0;
  int best_end = -1;
  for (std::uint32_t s = 1; s < (std::uint32_t{1} << n); ++s) {
    if (!(s & (std::uint32_t{1} << r))) continue;
    DemandMask satisfied = 0;
    for (int d = 0; d < inst.num_demands(); ++d) {
      const Demand& dm = inst.demands()[d];
      if ((s & (std::uint32_t{1} << dm.s)) && (s & (std::uint32_t{1} << dm.t)))
        satisfied |= DemandMask{1} << d;
    }
    Rat pen = inst.penalty().eval(all & ~satisfied);
    for (int v = 0; v < n; ++v) {
      if (!(s & (std::uint32_t{1} << v)) || !t.path[s][v]) continue;
      Rat walk = *t.path[s][v];
      if (close && std::popcount(s) > 1) {
        if (!t.mc.dist[v][r]) continue;
        walk += *t.mc.dist[v][r];
      }
      Rat total = walk + pen;
      if (!best || total < *best) {
        best = total;
        best_set = s;
        best_end = v;
      }
    }
  }
  if (!best) throw DomainError("walk oracle found nothing");
  std::vector<int> order = walk_vertices(t, best_set, best_end);
  return finish_walk(inst, t, order, close, *best);
}

} // namespace

Solution oracle_tour(const Instance& inst, const OracleBudget& budget) {
  return oracle_walk(inst, true, budget);
}

Solution oracle_stroll(const Instance& inst, const OracleBudget& budget) {
  return oracle_walk(inst, false, budget);
}

namespace {

void vc_branch(const Graph& g, std::vector<bool>& in_cover, int count,
               VertexCoverResult& best) {
  if (count >= best.size) return;
  int pick = -1;
  for (int e = 0; e < g.num_edges(); ++e) {
    if (!in_cover[g.edge(e).u] && !in_cover[g.edge(e).v]) {
      pick = e;
      break;
    }
  }
  if (pick < 0) {
    best.size = count;
    best.cover.clear();
    for (int v = 0; v < g.num_vertices(); ++v)
      if (in_cover[v]) best.cover.push_back(v);
    return;
  }
  for (int v : {g.edge(pick).u, g.edge(pick).v}) {
    in_cover[v] = true;
    vc_branch(g, in_cover, count + 1, best);
    in_cover[v] = false;
  }
}

} // namespace

VertexCoverResult oracle_vertex_cover(const Graph& g, const OracleBudget& budget) {
  if (g.num_vertices() > budget.max_vc_vertices)
    throw CapacityError("vertex cover oracle beyond vertex budget");
  VertexCoverResult best;
  best.size = g.num_vertices() + 1;
  std::vector<bool> in_cover(g.num_vertices(), false);
  vc_branch(g, in_cover, 0, best);
  return best;
}

} // namespace pcsn
