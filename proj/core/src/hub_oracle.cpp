#include "pcsn/oracle.hpp"

#include "pcsn/errors.hpp"
#include "pcsn/union_find.hpp"

#include <algorithm>
#include <bit>
#include <map>
#include <optional>

namespace pcsn {

// Exact SPCSF for additive penalties on "hub graphs": graphs with a vertex w
// whose removal leaves small components (petals). Every path between petals
// passes w, so a cross-petal demand is satisfied iff each endpoint reaches w
// inside its own petal, and the instance decomposes into per-petal edge
// choices glued by a pending-demand bitmask DP over a fixed petal order.

namespace {

struct Petal {
  std::vector<int> vertices;     // excluding the hub
  std::vector<int> edges;        // edge ids with an endpoint in the petal
  std::vector<int> local_demands;
  // (demand id, endpoint vertex) for demands leaving this petal
  std::vector<std::pair<int, int>> cross;
};

struct HubSplit {
  int hub = -1;
  std::vector<Petal> petals;
};

std::optional<HubSplit> split_at(const Instance& inst, int hub,
                                 const OracleBudget& budget) {
  const Graph& g = inst.graph();
  const int n = g.num_vertices();
  UnionFind uf(n);
  for (const Edge& e : g.edges())
    if (e.u != hub && e.v != hub) uf.unite(e.u, e.v);
  std::map<int, int> petal_index;
  HubSplit split;
  split.hub = hub;
  std::vector<int> petal_of(n, -1);
  for (int v = 0; v < n; ++v) {
    if (v == hub) continue;
    int root = uf.find(v);
    auto [it, fresh] = petal_index.emplace(root, static_cast<int>(split.petals.size()));
    if (fresh) split.petals.emplace_back();
    petal_of[v] = it->second;
    split.petals[it->second].vertices.push_back(v);
  }
  for (int e = 0; e < g.num_edges(); ++e) {
    int u = g.edge(e).u, v = g.edge(e).v;
    int p = u == hub ? petal_of[v] : petal_of[u];
    split.petals[p].edges.push_back(e);
    if (static_cast<int>(split.petals[p].edges.size()) > budget.max_hub_petal_edges)
      return std::nullopt;
  }
  for (int d = 0; d < inst.num_demands(); ++d) {
    const Demand& dm = inst.demands()[d];
    int ps = dm.s == hub ? -1 : petal_of[dm.s];
    int pt = dm.t == hub ? -1 : petal_of[dm.t];
    if (ps == pt || ps < 0 || pt < 0) {
      int p = ps < 0 ? pt : ps;
      split.petals[p].local_demands.push_back(d);
    } else {
      split.petals[ps].cross.emplace_back(d, dm.s);
      split.petals[pt].cross.emplace_back(d, dm.t);
    }
  }
  return split;
}

// Greedy petal order keeping the set of demands pending across the frontier
// small. Returns nullopt if the pending width exceeds the budget.
std::optional<std::vector<int>> order_petals(const HubSplit& split, int max_pending) {
  const int k = static_cast<int>(split.petals.size());
  std::vector<bool> done(k, false);
  std::vector<int> order;
  std::map<int, int> open; // demand id -> petals seen
  int worst = 0;
  for (int step = 0; step < k; ++step) {
    int best = -1, best_pending = -1;
    for (int p = 0; p < k; ++p) {
      if (done[p]) continue;
      int pending = static_cast<int>(open.size());
      for (const auto& [d, v] : split.petals[p].cross) {
        auto it = open.find(d);
        if (it == open.end())
          ++pending; // newly opened
        else
          --pending; // closed here
      }
      if (best < 0 || pending < best_pending ||
          (pending == best_pending && p < best)) {
        best = p;
        best_pending = pending;
      }
    }
    done[best] = true;
    order.push_back(best);
    for (const auto& [d, v] : split.petals[best].cross) {
      auto it = open.find(d);
      if (it == open.end())
        open.emplace(d, 1);
      else
        open.erase(it);
    }
    worst = std::max(worst, static_cast<int>(open.size()));
    if (worst > max_pending) return std::nullopt;
  }
  return order;
}

struct PetalChoice {
  Rat cost;           // edge cost + local penalties
  std::uint32_t hub_reach; // bit per cross entry of this petal: endpoint reaches hub
};

// Evaluates every edge subset of one petal.
std::vector<PetalChoice> petal_table(const Instance& inst, const Petal& petal,
                                     int hub) {
  const Graph& g = inst.graph();
  std::vector<int> local(g.num_vertices(), -1);
  for (std::size_t i = 0; i < petal.vertices.size(); ++i)
    local[petal.vertices[i]] = static_cast<int>(i);
  const int hub_slot = static_cast<int>(petal.vertices.size());
  auto slot = [&](int v) { return v == hub ? hub_slot : local[v]; };

  const int m = static_cast<int>(petal.edges.size());
  std::vector<PetalChoice> table;
  table.reserve(std::size_t{1} << m);
  for (std::uint32_t mask = 0; mask < (std::uint32_t{1} << m); ++mask) {
    UnionFind uf(hub_slot + 1);
    Rat cost = 0;
    for (int i = 0; i < m; ++i)
      if (mask & (std::uint32_t{1} << i)) {
        const Edge& e = g.edge(petal.edges[i]);
        uf.unite(slot(e.u), slot(e.v));
        cost += e.cost;
      }
    for (int d : petal.local_demands) {
      const Demand& dm = inst.demands()[d];
      if (!uf.connected(slot(dm.s), slot(dm.t)))
        cost += inst.penalty().scale_factor() * inst.penalty().per_demand()[d];
    }
    std::uint32_t reach = 0;
    for (std::size_t i = 0; i < petal.cross.size(); ++i)
      if (uf.connected(slot(petal.cross[i].second), hub_slot))
        reach |= std::uint32_t{1} << i;
    table.push_back({std::move(cost), reach});
  }
  return table;
}

} // namespace

std::optional<Solution> hub_oracle_spcsf(const Instance& inst,
                                         const OracleBudget& budget) {
  const PenaltyFn& pi = inst.penalty();
  if (pi.kind() != PenaltyFn::Kind::Additive || pi.forced_union() != 0)
    return std::nullopt;
  if (inst.num_demands() > kMaxMaskGround) return std::nullopt;
  const Graph& g = inst.graph();
  const int n = g.num_vertices();
  if (n < 2) return std::nullopt;

  // Pick the hub with the cheapest feasible plan (fewest pending bits).
  std::optional<HubSplit> plan;
  std::optional<std::vector<int>> plan_order;
  for (int w = 0; w < n; ++w) {
    auto split = split_at(inst, w, budget);
    if (!split) continue;
    auto order = order_petals(*split, budget.max_hub_pending);
    if (!order) continue;
    plan = std::move(split);
    plan_order = std::move(order);
    break;
  }
  if (!plan) return std::nullopt;

  const HubSplit& split = *plan;
  const std::vector<int>& order = *plan_order;
  const int k = static_cast<int>(split.petals.size());

  // Slot assignment: a cross demand occupies a slot from its first petal
  // (in processing order) until its second.
  std::map<int, int> slot_of_demand;
  std::vector<int> free_slots;
  int slot_count = 0;
  struct PetalPlan {
    std::vector<std::pair<int, int>> opens;  // (cross index in petal, slot)
    std::vector<std::pair<int, int>> closes; // (cross index in petal, slot)
  };
  std::vector<PetalPlan> plans(k);
  for (int p : order) {
    for (std::size_t i = 0; i < split.petals[p].cross.size(); ++i) {
      int d = split.petals[p].cross[i].first;
      auto it = slot_of_demand.find(d);
      if (it == slot_of_demand.end()) {
        int s;
        if (!free_slots.empty()) {
          s = free_slots.back();
          free_slots.pop_back();
        } else {
          s = slot_count++;
        }
        slot_of_demand.emplace(d, s);
        plans[p].opens.emplace_back(static_cast<int>(i), s);
      } else {
        plans[p].closes.emplace_back(static_cast<int>(i), it->second);
      }
    }
    for (const auto& [i, s] : plans[p].closes) {
      slot_of_demand.erase(split.petals[p].cross[i].first);
      free_slots.push_back(s);
    }
  }
  if (slot_count > budget.max_hub_pending) return std::nullopt;

  // DP over petals: state = pending-slot bitmap of "endpoint reaches hub".
  const std::size_t states = std::size_t{1} << slot_count;
  std::vector<std::optional<Rat>> cur(states), next(states);
  std::vector<std::vector<std::pair<std::uint32_t, std::uint32_t>>> back(k);
  cur[0] = Rat(0);

  std::vector<std::vector<PetalChoice>> tables(k);
  for (int p = 0; p < k; ++p) tables[p] = petal_table(inst, split.petals[p], split.hub);

  for (int step = 0; step < k; ++step) {
    const int p = order[step];
    const Petal& petal = split.petals[p];
    const PetalPlan& pp = plans[p];
    for (auto& v : next) v.reset();
    back[step].assign(states, {0, 0});
    std::vector<std::pair<std::uint32_t, std::uint32_t>>& bk = back[step];

    for (std::uint32_t state = 0; state < states; ++state) {
      if (!cur[state]) continue;
      for (std::uint32_t mask = 0; mask < tables[p].size(); ++mask) {
        const PetalChoice& choice = tables[p][mask];
        Rat cost = *cur[state] + choice.cost;
        // Close pending demands.
        for (const auto& [i, s] : pp.closes) {
          bool other_side = (state >> s) & 1;
          bool here = (choice.hub_reach >> i) & 1;
          if (!(other_side && here)) {
            int d = petal.cross[i].first;
            cost += pi.scale_factor() * pi.per_demand()[d];
          }
        }
        std::uint32_t ns = state;
        for (const auto& [i, s] : pp.closes) ns &= ~(std::uint32_t{1} << s);
        for (const auto& [i, s] : pp.opens) {
          if ((choice.hub_reach >> i) & 1)
            ns |= std::uint32_t{1} << s;
          else
            ns &= ~(std::uint32_t{1} << s);
        }
        if (!next[ns] || cost < *next[ns]) {
          next[ns] = std::move(cost);
          bk[ns] = {state, mask};
        }
      }
    }
    std::swap(cur, next);
  }

  if (!cur[0]) return std::nullopt;
  Rat best = *cur[0];

  // Reconstruct the chosen petal masks.
  std::vector<std::uint32_t> chosen(k, 0);
  std::uint32_t state = 0;
  for (int step = k - 1; step >= 0; --step) {
    auto [prev, mask] = back[step][state];
    chosen[order[step]] = mask;
    state = prev;
  }
  std::vector<int> edges;
  for (int p = 0; p < k; ++p)
    for (std::size_t i = 0; i < split.petals[p].edges.size(); ++i)
      if (chosen[p] & (std::uint32_t{1} << i)) edges.push_back(split.petals[p].edges[i]);
  Solution sol = solution_cost(inst, edges);
  if (sol.total != best) throw DomainError("hub oracle witness mismatch");
  return sol;
}

} // namespace pcsn
