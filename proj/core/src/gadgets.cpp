#include "pcsn/gadgets.hpp"

#include "pcsn/errors.hpp"
#include "pcsn/union_find.hpp"

#include <algorithm>
#include <map>

namespace pcsn {

namespace {

void require_cubic(const Graph& g) {
  std::vector<int> deg(g.num_vertices(), 0);
  std::map<std::pair<int, int>, int> seen;
  for (const Edge& e : g.edges()) {
    ++deg[e.u];
    ++deg[e.v];
    auto key = std::minmax(e.u, e.v);
    if (++seen[{key.first, key.second}] > 1)
      throw DomainError("gadget source must be simple");
  }
  for (int d : deg)
    if (d != 3) throw DomainError("gadget source must be 3-regular");
}

} // namespace

VcGadget gen_vc_gadget(const Graph& source) {
  require_cubic(source);
  const int n = source.num_vertices();
  const int m = source.num_edges();

  Graph h(1 + n + 3 * m);
  const int w = 0;
  std::vector<int> a(n), b(m), c1(m), c2(m);
  for (int i = 0; i < n; ++i) a[i] = 1 + i;
  for (int j = 0; j < m; ++j) {
    b[j] = 1 + n + 3 * j;
    c1[j] = 1 + n + 3 * j + 1;
    c2[j] = 1 + n + 3 * j + 2;
  }

  VcGadget g;
  g.source = source;
  g.w = w;
  g.a = a;
  g.b = b;
  g.c1 = c1;
  g.c2 = c2;
  std::vector<Demand> demands;
  std::vector<Rat> penalties;

  for (int i = 0; i < n; ++i)
    g.spoke_edge.push_back(h.add_edge(w, a[i], Rat(2)));
  for (int j = 0; j < m; ++j) {
    std::array<int, 4> cyc{h.add_edge(w, c1[j], Rat(1)), h.add_edge(c1[j], b[j], Rat(1)),
                           h.add_edge(c2[j], b[j], Rat(1)), h.add_edge(w, c2[j], Rat(1))};
    g.cycle_edges.push_back(cyc);
  }
  for (int j = 0; j < m; ++j) {
    g.wb_demand.push_back(static_cast<int>(demands.size()));
    demands.push_back({w, b[j]});
    penalties.push_back(Rat(3));
  }
  for (int j = 0; j < m; ++j) {
    const Edge& e = source.edge(j);
    std::array<int, 2> ids{};
    ids[0] = static_cast<int>(demands.size());
    demands.push_back({a[e.u], c1[j]});
    penalties.push_back(Rat(1));
    ids[1] = static_cast<int>(demands.size());
    demands.push_back({a[e.v], c2[j]});
    penalties.push_back(Rat(1));
    g.ac_demand.push_back(ids);
  }
  g.instance = Instance(std::move(h), std::move(demands),
                        PenaltyFn::additive(std::move(penalties)));
  return g;
}

GadgetCheck gadget_optimum_check(const VcGadget& g, const OracleBudget& budget) {
  GadgetCheck check;
  VertexCoverResult vc = oracle_vertex_cover(g.source, budget);
  check.tau = vc.size;
  const int n = g.source.num_vertices();
  const int m = g.source.num_edges();
  check.formula = Rat(2 * m + 2 * n + vc.size);
  check.witness = oracle_spcsf(g.instance, budget);
  check.pcsf_opt = check.witness.total;
  check.equal = check.pcsf_opt == check.formula;
  return check;
}

std::vector<int> solution_edges_from_cover(const VcGadget& g,
                                           const std::vector<int>& cover) {
  std::vector<bool> in_cover(g.source.num_vertices(), false);
  for (int v : cover) in_cover[v] = true;
  std::vector<int> edges;
  for (int i = 0; i < g.source.num_vertices(); ++i)
    if (!in_cover[i]) edges.push_back(g.spoke_edge[i]);
  for (int j = 0; j < g.source.num_edges(); ++j) {
    const Edge& e = g.source.edge(j);
    if (!in_cover[e.u]) {
      edges.push_back(g.cycle_edges[j][0]); // {w, c1}
      edges.push_back(g.cycle_edges[j][1]); // {c1, b}
    } else {
      edges.push_back(g.cycle_edges[j][3]); // {w, c2}
      edges.push_back(g.cycle_edges[j][2]); // {c2, b}
    }
  }
  std::sort(edges.begin(), edges.end());
  return edges;
}

namespace {

struct GadgetState {
  const VcGadget& g;
  std::vector<bool> picked; // per instance edge

  explicit GadgetState(const VcGadget& gadget, const Solution& sol)
      : g(gadget), picked(gadget.instance.graph().num_edges(), false) {
    for (int e : sol.edges) picked[e] = true;
  }

  bool reaches_w(int target) const {
    const Graph& h = g.instance.graph();
    UnionFind uf(h.num_vertices());
    for (int e = 0; e < h.num_edges(); ++e)
      if (picked[e]) uf.unite(h.edge(e).u, h.edge(e).v);
    return uf.connected(g.w, target);
  }

  Rat cost() const {
    std::vector<int> edges;
    for (int e = 0; e < static_cast<int>(picked.size()); ++e)
      if (picked[e]) edges.push_back(e);
    return solution_cost(g.instance, edges).total;
  }
};

} // namespace

std::vector<int> cover_from_solution(const VcGadget& g, const Solution& sol) {
  GadgetState st(g, sol);
  const int n = g.source.num_vertices();
  const int m = g.source.num_edges();
  Rat before = st.cost();

  // Every b_j reachable from w; otherwise buy the c1 side (cost +2, penalty -3).
  for (int j = 0; j < m; ++j)
    if (!st.reaches_w(g.b[j])) {
      st.picked[g.cycle_edges[j][0]] = true;
      st.picked[g.cycle_edges[j][1]] = true;
    }

  // Only one of c1_j, c2_j reachable: removing a redundant cycle edge keeps
  // b_j connected, saves 1 and loses at most 1 in penalties.
  for (int j = 0; j < m; ++j) {
    while (st.reaches_w(g.c1[j]) && st.reaches_w(g.c2[j])) {
      bool removed = false;
      for (int pick : {3, 2, 0, 1}) { // prefer breaking the c2 side
        int e = g.cycle_edges[j][pick];
        if (!st.picked[e]) continue;
        st.picked[e] = false;
        if (st.reaches_w(g.b[j])) {
          removed = true;
          break;
        }
        st.picked[e] = true;
      }
      if (!removed) throw DomainError("gadget normalization stuck on a cycle");
    }
  }

  // Spokes whose three demands are not all satisfied are useless (cost 2,
  // penalty at most 2). Iterate: removals can only shrink reachability.
  bool changed = true;
  while (changed) {
    changed = false;
    for (int i = 0; i < n; ++i) {
      if (!st.picked[g.spoke_edge[i]]) continue;
      bool all = true;
      for (int j = 0; j < m && all; ++j) {
        const Edge& e = g.source.edge(j);
        if (e.u == i && !st.reaches_w(g.c1[j])) all = false;
        if (e.v == i && !st.reaches_w(g.c2[j])) all = false;
      }
      if (!all) {
        st.picked[g.spoke_edge[i]] = false;
        changed = true;
      }
    }
  }

  Rat after = st.cost();
  if (after > before) throw DomainError("gadget normalization worsened the solution");

  std::vector<int> cover;
  for (int i = 0; i < n; ++i)
    if (!st.picked[g.spoke_edge[i]]) cover.push_back(i);

  // The construction guarantees a cover; anything else is a solver bug.
  std::vector<bool> in_cover(n, false);
  for (int v : cover) in_cover[v] = true;
  for (int j = 0; j < m; ++j) {
    const Edge& e = g.source.edge(j);
    if (!in_cover[e.u] && !in_cover[e.v])
      throw DomainError("extracted set is not a vertex cover");
  }
  return cover;
}

EuclideanGadget gen_euclidean_gadget(const Graph& source, std::int64_t scale_divisor,
                                     std::int64_t point_budget) {
  require_cubic(source);
  if (scale_divisor < 1) throw DomainError("scale divisor must be >= 1");
  const std::int64_t n = source.num_vertices();
  const std::int64_t m = source.num_edges();
  const std::int64_t u_base = 10000 * (n + m);
  if (u_base % scale_divisor != 0)
    throw DomainError("scale divisor must divide U");

  EuclideanGadget g;
  g.scale_divisor = scale_divisor;
  g.unit = u_base / scale_divisor;
  g.hlen = 10 * g.unit;
  g.vspace = 100 * g.unit;
  g.z_formula = g.vspace * (n + m) + 1 + (n + 2 * m) * g.hlen;

  const std::int64_t named = n + 3 * m;
  if (g.z_formula + named > point_budget)
    throw CapacityError("Euclidean gadget beyond the point budget");

  std::vector<std::array<std::int64_t, 2>> pts;
  std::map<std::pair<std::int64_t, std::int64_t>, int> index;
  auto add_point = [&](std::int64_t x, std::int64_t y) {
    auto [it, fresh] = index.emplace(std::pair<std::int64_t, std::int64_t>(x, y),
                                     static_cast<int>(pts.size()));
    if (fresh) pts.push_back({x, y});
    return it->second;
  };

  // Vertical spine, then the three horizontal row families.
  for (std::int64_t y = -m * g.vspace; y <= n * g.vspace; ++y) add_point(0, y);
  std::vector<std::int64_t> row_ys;
  for (std::int64_t i = 1; i <= n; ++i) row_ys.push_back(i * g.vspace);
  for (std::int64_t j = 1; j <= m; ++j) {
    row_ys.push_back(-j * g.vspace);
    row_ys.push_back(-j * g.vspace + 4 * g.unit);
  }
  for (std::int64_t y : row_ys)
    for (std::int64_t x = 1; x <= g.hlen; ++x) add_point(x, y);
  g.z_count = static_cast<std::int64_t>(pts.size());

  for (std::int64_t i = 1; i <= n; ++i)
    g.a.push_back(add_point(g.hlen + 2 * g.unit, i * g.vspace));
  for (std::int64_t j = 1; j <= m; ++j) {
    g.b.push_back(add_point(g.hlen, -j * g.vspace + 2 * g.unit));
    g.c1.push_back(add_point(g.hlen, -j * g.vspace + g.unit));
    g.c2.push_back(add_point(g.hlen, -j * g.vspace + 3 * g.unit));
  }

  std::vector<Demand> demands;
  std::vector<Rat> penalties;
  const Rat unit_penalty = Rat(1, static_cast<long>(scale_divisor));
  auto lattice_demand = [&](std::int64_t x1, std::int64_t y1, std::int64_t x2,
                            std::int64_t y2) {
    demands.push_back({index.at({x1, y1}), index.at({x2, y2})});
    penalties.push_back(unit_penalty);
  };
  // Spine adjacencies, then row adjacencies (x = 0 attaches to the spine).
  for (std::int64_t y = -m * g.vspace; y < n * g.vspace; ++y)
    lattice_demand(0, y, 0, y + 1);
  for (std::int64_t y : row_ys)
    for (std::int64_t x = 0; x < g.hlen; ++x) lattice_demand(x, y, x + 1, y);

  const int origin = index.at({0, 0});
  Rat b_penalty = Rat(3) * g.unit; // 3U / s
  for (std::int64_t j = 0; j < m; ++j) {
    demands.push_back({origin, g.b[static_cast<std::size_t>(j)]});
    penalties.push_back(b_penalty);
  }
  Rat ac_penalty = Rat(u_base - 10, static_cast<long>(scale_divisor));
  ac_penalty.canonicalize();
  for (std::int64_t j = 0; j < m; ++j) {
    const Edge& e = source.edge(static_cast<int>(j));
    demands.push_back({g.a[e.u], g.c1[static_cast<std::size_t>(j)]});
    penalties.push_back(ac_penalty);
    demands.push_back({g.a[e.v], g.c2[static_cast<std::size_t>(j)]});
    penalties.push_back(ac_penalty);
  }
  g.demand_count = static_cast<std::int64_t>(demands.size());

  Graph geometric(static_cast<int>(pts.size()));
  Instance inst(std::move(geometric), std::move(demands),
                PenaltyFn::additive(std::move(penalties)));
  inst.set_points(std::move(pts));
  g.instance = std::move(inst);
  return g;
}

Graph source_graph_k4() {
  Graph g(4);
  for (int i = 0; i < 4; ++i)
    for (int j = i + 1; j < 4; ++j) g.add_edge(i, j, Rat(1));
  return g;
}

Graph source_graph_k33() {
  Graph g(6);
  for (int i = 0; i < 3; ++i)
    for (int j = 3; j < 6; ++j) g.add_edge(i, j, Rat(1));
  return g;
}

Graph source_graph_prism() {
  Graph g(6);
  g.add_edge(0, 1, Rat(1));
  g.add_edge(1, 2, Rat(1));
  g.add_edge(0, 2, Rat(1));
  g.add_edge(3, 4, Rat(1));
  g.add_edge(4, 5, Rat(1));
  g.add_edge(3, 5, Rat(1));
  g.add_edge(0, 3, Rat(1));
  g.add_edge(1, 4, Rat(1));
  g.add_edge(2, 5, Rat(1));
  return g;
}

Graph source_graph_petersen() {
  Graph g(10);
  for (int i = 0; i < 5; ++i) g.add_edge(i, (i + 1) % 5, Rat(1));
  for (int i = 0; i < 5; ++i) g.add_edge(5 + i, 5 + (i + 2) % 5, Rat(1));
  for (int i = 0; i < 5; ++i) g.add_edge(i, 5 + i, Rat(1));
  return g;
}

} // namespace pcsn
