#include "pcsn/reduction.hpp"

#include "pcsn/errors.hpp"
#include "pcsn/oracle.hpp"
#include "pcsn/union_find.hpp"

#include <algorithm>
#include <map>

namespace pcsn {

InitialSolver exact_initial_solver() {
  return [](const Instance& inst) {
    Solution sol = oracle_spcsf(inst, OracleBudget::from_env());
    return InitialSolution{sol.edges, sol.satisfied};
  };
}

InitialSolver clustering_initial_solver() {
  return [](const Instance& inst) {
    ClusteringOutput out = submodular_pc_clustering(inst);
    Solution sol = solution_cost(inst, out.forest);
    return InitialSolution{sol.edges, sol.satisfied};
  };
}

RestrictOutput restrict_demands(const Instance& inst, const Rat& epsilon,
                                const InitialSolver& initial) {
  if (epsilon <= 0) throw DomainError("epsilon must be positive");
  InitialSolution start = initial(inst);
  if (!inst.graph().is_forest(start.forest))
    throw DomainError("initial solution must be a forest");

  // G*: F+ edges at length zero.
  Graph gstar(inst.graph().num_vertices());
  std::vector<bool> in_fplus(inst.graph().num_edges(), false);
  for (int e : start.forest) in_fplus[e] = true;
  for (int e = 0; e < inst.graph().num_edges(); ++e) {
    const Edge& edge = inst.graph().edge(e);
    gstar.add_edge(edge.u, edge.v, in_fplus[e] ? Rat(0) : edge.cost);
  }
  Rat inv_eps = Rat(1) / epsilon;
  Instance scaled = inst.with_graph(std::move(gstar))
                        .with_penalty(inst.penalty().scaled(inv_eps));

  RestrictOutput out;
  out.epsilon = epsilon;
  out.initial_forest = start.forest;
  out.initial_satisfied = start.satisfied;
  out.clustering = submodular_pc_clustering(scaled);
  out.derived_instance = scaled;
  out.dropped = out.clustering.dead;
  out.satisfied = inst.all_demands_mask() & ~out.dropped;
  out.restricted_penalty = inst.penalty().restricted(out.dropped);

  // F = F+ union the clustering forest. Zero-length edges can make that
  // union cyclic (the clustering may pick a different zero-cost route
  // between vertices F+ already identifies); keep all of F+ and drop the
  // redundant zero-slack clustering edges.
  UnionFind uf(inst.graph().num_vertices());
  std::vector<int> kept;
  for (int e : start.forest)
    if (uf.unite(inst.graph().edge(e).u, inst.graph().edge(e).v)) kept.push_back(e);
  for (int e : out.clustering.forest)
    if (uf.unite(inst.graph().edge(e).u, inst.graph().edge(e).v)) kept.push_back(e);
  std::sort(kept.begin(), kept.end());
  out.forest = std::move(kept);
  out.forest_length = inst.graph().length_of(out.forest);
  return out;
}

ContractionResult contract_components(const Graph& g, const std::vector<int>& forest) {
  if (!g.is_forest(forest)) throw DomainError("edge set to contract has a cycle");
  const int n = g.num_vertices();
  UnionFind uf(n);
  for (int e : forest) uf.unite(g.edge(e).u, g.edge(e).v);

  ContractionResult res;
  res.vertex_map.assign(n, -1);
  std::map<int, int> root_to_id;
  for (int v = 0; v < n; ++v) {
    int root = uf.find(v);
    auto [it, fresh] = root_to_id.emplace(root, static_cast<int>(root_to_id.size()));
    res.vertex_map[v] = it->second;
  }
  const int k = static_cast<int>(root_to_id.size());
  res.component_edges.assign(k, {});
  res.component_length.assign(k, Rat(0));
  for (int e : forest) {
    int c = res.vertex_map[g.edge(e).u];
    res.component_edges[c].push_back(e);
    res.component_length[c] += g.edge(e).cost;
  }

  res.contracted = Graph(k);
  // Cheapest edge per contracted pair; ties keep the lowest edge id.
  std::map<std::pair<int, int>, int> cheapest;
  for (int e = 0; e < g.num_edges(); ++e) {
    int cu = res.vertex_map[g.edge(e).u];
    int cv = res.vertex_map[g.edge(e).v];
    if (cu == cv) continue; // loop after contraction
    auto key = std::minmax(cu, cv);
    auto [it, fresh] = cheapest.emplace(std::pair<int, int>(key.first, key.second), e);
    if (!fresh && g.edge(e).cost < g.edge(it->second).cost) it->second = e;
  }
  for (const auto& [key, e] : cheapest) {
    res.contracted.add_edge(key.first, key.second, g.edge(e).cost);
    res.edge_origin.push_back(e);
  }
  return res;
}

namespace {

// Moat growth with vertex potentials on the contracted graph (the clustering
// of the merge phase). Vertices are live while their accumulated credit is
// below phi_v; a cluster is active while it contains a live vertex and dead
// once the credit inside it equals its total potential.
struct PotentialGrowth {
  const Graph& g;
  const std::vector<Rat>& phi;
  int n;
  std::vector<ClusterNode> clusters; // reuse: y_total per cluster
  std::vector<int> cluster_of;
  std::vector<Rat> credit; // per vertex
  std::vector<Rat> slack;  // per edge
  std::vector<int> forest; // contracted edge ids

  PotentialGrowth(const Graph& graph, const std::vector<Rat>& potentials)
      : g(graph), phi(potentials), n(graph.num_vertices()), cluster_of(n),
        credit(n, Rat(0)) {
    for (int v = 0; v < n; ++v) {
      ClusterNode c;
      c.vertices = {v};
      clusters.push_back(std::move(c));
      cluster_of[v] = v;
    }
    for (const Edge& e : g.edges()) slack.push_back(e.cost);
  }

  bool live(int v) const { return credit[v] < phi[v]; }

  int kappa(int c) const {
    int k = 0;
    for (int v : clusters[c].vertices)
      if (live(v)) ++k;
    return k;
  }

  void merge(int edge_id) {
    int c1 = cluster_of[g.edge(edge_id).u];
    int c2 = cluster_of[g.edge(edge_id).v];
    ClusterNode merged;
    merged.vertices.resize(clusters[c1].vertices.size() + clusters[c2].vertices.size());
    std::merge(clusters[c1].vertices.begin(), clusters[c1].vertices.end(),
               clusters[c2].vertices.begin(), clusters[c2].vertices.end(),
               merged.vertices.begin());
    merged.child1 = c1;
    merged.child2 = c2;
    merged.merge_edge = edge_id;
    int idx = static_cast<int>(clusters.size());
    clusters.push_back(std::move(merged));
    for (int v : clusters[idx].vertices) cluster_of[v] = idx;
    forest.push_back(edge_id);
  }

  void merge_tight() {
    while (true) {
      int pick = -1;
      for (int e = 0; e < g.num_edges(); ++e) {
        if (slack[e] != 0) continue;
        if (cluster_of[g.edge(e).u] == cluster_of[g.edge(e).v]) continue;
        pick = e;
        break;
      }
      if (pick < 0) return;
      merge(pick);
    }
  }

  void run() {
    merge_tight();
    while (true) {
      std::vector<bool> is_current(clusters.size(), false);
      for (int v = 0; v < n; ++v) is_current[cluster_of[v]] = true;
      std::vector<int> kappa_of(clusters.size(), 0);
      bool any_active = false;
      for (std::size_t c = 0; c < clusters.size(); ++c)
        if (is_current[c]) {
          kappa_of[c] = kappa(static_cast<int>(c));
          if (kappa_of[c] > 0) any_active = true;
        }
      if (!any_active) break;

      // eta: first binding edge or exhausted vertex.
      std::optional<Rat> eta;
      for (int e = 0; e < g.num_edges(); ++e) {
        int cu = cluster_of[g.edge(e).u];
        int cv = cluster_of[g.edge(e).v];
        if (cu == cv) continue;
        int rate = (kappa_of[cu] > 0 ? 1 : 0) + (kappa_of[cv] > 0 ? 1 : 0);
        if (rate == 0) continue;
        Rat cand = slack[e] / rate;
        if (!eta || cand < *eta) eta = cand;
      }
      for (int v = 0; v < n; ++v) {
        if (!live(v)) continue;
        int c = cluster_of[v];
        if (kappa_of[c] == 0) continue;
        Rat cand = (phi[v] - credit[v]) * kappa_of[c];
        if (!eta || cand < *eta) eta = cand;
      }
      if (!eta) throw DomainError("unbounded potential growth");

      // Credit and slack updates.
      for (std::size_t c = 0; c < clusters.size(); ++c) {
        if (!is_current[c] || kappa_of[c] == 0) continue;
        clusters[c].y_total += *eta;
        Rat share = *eta / kappa_of[c];
        share.canonicalize();
        for (int v : clusters[c].vertices)
          if (live(v)) credit[v] += share;
      }
      for (int e = 0; e < g.num_edges(); ++e) {
        int cu = cluster_of[g.edge(e).u];
        int cv = cluster_of[g.edge(e).v];
        if (cu == cv) continue;
        int rate = (kappa_of[cu] > 0 ? 1 : 0) + (kappa_of[cv] > 0 ? 1 : 0);
        if (rate > 0) slack[e] -= *eta * rate;
      }
      merge_tight();
      for (int v = 0; v < n; ++v)
        if (credit[v] > phi[v])
          throw DomainError("internal: potential constraint violated");
      for (const Rat& s : slack)
        if (s < 0) throw DomainError("internal: edge constraint violated");
    }
  }

  // Dual credited strictly inside cluster c (its descendants and itself).
  Rat inside(int c) const {
    const ClusterNode& node = clusters[c];
    Rat sum = node.y_total;
    if (node.child1 >= 0) sum += inside(node.child1);
    if (node.child2 >= 0) sum += inside(node.child2);
    return sum;
  }

  std::vector<bool> dead_clusters() const {
    std::vector<bool> dead(clusters.size(), false);
    for (std::size_t c = 0; c < clusters.size(); ++c) {
      Rat budget = 0;
      for (int v : clusters[c].vertices) budget += phi[v];
      dead[c] = inside(static_cast<int>(c)) == budget;
    }
    return dead;
  }
};

} // namespace

MergeOutput pc_cluster_merge(const Instance& inst, const std::vector<int>& forest,
                             const Rat& epsilon, DemandMask consider) {
  if (epsilon <= 0) throw DomainError("epsilon must be positive");
  const Graph& g = inst.graph();

  MergeOutput out;
  out.base_forest_length = g.length_of(forest);
  out.contraction = contract_components(g, forest);
  const ContractionResult& con = out.contraction;

  out.potentials.assign(con.contracted.num_vertices(), Rat(0));
  Rat inv_eps = Rat(1) / epsilon;
  for (int c = 0; c < con.contracted.num_vertices(); ++c)
    if (!con.component_edges[c].empty())
      out.potentials[c] = inv_eps * con.component_length[c];

  PotentialGrowth growth(con.contracted, out.potentials);
  growth.run();
  std::vector<bool> in_b = growth.dead_clusters();
  std::vector<int> f2 = prune(con.contracted, growth.clusters, in_b, growth.forest);

  for (int ce : f2) out.connector_edges.push_back(con.edge_origin[ce]);
  std::sort(out.connector_edges.begin(), out.connector_edges.end());

  // Uncontract: F union the kept connectors; cycles cannot arise from a
  // simple contracted forest, but a cheapest-first spanning pass guards the
  // invariant (it would drop the longest edge of any cycle).
  std::vector<std::pair<Rat, int>> ordered;
  for (int e : forest) ordered.emplace_back(g.edge(e).cost, e);
  for (int e : out.connector_edges) ordered.emplace_back(g.edge(e).cost, e);
  std::sort(ordered.begin(), ordered.end(), [](const auto& a, const auto& b) {
    return a.first < b.first || (a.first == b.first && a.second < b.second);
  });
  UnionFind uf(g.num_vertices());
  std::vector<int> kept;
  for (const auto& [cost, e] : ordered)
    if (uf.unite(g.edge(e).u, g.edge(e).v)) kept.push_back(e);

  // Components with at least one edge become the trees T_i.
  std::map<int, int> tree_of_root;
  for (int e : kept) {
    int root = uf.find(g.edge(e).u);
    auto [it, fresh] = tree_of_root.emplace(root, static_cast<int>(tree_of_root.size()));
    if (fresh) {
      out.trees.emplace_back();
      out.tree_vertices.emplace_back();
    }
    out.trees[it->second].push_back(e);
  }
  std::vector<int> tree_of_vertex(g.num_vertices(), -1);
  for (int v = 0; v < g.num_vertices(); ++v) {
    auto it = tree_of_root.find(uf.find(v));
    if (it != tree_of_root.end()) {
      tree_of_vertex[v] = it->second;
      out.tree_vertices[it->second].push_back(v);
    }
  }
  out.total_tree_length = 0;
  for (auto& tree : out.trees) {
    std::sort(tree.begin(), tree.end());
    out.total_tree_length += g.length_of(tree);
  }

  out.demand_partition.assign(out.trees.size(), 0);
  for (int d = 0; d < inst.num_demands(); ++d) {
    if (!(consider & (DemandMask{1} << d))) continue;
    const Demand& dm = inst.demands()[d];
    int ts = tree_of_vertex[dm.s];
    int tt = tree_of_vertex[dm.t];
    if (ts < 0 || ts != tt)
      throw DomainError("merge input forest does not satisfy a considered demand");
    out.demand_partition[ts] |= DemandMask{1} << d;
  }
  return out;
}

PipelineOutput reduction_pipeline(const Instance& inst, const Rat& epsilon,
                                  const InitialSolver& initial) {
  PipelineOutput out;
  out.restricted = restrict_demands(inst, epsilon, initial);
  out.merged = pc_cluster_merge(inst, out.restricted.forest, epsilon,
                                out.restricted.satisfied);
  return out;
}

Instance piece_instance(const Instance& inst, const PipelineOutput& pipe, int piece,
                        std::vector<int>* demand_ids) {
  const Graph& g = inst.graph();
  const auto& tree = pipe.merged.trees[piece];
  const auto& verts = pipe.merged.tree_vertices[piece];
  std::map<int, int> local;
  for (int v : verts) local.emplace(v, static_cast<int>(local.size()));
  Graph sub(static_cast<int>(local.size()));
  for (int e : tree) sub.add_edge(local.at(g.edge(e).u), local.at(g.edge(e).v), g.edge(e).cost);

  std::vector<Demand> demands;
  std::vector<int> ids;
  for (int d = 0; d < inst.num_demands(); ++d)
    if (pipe.merged.demand_partition[piece] & (DemandMask{1} << d)) {
      demands.push_back({local.at(inst.demands()[d].s), local.at(inst.demands()[d].t)});
      ids.push_back(d);
    }

  // Restriction of pi' to the piece's demands.
  PenaltyFn pi = [&]() {
    const PenaltyFn& base = inst.penalty();
    if (base.is_additive()) {
      std::vector<Rat> vals;
      for (int d : ids) vals.push_back(base.scale_factor() * base.per_demand()[d]);
      return PenaltyFn::additive(std::move(vals));
    }
    if (static_cast<int>(ids.size()) > 12)
      throw CapacityError("piece penalty export needs <= 12 demands for this kind");
    PenaltyFn restricted = pipe.restricted.restricted_penalty;
    std::vector<Rat> table(std::size_t{1} << ids.size());
    for (DemandMask m = 0; m < (DemandMask{1} << ids.size()); ++m) {
      DemandMask orig = 0;
      for (std::size_t j = 0; j < ids.size(); ++j)
        if (m & (DemandMask{1} << j)) orig |= DemandMask{1} << ids[j];
      table[m] = restricted.eval(orig);
    }
    return PenaltyFn::table(static_cast<int>(ids.size()), std::move(table));
  }();

  std::optional<int> root;
  if (inst.root() && local.count(*inst.root())) root = local.at(*inst.root());
  Instance piece_inst(std::move(sub), std::move(demands), std::move(pi), root);
  if (demand_ids) *demand_ids = std::move(ids);
  return piece_inst;
}

} // namespace pcsn
