#include "pcsn/clustering.hpp"

#include "pcsn/errors.hpp"

#include <algorithm>
#include <cassert>
#include <sstream>

namespace pcsn {

bool ClusterNode::contains(int v) const {
  return std::binary_search(vertices.begin(), vertices.end(), v);
}

Rat DualState::y_of(DemandMask demand_set) const {
  Rat sum = 0;
  for (std::size_t d = 0; d < y_demand.size(); ++d)
    if (demand_set & (DemandMask{1} << d)) sum += y_demand[d];
  return sum;
}

namespace {

struct GrowState {
  const Instance& inst;
  const Graph& g;
  int n;
  int nd;
  std::vector<ClusterNode> clusters;
  std::vector<int> cluster_of;
  std::vector<Rat> y_demand;
  std::vector<Rat> slack;
  std::vector<bool> live;
  std::vector<int> forest;
  std::vector<TraceEvent> trace;

  explicit GrowState(const Instance& instance)
      : inst(instance), g(instance.graph()), n(g.num_vertices()),
        nd(instance.num_demands()), cluster_of(n), y_demand(nd, Rat(0)),
        live(nd, true) {
    clusters.reserve(2 * static_cast<std::size_t>(n));
    for (int v = 0; v < n; ++v) {
      ClusterNode c;
      c.vertices = {v};
      clusters.push_back(std::move(c));
      cluster_of[v] = v;
    }
    slack.reserve(g.num_edges());
    for (const Edge& e : g.edges()) slack.push_back(e.cost);
  }

  // kappa(C): number of live demands crossing the current cluster C.
  int kappa(int c) const {
    int k = 0;
    for (int d = 0; d < nd; ++d) {
      if (!live[d]) continue;
      int cs = cluster_of[inst.demands()[d].s];
      int ct = cluster_of[inst.demands()[d].t];
      if (cs != ct && (cs == c || ct == c)) ++k;
    }
    return k;
  }

  SlackFn slack_fn(const std::vector<int>& kappa_of) const {
    SlackFn f;
    f.penalty = &inst.penalty();
    f.charge = y_demand;
    f.rate.assign(nd, Rat(0));
    for (int d = 0; d < nd; ++d) {
      if (!live[d]) continue;
      int cs = cluster_of[inst.demands()[d].s];
      int ct = cluster_of[inst.demands()[d].t];
      if (cs == ct) continue;
      Rat r = Rat(1, kappa_of[cs]) + Rat(1, kappa_of[ct]);
      r.canonicalize();
      f.rate[d] = r;
    }
    return f;
  }

  void credit(const Rat& eta, const std::vector<int>& kappa_of,
              const std::vector<bool>& is_current) {
    if (eta == 0) return;
    for (std::size_t c = 0; c < clusters.size(); ++c) {
      if (!is_current[c] || kappa_of[c] == 0) continue;
      clusters[c].y_total += eta;
      Rat share = eta / kappa_of[c];
      share.canonicalize();
      for (int d = 0; d < nd; ++d) {
        if (!live[d]) continue;
        int cs = cluster_of[inst.demands()[d].s];
        int ct = cluster_of[inst.demands()[d].t];
        if (cs == ct || (cs != static_cast<int>(c) && ct != static_cast<int>(c)))
          continue;
        clusters[c].y_demand[d] += share;
        y_demand[d] += share;
      }
    }
    for (int e = 0; e < g.num_edges(); ++e) {
      int cu = cluster_of[g.edge(e).u];
      int cv = cluster_of[g.edge(e).v];
      if (cu == cv) continue;
      int rate = (kappa_of[cu] > 0 ? 1 : 0) + (kappa_of[cv] > 0 ? 1 : 0);
      if (rate > 0) slack[e] -= eta * rate;
    }
  }

  void merge(int edge_id) {
    const Edge& e = g.edge(edge_id);
    int c1 = cluster_of[e.u];
    int c2 = cluster_of[e.v];
    assert(c1 != c2);
    ClusterNode merged;
    merged.vertices.resize(clusters[c1].vertices.size() +
                           clusters[c2].vertices.size());
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
    TraceEvent ev;
    ev.kind = TraceEvent::Kind::Merge;
    ev.cluster = idx;
    ev.child1 = c1;
    ev.child2 = c2;
    ev.edge = edge_id;
    trace.push_back(ev);
  }

  // Merges every tight inter-cluster edge, ascending edge id, re-checking
  // inter-cluster status after each merge (a merge can internalize another
  // tight edge).
  void merge_tight_edges() {
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

  // Dual feasibility is re-asserted after every event; a violation here is
  // an implementation bug, not bad input.
  void assert_feasible() const {
    for (const Rat& s : slack)
      if (s < 0) throw DomainError("internal: edge constraint violated");
    SlackFn f;
    f.penalty = &inst.penalty();
    f.charge = y_demand;
    f.rate.assign(nd, Rat(0));
    if (minimize_submodular(f, 0, 0).value < 0)
      throw DomainError("internal: penalty-set constraint violated");
  }

  void process_deaths() {
    SlackFn f;
    f.penalty = &inst.penalty();
    f.charge = y_demand;
    f.rate.assign(nd, Rat(0));
    for (int d : dead_set_update(f, live)) {
      live[d] = false;
      MinimizeResult witness = minimize_submodular(f, 0, DemandMask{1} << d);
      TraceEvent ev;
      ev.kind = TraceEvent::Kind::Death;
      ev.demand = d;
      ev.tight_set = witness.minimizer;
      trace.push_back(ev);
    }
  }
};

} // namespace

GrowthResult grow(const Instance& inst) {
  if (inst.num_demands() > kMaxMaskGround)
    throw CapacityError("growth phase requires mask-sized demand sets");
  GrowState st(inst);
  int iterations = 0;

  // Zero-cost edges are tight before any growth.
  st.merge_tight_edges();
  st.process_deaths();

  while (true) {
    std::vector<bool> is_current(st.clusters.size(), false);
    for (int v = 0; v < st.n; ++v) is_current[st.cluster_of[v]] = true;
    std::vector<int> kappa_of(st.clusters.size(), 0);
    bool any_active = false;
    for (std::size_t c = 0; c < st.clusters.size(); ++c)
      if (is_current[c]) {
        kappa_of[c] = st.kappa(static_cast<int>(c));
        if (kappa_of[c] > 0) any_active = true;
      }
    if (!any_active) break;
    ++iterations;

    std::vector<EdgeCandidate> candidates;
    for (int e = 0; e < st.g.num_edges(); ++e) {
      int cu = st.cluster_of[st.g.edge(e).u];
      int cv = st.cluster_of[st.g.edge(e).v];
      if (cu == cv) continue;
      int rate = (kappa_of[cu] > 0 ? 1 : 0) + (kappa_of[cv] > 0 ? 1 : 0);
      if (rate > 0) candidates.push_back({e, st.slack[e], rate});
    }
    SlackFn f = st.slack_fn(kappa_of);
    EtaResult eta = compute_eta(candidates, f, true);
    // An active cluster is crossed by a live demand of finite penalty, so
    // some constraint always binds.
    if (eta.kind == EtaResult::Kind::Unbounded)
      throw DomainError("unbounded growth step");

    TraceEvent gev;
    gev.kind = TraceEvent::Kind::Grow;
    gev.eta = eta.eta;
    st.trace.push_back(gev);

    st.credit(eta.eta, kappa_of, is_current);
    st.merge_tight_edges();
    st.process_deaths();
    st.assert_feasible();
  }

  GrowthResult out;
  out.forest = st.forest;
  std::sort(out.forest.begin(), out.forest.end());
  out.dual.clusters = std::move(st.clusters);
  out.dual.y_demand = std::move(st.y_demand);
  for (int d = 0; d < st.nd; ++d)
    if (!st.live[d]) out.dead |= DemandMask{1} << d;
  out.live = std::move(st.live);
  out.cluster_of = std::move(st.cluster_of);
  out.trace = std::move(st.trace);
  out.iterations = iterations;
  return out;
}

std::vector<int> prune(const Graph& g, const std::vector<ClusterNode>& history,
                       const std::vector<bool>& in_pruning_set,
                       std::vector<int> forest, std::vector<TraceEvent>* trace) {
  std::vector<bool> removed(g.num_edges(), false);
  auto boundary = [&](const ClusterNode& c) {
    int count = 0;
    int last = -1;
    for (int e : forest) {
      if (removed[e]) continue;
      bool inu = c.contains(g.edge(e).u);
      bool inv = c.contains(g.edge(e).v);
      if (inu != inv) {
        ++count;
        last = e;
      }
    }
    return std::pair<int, int>(count, last);
  };

  bool changed = true;
  while (changed) {
    changed = false;
    for (int c = static_cast<int>(history.size()) - 1; c >= 0; --c) {
      if (!in_pruning_set[c]) continue;
      auto [count, edge] = boundary(history[c]);
      if (count == 1) {
        removed[edge] = true;
        changed = true;
        if (trace) {
          TraceEvent ev;
          ev.kind = TraceEvent::Kind::Prune;
          ev.edge = edge;
          ev.cluster = c;
          trace->push_back(ev);
        }
      }
    }
  }
  std::vector<int> result;
  for (int e : forest)
    if (!removed[e]) result.push_back(e);
  return result;
}

ClusteringOutput submodular_pc_clustering(const Instance& inst) {
  GrowthResult growth = grow(inst);

  // B: history clusters that cut no live demand. Liveness is evaluated on
  // the final dead set; satisfied demands may still be live and protect
  // their clusters.
  const auto& demands = inst.demands();
  std::vector<bool> in_b(growth.dual.clusters.size(), true);
  for (std::size_t c = 0; c < growth.dual.clusters.size(); ++c) {
    const ClusterNode& node = growth.dual.clusters[c];
    for (int d = 0; d < inst.num_demands(); ++d) {
      if (!growth.live[d]) continue;
      if (node.contains(demands[d].s) != node.contains(demands[d].t)) {
        in_b[c] = false;
        break;
      }
    }
  }

  ClusteringOutput out;
  out.grown_forest = growth.forest;
  out.trace = std::move(growth.trace);
  out.forest = prune(inst.graph(), growth.dual.clusters, in_b, growth.forest,
                     &out.trace);
  out.dead = growth.dead;
  out.dual = std::move(growth.dual);
  out.in_pruning_set = std::move(in_b);
  out.cluster_of = std::move(growth.cluster_of);
  out.iterations = growth.iterations;
  return out;
}

namespace {

std::uint64_t fnv1a(const std::string& data) {
  std::uint64_t h = 1469598103934665603ULL;
  for (unsigned char c : data) {
    h ^= c;
    h *= 1099511628211ULL;
  }
  return h;
}

std::string dual_snapshot(const DualState& dual) {
  std::ostringstream os;
  for (std::size_t c = 0; c < dual.clusters.size(); ++c)
    for (const auto& [d, y] : dual.clusters[c].y_demand)
      os << c << ':' << d << '=' << rat_to_fraction(y) << ';';
  return os.str();
}

} // namespace

std::string trace_to_jsonl(const Instance& inst, const ClusteringOutput& out) {
  (void)inst;
  std::ostringstream os;
  const std::uint64_t y_hash = fnv1a(dual_snapshot(out.dual));
  for (const TraceEvent& ev : out.trace) {
    os << "{\"event\":\"";
    switch (ev.kind) {
    case TraceEvent::Kind::Grow:
      os << "grow\",\"eta\":\"" << rat_to_fraction(ev.eta) << "\"";
      break;
    case TraceEvent::Kind::Merge:
      os << "merge\",\"cluster\":" << ev.cluster << ",\"children\":[" << ev.child1
         << "," << ev.child2 << "],\"edge\":" << ev.edge;
      break;
    case TraceEvent::Kind::Death:
      os << "death\",\"demand\":" << ev.demand << ",\"tight_set\":" << ev.tight_set;
      break;
    case TraceEvent::Kind::Prune:
      os << "prune\",\"edge\":" << ev.edge << ",\"cluster\":" << ev.cluster;
      break;
    }
    os << ",\"y_hash\":\"" << std::hex << y_hash << std::dec << "\"}\n";
  }
  return os.str();
}

} // namespace pcsn
