#include "pcsn/treedp.hpp"

#include "pcsn/errors.hpp"
#include "pcsn/union_find.hpp"

#include <algorithm>
#include <map>
#include <tuple>

namespace pcsn {

namespace {

// Effective per-vertex penalties of a rooted additive instance.
std::vector<Rat> vertex_penalties(const Instance& inst, int root) {
  const PenaltyFn& pi = inst.penalty();
  if (!pi.is_additive() || pi.forced_union() != 0)
    throw DomainError("tree DP requires additive penalties");
  std::vector<Rat> pen(inst.graph().num_vertices(), Rat(0));
  for (int d = 0; d < inst.num_demands(); ++d) {
    const Demand& dm = inst.demands()[d];
    int other;
    if (dm.s == root)
      other = dm.t;
    else if (dm.t == root)
      other = dm.s;
    else
      throw DomainError("tree DP requires a rooted instance");
    pen[other] += pi.scale_factor() * pi.per_demand()[d];
  }
  return pen;
}

// Restricted-growth-string canonicalization of raw block labels.
std::vector<std::uint8_t> canon_rgs(const std::vector<int>& raw) {
  std::vector<std::uint8_t> out(raw.size());
  std::vector<int> relabel;
  for (std::size_t i = 0; i < raw.size(); ++i) {
    auto it = std::find(relabel.begin(), relabel.end(), raw[i]);
    if (it == relabel.end()) {
      relabel.push_back(raw[i]);
      out[i] = static_cast<std::uint8_t>(relabel.size() - 1);
    } else {
      out[i] = static_cast<std::uint8_t>(it - relabel.begin());
    }
  }
  return out;
}

std::uint64_t pack_rgs(const std::vector<std::uint8_t>& rgs) {
  std::uint64_t code = 0;
  for (std::size_t i = 0; i < rgs.size(); ++i)
    code |= static_cast<std::uint64_t>(rgs[i]) << (4 * i);
  return code;
}

std::vector<std::uint8_t> unpack_rgs(std::uint64_t code, int len) {
  std::vector<std::uint8_t> rgs(len);
  for (int i = 0; i < len; ++i) rgs[i] = (code >> (4 * i)) & 0xf;
  return rgs;
}

// ---------------------------------------------------------------------------
// Rooted PCST.
// State at a node: (S, P) with S the bag subset whose penalty is not paid
// and P a partition of S into the connected pieces of the partial forest.
// pi(v) is charged exactly once, at the unique forget node of v (or at the
// answer extraction for the root vertex).

struct PcstKey {
  std::uint32_t subset = 0;
  std::uint64_t part = 0;
  auto operator<=>(const PcstKey&) const = default;
};

struct PcstProv {
  enum class Op { Leaf, IntroSkip, IntroTake, Relax, ForgetPay, ForgetAttach, Join };
  Op op = Op::Leaf;
  PcstKey child_a, child_b;
  int edge = -1;
};

struct PcstEntry {
  Rat cost;
  PcstProv prov;
};

using PcstTable = std::map<PcstKey, PcstEntry>;

void pcst_offer(PcstTable& table, const PcstKey& key, Rat cost, PcstProv prov) {
  auto it = table.find(key);
  if (it == table.end() || cost < it->second.cost)
    table[key] = PcstEntry{std::move(cost), std::move(prov)};
}

// Positions of set bits of subset in the bag.
std::vector<int> subset_positions(std::uint32_t subset, int bag_size) {
  std::vector<int> pos;
  for (int i = 0; i < bag_size; ++i)
    if (subset & (std::uint32_t{1} << i)) pos.push_back(i);
  return pos;
}

struct PcstSolver {
  const Instance& inst;
  const NiceDecomposition& nice;
  const std::vector<Rat> pen;
  std::vector<PcstTable> tables;
  // in-bag edges incident to the introduced vertex, per node
  std::vector<std::vector<int>> relax_edges;

  PcstSolver(const Instance& instance, const NiceDecomposition& nd, int root)
      : inst(instance), nice(nd), pen(vertex_penalties(instance, root)),
        tables(nd.nodes.size()), relax_edges(nd.nodes.size()) {
    for (std::size_t i = 0; i < nd.nodes.size(); ++i) {
      const NiceNode& node = nd.nodes[i];
      if (node.kind != NodeKind::Introduce) continue;
      for (int e = 0; e < inst.graph().num_edges(); ++e) {
        const Edge& edge = inst.graph().edge(e);
        if (edge.u != node.vertex && edge.v != node.vertex) continue;
        if (std::binary_search(node.bag.begin(), node.bag.end(), edge.u) &&
            std::binary_search(node.bag.begin(), node.bag.end(), edge.v))
          relax_edges[i].push_back(e);
      }
    }
  }

  int bag_pos(int node, int v) const {
    const auto& bag = nice.nodes[node].bag;
    return static_cast<int>(std::lower_bound(bag.begin(), bag.end(), v) - bag.begin());
  }

  void relax_closure(int node) {
    PcstTable& table = tables[node];
    const auto& bag = nice.nodes[node].bag;
    bool changed = true;
    while (changed) {
      changed = false;
      // Snapshot keys; offers may add entries.
      std::vector<std::pair<PcstKey, Rat>> snapshot;
      for (const auto& [k, e] : table) snapshot.emplace_back(k, e.cost);
      for (const auto& [key, cost] : snapshot) {
        for (int e : relax_edges[node]) {
          const Edge& edge = inst.graph().edge(e);
          int pu = bag_pos(node, edge.u);
          int pv = bag_pos(node, edge.v);
          if (!(key.subset & (std::uint32_t{1} << pu)) ||
              !(key.subset & (std::uint32_t{1} << pv)))
            continue;
          std::vector<int> pos = subset_positions(key.subset, static_cast<int>(bag.size()));
          auto rgs = unpack_rgs(key.part, static_cast<int>(pos.size()));
          int iu = static_cast<int>(std::find(pos.begin(), pos.end(), pu) - pos.begin());
          int iv = static_cast<int>(std::find(pos.begin(), pos.end(), pv) - pos.begin());
          if (rgs[iu] == rgs[iv]) continue;
          std::vector<int> raw(rgs.begin(), rgs.end());
          int from = raw[iv], to = raw[iu];
          for (int& b : raw)
            if (b == from) b = to;
          PcstKey next{key.subset, pack_rgs(canon_rgs(raw))};
          Rat cand = cost + edge.cost;
          auto it = table.find(next);
          if (it == table.end() || cand < it->second.cost) {
            PcstProv prov;
            prov.op = PcstProv::Op::Relax;
            prov.child_a = key;
            prov.edge = e;
            table[next] = PcstEntry{std::move(cand), std::move(prov)};
            changed = true;
          }
        }
      }
    }
  }

  void process(int node) {
    const NiceNode& nd = nice.nodes[node];
    PcstTable& table = tables[node];
    switch (nd.kind) {
    case NodeKind::Leaf: {
      PcstProv prov;
      prov.op = PcstProv::Op::Leaf;
      pcst_offer(table, PcstKey{0, 0}, Rat(0), prov);
      pcst_offer(table, PcstKey{1, 0}, Rat(0), prov);
      break;
    }
    case NodeKind::Introduce: {
      const int child = nd.children[0];
      const int pv = bag_pos(node, nd.vertex);
      for (const auto& [ckey, centry] : tables[child]) {
        // Shift child subset around the inserted position.
        std::uint32_t low = ckey.subset & ((std::uint32_t{1} << pv) - 1);
        std::uint32_t high = ckey.subset >> pv << (pv + 1);
        std::uint32_t base = low | high;
        {
          PcstProv prov;
          prov.op = PcstProv::Op::IntroSkip;
          prov.child_a = ckey;
          pcst_offer(table, PcstKey{base, ckey.part}, centry.cost, prov);
        }
        {
          // v enters as a fresh singleton part.
          std::uint32_t subset = base | (std::uint32_t{1} << pv);
          std::vector<int> pos =
              subset_positions(subset, static_cast<int>(nd.bag.size()));
          int iv = static_cast<int>(std::find(pos.begin(), pos.end(), pv) - pos.begin());
          auto crgs = unpack_rgs(ckey.part, static_cast<int>(pos.size()) - 1);
          std::vector<int> raw;
          raw.reserve(pos.size());
          for (std::size_t i = 0, j = 0; i < pos.size(); ++i) {
            if (static_cast<int>(i) == iv)
              raw.push_back(99); // fresh label
            else
              raw.push_back(crgs[j++]);
          }
          PcstKey key{subset, pack_rgs(canon_rgs(raw))};
          PcstProv prov;
          prov.op = PcstProv::Op::IntroTake;
          prov.child_a = ckey;
          pcst_offer(table, key, centry.cost, prov);
        }
      }
      relax_closure(node);
      break;
    }
    case NodeKind::Forget: {
      const int child = nd.children[0];
      const int pv = bag_pos(child, nd.vertex);
      for (const auto& [ckey, centry] : tables[child]) {
        const auto& cbag = nice.nodes[child].bag;
        std::uint32_t low = ckey.subset & ((std::uint32_t{1} << pv) - 1);
        std::uint32_t high = ckey.subset >> (pv + 1) << pv;
        std::uint32_t shrunk = low | high;
        if (!(ckey.subset & (std::uint32_t{1} << pv))) {
          // v was excluded; charge its penalty here.
          PcstProv prov;
          prov.op = PcstProv::Op::ForgetPay;
          prov.child_a = ckey;
          pcst_offer(table, PcstKey{shrunk, ckey.part}, centry.cost + pen[nd.vertex],
                     prov);
        } else {
          std::vector<int> pos =
              subset_positions(ckey.subset, static_cast<int>(cbag.size()));
          auto rgs = unpack_rgs(ckey.part, static_cast<int>(pos.size()));
          int iv = static_cast<int>(std::find(pos.begin(), pos.end(), pv) - pos.begin());
          // The part of v must survive without it.
          int members = 0;
          for (auto b : rgs)
            if (b == rgs[iv]) ++members;
          if (members == 1) continue;
          std::vector<int> raw;
          for (std::size_t i = 0; i < rgs.size(); ++i)
            if (static_cast<int>(i) != iv) raw.push_back(rgs[i]);
          PcstKey key{shrunk, pack_rgs(canon_rgs(raw))};
          PcstProv prov;
          prov.op = PcstProv::Op::ForgetAttach;
          prov.child_a = ckey;
          pcst_offer(table, key, centry.cost, prov);
        }
      }
      break;
    }
    case NodeKind::Join: {
      const int c1 = nd.children[0];
      const int c2 = nd.children[1];
      for (const auto& [k1, e1] : tables[c1]) {
        for (const auto& [k2, e2] : tables[c2]) {
          if (k1.subset != k2.subset) continue;
          std::vector<int> pos =
              subset_positions(k1.subset, static_cast<int>(nd.bag.size()));
          auto r1 = unpack_rgs(k1.part, static_cast<int>(pos.size()));
          auto r2 = unpack_rgs(k2.part, static_cast<int>(pos.size()));
          UnionFind uf(static_cast<int>(pos.size()));
          for (std::size_t i = 0; i < pos.size(); ++i)
            for (std::size_t j = i + 1; j < pos.size(); ++j) {
              if (r1[i] == r1[j]) uf.unite(static_cast<int>(i), static_cast<int>(j));
              if (r2[i] == r2[j]) uf.unite(static_cast<int>(i), static_cast<int>(j));
            }
          std::vector<int> raw(pos.size());
          for (std::size_t i = 0; i < pos.size(); ++i)
            raw[i] = uf.find(static_cast<int>(i));
          PcstKey key{k1.subset, pack_rgs(canon_rgs(raw))};
          PcstProv prov;
          prov.op = PcstProv::Op::Join;
          prov.child_a = k1;
          prov.child_b = k2;
          pcst_offer(table, key, e1.cost + e2.cost, prov);
        }
      }
      break;
    }
    }
  }

  void reconstruct(int node, const PcstKey& key, std::vector<int>& edges) const {
    const PcstEntry& entry = tables[node].at(key);
    switch (entry.prov.op) {
    case PcstProv::Op::Leaf:
      return;
    case PcstProv::Op::Relax:
      edges.push_back(entry.prov.edge);
      reconstruct(node, entry.prov.child_a, edges);
      return;
    case PcstProv::Op::IntroSkip:
    case PcstProv::Op::IntroTake:
    case PcstProv::Op::ForgetPay:
    case PcstProv::Op::ForgetAttach:
      reconstruct(nice.nodes[node].children[0], entry.prov.child_a, edges);
      return;
    case PcstProv::Op::Join:
      reconstruct(nice.nodes[node].children[0], entry.prov.child_a, edges);
      reconstruct(nice.nodes[node].children[1], entry.prov.child_b, edges);
      return;
    }
  }
};

// ---------------------------------------------------------------------------
// Tour / stroll DP. State: per bag vertex a degree class (0 unused, 1 odd,
// 2 even-used), a partition of the used vertices into walk components, and
// the number of odd walk endpoints already forgotten.

struct WalkKey {
  std::uint32_t degs = 0; // 2 bits per bag position
  std::uint64_t part = 0; // rgs over used positions
  int odd_out = 0;
  auto operator<=>(const WalkKey&) const = default;
};

int deg_at(const WalkKey& k, int pos) { return (k.degs >> (2 * pos)) & 3; }

std::uint32_t set_deg(std::uint32_t degs, int pos, int value) {
  return (degs & ~(std::uint32_t{3} << (2 * pos))) |
         (static_cast<std::uint32_t>(value) << (2 * pos));
}

struct WalkProv {
  enum class Op { Leaf, IntroSkip, IntroTake, Relax, ForgetPay, ForgetUsed, Join };
  Op op = Op::Leaf;
  WalkKey child_a, child_b;
  int edge = -1;
  int mult = 0;
};

struct WalkEntry {
  Rat cost;
  WalkProv prov;
};

using WalkTable = std::map<WalkKey, WalkEntry>;

struct WalkSolver {
  const Instance& inst;
  const NiceDecomposition& nice;
  const std::vector<Rat> pen;
  const int odd_limit; // 0 for tours, 2 for strolls
  std::vector<WalkTable> tables;
  std::vector<std::vector<int>> relax_edges;

  WalkSolver(const Instance& instance, const NiceDecomposition& nd, int root,
             int odd_budget)
      : inst(instance), nice(nd), pen(vertex_penalties(instance, root)),
        odd_limit(odd_budget), tables(nd.nodes.size()), relax_edges(nd.nodes.size()) {
    for (std::size_t i = 0; i < nd.nodes.size(); ++i) {
      const NiceNode& node = nd.nodes[i];
      if (node.kind != NodeKind::Introduce) continue;
      for (int e = 0; e < inst.graph().num_edges(); ++e) {
        const Edge& edge = inst.graph().edge(e);
        if (edge.u != node.vertex && edge.v != node.vertex) continue;
        if (std::binary_search(node.bag.begin(), node.bag.end(), edge.u) &&
            std::binary_search(node.bag.begin(), node.bag.end(), edge.v))
          relax_edges[i].push_back(e);
      }
    }
  }

  int bag_pos(int node, int v) const {
    const auto& bag = nice.nodes[node].bag;
    return static_cast<int>(std::lower_bound(bag.begin(), bag.end(), v) - bag.begin());
  }

  static std::vector<int> used_positions(const WalkKey& k, int bag_size) {
    std::vector<int> pos;
    for (int i = 0; i < bag_size; ++i)
      if (deg_at(k, i) > 0) pos.push_back(i);
    return pos;
  }

  void offer(WalkTable& table, const WalkKey& key, Rat cost, WalkProv prov) {
    auto it = table.find(key);
    if (it == table.end() || cost < it->second.cost)
      table[key] = WalkEntry{std::move(cost), std::move(prov)};
  }

  void relax_closure(int node) {
    WalkTable& table = tables[node];
    const int bag_size = static_cast<int>(nice.nodes[node].bag.size());
    bool changed = true;
    while (changed) {
      changed = false;
      std::vector<std::pair<WalkKey, Rat>> snapshot;
      for (const auto& [k, e] : table) snapshot.emplace_back(k, e.cost);
      for (const auto& [key, cost] : snapshot) {
        for (int e : relax_edges[node]) {
          const Edge& edge = inst.graph().edge(e);
          int pu = bag_pos(node, edge.u);
          int pv = bag_pos(node, edge.v);
          int du = deg_at(key, pu), dv = deg_at(key, pv);
          if (du == 0 || dv == 0) continue;
          std::vector<int> pos = used_positions(key, bag_size);
          auto rgs = unpack_rgs(key.part, static_cast<int>(pos.size()));
          int iu = static_cast<int>(std::find(pos.begin(), pos.end(), pu) - pos.begin());
          int iv = static_cast<int>(std::find(pos.begin(), pos.end(), pv) - pos.begin());
          for (int mult = 1; mult <= 2; ++mult) {
            if (mult == 2 && rgs[iu] == rgs[iv]) continue; // no effect
            std::uint32_t degs = key.degs;
            if (mult == 1) {
              degs = set_deg(degs, pu, du == 1 ? 2 : 1);
              degs = set_deg(degs, pv, dv == 1 ? 2 : 1);
            }
            std::vector<int> raw(rgs.begin(), rgs.end());
            if (raw[iu] != raw[iv]) {
              int from = raw[iv], to = raw[iu];
              for (int& b : raw)
                if (b == from) b = to;
            }
            WalkKey next{degs, pack_rgs(canon_rgs(raw)), key.odd_out};
            Rat cand = cost + edge.cost * mult;
            auto it = table.find(next);
            if (it == table.end() || cand < it->second.cost) {
              WalkProv prov;
              prov.op = WalkProv::Op::Relax;
              prov.child_a = key;
              prov.edge = e;
              prov.mult = mult;
              table[next] = WalkEntry{std::move(cand), std::move(prov)};
              changed = true;
            }
          }
        }
      }
    }
  }

  void process(int node) {
    const NiceNode& nd = nice.nodes[node];
    WalkTable& table = tables[node];
    switch (nd.kind) {
    case NodeKind::Leaf: {
      WalkProv prov;
      prov.op = WalkProv::Op::Leaf;
      offer(table, WalkKey{set_deg(0, 0, 0), 0, 0}, Rat(0), prov);
      offer(table, WalkKey{set_deg(0, 0, 2), 0, 0}, Rat(0), prov);
      break;
    }
    case NodeKind::Introduce: {
      const int child = nd.children[0];
      const int pv = bag_pos(node, nd.vertex);
      const int child_size = static_cast<int>(nice.nodes[child].bag.size());
      for (const auto& [ckey, centry] : tables[child]) {
        // Reindex degrees around the inserted position.
        std::uint32_t degs = 0;
        for (int i = 0; i < child_size; ++i) {
          int target = i < pv ? i : i + 1;
          degs |= static_cast<std::uint32_t>(deg_at(ckey, i)) << (2 * target);
        }
        {
          WalkProv prov;
          prov.op = WalkProv::Op::IntroSkip;
          prov.child_a = ckey;
          offer(table, WalkKey{degs, ckey.part, ckey.odd_out}, centry.cost, prov);
        }
        {
          std::uint32_t with_v = set_deg(degs, pv, 2);
          WalkKey probe{with_v, 0, 0};
          std::vector<int> pos =
              used_positions(probe, static_cast<int>(nd.bag.size()));
          int iv = static_cast<int>(std::find(pos.begin(), pos.end(), pv) - pos.begin());
          auto crgs = unpack_rgs(ckey.part, static_cast<int>(pos.size()) - 1);
          std::vector<int> raw;
          raw.reserve(pos.size());
          for (std::size_t i = 0, j = 0; i < pos.size(); ++i) {
            if (static_cast<int>(i) == iv)
              raw.push_back(99);
            else
              raw.push_back(crgs[j++]);
          }
          WalkProv prov;
          prov.op = WalkProv::Op::IntroTake;
          prov.child_a = ckey;
          offer(table, WalkKey{with_v, pack_rgs(canon_rgs(raw)), ckey.odd_out},
                centry.cost, prov);
        }
      }
      relax_closure(node);
      break;
    }
    case NodeKind::Forget: {
      const int child = nd.children[0];
      const int pv = bag_pos(child, nd.vertex);
      const int child_size = static_cast<int>(nice.nodes[child].bag.size());
      for (const auto& [ckey, centry] : tables[child]) {
        int dv = deg_at(ckey, pv);
        std::uint32_t degs = 0;
        for (int i = 0; i < child_size; ++i) {
          if (i == pv) continue;
          int target = i < pv ? i : i - 1;
          degs |= static_cast<std::uint32_t>(deg_at(ckey, i)) << (2 * target);
        }
        if (dv == 0) {
          WalkProv prov;
          prov.op = WalkProv::Op::ForgetPay;
          prov.child_a = ckey;
          offer(table, WalkKey{degs, ckey.part, ckey.odd_out},
                centry.cost + pen[nd.vertex], prov);
          continue;
        }
        int odd_out = ckey.odd_out + (dv == 1 ? 1 : 0);
        if (odd_out > odd_limit) continue;
        std::vector<int> pos = used_positions(ckey, child_size);
        auto rgs = unpack_rgs(ckey.part, static_cast<int>(pos.size()));
        int iv = static_cast<int>(std::find(pos.begin(), pos.end(), pv) - pos.begin());
        int members = 0;
        for (auto b : rgs)
          if (b == rgs[iv]) ++members;
        if (members == 1) continue; // component would detach from the walk
        std::vector<int> raw;
        for (std::size_t i = 0; i < rgs.size(); ++i)
          if (static_cast<int>(i) != iv) raw.push_back(rgs[i]);
        WalkProv prov;
        prov.op = WalkProv::Op::ForgetUsed;
        prov.child_a = ckey;
        offer(table, WalkKey{degs, pack_rgs(canon_rgs(raw)), odd_out}, centry.cost,
              prov);
      }
      break;
    }
    case NodeKind::Join: {
      const int c1 = nd.children[0];
      const int c2 = nd.children[1];
      const int bag_size = static_cast<int>(nd.bag.size());
      for (const auto& [k1, e1] : tables[c1]) {
        for (const auto& [k2, e2] : tables[c2]) {
          int odd_out = k1.odd_out + k2.odd_out;
          if (odd_out > odd_limit) continue;
          std::uint32_t degs = 0;
          for (int i = 0; i < bag_size; ++i) {
            int d1 = deg_at(k1, i), d2 = deg_at(k2, i);
            int used = (d1 > 0 || d2 > 0) ? 1 : 0;
            int parity = ((d1 == 1 ? 1 : 0) + (d2 == 1 ? 1 : 0)) & 1;
            degs = set_deg(degs, i, used ? (parity ? 1 : 2) : 0);
          }
          // Merge the two partitions over the union of used vertices.
          std::vector<int> pos1 = used_positions(k1, bag_size);
          std::vector<int> pos2 = used_positions(k2, bag_size);
          WalkKey probe{degs, 0, 0};
          std::vector<int> pos = used_positions(probe, bag_size);
          auto r1 = unpack_rgs(k1.part, static_cast<int>(pos1.size()));
          auto r2 = unpack_rgs(k2.part, static_cast<int>(pos2.size()));
          UnionFind uf(static_cast<int>(pos.size()));
          auto index_of = [&pos](int p) {
            return static_cast<int>(std::find(pos.begin(), pos.end(), p) - pos.begin());
          };
          for (std::size_t i = 0; i < pos1.size(); ++i)
            for (std::size_t j = i + 1; j < pos1.size(); ++j)
              if (r1[i] == r1[j]) uf.unite(index_of(pos1[i]), index_of(pos1[j]));
          for (std::size_t i = 0; i < pos2.size(); ++i)
            for (std::size_t j = i + 1; j < pos2.size(); ++j)
              if (r2[i] == r2[j]) uf.unite(index_of(pos2[i]), index_of(pos2[j]));
          std::vector<int> raw(pos.size());
          for (std::size_t i = 0; i < pos.size(); ++i)
            raw[i] = uf.find(static_cast<int>(i));
          WalkKey key{degs, pack_rgs(canon_rgs(raw)), odd_out};
          WalkProv prov;
          prov.op = WalkProv::Op::Join;
          prov.child_a = k1;
          prov.child_b = k2;
          offer(table, key, e1.cost + e2.cost, prov);
        }
      }
      break;
    }
    }
  }

  void reconstruct(int node, const WalkKey& key,
                   std::map<int, int>& edge_mult) const {
    const WalkEntry& entry = tables[node].at(key);
    switch (entry.prov.op) {
    case WalkProv::Op::Leaf:
      return;
    case WalkProv::Op::Relax:
      edge_mult[entry.prov.edge] += entry.prov.mult;
      reconstruct(node, entry.prov.child_a, edge_mult);
      return;
    case WalkProv::Op::IntroSkip:
    case WalkProv::Op::IntroTake:
    case WalkProv::Op::ForgetPay:
    case WalkProv::Op::ForgetUsed:
      reconstruct(nice.nodes[node].children[0], entry.prov.child_a, edge_mult);
      return;
    case WalkProv::Op::Join:
      reconstruct(nice.nodes[node].children[0], entry.prov.child_a, edge_mult);
      reconstruct(nice.nodes[node].children[1], entry.prov.child_b, edge_mult);
      return;
    }
  }
};

int require_root(const Instance& inst) {
  if (!inst.root()) throw DomainError("tree DP requires a rooted instance");
  return *inst.root();
}

void check_decomposition(const Instance& inst, const NiceDecomposition& nice, int root) {
  if (!validate_nice(nice)) throw DomainError("invalid nice decomposition");
  if (nice.nodes[nice.root].bag != std::vector<int>{root})
    throw DomainError("nice decomposition must be rooted at the instance root");
  DecompositionReport rep;
  TreeDecomposition td;
  for (const NiceNode& n : nice.nodes) td.bags.push_back(n.bag);
  for (std::size_t i = 0; i < nice.nodes.size(); ++i)
    for (int c : nice.nodes[i].children) td.edges.emplace_back(static_cast<int>(i), c);
  rep = validate_decomposition(inst.graph(), td);
  if (!rep.ok()) throw DomainError("nice decomposition does not cover the graph");
}

} // namespace

Solution dp_pcst(const Instance& inst, const NiceDecomposition& nice, DpStats* stats) {
  const int root = require_root(inst);
  check_decomposition(inst, nice, root);
  PcstSolver solver(inst, nice, root);
  for (int node : nice.postorder()) solver.process(node);

  const PcstTable& top = solver.tables[nice.root];
  std::optional<Rat> best;
  PcstKey best_key;
  bool pay_root = false;
  if (auto it = top.find(PcstKey{1, 0}); it != top.end()) {
    best = it->second.cost;
    best_key = it->first;
  }
  if (auto it = top.find(PcstKey{0, 0}); it != top.end()) {
    Rat cand = it->second.cost + solver.pen[root];
    if (!best || cand < *best) {
      best = cand;
      best_key = it->first;
      pay_root = true;
    }
  }
  if (!best) throw DomainError("PCST DP produced no root entry");
  (void)pay_root;

  std::vector<int> edges;
  solver.reconstruct(nice.root, best_key, edges);
  std::sort(edges.begin(), edges.end());
  edges.erase(std::unique(edges.begin(), edges.end()), edges.end());
  Solution sol = solution_cost(inst, edges);
  if (sol.total != *best) throw DomainError("PCST DP witness mismatch");
  if (stats) {
    stats->nodes = nice.nodes.size();
    stats->table_entries = 0;
    for (const auto& t : solver.tables) stats->table_entries += t.size();
  }
  return sol;
}

namespace {

Solution dp_walk(const Instance& inst, const NiceDecomposition& nice, bool tour,
                 DpStats* stats) {
  const int root = require_root(inst);
  check_decomposition(inst, nice, root);
  WalkSolver solver(inst, nice, root, tour ? 0 : 2);
  for (int node : nice.postorder()) solver.process(node);

  const WalkTable& top = solver.tables[nice.root];
  std::optional<Rat> best;
  WalkKey best_key;
  bool pay_root = false;
  for (const auto& [key, entry] : top) {
    int droot = deg_at(key, 0);
    bool valid;
    if (droot == 0) {
      valid = key.odd_out == 0; // empty walk, root stands alone
    } else if (tour) {
      valid = droot == 2 && key.odd_out == 0;
    } else {
      // Open walk: exactly two odd endpoints (the root may be one of them).
      valid = key.odd_out + (droot == 1 ? 1 : 0) == 2;
    }
    if (!valid) continue;
    Rat cand = entry.cost + (droot == 0 ? solver.pen[root] : Rat(0));
    if (!best || cand < *best) {
      best = cand;
      best_key = key;
      pay_root = droot == 0;
    }
  }
  if (!best) throw DomainError("walk DP produced no root entry");
  (void)pay_root;

  std::map<int, int> edge_mult;
  solver.reconstruct(nice.root, best_key, edge_mult);
  std::vector<std::pair<int, int>> edges;
  for (auto [e, m] : edge_mult) edges.emplace_back(e, m);
  Solution sol = walk_cost(inst, edges);
  if (sol.total != *best) throw DomainError("walk DP witness mismatch");
  if (stats) {
    stats->nodes = nice.nodes.size();
    stats->table_entries = 0;
    for (const auto& t : solver.tables) stats->table_entries += t.size();
  }
  return sol;
}

} // namespace

Solution dp_pctsp(const Instance& inst, const NiceDecomposition& nice, DpStats* stats) {
  return dp_walk(inst, nice, true, stats);
}

Solution dp_pcs(const Instance& inst, const NiceDecomposition& nice, DpStats* stats) {
  return dp_walk(inst, nice, false, stats);
}

} // namespace pcsn
