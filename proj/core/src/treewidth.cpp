#include "pcsn/treewidth.hpp"

#include "pcsn/errors.hpp"
#include "pcsn/union_find.hpp"

#include <algorithm>
#include <set>
#include <sstream>

namespace pcsn {

int TreeDecomposition::width() const {
  int w = 0;
  for (const auto& bag : bags) w = std::max(w, static_cast<int>(bag.size()));
  return w - 1;
}

DecompositionReport validate_decomposition(const Graph& g, const TreeDecomposition& td) {
  DecompositionReport report;
  const int n = g.num_vertices();
  const int k = static_cast<int>(td.bags.size());

  UnionFind uf(std::max(k, 1));
  for (auto [a, b] : td.edges) {
    if (a < 0 || b < 0 || a >= k || b >= k || a == b) {
      report.tree_shape_ok = false;
      return report;
    }
    if (!uf.unite(a, b)) report.tree_shape_ok = false; // cycle
  }
  if (k > 0 && uf.components() != 1) report.tree_shape_ok = false;

  std::vector<bool> covered(n, false);
  for (const auto& bag : td.bags)
    for (int v : bag) {
      if (v < 0 || v >= n) {
        report.tree_shape_ok = false;
        return report;
      }
      covered[v] = true;
    }
  for (int v = 0; v < n; ++v)
    if (!covered[v]) report.uncovered_vertices.push_back(v);

  for (int e = 0; e < g.num_edges(); ++e) {
    bool found = false;
    for (const auto& bag : td.bags) {
      if (std::binary_search(bag.begin(), bag.end(), g.edge(e).u) &&
          std::binary_search(bag.begin(), bag.end(), g.edge(e).v)) {
        found = true;
        break;
      }
    }
    if (!found) report.uncovered_edges.push_back(e);
  }

  // Condition 3: the bags containing v form a subtree.
  for (int v = 0; v < n; ++v) {
    std::vector<int> holding;
    for (int i = 0; i < k; ++i)
      if (std::binary_search(td.bags[i].begin(), td.bags[i].end(), v))
        holding.push_back(i);
    if (holding.size() <= 1) continue;
    UnionFind sub(k);
    std::vector<bool> in_set(k, false);
    for (int i : holding) in_set[i] = true;
    for (auto [a, b] : td.edges)
      if (in_set[a] && in_set[b]) sub.unite(a, b);
    int root = sub.find(holding[0]);
    for (int i : holding)
      if (sub.find(i) != root) {
        report.disconnected_vertices.push_back(v);
        break;
      }
  }
  return report;
}

TreeDecomposition heuristic_decompose(const Graph& g) {
  const int n = g.num_vertices();
  TreeDecomposition td;
  if (n == 0) {
    td.bags.push_back({});
    return td;
  }
  // Fill-in graph as adjacency sets.
  std::vector<std::set<int>> adj(n);
  for (const Edge& e : g.edges()) {
    adj[e.u].insert(e.v);
    adj[e.v].insert(e.u);
  }
  std::vector<bool> eliminated(n, false);
  std::vector<int> order;
  std::vector<std::vector<int>> bag_of(n);
  for (int step = 0; step < n; ++step) {
    int pick = -1;
    std::size_t best_deg = 0;
    for (int v = 0; v < n; ++v) {
      if (eliminated[v]) continue;
      if (pick < 0 || adj[v].size() < best_deg) {
        pick = v;
        best_deg = adj[v].size();
      }
    }
    order.push_back(pick);
    bag_of[pick].push_back(pick);
    for (int u : adj[pick]) bag_of[pick].push_back(u);
    std::sort(bag_of[pick].begin(), bag_of[pick].end());
    // Clique fill among the remaining neighbors.
    std::vector<int> nbrs(adj[pick].begin(), adj[pick].end());
    for (std::size_t i = 0; i < nbrs.size(); ++i)
      for (std::size_t j = i + 1; j < nbrs.size(); ++j) {
        adj[nbrs[i]].insert(nbrs[j]);
        adj[nbrs[j]].insert(nbrs[i]);
      }
    for (int u : nbrs) adj[u].erase(pick);
    adj[pick].clear();
    eliminated[pick] = true;
  }

  // One bag per vertex in elimination order; bag(v) hangs off the bag of the
  // first neighbor eliminated after v (or the last bag).
  std::vector<int> position(n);
  for (int i = 0; i < n; ++i) position[order[i]] = i;
  td.bags.resize(n);
  for (int i = 0; i < n; ++i) td.bags[i] = bag_of[order[i]];
  for (int i = 0; i < n; ++i) {
    int v = order[i];
    int parent_pos = -1;
    for (int u : bag_of[v]) {
      if (u == v) continue;
      if (position[u] > i && (parent_pos < 0 || position[u] < parent_pos))
        parent_pos = position[u];
    }
    if (parent_pos >= 0)
      td.edges.emplace_back(i, parent_pos);
    else if (i + 1 < n)
      td.edges.emplace_back(i, i + 1);
  }
  return td;
}

int NiceDecomposition::width() const {
  int w = 0;
  for (const auto& node : nodes) w = std::max(w, static_cast<int>(node.bag.size()));
  return w - 1;
}

std::vector<int> NiceDecomposition::postorder() const {
  std::vector<int> out;
  std::vector<std::pair<int, int>> stack{{root, 0}};
  while (!stack.empty()) {
    auto& [node, child] = stack.back();
    if (child < static_cast<int>(nodes[node].children.size())) {
      int next = nodes[node].children[child];
      ++child;
      stack.emplace_back(next, 0);
    } else {
      out.push_back(node);
      stack.pop_back();
    }
  }
  return out;
}

namespace {

struct NiceBuilder {
  std::vector<NiceNode> nodes;

  int add(NiceNode node) {
    nodes.push_back(std::move(node));
    return static_cast<int>(nodes.size()) - 1;
  }

  // Leaf-to-bag chain: a singleton leaf, then introduces up to `bag`.
  int leaf_chain(const std::vector<int>& bag) {
    NiceNode leaf;
    leaf.kind = NodeKind::Leaf;
    leaf.bag = {bag.front()};
    int cur = add(leaf);
    for (std::size_t i = 1; i < bag.size(); ++i) {
      NiceNode intro;
      intro.kind = NodeKind::Introduce;
      intro.vertex = bag[i];
      intro.bag.assign(bag.begin(), bag.begin() + i + 1);
      intro.children = {cur};
      cur = add(intro);
    }
    return cur;
  }

  // Chain from a child whose subtree root has bag `from` up to bag `to`:
  // forget from\to one at a time, then introduce to\from.
  int bridge(int child, const std::vector<int>& from, const std::vector<int>& to) {
    std::vector<int> cur_bag = from;
    int cur = child;
    for (int v : from) {
      if (std::binary_search(to.begin(), to.end(), v)) continue;
      NiceNode forget;
      forget.kind = NodeKind::Forget;
      forget.vertex = v;
      cur_bag.erase(std::find(cur_bag.begin(), cur_bag.end(), v));
      forget.bag = cur_bag;
      forget.children = {cur};
      cur = add(forget);
    }
    for (int v : to) {
      if (std::binary_search(from.begin(), from.end(), v)) continue;
      NiceNode intro;
      intro.kind = NodeKind::Introduce;
      intro.vertex = v;
      cur_bag.insert(std::lower_bound(cur_bag.begin(), cur_bag.end(), v), v);
      intro.bag = cur_bag;
      intro.children = {cur};
      cur = add(intro);
    }
    return cur;
  }
};

} // namespace

NiceDecomposition to_nice(const TreeDecomposition& td, const Graph& g,
                          std::optional<int> prefer_root) {
  DecompositionReport report = validate_decomposition(g, td);
  if (!report.ok()) throw DomainError("cannot normalize an invalid decomposition");
  const int k = static_cast<int>(td.bags.size());

  // Root the bag tree at a bag containing prefer_root when possible.
  int root_bag = 0;
  if (prefer_root)
    for (int i = 0; i < k; ++i)
      if (std::binary_search(td.bags[i].begin(), td.bags[i].end(), *prefer_root)) {
        root_bag = i;
        break;
      }

  std::vector<std::vector<int>> adj(k);
  for (auto [a, b] : td.edges) {
    adj[a].push_back(b);
    adj[b].push_back(a);
  }
  for (auto& list : adj) std::sort(list.begin(), list.end());

  NiceBuilder builder;
  // Iterative DFS from root_bag producing nice subtrees bottom-up.
  std::vector<int> parent(k, -2);
  std::vector<int> dfs{root_bag};
  parent[root_bag] = -1;
  std::vector<int> order;
  while (!dfs.empty()) {
    int cur = dfs.back();
    dfs.pop_back();
    order.push_back(cur);
    for (int nxt : adj[cur])
      if (parent[nxt] == -2) {
        parent[nxt] = cur;
        dfs.push_back(nxt);
      }
  }
  std::vector<int> nice_root_of(k, -1);
  for (auto it = order.rbegin(); it != order.rend(); ++it) {
    int bag_id = *it;
    const std::vector<int>& bag = td.bags[bag_id];
    if (bag.empty()) throw DomainError("empty bags are not supported");
    std::vector<int> child_tops;
    for (int nxt : adj[bag_id])
      if (parent[nxt] == bag_id)
        child_tops.push_back(builder.bridge(nice_root_of[nxt], td.bags[nxt], bag));
    int top;
    if (child_tops.empty()) {
      top = builder.leaf_chain(bag);
    } else {
      top = child_tops[0];
      for (std::size_t i = 1; i < child_tops.size(); ++i) {
        NiceNode join;
        join.kind = NodeKind::Join;
        join.bag = bag;
        join.children = {top, child_tops[i]};
        top = builder.add(join);
      }
    }
    nice_root_of[bag_id] = top;
  }

  // Shrink the root bag to a single vertex (prefer_root last when present).
  std::vector<int> bag = td.bags[root_bag];
  int cur = nice_root_of[root_bag];
  int keep = bag.back();
  if (prefer_root && std::binary_search(bag.begin(), bag.end(), *prefer_root))
    keep = *prefer_root;
  std::vector<int> cur_bag = bag;
  for (int v : bag) {
    if (v == keep) continue;
    NiceNode forget;
    forget.kind = NodeKind::Forget;
    forget.vertex = v;
    cur_bag.erase(std::find(cur_bag.begin(), cur_bag.end(), v));
    forget.bag = cur_bag;
    forget.children = {cur};
    cur = builder.add(forget);
  }

  NiceDecomposition nd;
  nd.nodes = std::move(builder.nodes);
  nd.root = cur;
  return nd;
}

bool validate_nice(const NiceDecomposition& nd) {
  if (nd.root < 0 || nd.root >= static_cast<int>(nd.nodes.size())) return false;
  if (nd.nodes[nd.root].bag.size() != 1) return false;
  for (const NiceNode& node : nd.nodes) {
    if (!std::is_sorted(node.bag.begin(), node.bag.end())) return false;
    switch (node.kind) {
    case NodeKind::Leaf:
      if (!node.children.empty() || node.bag.size() != 1) return false;
      break;
    case NodeKind::Join: {
      if (node.children.size() != 2) return false;
      for (int c : node.children)
        if (nd.nodes[c].bag != node.bag) return false;
      break;
    }
    case NodeKind::Introduce: {
      if (node.children.size() != 1) return false;
      std::vector<int> expect = nd.nodes[node.children[0]].bag;
      expect.insert(std::lower_bound(expect.begin(), expect.end(), node.vertex),
                    node.vertex);
      if (expect != node.bag) return false;
      break;
    }
    case NodeKind::Forget: {
      if (node.children.size() != 1) return false;
      std::vector<int> expect = nd.nodes[node.children[0]].bag;
      auto it = std::find(expect.begin(), expect.end(), node.vertex);
      if (it == expect.end()) return false;
      expect.erase(it);
      if (expect != node.bag) return false;
      break;
    }
    }
  }
  return true;
}

std::string decomposition_to_pace(const TreeDecomposition& td, int num_vertices) {
  std::ostringstream os;
  os << "s td " << td.bags.size() << " " << td.width() + 1 << " " << num_vertices
     << "\n";
  for (std::size_t i = 0; i < td.bags.size(); ++i) {
    os << "b " << i + 1;
    for (int v : td.bags[i]) os << " " << v + 1;
    os << "\n";
  }
  for (auto [a, b] : td.edges) os << a + 1 << " " << b + 1 << "\n";
  return os.str();
}

TreeDecomposition decomposition_from_pace(const std::string& text) {
  TreeDecomposition td;
  std::istringstream in(text);
  std::string line;
  int declared_bags = -1;
  while (std::getline(in, line)) {
    if (line.empty() || line[0] == 'c') continue;
    std::istringstream ls(line);
    if (line[0] == 's') {
      std::string s, t;
      int width_plus1, n;
      ls >> s >> t >> declared_bags >> width_plus1 >> n;
      if (s != "s" || t != "td") throw DomainError("malformed PACE s-line");
      td.bags.assign(declared_bags, {});
    } else if (line[0] == 'b') {
      char b;
      int id;
      ls >> b >> id;
      if (declared_bags < 0 || id < 1 || id > declared_bags)
        throw DomainError("PACE bag id out of range");
      int v;
      while (ls >> v) td.bags[id - 1].push_back(v - 1);
      std::sort(td.bags[id - 1].begin(), td.bags[id - 1].end());
    } else {
      int a, b;
      ls >> a >> b;
      if (!ls || declared_bags < 0 || a < 1 || b < 1 || a > declared_bags ||
          b > declared_bags)
        throw DomainError("malformed PACE edge line");
      td.edges.emplace_back(a - 1, b - 1);
    }
  }
  if (declared_bags < 0) throw DomainError("missing PACE s-line");
  return td;
}

} // namespace pcsn
