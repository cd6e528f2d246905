#include "pcsn/generators.hpp"

#include "pcsn/errors.hpp"
#include "pcsn/prng.hpp"

#include <algorithm>
#include <set>

namespace pcsn {

namespace {

Rat random_cost(Prng& rng) {
  static const long dens[] = {1, 2, 4, 5};
  long num = rng.range(1, 20);
  long den = dens[rng.below(4)];
  Rat r(num, den);
  r.canonicalize();
  return r;
}

Graph grid_graph(int rows, int cols, Prng& rng) {
  Graph g(rows * cols);
  auto id = [cols](int r, int c) { return r * cols + c; };
  for (int r = 0; r < rows; ++r)
    for (int c = 0; c < cols; ++c) {
      if (c + 1 < cols) g.add_edge(id(r, c), id(r, c + 1), random_cost(rng));
      if (r + 1 < rows) g.add_edge(id(r, c), id(r + 1, c), random_cost(rng));
    }
  return g;
}

// Random 2-tree: triangle seed, every further vertex attaches to the two
// ends of an existing edge. Treewidth <= 2 by construction.
Graph series_parallel_graph(int n, Prng& rng) {
  if (n < 2) throw DomainError("series-parallel generator needs n >= 2");
  Graph g(n);
  std::vector<std::pair<int, int>> pairs;
  g.add_edge(0, 1, random_cost(rng));
  pairs.emplace_back(0, 1);
  for (int v = 2; v < n; ++v) {
    auto [x, y] = pairs[rng.below(pairs.size())];
    g.add_edge(v, x, random_cost(rng));
    g.add_edge(v, y, random_cost(rng));
    pairs.emplace_back(v, x);
    pairs.emplace_back(v, y);
  }
  return g;
}

Graph erdos_renyi_graph(int n, int percent, Prng& rng) {
  Graph g(n);
  for (int u = 0; u < n; ++u)
    for (int v = u + 1; v < n; ++v)
      if (rng.chance(percent, 100)) g.add_edge(u, v, random_cost(rng));
  // A spanning cycle keeps instances connected enough to be interesting.
  for (int v = 0; v + 1 < n; ++v) {
    bool found = false;
    for (const Edge& e : g.edges())
      if ((e.u == v && e.v == v + 1) || (e.v == v && e.u == v + 1)) {
        found = true;
        break;
      }
    if (!found && rng.chance(60, 100)) g.add_edge(v, v + 1, random_cost(rng));
  }
  return g;
}

} // namespace

Instance gen_random(const RandomSpec& spec) {
  Prng rng(spec.seed);
  Graph g(0);
  switch (spec.kind) {
  case RandomKind::Grid:
    g = grid_graph(spec.rows, spec.cols, rng);
    break;
  case RandomKind::SeriesParallel:
    g = series_parallel_graph(spec.n, rng);
    break;
  case RandomKind::ErdosRenyi:
    g = erdos_renyi_graph(spec.n, spec.edge_percent, rng);
    break;
  }
  const int n = g.num_vertices();
  std::vector<Demand> demands;
  std::vector<Rat> penalties;
  for (int d = 0; d < spec.demand_count; ++d) {
    int s, t;
    if (spec.rooted) {
      t = 0;
      s = rng.range(1, n - 1);
    } else {
      s = rng.range(0, n - 1);
      t = rng.range(0, n - 1);
      if (s == t) t = (t + 1) % n;
    }
    demands.push_back({s, t});
    Rat p(rng.range(1, 15), rng.chance(1, 3) ? 2 : 1);
    p.canonicalize();
    penalties.push_back(p);
  }
  PenaltyFn pi = PenaltyFn::additive(penalties);
  if (spec.capped_penalty) {
    Rat total = 0;
    for (const Rat& p : penalties) total += p;
    Rat cap = total * Rat(rng.range(30, 90), 100);
    cap.canonicalize();
    pi = PenaltyFn::capped_additive(penalties, cap);
  }
  std::optional<int> root;
  if (spec.rooted) root = 0;
  return Instance(std::move(g), std::move(demands), std::move(pi), root);
}

RandomKind random_kind_from_name(const std::string& name) {
  if (name == "grid") return RandomKind::Grid;
  if (name == "series-parallel" || name == "sp") return RandomKind::SeriesParallel;
  if (name == "erdos-renyi" || name == "er") return RandomKind::ErdosRenyi;
  throw DomainError("unknown random instance kind: " + name);
}

} // namespace pcsn
