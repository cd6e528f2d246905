#pragma once

#include "pcsn/graph.hpp"
#include "pcsn/penalty.hpp"

#include <array>
#include <cstdint>
#include <optional>
#include <vector>

namespace pcsn {

struct Demand {
  int s = 0;
  int t = 0;
};

/// The solver-facing triple (G, demands, pi), plus the optional root of the
/// rooted variants and optional plane coordinates for geometric instances.
/// Immutable after construction; safe to share across concurrent solver runs.
class Instance {
public:
  /// Empty instance (0 vertices, no demands).
  Instance() : Instance(Graph(0), {}, PenaltyFn::additive({})) {}

  Instance(Graph graph, std::vector<Demand> demands, PenaltyFn penalty,
           std::optional<int> root = std::nullopt);

  const Graph& graph() const { return graph_; }
  const std::vector<Demand>& demands() const { return demands_; }
  int num_demands() const { return static_cast<int>(demands_.size()); }
  const PenaltyFn& penalty() const { return penalty_; }
  const std::optional<int>& root() const { return root_; }
  bool is_rooted() const;

  DemandMask all_demands_mask() const;

  /// s == t demands removed at construction (pre-satisfied).
  int stripped_demands() const { return stripped_; }

  /// Returns a copy with the penalty function replaced (graph/demands shared
  /// semantics are value copies; desk-scale sizes).
  Instance with_penalty(PenaltyFn pi) const;
  Instance with_graph(Graph g) const;

  const std::vector<std::array<std::int64_t, 2>>& points() const { return points_; }
  void set_points(std::vector<std::array<std::int64_t, 2>> pts) { points_ = std::move(pts); }

private:
  Graph graph_;
  std::vector<Demand> demands_;
  PenaltyFn penalty_;
  std::optional<int> root_;
  int stripped_ = 0;
  std::vector<std::array<std::int64_t, 2>> points_;
};

} // namespace pcsn
