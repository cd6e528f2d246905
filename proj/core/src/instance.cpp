#include "pcsn/instance.hpp"

#include "pcsn/errors.hpp"

namespace pcsn {

Instance::Instance(Graph graph, std::vector<Demand> demands, PenaltyFn penalty,
                   std::optional<int> root)
    : graph_(std::move(graph)), penalty_(std::move(penalty)), root_(root) {
  if (static_cast<int>(demands.size()) != penalty_.ground_size())
    throw DomainError("penalty ground set must match demand count");
  if (root_ && (*root_ < 0 || *root_ >= graph_.num_vertices()))
    throw DomainError("root out of range");

  std::vector<bool> keep(demands.size(), true);
  for (std::size_t i = 0; i < demands.size(); ++i) {
    const Demand& d = demands[i];
    if (d.s < 0 || d.t < 0 || d.s >= graph_.num_vertices() || d.t >= graph_.num_vertices())
      throw DomainError("demand endpoint out of range");
    if (d.s == d.t) {
      keep[i] = false; // pre-satisfied, would break the crossing predicate
      ++stripped_;
    }
  }
  if (stripped_ > 0) {
    penalty_ = penalty_.project(keep);
    for (std::size_t i = 0; i < demands.size(); ++i)
      if (keep[i]) demands_.push_back(demands[i]);
  } else {
    demands_ = std::move(demands);
  }
}

bool Instance::is_rooted() const {
  if (!root_) return false;
  for (const Demand& d : demands_)
    if (d.s != *root_ && d.t != *root_) return false;
  return true;
}

DemandMask Instance::all_demands_mask() const {
  if (num_demands() > kMaxMaskGround)
    throw CapacityError("too many demands for mask operations");
  return full_mask(num_demands());
}

Instance Instance::with_penalty(PenaltyFn pi) const {
  if (pi.ground_size() != num_demands())
    throw DomainError("replacement penalty ground size mismatch");
  Instance copy = *this;
  copy.penalty_ = std::move(pi);
  return copy;
}

Instance Instance::with_graph(Graph g) const {
  if (g.num_vertices() != graph_.num_vertices())
    throw DomainError("replacement graph must keep the vertex set");
  Instance copy = *this;
  copy.graph_ = std::move(g);
  return copy;
}

} // namespace pcsn
