#pragma once

#include "pcsn/penalty.hpp"

#include <optional>
#include <vector>

namespace pcsn {

/// g_eta(D) = pi(D) - y(D) - eta * rate(D). The subtracted parts are modular,
/// so g_eta is submodular for every eta >= 0; with a feasible dual g_0 >= 0.
struct SlackFn {
  const PenaltyFn* penalty = nullptr; // not owned
  std::vector<Rat> charge;            // accumulated y_d per demand
  std::vector<Rat> rate;              // current growth rate per demand

  int ground() const { return penalty->ground_size(); }
  Rat value(DemandMask d_set, const Rat& eta) const;
};

struct MinimizeResult {
  DemandMask minimizer = 0;
  Rat value = 0;
};

/// Exact minimizer of g_eta over subsets containing forced_in. Additive and
/// capped-additive penalties use closed forms with no size limit; anything
/// else enumerates and requires ground <= 20.
MinimizeResult minimize_submodular(const SlackFn& g, const Rat& eta,
                                   DemandMask forced_in);

struct EdgeCandidate {
  int edge_id = -1;
  Rat slack;  // c_e minus the dual already packed on it
  int rate = 0; // number of active endpoint clusters (1 or 2)
};

struct EtaResult {
  enum class Kind { EdgeTight, SetTight, Unbounded };
  Kind kind = Kind::Unbounded;
  Rat eta = 0;
  int edge = -1;             // EdgeTight
  DemandMask tight_set = 0;  // SetTight
};

/// Largest growth eta that keeps every edge and every penalty-set constraint
/// feasible. Edge part: min slack/rate over candidates. Set part: exact ratio
/// enumeration (pi(D) - y(D)) / rate(D) for explicit tables and restricted
/// views, closed forms for additive and capped-additive penalties.
/// Ties resolve to the edge (merges before deaths), then to the lowest edge
/// id / lexicographically smallest demand set.
EtaResult compute_eta(const std::vector<EdgeCandidate>& edges, const SlackFn& g,
                      bool any_active_cluster);

/// Demands d whose tightest containing set is exactly tight:
/// min_{D contains d} (pi(D) - y(D)) = 0. Scans only candidates (demands with
/// live == true); rate is ignored (eta = 0).
std::vector<int> dead_set_update(const SlackFn& g, const std::vector<bool>& live);

} // namespace pcsn
