#pragma once

#include "pcsn/clustering.hpp"
#include "pcsn/reduction.hpp"

#include <string>
#include <vector>

namespace pcsn {

struct CheckReport {
  std::vector<std::string> failures;
  bool ok() const { return failures.empty(); }
  void require(bool cond, const std::string& what) {
    if (!cond) failures.push_back(what);
  }
};

/// Re-checks a clustering output against its instance: laminarity, the
/// current partition, dual feasibility (edge constraints always; subset
/// constraints exhaustively up to exhaustive_limit demands, singletons plus
/// dead-set witnesses beyond), the growth guarantees (tight dead set, live
/// demands satisfied, length within twice the dual), the event bound and the
/// pruned-cluster boundary property.
CheckReport verify_clustering_output(const Instance& inst, const ClusteringOutput& out,
                                     int exhaustive_limit = 12);

/// Checks the merge guarantees: demand coverage, tree spanning, and the
/// (2/eps + 1) * length(F) bound.
CheckReport verify_merge_output(const Instance& inst, const std::vector<int>& base_forest,
                                const MergeOutput& merged, const Rat& epsilon,
                                DemandMask considered);

} // namespace pcsn
