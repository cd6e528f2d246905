#pragma once

#include "pcsn/instance.hpp"
#include "pcsn/solution.hpp"
#include "pcsn/treewidth.hpp"

#include <cstddef>

namespace pcsn {

struct DpStats {
  std::size_t table_entries = 0; // total states stored across all nodes
  std::size_t nodes = 0;
};

/// Exact rooted prize-collecting Steiner tree on a nice decomposition whose
/// root bag is the instance root. Requires additive penalties; vertex
/// penalties are the summed penalties of the demands at that vertex.
Solution dp_pcst(const Instance& inst, const NiceDecomposition& nice,
                 DpStats* stats = nullptr);

/// Exact prize-collecting tour (closed walk through the root, multiplicities
/// <= 2) and stroll (open walk), same preconditions.
Solution dp_pctsp(const Instance& inst, const NiceDecomposition& nice,
                  DpStats* stats = nullptr);
Solution dp_pcs(const Instance& inst, const NiceDecomposition& nice,
                DpStats* stats = nullptr);

} // namespace pcsn
