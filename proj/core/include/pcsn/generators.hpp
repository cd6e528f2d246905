#pragma once

#include "pcsn/instance.hpp"

#include <cstdint>
#include <string>

namespace pcsn {

enum class RandomKind { Grid, SeriesParallel, ErdosRenyi };

struct RandomSpec {
  RandomKind kind = RandomKind::Grid;
  int rows = 3, cols = 3;        // grid
  int n = 8;                     // series-parallel / Erdos-Renyi vertex count
  int edge_percent = 40;         // Erdos-Renyi density
  int demand_count = 3;
  bool capped_penalty = false;
  bool rooted = false;           // all demands share vertex 0
  std::uint64_t seed = 1;
};

/// Reproducible instance: same spec, same bytes. Costs and penalties are
/// small rationals with denominators from {1, 2, 4, 5}.
Instance gen_random(const RandomSpec& spec);

RandomKind random_kind_from_name(const std::string& name);

} // namespace pcsn
