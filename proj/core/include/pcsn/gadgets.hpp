#pragma once

#include "pcsn/instance.hpp"
#include "pcsn/oracle.hpp"
#include "pcsn/solution.hpp"

#include <cstdint>
#include <vector>

namespace pcsn {

/// Vertex-cover hardness gadget: one central vertex w, a cost-2 spoke to a_i
/// per source vertex, and a 4-cycle of unit edges through c1_j, b_j, c2_j per
/// source edge. Demands: {w, b_j} at penalty 3 and {a_i, c^l_j} at penalty 1
/// whenever v_i is endpoint l of e_j. Its PCSF optimum is 2m + 2n + tau(G).
struct VcGadget {
  Instance instance;
  Graph source;
  int w = 0;
  std::vector<int> a;            // per source vertex
  std::vector<int> b, c1, c2;    // per source edge
  std::vector<int> spoke_edge;   // edge id of {w, a_i}
  std::vector<std::array<int, 4>> cycle_edges; // {w,c1},{c1,b},{c2,b},{w,c2}
  std::vector<int> wb_demand;                  // demand id of {w, b_j}
  std::vector<std::array<int, 2>> ac_demand;   // demand ids {a,c1},{a,c2} per edge
};

VcGadget gen_vc_gadget(const Graph& source);

struct GadgetCheck {
  Rat pcsf_opt;
  Rat formula; // 2m + 2n + tau
  int tau = 0;
  bool equal = false;
  Solution witness;
};

GadgetCheck gadget_optimum_check(const VcGadget& g, const OracleBudget& budget = {});

/// Normalizes an arbitrary gadget solution (connect every b_j, keep one c
/// side, drop useless spokes) and reads off the cover {v_i : spoke_i absent}.
/// The result is verified to cover every source edge.
std::vector<int> cover_from_solution(const VcGadget& g, const Solution& sol);

/// The forward construction of the reduction: a solution of cost exactly
/// 2m + 2n + |cover| built from a vertex cover.
std::vector<int> solution_edges_from_cover(const VcGadget& g,
                                           const std::vector<int>& cover);

/// Euclidean hardness gadget: the z-lattice spine plus a_i, b_j, c^l_j points
/// with demands of penalties {1, 3U, U-10} (all divided by the scale divisor,
/// which also divides U, H, V; the lattice keeps unit spacing).
struct EuclideanGadget {
  Instance instance; // geometric: points, no edges
  std::int64_t scale_divisor = 1;
  std::int64_t unit = 0;     // U' = U / s
  std::int64_t hlen = 0;     // H' = 10 U'
  std::int64_t vspace = 0;   // V' = 100 U'
  std::int64_t z_count = 0;        // |Z| by direct counting
  std::int64_t z_formula = 0;      // V'(n+m) + 1 + (n+2m)H'
  std::int64_t demand_count = 0;   // |Z| - 1 + m + 3n by direct counting
  std::vector<int> a, b, c1, c2;   // point ids
};

/// Generates the gadget at parameters U/s, 10U/s, 100U/s with unit lattice
/// spacing; refuses to materialize more than point_budget points.
EuclideanGadget gen_euclidean_gadget(const Graph& source, std::int64_t scale_divisor,
                                     std::int64_t point_budget = 4000000);

/// Named 3-regular source graphs for the gadget tests and the CLI.
Graph source_graph_k4();
Graph source_graph_k33();
Graph source_graph_prism();
Graph source_graph_petersen();

} // namespace pcsn
