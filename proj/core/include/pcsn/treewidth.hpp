#pragma once

#include "pcsn/graph.hpp"

#include <optional>
#include <string>
#include <vector>

namespace pcsn {

struct TreeDecomposition {
  std::vector<std::vector<int>> bags;       // sorted vertex lists
  std::vector<std::pair<int, int>> edges;   // tree edges between bag ids

  int width() const;
};

struct DecompositionReport {
  std::vector<int> uncovered_vertices;        // condition 1 violations
  std::vector<int> uncovered_edges;           // condition 2
  std::vector<int> disconnected_vertices;     // condition 3
  bool tree_shape_ok = true;                  // connected and acyclic
  bool ok() const {
    return tree_shape_ok && uncovered_vertices.empty() && uncovered_edges.empty() &&
           disconnected_vertices.empty();
  }
};

/// Checks the three tree-decomposition conditions plus tree shape.
DecompositionReport validate_decomposition(const Graph& g, const TreeDecomposition& td);

/// Min-degree elimination heuristic. Valid for every graph; width is an
/// upper bound on the true treewidth.
TreeDecomposition heuristic_decompose(const Graph& g);

enum class NodeKind { Leaf, Introduce, Forget, Join };

struct NiceNode {
  std::vector<int> bag; // sorted
  NodeKind kind = NodeKind::Leaf;
  int vertex = -1;      // introduced / forgotten vertex
  std::vector<int> children;
};

struct NiceDecomposition {
  std::vector<NiceNode> nodes;
  int root = -1;

  int width() const;
  /// Nodes in children-before-parent order.
  std::vector<int> postorder() const;
};

/// Transforms a valid decomposition into nice form of the same width with a
/// singleton root bag. When prefer_root is given and appears in some bag,
/// the root bag is exactly {prefer_root}.
NiceDecomposition to_nice(const TreeDecomposition& td, const Graph& g,
                          std::optional<int> prefer_root = std::nullopt);

/// Structural validation of nice-form invariants (kinds, bag deltas, join
/// bags, singleton root).
bool validate_nice(const NiceDecomposition& nd);

/// PACE-style text format: "s td <bags> <max bag size> <n>", "b <id> <v...>"
/// (1-indexed), then one "u v" line per tree edge. "c" lines are comments.
std::string decomposition_to_pace(const TreeDecomposition& td, int num_vertices);
TreeDecomposition decomposition_from_pace(const std::string& text);

} // namespace pcsn
