#pragma once

#include <numeric>
#include <vector>

namespace pcsn {

class UnionFind {
public:
  explicit UnionFind(int n) : parent_(n), rank_(n, 0), components_(n) {
    std::iota(parent_.begin(), parent_.end(), 0);
  }

  int find(int x) {
    while (parent_[x] != x) {
      parent_[x] = parent_[parent_[x]];
      x = parent_[x];
    }
    return x;
  }

  /// Returns false if x and y were already in the same set.
  bool unite(int x, int y) {
    x = find(x);
    y = find(y);
    if (x == y) return false;
    if (rank_[x] < rank_[y]) std::swap(x, y);
    parent_[y] = x;
    if (rank_[x] == rank_[y]) ++rank_[x];
    --components_;
    return true;
  }

  bool connected(int x, int y) { return find(x) == find(y); }
  int components() const { return components_; }

private:
  std::vector<int> parent_;
  std::vector<int> rank_;
  int components_;
};

} // namespace pcsn
