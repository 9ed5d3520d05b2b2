#pragma once

#include <cstddef>
#include <numeric>
#include <vector>

namespace lawvere {

/// Disjoint sets over 0..n-1. The root of a class is always its least member,
/// so when elements are numbered in lexicographic order the root is the
/// lexicographically least representative.
class UnionFind {
 public:
  explicit UnionFind(std::size_t n = 0) : parent_(n) { std::iota(parent_.begin(), parent_.end(), 0); }

  std::size_t size() const { return parent_.size(); }

  std::size_t find(std::size_t x) {
    std::size_t root = x;
    while (parent_[root] != root) root = parent_[root];
    while (parent_[x] != root) {
      std::size_t next = parent_[x];
      parent_[x] = root;
      x = next;
    }
    return root;
  }

  /// Returns true if two classes were merged.
  bool unite(std::size_t a, std::size_t b) {
    a = find(a);
    b = find(b);
    if (a == b) return false;
    if (b < a) std::swap(a, b);
    parent_[b] = a;
    return true;
  }

  /// Class index (0-based, ordered by least member) of every element, and the
  /// number of classes.
  std::pair<std::vector<std::size_t>, std::size_t> classes() {
    std::vector<std::size_t> id(parent_.size());
    std::size_t count = 0;
    for (std::size_t x = 0; x < parent_.size(); ++x) {
      std::size_t r = find(x);
      id[x] = r == x ? count++ : id[r];
    }
    return {std::move(id), count};
  }

 private:
  std::vector<std::size_t> parent_;
};

}  // namespace lawvere
