#pragma once

#include <cstdint>
#include <stdexcept>
#include <vector>

namespace gml {

/// Bijection between ordered duplicate-free tuples over [n] and the dense
/// range 0..n!/(n-arity)!-1, in lexicographic tuple order.
class TupleIndex {
 public:
  TupleIndex(int n, int arity) : n_(n), arity_(arity) {
    if (arity < 0 || arity > n) throw std::invalid_argument("bad tuple arity");
    size_ = 1;
    for (int i = 0; i < arity; ++i) size_ *= (n - i);
  }

  int n() const { return n_; }
  int arity() const { return arity_; }
  long long size() const { return size_; }

  long long encode(const std::vector<int>& t) const {
    if (static_cast<int>(t.size()) != arity_) throw std::invalid_argument("tuple arity mismatch");
    std::vector<bool> used(n_, false);
    long long idx = 0;
    long long block = size_;
    for (int i = 0; i < arity_; ++i) {
      int v = t[i];
      if (v < 0 || v >= n_ || used[v]) throw std::invalid_argument("tuple not duplicate-free in range");
      int smaller_free = 0;
      for (int x = 0; x < v; ++x)
        if (!used[x]) ++smaller_free;
      block /= (n_ - i);
      idx += smaller_free * block;
      used[v] = true;
    }
    return idx;
  }

  std::vector<int> decode(long long idx) const {
    if (idx < 0 || idx >= size_) throw std::invalid_argument("tuple index out of range");
    std::vector<bool> used(n_, false);
    std::vector<int> t(arity_);
    long long block = size_;
    for (int i = 0; i < arity_; ++i) {
      block /= (n_ - i);
      int rank = static_cast<int>(idx / block);
      idx %= block;
      for (int x = 0;; ++x) {
        if (used[x]) continue;
        if (rank == 0) {
          t[i] = x;
          used[x] = true;
          break;
        }
        --rank;
      }
    }
    return t;
  }

 private:
  int n_, arity_;
  long long size_;
};

}  // namespace gml
