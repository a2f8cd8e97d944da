#pragma once

#include <array>
#include <cstdint>
#include <vector>

namespace pcv {

inline int popcount32(uint32_t m) { return __builtin_popcount(m); }

// Sign of merging two disjoint ascending index words A, B into ascending order:
// (-1)^{#{(a,b) : a in A, b in B, a > b}}. Returns 0 on overlap.
inline int merge_sign(uint32_t a, uint32_t b) {
  if (a & b) return 0;
  int inv = 0;
  uint32_t bb = b;
  while (bb) {
    int j = __builtin_ctz(bb);
    bb &= bb - 1;
    inv += popcount32(a >> (j + 1));
  }
  return (inv & 1) ? -1 : 1;
}

// Basis of k-subsets of {0..n-1}, ordered lexicographically as ascending tuples.
// Ranks are looked up by mask.
class SubsetBasis {
 public:
  SubsetBasis() = default;
  SubsetBasis(int n, int k) : n_(n), k_(k) {
    std::vector<int> cur;
    gen(0, cur);
    rank_.assign(1u << n, -1);
    for (int i = 0; i < int(masks_.size()); ++i) rank_[masks_[i]] = i;
  }

  int size() const { return int(masks_.size()); }
  uint32_t mask(int r) const { return masks_[r]; }
  int rank(uint32_t m) const { return rank_[m]; }
  int n() const { return n_; }
  int k() const { return k_; }

 private:
  void gen(int start, std::vector<int>& cur) {
    if (int(cur.size()) == k_) {
      uint32_t m = 0;
      for (int i : cur) m |= 1u << i;
      masks_.push_back(m);
      return;
    }
    for (int i = start; i < n_; ++i) {
      cur.push_back(i);
      gen(i + 1, cur);
      cur.pop_back();
    }
  }

  int n_ = 0, k_ = 0;
  std::vector<uint32_t> masks_;
  std::vector<int> rank_;
};

// Shared tables for all (n,k) with n <= 8.
class Comb {
 public:
  static const SubsetBasis& basis(int n, int k) {
    static Comb inst;
    return inst.tab_[n][k];
  }
  static int dim(int n, int k) {
    if (k < 0 || k > n) return 0;
    return basis(n, k).size();
  }

 private:
  Comb() {
    for (int n = 0; n <= 8; ++n)
      for (int k = 0; k <= n; ++k) tab_[n][k] = SubsetBasis(n, k);
  }
  SubsetBasis tab_[9][9];
};

}  // namespace pcv
