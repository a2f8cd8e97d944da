#pragma once

#include <algorithm>
#include <cstdint>
#include <utility>
#include <vector>

#include "pcv/core/combinatorics.hpp"
#include "pcv/core/scalar.hpp"

namespace pcv {

// Sign of reordering theta^A . theta^B into ascending order; 0 if A,B overlap
// (generators square to zero).
inline int theta_sign(uint32_t a, uint32_t b) { return merge_sign(a, b); }

// Element of a finitely generated Grassmann algebra over a commutative ring R.
// Terms are kept sorted by generator mask; exact zeros are dropped.
template <class R>
class Gr {
 public:
  using Term = std::pair<uint32_t, R>;

  Gr() = default;
  explicit Gr(R body) {
    if (!ring_zero(body)) t_.emplace_back(0u, std::move(body));
  }
  static Gr monomial(uint32_t mask, R coef) {
    Gr g;
    if (!ring_zero(coef)) g.t_.emplace_back(mask, std::move(coef));
    return g;
  }

  const std::vector<Term>& terms() const { return t_; }
  bool empty() const { return t_.empty(); }

  // parity of a homogeneous element; -1 when mixed
  int parity() const {
    if (t_.empty()) return 0;
    int p = popcount32(t_[0].first) & 1;
    for (auto& tm : t_)
      if ((popcount32(tm.first) & 1) != p) return -1;
    return p;
  }

  R body() const {
    for (auto& tm : t_)
      if (tm.first == 0) return tm.second;
    return R{};
  }
  R coef(uint32_t mask) const {
    for (auto& tm : t_)
      if (tm.first == mask) return tm.second;
    return R{};
  }

  friend Gr operator+(const Gr& a, const Gr& b) {
    Gr out;
    out.t_.reserve(a.t_.size() + b.t_.size());
    size_t i = 0, j = 0;
    while (i < a.t_.size() || j < b.t_.size()) {
      if (j == b.t_.size() || (i < a.t_.size() && a.t_[i].first < b.t_[j].first))
        out.t_.push_back(a.t_[i++]);
      else if (i == a.t_.size() || b.t_[j].first < a.t_[i].first)
        out.t_.push_back(b.t_[j++]);
      else {
        R s = a.t_[i].second + b.t_[j].second;
        if (!ring_zero(s)) out.t_.emplace_back(a.t_[i].first, std::move(s));
        ++i, ++j;
      }
    }
    return out;
  }
  friend Gr operator-(const Gr& a) {
    Gr out = a;
    for (auto& tm : out.t_) tm.second = -tm.second;
    return out;
  }
  friend Gr operator-(const Gr& a, const Gr& b) { return a + (-b); }

  friend Gr operator*(const Gr& a, const Gr& b) {
    std::vector<Term> acc;
    acc.reserve(a.t_.size() * b.t_.size());
    for (auto& x : a.t_)
      for (auto& y : b.t_) {
        int s = theta_sign(x.first, y.first);
        if (!s) continue;
        R c = x.second * y.second;
        if (s < 0) c = -c;
        acc.emplace_back(x.first | y.first, std::move(c));
      }
    return from_unsorted(std::move(acc));
  }

  Gr& operator+=(const Gr& b) { return *this = *this + b; }
  Gr& operator-=(const Gr& b) { return *this = *this - b; }
  Gr& operator*=(const Gr& b) { return *this = *this * b; }

  friend Gr operator*(const R& s, const Gr& a) {
    Gr out;
    for (auto& tm : a.t_) {
      R c = s * tm.second;
      if (!ring_zero(c)) out.t_.emplace_back(tm.first, std::move(c));
    }
    return out;
  }

  // multiply every term's coefficient through a map (e.g. pointwise evaluation)
  template <class F>
  auto map(F&& f) const {
    using R2 = decltype(f(std::declval<R>()));
    Gr<R2> out;
    for (auto& tm : t_) out.add_term(tm.first, f(tm.second));
    return out;
  }

  void add_term(uint32_t mask, R coef) {
    if (ring_zero(coef)) return;
    auto it = std::lower_bound(t_.begin(), t_.end(), mask,
                               [](const Term& t, uint32_t m) { return t.first < m; });
    if (it != t_.end() && it->first == mask) {
      it->second = it->second + coef;
      if (ring_zero(it->second)) t_.erase(it);
    } else {
      t_.emplace(it, mask, std::move(coef));
    }
  }

  static Gr from_unsorted(std::vector<Term> acc) {
    std::sort(acc.begin(), acc.end(),
              [](const Term& x, const Term& y) { return x.first < y.first; });
    Gr out;
    for (auto& tm : acc) {
      if (!out.t_.empty() && out.t_.back().first == tm.first)
        out.t_.back().second = out.t_.back().second + tm.second;
      else
        out.t_.push_back(std::move(tm));
    }
    out.t_.erase(std::remove_if(out.t_.begin(), out.t_.end(),
                                [](const Term& tm) { return ring_zero(tm.second); }),
                 out.t_.end());
    return out;
  }

 private:
  template <class T>
  static bool ring_zero(const T& v) {
    if constexpr (requires { ScalarOps<T>::is_zero(v); })
      return ScalarOps<T>::is_zero(v);
    else
      return v.is_zero();
  }

  std::vector<Term> t_;
};

// Largest coefficient magnitude across all monomials (residual reporting).
template <class R>
double gr_mag(const Gr<R>& g) {
  double m = 0;
  for (auto& tm : g.terms()) {
    if constexpr (requires(R r) { ScalarOps<R>::mag(r); })
      m = std::max(m, ScalarOps<R>::mag(tm.second));
    else
      m = std::max(m, tm.second.mag());
  }
  return m;
}

}  // namespace pcv
