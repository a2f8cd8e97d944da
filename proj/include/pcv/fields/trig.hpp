#pragma once

#include <algorithm>
#include <cstdint>
#include <vector>

#include "pcv/core/scalar.hpp"

namespace pcv {

// Trigonometric polynomial on T^3: sparse complex Fourier coefficients on
// integer modes. Exact when S is a Gaussian rational.
template <class S>
class TrigPoly {
 public:
  using Term = std::pair<int64_t, S>;

  static int64_t key(int k0, int k1, int k2) {
    return ((int64_t(k0) + 512) << 20) | ((int64_t(k1) + 512) << 10) | (int64_t(k2) + 512);
  }
  static void unkey(int64_t k, int out[3]) {
    out[0] = int((k >> 20) & 1023) - 512;
    out[1] = int((k >> 10) & 1023) - 512;
    out[2] = int(k & 1023) - 512;
  }

  TrigPoly() = default;
  TrigPoly(S constant) {
    if (!ScalarOps<S>::is_zero(constant)) t_.emplace_back(key(0, 0, 0), std::move(constant));
  }
  // conversions used when lifting numeric constants into field coefficients
  TrigPoly(double v)
    requires std::is_constructible_v<S, double>
      : TrigPoly(S(v)) {}

  static TrigPoly mode(int k0, int k1, int k2, S coef) {
    TrigPoly p;
    if (!ScalarOps<S>::is_zero(coef)) p.t_.emplace_back(key(k0, k1, k2), std::move(coef));
    return p;
  }

  const std::vector<Term>& terms() const { return t_; }
  bool is_zero() const { return t_.empty(); }
  size_t size() const { return t_.size(); }

  void add(int64_t k, S v) {
    if (ScalarOps<S>::is_zero(v)) return;
    auto it = std::lower_bound(t_.begin(), t_.end(), k,
                               [](const Term& t, int64_t kk) { return t.first < kk; });
    if (it != t_.end() && it->first == k) {
      it->second = it->second + v;
      if (ScalarOps<S>::is_zero(it->second)) t_.erase(it);
    } else {
      t_.emplace(it, k, std::move(v));
    }
  }

  friend TrigPoly operator+(const TrigPoly& a, const TrigPoly& b) {
    TrigPoly out;
    out.t_.reserve(a.t_.size() + b.t_.size());
    size_t i = 0, j = 0;
    while (i < a.t_.size() || j < b.t_.size()) {
      if (j == b.t_.size() || (i < a.t_.size() && a.t_[i].first < b.t_[j].first))
        out.t_.push_back(a.t_[i++]);
      else if (i == a.t_.size() || b.t_[j].first < a.t_[i].first)
        out.t_.push_back(b.t_[j++]);
      else {
        S s = a.t_[i].second + b.t_[j].second;
        if (!ScalarOps<S>::is_zero(s)) out.t_.emplace_back(a.t_[i].first, std::move(s));
        ++i, ++j;
      }
    }
    return out;
  }
  friend TrigPoly operator-(const TrigPoly& a) {
    TrigPoly out = a;
    for (auto& tm : out.t_) tm.second = -tm.second;
    return out;
  }
  friend TrigPoly operator-(const TrigPoly& a, const TrigPoly& b) { return a + (-b); }

  friend TrigPoly operator*(const TrigPoly& a, const TrigPoly& b) {
    std::vector<Term> acc;
    acc.reserve(a.t_.size() * b.t_.size());
    for (auto& x : a.t_)
      for (auto& y : b.t_)
        acc.emplace_back(x.first + y.first - key(0, 0, 0), x.second * y.second);
    std::sort(acc.begin(), acc.end(),
              [](const Term& x, const Term& y) { return x.first < y.first; });
    TrigPoly out;
    for (auto& tm : acc) {
      if (!out.t_.empty() && out.t_.back().first == tm.first)
        out.t_.back().second = out.t_.back().second + tm.second;
      else
        out.t_.push_back(tm);
    }
    out.t_.erase(std::remove_if(out.t_.begin(), out.t_.end(),
                                [](const Term& tm) { return ScalarOps<S>::is_zero(tm.second); }),
                 out.t_.end());
    return out;
  }
  TrigPoly& operator+=(const TrigPoly& b) { return *this = *this + b; }

  // spectral partial derivative: multiply by i k_mu
  TrigPoly deriv(int mu) const {
    TrigPoly out;
    for (auto& tm : t_) {
      int k[3];
      unkey(tm.first, k);
      if (k[mu] == 0) continue;
      S ik;
      if constexpr (std::is_same_v<S, Cplx>)
        ik = Cplx(0, double(k[mu]));
      else
        ik = S(Rat(k[mu])) * CRat::i();
      out.t_.emplace_back(tm.first, ik * tm.second);
    }
    return out;
  }

  S zero_mode() const {
    for (auto& tm : t_)
      if (tm.first == key(0, 0, 0)) return tm.second;
    return S{};
  }

  int bandwidth() const {
    int b = 0;
    for (auto& tm : t_) {
      int k[3];
      unkey(tm.first, k);
      for (int d = 0; d < 3; ++d) b = std::max(b, std::abs(k[d]));
    }
    return b;
  }

  double mag() const {
    double m = 0;
    for (auto& tm : t_) m = std::max(m, ScalarOps<S>::mag(tm.second));
    return m;
  }

 private:
  std::vector<Term> t_;
};

}  // namespace pcv
