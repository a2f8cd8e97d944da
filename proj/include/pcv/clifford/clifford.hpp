#pragma once

#include <array>
#include <stdexcept>
#include <vector>

#include "pcv/core/combinatorics.hpp"
#include "pcv/core/scalar.hpp"

namespace pcv {

// Signature eta = diag(-1, +1, ..., +1): index 0 timelike.
inline int clif_eta(int a) { return a == 0 ? -1 : 1; }

// Element of the Clifford algebra C(N-1,1) over scalar S, components on the
// 2^N ordered-subset basis {1, v_a, v_ab, ...}. Product realizes
// v_a v_b + v_b v_a = -2 eta_ab.
template <class S>
class Clif {
 public:
  Clif() = default;
  explicit Clif(int N) : N_(N), c_(size_t(1) << N) {}
  static Clif scalar(int N, S v) {
    Clif x(N);
    x.c_[0] = std::move(v);
    return x;
  }
  static Clif vector_basis(int N, int a) {
    Clif x(N);
    x.c_[1u << a] = ScalarOps<S>::one();
    return x;
  }
  static Clif vector(int N, const std::vector<S>& comp) {
    Clif x(N);
    for (int a = 0; a < N; ++a) x.c_[1u << a] = comp[a];
    return x;
  }

  int N() const { return N_; }
  const S& coef(uint32_t mask) const { return c_[mask]; }
  S& coef(uint32_t mask) { return c_[mask]; }

  friend Clif operator+(const Clif& a, const Clif& b) {
    Clif out = a;
    for (size_t i = 0; i < out.c_.size(); ++i) out.c_[i] = out.c_[i] + b.c_[i];
    return out;
  }
  friend Clif operator-(const Clif& a, const Clif& b) {
    Clif out = a;
    for (size_t i = 0; i < out.c_.size(); ++i) out.c_[i] = out.c_[i] - b.c_[i];
    return out;
  }
  friend Clif operator-(const Clif& a) {
    Clif out = a;
    for (auto& v : out.c_) v = -v;
    return out;
  }
  friend Clif operator*(const S& s, const Clif& a) {
    Clif out = a;
    for (auto& v : out.c_) v = s * v;
    return out;
  }

  friend Clif operator*(const Clif& a, const Clif& b) {
    Clif out(a.N_);
    for (uint32_t ma = 0; ma < a.c_.size(); ++ma) {
      if (ScalarOps<S>::is_zero(a.c_[ma])) continue;
      for (uint32_t mb = 0; mb < b.c_.size(); ++mb) {
        if (ScalarOps<S>::is_zero(b.c_[mb])) continue;
        auto [mask, sgn] = mul_basis(a.N_, ma, mb);
        S v = a.c_[ma] * b.c_[mb];
        if (sgn < 0) v = -v;
        out.c_[mask] = out.c_[mask] + v;
      }
    }
    return out;
  }

  // grading involution alpha: -1 on odd monomials
  Clif grading() const {
    Clif out = *this;
    for (uint32_t m = 0; m < out.c_.size(); ++m)
      if (popcount32(m) & 1) out.c_[m] = -out.c_[m];
    return out;
  }

  // transpose: reverses factor order, sign (-1)^{k(k-1)/2} per grade-k monomial
  Clif transpose() const {
    Clif out = *this;
    for (uint32_t m = 0; m < out.c_.size(); ++m) {
      int k = popcount32(m);
      if ((k * (k - 1) / 2) & 1) out.c_[m] = -out.c_[m];
    }
    return out;
  }

  bool is_zero() const {
    for (auto& v : c_)
      if (!ScalarOps<S>::is_zero(v)) return false;
    return true;
  }
  double mag() const {
    double m = 0;
    for (auto& v : c_) m = std::max(m, ScalarOps<S>::mag(v));
    return m;
  }

  // product of basis monomials: result mask and sign including -eta factors
  static std::pair<uint32_t, int> mul_basis(int N, uint32_t ma, uint32_t mb) {
    uint32_t acc = ma;
    int sgn = 1;
    for (int j = 0; j < N; ++j) {
      if (!(mb & (1u << j))) continue;
      // move v_j left through generators of acc with index > j
      int t = popcount32(acc >> (j + 1));
      if (t & 1) sgn = -sgn;
      if (acc & (1u << j)) {
        sgn *= -clif_eta(j);  // v_j v_j = -eta_jj
        acc &= ~(1u << j);
      } else {
        acc |= 1u << j;
      }
    }
    return {acc, sgn};
  }

 private:
  int N_ = 0;
  std::vector<S> c_;
};

// eta-norm of a grade-1 element (assumes pure vector)
template <class S>
S clif_vector_norm(const Clif<S>& v) {
  S n = ScalarOps<S>::zero();
  for (int a = 0; a < v.N(); ++a) {
    S comp = v.coef(1u << a);
    S term = comp * comp;
    if (clif_eta(a) < 0) term = -term;
    n = n + term;
  }
  return n;
}

// Even invertible element presented as a product of eta-unit vectors.
template <class S>
struct SpinElement {
  Clif<S> value;
  Clif<S> inverse;

  // build from unit vectors (eta(v,v) = +-1); throws if a factor is not unit
  static SpinElement from_unit_vectors(int N, const std::vector<std::vector<S>>& vecs) {
    if (vecs.size() % 2) throw std::invalid_argument("spin element needs an even factor count");
    SpinElement s{Clif<S>::scalar(N, ScalarOps<S>::one()), Clif<S>::scalar(N, ScalarOps<S>::one())};
    for (auto& comp : vecs) {
      Clif<S> v = Clif<S>::vector(N, comp);
      S n = clif_vector_norm(v);
      S one = ScalarOps<S>::one();
      if (!(ScalarOps<S>::is_zero(n - one) || ScalarOps<S>::is_zero(n + one)))
        throw std::invalid_argument("spin factor is not an eta-unit vector");
      s.value = s.value * v;
      // v^{-1} = -v / eta(v,v);  v*v = -eta(v,v)
      Clif<S> vinv = ScalarOps<S>::is_zero(n - one) ? -v : v;
      s.inverse = vinv * s.inverse;
    }
    return s;
  }
};

// Covering map l(S): V -> V, w -> alpha(S) w S^{-1}, extracted as an N x N matrix
// acting on vector components: l(S)(v_a) = l^b_a v_b.
template <class S>
std::vector<std::vector<S>> covering_matrix(const SpinElement<S>& sp) {
  int N = sp.value.N();
  std::vector<std::vector<S>> l(N, std::vector<S>(N, ScalarOps<S>::zero()));
  Clif<S> aS = sp.value.grading();
  for (int a = 0; a < N; ++a) {
    Clif<S> img = aS * Clif<S>::vector_basis(N, a) * sp.inverse;
    for (uint32_t m = 0; m < (1u << N); ++m) {
      if (ScalarOps<S>::is_zero(img.coef(m))) continue;
      if (popcount32(m) != 1) throw std::runtime_error("covering image not grade 1");
      l[__builtin_ctz(m)][a] = img.coef(m);
    }
  }
  return l;
}

// Clifford exponential by power series (numeric scalars).
template <class S>
Clif<S> clif_exp(const Clif<S>& x, int max_terms = 64) {
  Clif<S> acc = Clif<S>::scalar(x.N(), ScalarOps<S>::one());
  Clif<S> term = acc;
  for (int k = 1; k < max_terms; ++k) {
    term = S(1.0 / k) * (term * x);
    acc = acc + term;
    if (term.mag() < 1e-300) break;
  }
  return acc;
}

}  // namespace pcv
