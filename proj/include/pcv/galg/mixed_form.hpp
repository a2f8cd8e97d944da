#pragma once

#include <array>
#include <cassert>
#include <stdexcept>
#include <vector>

#include "pcv/galg/grassmann.hpp"

namespace pcv {

// Minkowski metric on the internal space, diag(-1,+1,+1,+1).
inline int eta_diag(int a) { return a == 0 ? -1 : 1; }

// Pairing of Lambda^q V basis monomials for q = 1, 2 (diagonal eta).
inline int eta_pair_basis(int q, uint32_t ja, uint32_t jb) {
  if (ja != jb) return 0;
  int s = 1;
  uint32_t m = ja;
  while (m) {
    int a = __builtin_ctz(m);
    m &= m - 1;
    s *= eta_diag(a);
  }
  (void)q;
  return s;
}

// v-word with slot `old_idx` replaced by `new_idx`, resorted. Returns sign, 0 if repeated.
inline int replace_index_sign(uint32_t jmask, int old_idx, int new_idx, uint32_t& out) {
  uint32_t rest = jmask & ~(1u << old_idx);
  if (new_idx == old_idx) {
    out = jmask;
    return 1;
  }
  if (rest & (1u << new_idx)) return 0;
  out = rest | (1u << new_idx);
  int swaps = 0;
  if (new_idx < old_idx) {
    // elements of rest strictly between new_idx and old_idx sit left of the slot
    for (int r = new_idx + 1; r < old_idx; ++r)
      if (rest & (1u << r)) ++swaps;
  } else {
    for (int r = old_idx + 1; r < new_idx; ++r)
      if (rest & (1u << r)) ++swaps;
  }
  return (swaps & 1) ? -1 : 1;
}

struct Shape {
  int d = 3;  // base (cotangent) dimension: 3 boundary, 4 bulk
  int N = 4;  // internal dimension
  int p = 0;  // form degree
  int q = 0;  // internal degree
  bool operator==(const Shape&) const = default;
};

// Pointwise element of Omega^(p,q): coefficients are Grassmann-algebra values
// indexed by (dx-subset, v-subset) in lexicographic bases. All sign rules are
// derived from the canonical word order  theta . dx^I . v^J  with every symbol odd.
template <class R>
class Form {
 public:
  Form() = default;
  Form(Shape sh) : sh_(sh), c_(size_t(dimI()) * size_t(dimJ())) {}
  Form(int d, int N, int p, int q) : Form(Shape{d, N, p, q}) {}

  const Shape& shape() const { return sh_; }
  int dimI() const { return Comb::dim(sh_.d, sh_.p); }
  int dimJ() const { return Comb::dim(sh_.N, sh_.q); }
  bool zero_shape() const { return sh_.p > sh_.d || sh_.q > sh_.N || sh_.p < 0 || sh_.q < 0; }

  Gr<R>& at(int i, int j) { return c_[size_t(i) * dimJ() + j]; }
  const Gr<R>& at(int i, int j) const { return c_[size_t(i) * dimJ() + j]; }
  Gr<R>& at_mask(uint32_t im, uint32_t jm) {
    return at(Comb::basis(sh_.d, sh_.p).rank(im), Comb::basis(sh_.N, sh_.q).rank(jm));
  }
  const Gr<R>& at_mask(uint32_t im, uint32_t jm) const {
    return at(Comb::basis(sh_.d, sh_.p).rank(im), Comb::basis(sh_.N, sh_.q).rank(jm));
  }

  bool empty() const {
    for (auto& g : c_)
      if (!g.empty()) return false;
    return true;
  }

  // forms with no coefficient slots (out-of-range degrees) act as universal zeros
  friend Form operator+(const Form& a, const Form& b) {
    if (a.c_.empty()) return b;
    if (b.c_.empty()) return a;
    assert(a.sh_ == b.sh_);
    Form out = a;
    for (size_t i = 0; i < out.c_.size(); ++i) out.c_[i] += b.c_[i];
    return out;
  }
  friend Form operator-(const Form& a, const Form& b) {
    if (b.c_.empty()) return a;
    if (a.c_.empty()) return -b;
    assert(a.sh_ == b.sh_);
    Form out = a;
    for (size_t i = 0; i < out.c_.size(); ++i) out.c_[i] -= b.c_[i];
    return out;
  }
  friend Form operator-(const Form& a) {
    Form out = a;
    for (auto& g : out.c_) g = -g;
    return out;
  }
  Form& operator+=(const Form& b) { return *this = *this + b; }
  Form& operator-=(const Form& b) { return *this = *this - b; }

  friend Form operator*(const Gr<R>& s, const Form& a) {
    Form out = a;
    for (auto& g : out.c_) g = s * g;
    return out;
  }
  friend Form operator*(const R& s, const Form& a) {
    Form out = a;
    for (auto& g : out.c_) g = s * g;
    return out;
  }

  template <class F>
  auto map(F&& f) const {
    using R2 = decltype(f(std::declval<R>()));
    Form<R2> out(sh_);
    for (int i = 0; i < dimI(); ++i)
      for (int j = 0; j < dimJ(); ++j) out.at(i, j) = at(i, j).map(f);
    return out;
  }

  double mag() const {
    double m = 0;
    for (auto& g : c_) m = std::max(m, gr_mag(g));
    return m;
  }

 private:
  Shape sh_;
  std::vector<Gr<R>> c_;
};

namespace detail {
template <class R, class F>
void for_terms(const Form<R>& a, F&& f) {
  if (a.dimI() == 0 || a.dimJ() == 0) return;
  const auto& bi = Comb::basis(a.shape().d, a.shape().p);
  const auto& bj = Comb::basis(a.shape().N, a.shape().q);
  for (int i = 0; i < a.dimI(); ++i)
    for (int j = 0; j < a.dimJ(); ++j)
      for (auto& tm : a.at(i, j).terms()) f(bi.mask(i), bj.mask(j), tm.first, tm.second);
}
}  // namespace detail

// Wedge product. Degrees add; out-of-range results are the zero form of that shape.
template <class R>
Form<R> wedge(const Form<R>& a, const Form<R>& b) {
  assert(a.shape().d == b.shape().d && a.shape().N == b.shape().N);
  Shape os{a.shape().d, a.shape().N, a.shape().p + b.shape().p, a.shape().q + b.shape().q};
  Form<R> out(os);  // out-of-range degrees give an empty form (declared zero)
  int wa = a.shape().p + a.shape().q;
  int qa = a.shape().q;
  detail::for_terms(a, [&](uint32_t Ia, uint32_t Ja, uint32_t ta, const R& ra) {
    detail::for_terms(b, [&](uint32_t Ib, uint32_t Jb, uint32_t tb, const R& rb) {
      int s4 = merge_sign(Ia, Ib);
      if (!s4) return;
      int s5 = merge_sign(Ja, Jb);
      if (!s5) return;
      int s2 = theta_sign(ta, tb);
      if (!s2) return;
      int s = s2 * s4 * s5;
      if ((popcount32(tb) & 1) && (wa & 1)) s = -s;            // theta_b past dx^Ia v^Ja
      if ((popcount32(Ib) & 1) && (qa & 1)) s = -s;            // dx^Ib past v^Ja
      R c = ra * rb;
      if (s < 0) c = -c;
      out.at_mask(Ia | Ib, Ja | Jb).add_term(ta | tb, std::move(c));
    });
  });
  return out;
}

// Internal eta-pairing (A,B) for equal internal degree 1 or 2; forms wedge.
template <class R>
Form<R> eta_pair(const Form<R>& a, const Form<R>& b) {
  if (a.shape().q != b.shape().q || (a.shape().q != 1 && a.shape().q != 2))
    throw std::invalid_argument("eta_pair: internal degrees must be {1,1} or {2,2}");
  Shape os{a.shape().d, a.shape().N, a.shape().p + b.shape().p, 0};
  Form<R> out(os);
  int wa = a.shape().p + a.shape().q;
  int qa = a.shape().q;
  detail::for_terms(a, [&](uint32_t Ia, uint32_t Ja, uint32_t ta, const R& ra) {
    detail::for_terms(b, [&](uint32_t Ib, uint32_t Jb, uint32_t tb, const R& rb) {
      int pair = eta_pair_basis(qa, Ja, Jb);
      if (!pair) return;
      int s4 = merge_sign(Ia, Ib);
      if (!s4) return;
      int s2 = theta_sign(ta, tb);
      if (!s2) return;
      int s = pair * s2 * s4;
      if ((popcount32(tb) & 1) && (wa & 1)) s = -s;            // theta_b past dx^Ia v^Ja
      if ((popcount32(Ib) & 1) && (qa & 1)) s = -s;            // v^Ja past dx^Ib
      R c = ra * rb;
      if (s < 0) c = -c;
      out.at_mask(Ia | Ib, 0).add_term(ta | tb, std::move(c));
    });
  });
  return out;
}

// Tangent (multi)vector with Grassmann-valued components; odd components allowed.
template <class R>
struct VectorField {
  std::vector<Gr<R>> comp;  // size = base dimension
};

// Contraction with a vector: iota_xi = xi^mu iota_mu, iota_mu passing the
// theta block with its parity and annihilating the mu-th dx slot.
template <class R>
Form<R> iota(const VectorField<R>& xi, const Form<R>& a) {
  Shape os{a.shape().d, a.shape().N, a.shape().p - 1, a.shape().q};
  Form<R> out(os);  // contraction of a 0-form is the (empty) zero
  if (a.shape().p == 0) return out;
  detail::for_terms(a, [&](uint32_t Ia, uint32_t Ja, uint32_t ta, const R& ra) {
    int pos = 0;
    for (int mu = 0; mu < a.shape().d; ++mu) {
      if (!(Ia & (1u << mu))) continue;
      int s = ((pos & 1) ^ (popcount32(ta) & 1)) ? -1 : 1;
      R c = ra;
      if (s < 0) c = -c;
      Gr<R> contracted = xi.comp[mu] * Gr<R>::monomial(ta, std::move(c));
      for (auto& tm : contracted.terms())
        out.at_mask(Ia & ~(1u << mu), Ja).add_term(tm.first, tm.second);
      ++pos;
    }
  });
  return out;
}

// Internal contraction j_X with X in Omega^(0,1); lowers internal degree.
template <class R>
Form<R> j_internal(const Form<R>& X, const Form<R>& a) {
  assert(X.shape().p == 0 && X.shape().q == 1);
  Shape os{a.shape().d, a.shape().N, a.shape().p, a.shape().q - 1};
  Form<R> out(os);
  if (a.shape().q == 0) return out;
  const auto& b1 = Comb::basis(a.shape().N, 1);
  detail::for_terms(a, [&](uint32_t Ia, uint32_t Ja, uint32_t ta, const R& ra) {
    int pre = popcount32(ta) + popcount32(Ia);
    int pos = 0;
    for (int v = 0; v < a.shape().N; ++v) {
      if (!(Ja & (1u << v))) continue;
      int s = ((pos ^ pre) & 1) ? -1 : 1;
      const Gr<R>& Xv = X.at(0, b1.rank(1u << v));
      if (!Xv.empty()) {
        R c = ra;
        int se = s * eta_diag(v);
        if (se < 0) c = -c;
        Gr<R> contracted = Xv * Gr<R>::monomial(ta, std::move(c));
        for (auto& tm : contracted.terms())
          out.at_mask(Ia, Ja & ~(1u << v)).add_term(tm.first, tm.second);
      }
      ++pos;
    }
  });
  return out;
}

// Adjoint action of a Lambda^2 V valued form on Lambda^j V valued forms:
// per internal slot, v_c -> eta_{ac} v_b - eta_{bc} v_a, Leibniz over the slots.
template <class R>
Form<R> lie_bracket(const Form<R>& alpha, const Form<R>& beta) {
  assert(alpha.shape().q == 2);
  Shape os{beta.shape().d, beta.shape().N, alpha.shape().p + beta.shape().p, beta.shape().q};
  Form<R> out(os);
  if (beta.shape().q == 0) return out;  // scalars are invariant
  detail::for_terms(alpha, [&](uint32_t Ia, uint32_t Ja, uint32_t ta, const R& ra) {
    int a = __builtin_ctz(Ja);
    int b = __builtin_ctz(Ja & (Ja - 1));
    detail::for_terms(beta, [&](uint32_t Ib, uint32_t Jb, uint32_t tb, const R& rb) {
      int s4 = merge_sign(Ia, Ib);
      if (!s4) return;
      int s2 = theta_sign(ta, tb);
      if (!s2) return;
      int base = s2 * s4;
      if ((popcount32(tb) & 1) && (popcount32(Ia) & 1)) base = -base;  // theta_b past dx^Ia
      for (int c = 0; c < beta.shape().N; ++c) {
        if (!(Jb & (1u << c))) continue;
        // ad(v_a ^ v_b)(v_c) = eta_{ac} v_b - eta_{bc} v_a
        if (c == a) {
          uint32_t J2;
          int rs = replace_index_sign(Jb, c, b, J2);
          if (rs) {
            R cc = ra * rb;
            if (base * rs * eta_diag(a) < 0) cc = -cc;
            out.at_mask(Ia | Ib, J2).add_term(ta | tb, std::move(cc));
          }
        }
        if (c == b) {
          uint32_t J2;
          int rs = replace_index_sign(Jb, c, a, J2);
          if (rs) {
            R cc = ra * rb;
            if (-base * rs * eta_diag(b) < 0) cc = -cc;
            out.at_mask(Ia | Ib, J2).add_term(ta | tb, std::move(cc));
          }
        }
      }
    });
  });
  return out;
}

}  // namespace pcv
