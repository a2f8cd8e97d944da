#pragma once

#include <array>

#include "pcv/clifford/gamma.hpp"
#include "pcv/galg/mixed_form.hpp"

namespace pcv {

// 4x4 matrix of mixed forms: gamma-valued objects like j_gamma j_gamma(c) or
// slashed frame factors. Entries share one shape.
template <class R, class S>
struct MatForm {
  Shape sh;
  std::array<std::array<Form<R>, 4>, 4> e;

  MatForm() = default;
  explicit MatForm(Shape s) : sh(s) {
    for (auto& row : e)
      for (auto& f : row) f = Form<R>(s);
  }

  static MatForm from_matrix(Shape scalar_shape, const Mat<S>& m) {
    MatForm out(scalar_shape);
    for (int i = 0; i < 4; ++i)
      for (int j = 0; j < 4; ++j)
        if (!ScalarOps<S>::is_zero(m(i, j)))
          out.e[i][j].at(0, 0).add_term(0, R(m(i, j)));
    return out;
  }

  // gamma = gamma^a (x) v_a as a (0,1)-valued matrix of endomorphisms
  static MatForm gamma_vector(int d, const GammaRep<S>& rep) {
    MatForm out(Shape{d, rep.N, 0, 1});
    const auto& b1 = Comb::basis(rep.N, 1);
    for (int a = 0; a < rep.N; ++a) {
      Mat<S> ga = rep.raised(a);
      for (int i = 0; i < 4; ++i)
        for (int j = 0; j < 4; ++j)
          if (!ScalarOps<S>::is_zero(ga(i, j)))
            out.e[i][j].at(0, b1.rank(1u << a)).add_term(0, R(ga(i, j)));
    }
    return out;
  }

  friend MatForm operator+(const MatForm& a, const MatForm& b) {
    MatForm out = a;
    for (int i = 0; i < 4; ++i)
      for (int j = 0; j < 4; ++j) out.e[i][j] += b.e[i][j];
    return out;
  }
  friend MatForm operator-(const MatForm& a, const MatForm& b) {
    MatForm out = a;
    for (int i = 0; i < 4; ++i)
      for (int j = 0; j < 4; ++j) out.e[i][j] -= b.e[i][j];
    return out;
  }
  friend MatForm operator-(const MatForm& a) {
    MatForm out = a;
    for (int i = 0; i < 4; ++i)
      for (int j = 0; j < 4; ++j) out.e[i][j] = -out.e[i][j];
    return out;
  }
  friend MatForm operator*(const R& s, const MatForm& a) {
    MatForm out = a;
    for (int i = 0; i < 4; ++i)
      for (int j = 0; j < 4; ++j) out.e[i][j] = s * out.e[i][j];
    return out;
  }

  double mag() const {
    double m = 0;
    for (auto& row : e)
      for (auto& f : row) m = std::max(m, f.mag());
    return m;
  }
};

// matrix product with entrywise wedge (word order preserved)
template <class R, class S>
MatForm<R, S> wedge(const MatForm<R, S>& a, const MatForm<R, S>& b) {
  MatForm<R, S> out(Shape{a.sh.d, a.sh.N, a.sh.p + b.sh.p, a.sh.q + b.sh.q});
  for (int i = 0; i < 4; ++i)
    for (int j = 0; j < 4; ++j)
      for (int k = 0; k < 4; ++k) out.e[i][j] += wedge(a.e[i][k], b.e[k][j]);
  return out;
}

template <class R, class S>
MatForm<R, S> wedge(const Form<R>& a, const MatForm<R, S>& b) {
  MatForm<R, S> out(Shape{a.shape().d, a.shape().N, a.shape().p + b.sh.p, a.shape().q + b.sh.q});
  for (int i = 0; i < 4; ++i)
    for (int j = 0; j < 4; ++j) out.e[i][j] = wedge(a, b.e[i][j]);
  return out;
}

template <class R, class S>
MatForm<R, S> wedge(const MatForm<R, S>& a, const Form<R>& b) {
  MatForm<R, S> out(Shape{a.sh.d, a.sh.N, a.sh.p + b.shape().p, a.sh.q + b.shape().q});
  for (int i = 0; i < 4; ++i)
    for (int j = 0; j < 4; ++j) out.e[i][j] = wedge(a.e[i][j], b);
  return out;
}

// j_gamma: internal contraction against gamma = gamma^a v_a; the slot-a
// contraction multiplies by the lowered matrix gamma_a from the left.
template <class R, class S>
MatForm<R, S> jgamma(const Form<R>& a, const GammaRep<S>& rep) {
  MatForm<R, S> out(Shape{a.shape().d, a.shape().N, a.shape().p, a.shape().q - 1});
  if (a.shape().q == 0) return MatForm<R, S>(Shape{a.shape().d, a.shape().N, a.shape().p, 0});
  detail::for_terms(a, [&](uint32_t Ia, uint32_t Ja, uint32_t ta, const R& ra) {
    int pre = popcount32(ta) + popcount32(Ia);
    int pos = 0;
    for (int v = 0; v < a.shape().N; ++v) {
      if (!(Ja & (1u << v))) continue;
      int s = ((pos ^ pre) & 1) ? -1 : 1;
      const Mat<S>& gv = rep.lowered(v);
      for (int i = 0; i < 4; ++i)
        for (int j = 0; j < 4; ++j) {
          if (ScalarOps<S>::is_zero(gv(i, j))) continue;
          R c = R(gv(i, j)) * ra;
          if (s < 0) c = -c;
          out.e[i][j].at_mask(Ia, Ja & ~(1u << v)).add_term(ta, std::move(c));
        }
      ++pos;
    }
  });
  return out;
}

template <class R, class S>
MatForm<R, S> jgamma2(const Form<R>& a, const GammaRep<S>& rep) {
  // j_gamma j_gamma a, contracting twice
  MatForm<R, S> first = jgamma(a, rep);
  MatForm<R, S> out(Shape{first.sh.d, first.sh.N, first.sh.p, first.sh.q - 1});
  MatForm<R, S> gam = MatForm<R, S>::gamma_vector(a.shape().d, rep);
  // j_gamma of a matrix form: contract each entry, multiplying gamma_v from the left
  for (int i = 0; i < 4; ++i)
    for (int j = 0; j < 4; ++j) out.e[i][j] = Form<R>(out.sh);
  detailed_contract(first, rep, out);
  return out;
}

template <class R, class S>
void detailed_contract(const MatForm<R, S>& mf, const GammaRep<S>& rep, MatForm<R, S>& out) {
  for (int r = 0; r < 4; ++r)
    for (int c = 0; c < 4; ++c) {
      const Form<R>& f = mf.e[r][c];
      detail::for_terms(f, [&](uint32_t Ia, uint32_t Ja, uint32_t ta, const R& ra) {
        int pre = popcount32(ta) + popcount32(Ia);
        int pos = 0;
        for (int v = 0; v < f.shape().N; ++v) {
          if (!(Ja & (1u << v))) continue;
          int s = ((pos ^ pre) & 1) ? -1 : 1;
          const Mat<S>& gv = rep.lowered(v);
          for (int i = 0; i < 4; ++i) {
            if (ScalarOps<S>::is_zero(gv(i, r))) continue;
            R cc = R(gv(i, r)) * ra;
            if (s < 0) cc = -cc;
            out.e[i][c].at_mask(Ia, Ja & ~(1u << v)).add_term(ta, std::move(cc));
          }
          ++pos;
        }
      });
    }
}

// Spin representation of a Lambda^2-valued form: contract the internal slot of
// c against 1/4 [gamma_a, gamma_b] per basis bivector (a < b).
template <class R, class S>
MatForm<R, S> spin_action_mat(const Form<R>& c, const GammaRep<S>& rep) {
  MatForm<R, S> out(Shape{c.shape().d, c.shape().N, c.shape().p, 0});
  const auto& b2 = Comb::basis(c.shape().N, 2);
  const auto& bI = Comb::basis(c.shape().d, c.shape().p);
  for (int r = 0; r < b2.size(); ++r) {
    uint32_t m = b2.mask(r);
    int a = __builtin_ctz(m);
    int b = __builtin_ctz(m & (m - 1));
    if (a > b) std::swap(a, b);
    Mat<S> sm = rep.spin_basis(a, b);
    for (int fi = 0; fi < bI.size(); ++fi) {
      const Gr<R>& coef = c.at(fi, r);
      if (coef.empty()) continue;
      for (int i = 0; i < 4; ++i)
        for (int j = 0; j < 4; ++j) {
          if (ScalarOps<S>::is_zero(sm(i, j))) continue;
          for (auto& tm : coef.terms()) {
            R v = R(sm(i, j)) * tm.second;
            out.e[i][j].at(fi, 0).add_term(tm.first, std::move(v));
          }
        }
    }
  }
  return out;
}

// Column spinor: 4 component forms (odd Grassmann coefficients).
template <class R>
using SpinorF = std::array<Form<R>, 4>;

template <class R, class S>
SpinorF<R> mat_apply(const MatForm<R, S>& m, const SpinorF<R>& psi) {
  SpinorF<R> out;
  for (int i = 0; i < 4; ++i) {
    out[i] = Form<R>(Shape{m.sh.d, m.sh.N, m.sh.p + psi[0].shape().p, m.sh.q + psi[0].shape().q});
    for (int j = 0; j < 4; ++j) out[i] += wedge(m.e[i][j], psi[j]);
  }
  return out;
}

template <class R, class S>
SpinorF<R> bar_apply(const SpinorF<R>& psibar, const MatForm<R, S>& m) {
  SpinorF<R> out;
  for (int j = 0; j < 4; ++j) {
    out[j] = Form<R>(
        Shape{m.sh.d, m.sh.N, m.sh.p + psibar[0].shape().p, m.sh.q + psibar[0].shape().q});
    for (int i = 0; i < 4; ++i) out[j] += wedge(psibar[i], m.e[i][j]);
  }
  return out;
}

template <class R>
Form<R> pair_spinor(const SpinorF<R>& bar, const SpinorF<R>& psi) {
  Form<R> out(Shape{bar[0].shape().d, bar[0].shape().N, bar[0].shape().p + psi[0].shape().p,
                    bar[0].shape().q + psi[0].shape().q});
  for (int i = 0; i < 4; ++i) out += wedge(bar[i], psi[i]);
  return out;
}

}  // namespace pcv
