#pragma once

#include <vector>

#include "pcv/core/linalg.hpp"
#include "pcv/core/rng.hpp"
#include "pcv/galg/mixed_form.hpp"

namespace pcv {

template <class S>
S draw_scalar(Rng& rng) {
  if constexpr (std::is_same_v<S, Rat>)
    return rng.rat();
  else if constexpr (std::is_same_v<S, CRat>)
    return rng.crat();
  else if constexpr (std::is_same_v<S, Cplx>)
    return rng.cplx();
  else
    return rng.sym();
}

// Random form; even when gens is empty, otherwise coefficients are linear
// combinations of the given Grassmann generators.
template <class S>
Form<S> random_form(Rng& rng, Shape sh, const std::vector<int>& gens = {}) {
  Form<S> f(sh);
  for (int i = 0; i < f.dimI(); ++i)
    for (int j = 0; j < f.dimJ(); ++j) {
      if (gens.empty()) {
        f.at(i, j).add_term(0, draw_scalar<S>(rng));
      } else {
        for (int g : gens) f.at(i, j).add_term(1u << g, draw_scalar<S>(rng));
      }
    }
  return f;
}

// Pointwise coframe data: columns e_mu in the V basis, plus completing e_n
// (boundary case). Bulk coframes are square (d = N = 4) with no e_n.
template <class S>
struct PointFrame {
  int d = 3;
  std::vector<std::vector<S>> e;  // d columns, each a 4-vector
  std::vector<S> en;              // boundary only

  Form<S> coframe_form() const {
    Form<S> f(Shape{d, 4, 1, 1});
    const auto& bI = Comb::basis(d, 1);
    const auto& bJ = Comb::basis(4, 1);
    for (int mu = 0; mu < d; ++mu)
      for (int a = 0; a < 4; ++a)
        f.at(bI.rank(1u << mu), bJ.rank(1u << a)).add_term(0, e[mu][a]);
    return f;
  }

  Form<S> en_form() const {
    Form<S> f(Shape{d, 4, 0, 1});
    const auto& bJ = Comb::basis(4, 1);
    for (int a = 0; a < 4; ++a) f.at(0, bJ.rank(1u << a)).add_term(0, en[a]);
    return f;
  }

  // induced boundary metric g_{mu nu} = eta(e_mu, e_nu)
  S metric(int mu, int nu) const {
    S g = ScalarOps<S>::zero();
    for (int a = 0; a < 4; ++a) {
      S t = e[mu][a] * e[nu][a];
      if (eta_diag(a) < 0) t = -t;
      g = g + t;
    }
    return g;
  }

  S metric_det() const {
    S m[3][3];
    for (int i = 0; i < 3; ++i)
      for (int j = 0; j < 3; ++j) m[i][j] = metric(i, j);
    return det3(m);
  }

  // 4x4 basis matrix with columns (e_1..e_d [, e_n])
  DenseMat<S> basis_matrix() const {
    DenseMat<S> m(4, 4);
    for (int mu = 0; mu < d; ++mu)
      for (int a = 0; a < 4; ++a) m(a, mu) = e[mu][a];
    if (d == 3)
      for (int a = 0; a < 4; ++a) m(a, 3) = en[a];
    return m;
  }
};

template <class S>
PointFrame<S> random_bulk_frame(Rng& rng) {
  for (;;) {
    PointFrame<S> f;
    f.d = 4;
    f.e.assign(4, std::vector<S>(4));
    for (auto& col : f.e)
      for (auto& v : col) v = draw_scalar<S>(rng);
    // invertibility via exact/float Gauss rank
    DenseMat<S> m(4, 4);
    for (int mu = 0; mu < 4; ++mu)
      for (int a = 0; a < 4; ++a) m(a, mu) = f.e[mu][a];
    if (gauss_rank(m) == 4) return f;
  }
}

// Boundary coframe with nondegenerate induced metric; e_n defaults to a random
// basis-completing vector (identities hold for any completion).
template <class S>
PointFrame<S> random_boundary_frame(Rng& rng, double min_gdet = 1e-2) {
  for (;;) {
    PointFrame<S> f;
    f.d = 3;
    f.e.assign(3, std::vector<S>(4));
    for (auto& col : f.e)
      for (auto& v : col) v = draw_scalar<S>(rng);
    f.en.resize(4);
    for (auto& v : f.en) v = draw_scalar<S>(rng);
    S gd = f.metric_det();
    if constexpr (ScalarOps<S>::exact) {
      if (ScalarOps<S>::is_zero(gd)) continue;
    } else {
      if (ScalarOps<S>::mag(gd) < min_gdet) continue;
    }
    if (gauss_rank(f.basis_matrix()) == 4) return f;
  }
}

}  // namespace pcv
