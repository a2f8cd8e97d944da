#pragma once

#include "pcv/fields/grid.hpp"
#include "pcv/framelin/kernels.hpp"

namespace pcv {

struct LieAlgebra {
  int dim = 0;
  std::vector<double> f;  // structure constants f^I_{JK}; invariant form = delta

  double fc(int I, int J, int K) const { return f[size_t(I) * dim * dim + size_t(J) * dim + K]; }

  static LieAlgebra su2() {
    LieAlgebra g;
    g.dim = 3;
    g.f.assign(27, 0.0);
    auto eps = [](int i, int j, int k) {
      return double((i - j) * (j - k) * (k - i)) / 2.0;
    };
    for (int i = 0; i < 3; ++i)
      for (int j = 0; j < 3; ++j)
        for (int k = 0; k < 3; ++k) g.f[size_t(i) * 9 + size_t(j) * 3 + k] = eps(i, j, k);
    return g;
  }
};

using GField = std::vector<TField>;  // Lie-algebra valued field, one form per basis index

// [X, Y]^I = f^I_{JK} X^J ^ Y^K
inline GField g_bracket(const LieAlgebra& g, const GField& X, const GField& Y) {
  GField out(g.dim);
  Shape sh{X[0].shape().d, X[0].shape().N, X[0].shape().p + Y[0].shape().p,
           X[0].shape().q + Y[0].shape().q};
  for (int I = 0; I < g.dim; ++I) {
    out[I] = TField(sh);
    for (int J = 0; J < g.dim; ++J)
      for (int K = 0; K < g.dim; ++K) {
        double c = g.fc(I, J, K);
        if (c != 0.0) out[I] += TPoly(c) * wedge(X[J], Y[K]);
      }
  }
  return out;
}

template <class R>
std::vector<Form<R>> g_bracket_vals(const LieAlgebra& g, const std::vector<Form<R>>& X,
                                    const std::vector<Form<R>>& Y) {
  std::vector<Form<R>> out(g.dim);
  Shape sh{X[0].shape().d, X[0].shape().N, X[0].shape().p + Y[0].shape().p,
           X[0].shape().q + Y[0].shape().q};
  for (int I = 0; I < g.dim; ++I) {
    out[I] = Form<R>(sh);
    for (int J = 0; J < g.dim; ++J)
      for (int K = 0; K < g.dim; ++K) {
        double c = g.fc(I, J, K);
        if (c != 0.0) out[I] += R(c) * wedge(X[J], Y[K]);
      }
  }
  return out;
}

// Grassmann generator layout: fixed windows per parameter slot plus a scratch
// region for bracket/probe shifts.
struct GenLayout {
  int budget = 2;        // generators per odd parameter slot
  int c0 = 0;            // c:      [c0, c0+budget)
  int xi0 = 2;           // xi
  int lam0 = 4;          // lambda
  int mu0 = 6;           // mu
  int psi0 = 8;          // psi
  int psibar0 = 10;      // psibar
  int scratch0 = 12;     // shifts, probes
  GenLayout(int b = 2) : budget(b) {
    c0 = 0;
    xi0 = b;
    lam0 = 2 * b;
    mu0 = 3 * b;
    psi0 = 4 * b;
    psibar0 = 5 * b;
    scratch0 = 6 * b;
  }
};

struct SampleOptions {
  int K = 1;
  int M = 16;
  double eps = 0.2;        // coframe perturbation amplitude
  double matter_amp = 0.5;
  int pi_sign = -1;        // structural (e,Pi) = pi_sign d(phi)
  bool en_const = false;   // fixed e_n = v_0 instead of Gram-Schmidt completion
  bool nonzero_refs = false;
  double Lambda = 0.35;
  int grassmann_budget = 2;
  double min_gdet = 0.05;
};

struct PhaseSpacePoint {
  Theory theory = Theory::PC;
  uint64_t seed = 0;
  SampleOptions opt;
  LieAlgebra lie;
  GenLayout gens;
  int next_scratch = 0;

  TField e, omega, omega0;
  TField phi, p;
  GField A, A0, rho;
  std::array<TField, 4> psi, psibar;

  int alloc_scratch() { return gens.scratch0 + next_scratch++; }

  bool has_scalar() const { return theory == Theory::Scalar; }
  bool has_ym() const { return theory == Theory::YM; }
  bool has_spinor() const { return theory == Theory::Spinor; }
};

// ---- random bandlimited real scalar trig polynomial ------------------------

inline TPoly random_real_poly(Rng& rng, int K, double amp) {
  TPoly p;
  if (K == 0) {
    p.add(TPoly::key(0, 0, 0), Cplx(amp * rng.sym(), 0));
    return p;
  }
  double scale = amp / std::pow(double(2 * K + 1), 1.5);
  for (int k0 = -K; k0 <= K; ++k0)
    for (int k1 = -K; k1 <= K; ++k1)
      for (int k2 = -K; k2 <= K; ++k2) {
        if (k0 < 0 || (k0 == 0 && (k1 < 0 || (k1 == 0 && k2 < 0)))) continue;
        if (k0 == 0 && k1 == 0 && k2 == 0) {
          p.add(TPoly::key(0, 0, 0), Cplx(scale * rng.sym(), 0));
          continue;
        }
        Cplx v(scale * rng.sym(), scale * rng.sym());
        p.add(TPoly::key(k0, k1, k2), v);
        p.add(TPoly::key(-k0, -k1, -k2), std::conj(v));
      }
  return p;
}

inline TField random_real_field(Rng& rng, Shape sh, int K, double amp) {
  TField f(sh);
  for (int i = 0; i < f.dimI(); ++i)
    for (int j = 0; j < f.dimJ(); ++j) f.at(i, j).add_term(0, random_real_poly(rng, K, amp));
  return f;
}

// odd field: sum over the generator window of random real fields
inline TField random_odd_field(Rng& rng, Shape sh, int K, double amp, int gen0, int count) {
  TField f(sh);
  for (int g = 0; g < count; ++g) {
    for (int i = 0; i < f.dimI(); ++i)
      for (int j = 0; j < f.dimJ(); ++j)
        f.at(i, j).add_term(1u << (gen0 + g), random_real_poly(rng, K, amp));
  }
  return f;
}

inline TField constant_field(Shape sh, int slot_i, int slot_j, double v) {
  TField f(sh);
  f.at(slot_i, slot_j).add_term(0, TPoly(v));
  return f;
}

// ---- pointwise frame utilities ---------------------------------------------

// eta cross product: u^a = eta^{aa'} eps_{a' b c d} e1^b e2^c e3^d, the
// eta-orthogonal complement of the three coframe columns (polynomial in e)
inline std::array<double, 4> eta_cross(const std::array<std::array<double, 4>, 3>& e) {
  static const int perms[24][4] = {
      {0, 1, 2, 3}, {0, 1, 3, 2}, {0, 2, 1, 3}, {0, 2, 3, 1}, {0, 3, 1, 2}, {0, 3, 2, 1},
      {1, 0, 2, 3}, {1, 0, 3, 2}, {1, 2, 0, 3}, {1, 2, 3, 0}, {1, 3, 0, 2}, {1, 3, 2, 0},
      {2, 0, 1, 3}, {2, 0, 3, 1}, {2, 1, 0, 3}, {2, 1, 3, 0}, {2, 3, 0, 1}, {2, 3, 1, 0},
      {3, 0, 1, 2}, {3, 0, 2, 1}, {3, 1, 0, 2}, {3, 1, 2, 0}, {3, 2, 0, 1}, {3, 2, 1, 0}};
  auto sign = [](const int* p) {
    int inv = 0;
    for (int i = 0; i < 4; ++i)
      for (int j = i + 1; j < 4; ++j)
        if (p[i] > p[j]) ++inv;
    return (inv & 1) ? -1.0 : 1.0;
  };
  std::array<double, 4> u{0, 0, 0, 0};
  for (auto& pm : perms) {
    double s = sign(pm);
    u[pm[0]] += s * eta_diag(pm[0]) * e[0][pm[1]] * e[1][pm[2]] * e[2][pm[3]];
  }
  return u;
}

// normalized eta-unit completion; continuous branch with positive v_0 part
inline std::array<double, 4> en_from_columns(const std::array<std::array<double, 4>, 3>& cols) {
  auto u = eta_cross(cols);
  double n = 0;
  for (int a = 0; a < 4; ++a) n += eta_diag(a) * u[a] * u[a];
  if (std::abs(n) < 1e-12) throw DegenerateFrameError("lightlike normal direction");
  double s = 1.0 / std::sqrt(std::abs(n));
  if (u[0] < 0) s = -s;
  for (auto& v : u) v *= s;
  return u;
}

// coframe columns from the body of a nodal e value
inline std::array<std::array<double, 4>, 3> columns_at(const FormC& e_val) {
  std::array<std::array<double, 4>, 3> cols{};
  const auto& bI = Comb::basis(3, 1);
  const auto& bJ = Comb::basis(4, 1);
  for (int mu = 0; mu < 3; ++mu)
    for (int a = 0; a < 4; ++a)
      cols[mu][a] = e_val.at(bI.rank(1u << mu), bJ.rank(1u << a)).body().real();
  return cols;
}

inline Coframe coframe_at(const FormC& e_val, bool en_const) {
  Coframe fr;
  fr.e = columns_at(e_val);
  if (en_const)
    fr.en = {1, 0, 0, 0};
  else
    fr.en = en_from_columns(fr.e);
  return fr;
}

}  // namespace pcv
