#pragma once

#include <map>
#include <stdexcept>

#include <Eigen/Dense>

#include "pcv/fields/trig.hpp"
#include "pcv/galg/mixed_form.hpp"

namespace pcv {

using TPoly = TrigPoly<Cplx>;
using TField = Form<TPoly>;
using GrPoly = Gr<TPoly>;
using GrC = Gr<Cplx>;
using FormC = Form<Cplx>;

struct AliasingError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

inline int field_bandwidth(const TField& f) {
  int b = 0;
  for (int i = 0; i < f.dimI(); ++i)
    for (int j = 0; j < f.dimJ(); ++j)
      for (auto& tm : f.at(i, j).terms()) b = std::max(b, tm.second.bandwidth());
  return b;
}

// Exterior derivative; exact on the modal representation, d.d = 0 identically.
template <class S>
Form<TrigPoly<S>> field_d(const Form<TrigPoly<S>>& a) {
  Shape os{a.shape().d, a.shape().N, a.shape().p + 1, a.shape().q};
  Form<TrigPoly<S>> out(os);
  if (out.zero_shape()) return out;
  detail::for_terms(a, [&](uint32_t Ia, uint32_t Ja, uint32_t ta, const TrigPoly<S>& ra) {
    int tsign = (popcount32(ta) & 1) ? -1 : 1;  // d passes the theta block
    for (int mu = 0; mu < a.shape().d; ++mu) {
      if (Ia & (1u << mu)) continue;
      TrigPoly<S> dv = ra.deriv(mu);
      if (dv.is_zero()) continue;
      int s = tsign * merge_sign(1u << mu, Ia);
      if (s < 0) dv = -dv;
      out.at_mask(Ia | (1u << mu), Ja).add_term(ta, std::move(dv));
    }
  });
  return out;
}

// integral over T^3 of a top form (3,4) or (3,0): (2pi)^3 times the zero mode.
// The exact backend returns the raw zero-mode (units of (2pi)^3).
template <class S>
Gr<S> integrate_zero_mode(const Form<TrigPoly<S>>& density) {
  if (density.shape().p != 3 || (density.shape().q != 0 && density.shape().q != 4))
    throw std::invalid_argument("integrate: density must be a (3,0) or (3,4) form");
  Gr<S> out;
  if (density.dimI() == 0 || density.dimJ() == 0) return out;
  const Gr<TrigPoly<S>>& g = density.at(0, density.dimJ() - 1);
  for (auto& tm : g.terms()) out.add_term(tm.first, tm.second.zero_mode());
  return out;
}

inline GrC integrate_exact(const TField& density) {
  GrC zm = integrate_zero_mode(density);
  const double vol = 8.0 * M_PI * M_PI * M_PI;
  GrC out;
  for (auto& tm : zm.terms()) out.add_term(tm.first, vol * tm.second);
  return out;
}

// Nodal values of one Grassmann channel on the M^3 grid.
struct NodalChan {
  int slot = 0;
  uint32_t mask = 0;
  std::vector<Cplx> cube;
};

struct NodalForm {
  Shape sh;
  int M = 0;
  std::vector<NodalChan> chans;

  FormC at(size_t node) const {
    FormC f(sh);
    int dj = f.dimJ();
    for (auto& c : chans) {
      const Cplx& v = c.cube[node];
      if (v != Cplx(0, 0)) f.at(c.slot / dj, c.slot % dj).add_term(c.mask, v);
    }
    return f;
  }
};

namespace dft {

// evaluation of one trig polynomial on the M^3 grid by separable contraction
inline std::vector<Cplx> eval_poly(const TPoly& p, int M) {
  int B = p.bandwidth();
  int C = 2 * B + 1;
  std::vector<Cplx> dense(size_t(C) * C * C, Cplx(0, 0));
  for (auto& tm : p.terms()) {
    int k[3];
    TPoly::unkey(tm.first, k);
    dense[size_t(k[0] + B) * C * C + size_t(k[1] + B) * C + size_t(k[2] + B)] += tm.second;
  }
  // E[x][c] = exp(i (c-B) 2pi x / M)
  std::vector<Cplx> E(size_t(M) * C);
  for (int x = 0; x < M; ++x)
    for (int c = 0; c < C; ++c) {
      double ph = 2.0 * M_PI * double(x) * double(c - B) / double(M);
      E[size_t(x) * C + c] = Cplx(std::cos(ph), std::sin(ph));
    }
  // contract axis 0: t1[x0][c1][c2]
  std::vector<Cplx> t1(size_t(M) * C * C, Cplx(0, 0));
  for (int x0 = 0; x0 < M; ++x0)
    for (int c0 = 0; c0 < C; ++c0) {
      Cplx w = E[size_t(x0) * C + c0];
      if (w == Cplx(0, 0)) continue;
      const Cplx* src = &dense[size_t(c0) * C * C];
      Cplx* dst = &t1[size_t(x0) * C * C];
      for (int r = 0; r < C * C; ++r) dst[r] += w * src[r];
    }
  // contract axis 1: t2[x0][x1][c2]
  std::vector<Cplx> t2(size_t(M) * M * C, Cplx(0, 0));
  for (int x0 = 0; x0 < M; ++x0)
    for (int x1 = 0; x1 < M; ++x1) {
      Cplx* dst = &t2[(size_t(x0) * M + x1) * C];
      const Cplx* base = &t1[size_t(x0) * C * C];
      for (int c1 = 0; c1 < C; ++c1) {
        Cplx w = E[size_t(x1) * C + c1];
        const Cplx* src = base + size_t(c1) * C;
        for (int c2 = 0; c2 < C; ++c2) dst[c2] += w * src[c2];
      }
    }
  // contract axis 2
  std::vector<Cplx> out(size_t(M) * M * M, Cplx(0, 0));
  for (int x0 = 0; x0 < M; ++x0)
    for (int x1 = 0; x1 < M; ++x1) {
      const Cplx* src = &t2[(size_t(x0) * M + x1) * C];
      Cplx* dst = &out[(size_t(x0) * M + x1) * M];
      for (int x2 = 0; x2 < M; ++x2) {
        Cplx acc(0, 0);
        for (int c2 = 0; c2 < C; ++c2) acc += E[size_t(x2) * C + c2] * src[c2];
        dst[x2] = acc;
      }
    }
  return out;
}

// inverse transform of a cube of samples to modes in [-M/2, M/2] with the
// Nyquist bin split symmetrically (real-preserving, interpolates the grid)
inline TPoly to_poly(const std::vector<Cplx>& cube, int M, double prune = 0.0) {
  std::vector<Cplx> km(size_t(M) * M * M);
  // adjoint contractions with conj(E)/M over full DFT bins c in [0, M)
  std::vector<Cplx> E(size_t(M) * M);
  for (int c = 0; c < M; ++c)
    for (int x = 0; x < M; ++x) {
      double ph = -2.0 * M_PI * double(x) * double(c) / double(M);
      E[size_t(c) * M + x] = Cplx(std::cos(ph), std::sin(ph)) / double(M);
    }
  std::vector<Cplx> t1(size_t(M) * M * M, Cplx(0, 0));
  for (int c0 = 0; c0 < M; ++c0)
    for (int x0 = 0; x0 < M; ++x0) {
      Cplx w = E[size_t(c0) * M + x0];
      const Cplx* src = &cube[size_t(x0) * M * M];
      Cplx* dst = &t1[size_t(c0) * M * M];
      for (int r = 0; r < M * M; ++r) dst[r] += w * src[r];
    }
  std::vector<Cplx> t2(size_t(M) * M * M, Cplx(0, 0));
  for (int c0 = 0; c0 < M; ++c0)
    for (int c1 = 0; c1 < M; ++c1) {
      Cplx* dst = &t2[(size_t(c0) * M + c1) * M];
      const Cplx* base = &t1[size_t(c0) * M * M];
      for (int x1 = 0; x1 < M; ++x1) {
        Cplx w = E[size_t(c1) * M + x1];
        const Cplx* src = base + size_t(x1) * M;
        for (int x2 = 0; x2 < M; ++x2) dst[x2] += w * src[x2];
      }
    }
  for (int c0 = 0; c0 < M; ++c0)
    for (int c1 = 0; c1 < M; ++c1) {
      const Cplx* src = &t2[(size_t(c0) * M + c1) * M];
      Cplx* dst = &km[(size_t(c0) * M + c1) * M];
      for (int c2 = 0; c2 < M; ++c2) {
        Cplx acc(0, 0);
        for (int x2 = 0; x2 < M; ++x2) acc += E[size_t(c2) * M + x2] * src[x2];
        dst[c2] = acc;
      }
    }
  // bin c -> mode k; the +-M/2 bin of an even grid is split in half
  TPoly out;
  int half = M / 2;
  auto modes_of = [&](int c) {
    std::vector<std::pair<int, double>> m;
    if (2 * c == M) {
      m.push_back({half, 0.5});
      m.push_back({-half, 0.5});
    } else {
      m.push_back({c <= M / 2 ? c : c - M, 1.0});
    }
    return m;
  };
  for (int c0 = 0; c0 < M; ++c0) {
    auto m0 = modes_of(c0);
    for (int c1 = 0; c1 < M; ++c1) {
      auto m1 = modes_of(c1);
      for (int c2 = 0; c2 < M; ++c2) {
        Cplx v = km[(size_t(c0) * M + c1) * M + c2];
        if (std::abs(v) <= prune) continue;
        for (auto& [k0, w0] : modes_of(c0))
          for (auto& [k1, w1] : m1)
            for (auto& [k2, w2] : modes_of(c2))
              out.add(TPoly::key(k0, k1, k2), v * (w0 * w1 * w2));
        (void)m0;
      }
    }
  }
  return out;
}

// spectral derivative along one axis (Nyquist bin derivative is zero)
inline std::vector<Cplx> axis_derivative(const std::vector<Cplx>& cube, int M, int axis) {
  std::vector<Cplx> F(size_t(M) * M), B(size_t(M) * M);
  for (int c = 0; c < M; ++c)
    for (int x = 0; x < M; ++x) {
      double ph = 2.0 * M_PI * double(x) * double(c) / double(M);
      B[size_t(x) * M + c] = Cplx(std::cos(ph), std::sin(ph));
      F[size_t(c) * M + x] = Cplx(std::cos(ph), -std::sin(ph)) / double(M);
    }
  // combined operator D = B * diag(i k(c)) * F along the chosen axis
  std::vector<Cplx> D(size_t(M) * M, Cplx(0, 0));
  for (int x = 0; x < M; ++x)
    for (int y = 0; y < M; ++y) {
      Cplx acc(0, 0);
      for (int c = 0; c < M; ++c) {
        int k = (2 * c == M) ? 0 : (c <= M / 2 ? c : c - M);
        acc += B[size_t(x) * M + c] * Cplx(0, double(k)) * F[size_t(c) * M + y];
      }
      D[size_t(x) * M + y] = acc;
    }
  std::vector<Cplx> out(cube.size(), Cplx(0, 0));
  auto idx = [&](int a, int b, int c) { return (size_t(a) * M + b) * M + c; };
  for (int a = 0; a < M; ++a)
    for (int b = 0; b < M; ++b)
      for (int x = 0; x < M; ++x) {
        Cplx acc(0, 0);
        for (int y = 0; y < M; ++y)
          acc += D[size_t(x) * M + y] *
                 cube[axis == 0 ? idx(y, a, b) : (axis == 1 ? idx(a, y, b) : idx(a, b, y))];
        out[axis == 0 ? idx(x, a, b) : (axis == 1 ? idx(a, x, b) : idx(a, b, x))] = acc;
      }
  return out;
}

}  // namespace dft

// exterior derivative of nodal data: spectral along each axis on its own grid
inline NodalForm nodal_d(const NodalForm& f) {
  NodalForm out;
  out.sh = Shape{f.sh.d, f.sh.N, f.sh.p + 1, f.sh.q};
  out.M = f.M;
  if (out.sh.p > out.sh.d) return out;
  int dj_in = Comb::dim(f.sh.N, f.sh.q);
  int dj_out = dj_in;
  const auto& bI_in = Comb::basis(f.sh.d, f.sh.p);
  const auto& bI_out = Comb::basis(f.sh.d, f.sh.p + 1);
  std::map<std::pair<int, uint32_t>, std::vector<Cplx>> acc;
  for (auto& ch : f.chans) {
    uint32_t Ia = bI_in.mask(ch.slot / dj_in);
    int j = ch.slot % dj_in;
    int tsign = (popcount32(ch.mask) & 1) ? -1 : 1;
    for (int mu = 0; mu < 3; ++mu) {
      if (Ia & (1u << mu)) continue;
      int s = tsign * merge_sign(1u << mu, Ia);
      auto dcube = dft::axis_derivative(ch.cube, f.M, mu);
      int oslot = bI_out.rank(Ia | (1u << mu)) * dj_out + j;
      auto& dst = acc[{oslot, ch.mask}];
      if (dst.empty()) dst.assign(dcube.size(), Cplx(0, 0));
      for (size_t i = 0; i < dcube.size(); ++i) dst[i] += (s < 0 ? -dcube[i] : dcube[i]);
    }
  }
  for (auto& [k, cube] : acc) out.chans.push_back({k.first, k.second, std::move(cube)});
  return out;
}

inline NodalForm nodal(const TField& f, int M) {
  NodalForm nf;
  nf.sh = f.shape();
  nf.M = M;
  int dj = f.dimJ();
  for (int i = 0; i < f.dimI(); ++i)
    for (int j = 0; j < dj; ++j)
      for (auto& tm : f.at(i, j).terms()) {
        NodalChan c;
        c.slot = i * dj + j;
        c.mask = tm.first;
        c.cube = dft::eval_poly(tm.second, M);
        nf.chans.push_back(std::move(c));
      }
  return nf;
}

inline TField to_modal(const NodalForm& nf, double prune = 0.0) {
  TField f(nf.sh);
  int dj = f.dimJ();
  for (auto& c : nf.chans)
    f.at(c.slot / dj, c.slot % dj).add_term(c.mask, dft::to_poly(c.cube, nf.M, prune));
  return f;
}

// Grassmann-valued small linear solve: body LU plus Neumann sweep on the
// nilpotent part. A is n x n row-major.
inline std::vector<GrC> gr_solve(int n, const std::vector<GrC>& A, const std::vector<GrC>& b) {
  Eigen::MatrixXcd A0(n, n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) A0(i, j) = A[size_t(i) * n + j].body();
  Eigen::PartialPivLU<Eigen::MatrixXcd> lu(A0);

  auto solve_body = [&](const std::vector<GrC>& rhs) {
    std::vector<GrC> x(n);
    std::vector<uint32_t> masks;
    for (auto& g : rhs)
      for (auto& tm : g.terms())
        if (std::find(masks.begin(), masks.end(), tm.first) == masks.end())
          masks.push_back(tm.first);
    for (uint32_t mask : masks) {
      Eigen::VectorXcd v(n);
      for (int i = 0; i < n; ++i) v(i) = rhs[i].coef(mask);
      Eigen::VectorXcd s = lu.solve(v);
      for (int i = 0; i < n; ++i)
        if (s(i) != Cplx(0, 0)) x[i].add_term(mask, s(i));
    }
    return x;
  };

  double scale = 1e-300;
  for (auto& g : A) scale = std::max(scale, gr_mag(g));
  for (auto& g : b) scale = std::max(scale, gr_mag(g));
  double thr = 1e-13 * scale;

  std::vector<GrC> x = solve_body(b);
  for (int sweep = 0; sweep < 20; ++sweep) {
    // residual r = b - A x; numerically-zero channels dropped for termination
    std::vector<GrC> r = b;
    bool nonzero = false;
    for (int i = 0; i < n; ++i) {
      for (int j = 0; j < n; ++j) r[i] -= A[size_t(i) * n + j] * x[j];
      GrC cleaned;
      for (auto& tm : r[i].terms())
        if (std::abs(tm.second) > thr) cleaned.add_term(tm.first, tm.second);
      r[i] = cleaned;
      if (!r[i].empty()) nonzero = true;
    }
    if (!nonzero) break;
    auto dx = solve_body(r);
    for (int i = 0; i < n; ++i) x[i] += dx[i];
  }
  return x;
}

}  // namespace pcv
