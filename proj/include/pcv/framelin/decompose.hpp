#pragma once

#include <Eigen/Dense>

#include "pcv/framelin/wmaps.hpp"

namespace pcv {

template <class R>
std::vector<Gr<R>> flatten(const Form<R>& f) {
  std::vector<Gr<R>> out;
  out.reserve(size_t(f.dimI()) * f.dimJ());
  for (int i = 0; i < f.dimI(); ++i)
    for (int j = 0; j < f.dimJ(); ++j) out.push_back(f.at(i, j));
  return out;
}

template <class R>
Form<R> unflatten(Shape sh, const std::vector<Gr<R>>& v) {
  Form<R> f(sh);
  int dj = f.dimJ();
  for (int i = 0; i < f.dimI(); ++i)
    for (int j = 0; j < dj; ++j) f.at(i, j) = v[size_t(i) * dj + j];
  return f;
}

// Apply a precomputed real solver to Grassmann-valued channels: the linear
// system is real, so each (theta-mask, re/im) channel solves independently.
template <class R, class Solver>
std::vector<Gr<R>> solve_channels(const Solver& lu, const std::vector<Gr<R>>& rhs, int ncols) {
  std::vector<uint32_t> masks;
  for (auto& g : rhs)
    for (auto& tm : g.terms())
      if (std::find(masks.begin(), masks.end(), tm.first) == masks.end())
        masks.push_back(tm.first);
  std::sort(masks.begin(), masks.end());
  std::vector<Gr<R>> out(ncols);
  int n = int(rhs.size());
  for (uint32_t mask : masks) {
    if constexpr (std::is_same_v<R, double>) {
      VecX b(n);
      for (int i = 0; i < n; ++i) b(i) = rhs[i].coef(mask);
      VecX x = lu.solve(b);
      for (int c = 0; c < ncols; ++c)
        if (x(c) != 0.0) out[c].add_term(mask, x(c));
    } else {
      VecX br(n), bi(n);
      for (int i = 0; i < n; ++i) {
        Cplx v = rhs[i].coef(mask);
        br(i) = v.real();
        bi(i) = v.imag();
      }
      VecX xr = lu.solve(br), xi = lu.solve(bi);
      for (int c = 0; c < ncols; ++c) {
        Cplx v(xr(c), xi(c));
        if (v != Cplx(0.0, 0.0)) out[c].add_term(mask, v);
      }
    }
  }
  return out;
}

// Per-frame linear solvers: A_e, phi_e, and the (sigma, v) decomposition of
// Omega^{(2,2)} sources. All built once per point.
class FrameSolvers {
 public:
  explicit FrameSolvers(const Coframe& fr) : frame_(fr), e_(fr.coframe_form()), en_(fr.en_form()) {
    if (std::abs(fr.metric_det()) < 1e-10)
      throw DegenerateFrameError("induced boundary metric is degenerate");

    // kernel bases
    kerW3_01_ = numeric_rank(assemble_W(3, 0, 1, e_)).kernel;  // 4 x 3
    kerW2_02_ = numeric_rank(assemble_W(2, 0, 2, e_)).kernel;  // 6 x 3
    kerW1_12_ = numeric_rank(assemble_W(1, 1, 2, e_)).kernel;  // 18 x 6
    if (kerW3_01_.cols() != 3 || kerW2_02_.cols() != 3 || kerW1_12_.cols() != 6)
      throw DegenerateFrameError("unexpected kernel dimensions");

    // A_e = (e, .) restricted to Ker W3^{(0,1)}
    MatX pe = to_eigen(pair_matrix_exact(e_, Shape{3, 4, 0, 1}));  // 3 x 4
    Ae_ = pe * kerW3_01_;
    Aelu_.compute(Ae_);
    if (std::abs(Aelu_.determinant()) < 1e-12) throw DegenerateFrameError("A_e singular");

    // phi_e = 1/2 (e^2, .) restricted to Ker W2^{(0,2)}
    Form<double> e2 = wedge(e_, e_);
    MatX pe2 = 0.5 * to_eigen(pair_matrix_exact(e2, Shape{3, 4, 0, 2}));  // 3 x 6
    Phie_ = pe2 * kerW2_02_;
    Phielu_.compute(Phie_);
    if (std::abs(Phielu_.determinant()) < 1e-12) throw DegenerateFrameError("phi_e singular");

    // omega decomposition matrix: T = e ^ sigma + e_n ^ [v, e]
    MatX We = wedge_matrix(e_, Shape{3, 4, 1, 1});  // 18 x 12
    MatX D(18, 18);
    D.leftCols(12) = We;
    for (int k = 0; k < 6; ++k) {
      Form<double> vk = kernel_form(kerW1_12_, k, Shape{3, 4, 1, 2});
      Form<double> img = wedge(en_, lie_bracket(vk, e_));
      auto cvec = flatten(img);
      for (int i = 0; i < 18; ++i) D(i, 12 + k) = cvec[i].body();
    }
    Dlu_.compute(D);
    if (std::abs(Dlu_.determinant()) < 1e-10) {
      // report a kernel witness with the error
      RankInfo info = numeric_rank(D);
      throw DegenerateFrameError("omega decomposition not unique, kernel dim " +
                                 std::to_string(info.kernel_dim));
    }
    Dmat_ = D;

    // min-norm lift of e ^ . on Omega^{(1,2)}: completes HVF omega components
    MatX Wom = wedge_matrix(e_, Shape{3, 4, 1, 2});                  // 12 x 18
    lift12_ = Wom.completeOrthogonalDecomposition().pseudoInverse();  // 18 x 12

    // frame component solve (e_a, e_n) basis
    basis_lu_.compute(frame_.basis_matrix());
  }

  static Form<double> kernel_form(const MatX& kernel, int col, Shape sh) {
    std::vector<Gr<double>> v(kernel.rows());
    for (int i = 0; i < kernel.rows(); ++i)
      if (kernel(i, col) != 0.0) v[i] = Gr<double>(kernel(i, col));
    return unflatten(sh, v);
  }

  const Coframe& frame() const { return frame_; }
  const Form<double>& e() const { return e_; }
  const Form<double>& en() const { return en_; }
  const MatX& ker_W3_01() const { return kerW3_01_; }
  const MatX& ker_W2_02() const { return kerW2_02_; }
  const MatX& ker_W1_12() const { return kerW1_12_; }
  const MatX& Ae() const { return Ae_; }
  const MatX& Phie() const { return Phie_; }
  const MatX& omega_matrix() const { return Dmat_; }

  // A_e(p) = (e,p) on Ker W3^{(0,1)}; returns p from a (1,0) target
  template <class R>
  Form<R> solve_Ae(const Form<R>& target) const {
    auto rhs = flatten(target);
    auto coords = solve_channels(Aelu_, rhs, 3);
    return expand_kernel(coords, kerW3_01_, Shape{3, 4, 0, 1});
  }

  // phi_e(b) = 1/2 (e^2, b) on Ker W2^{(0,2)}; returns b from a (2,0) target
  template <class R>
  Form<R> solve_phie(const Form<R>& target) const {
    auto rhs = flatten(target);
    auto coords = solve_channels(Phielu_, rhs, 3);
    return expand_kernel(coords, kerW2_02_, Shape{3, 4, 0, 2});
  }

  // unique (sigma, v) with T = e ^ sigma + e_n ^ [v, e]
  template <class R>
  std::pair<Form<R>, Form<R>> decompose_omega_source(const Form<R>& T) const {
    auto rhs = flatten(T);
    auto coords = solve_channels(Dlu_, rhs, 18);
    std::vector<Gr<R>> sc(coords.begin(), coords.begin() + 12);
    std::vector<Gr<R>> vc(coords.begin() + 12, coords.end());
    Form<R> sigma = unflatten(Shape{3, 4, 1, 1}, sc);
    Form<R> v = expand_kernel(vc, kerW1_12_, Shape{3, 4, 1, 2});
    return {sigma, v};
  }

  // min-norm X with e ^ X = rhs, rhs in Omega^{(2,3)}; kernel part set to zero
  template <class R>
  Form<R> lift_omega(const Form<R>& rhs) const {
    auto v = flatten(rhs);  // 12 channels
    std::vector<Gr<R>> out(18);
    std::vector<uint32_t> masks;
    for (auto& g : v)
      for (auto& tm : g.terms())
        if (std::find(masks.begin(), masks.end(), tm.first) == masks.end())
          masks.push_back(tm.first);
    for (uint32_t mask : masks) {
      if constexpr (std::is_same_v<R, double>) {
        VecX b(12);
        for (int i = 0; i < 12; ++i) b(i) = v[i].coef(mask);
        VecX x = lift12_ * b;
        for (int c = 0; c < 18; ++c)
          if (x(c) != 0.0) out[c].add_term(mask, x(c));
      } else {
        VecX br(12), bi(12);
        for (int i = 0; i < 12; ++i) {
          Cplx cv = v[i].coef(mask);
          br(i) = cv.real();
          bi(i) = cv.imag();
        }
        VecX xr = lift12_ * br, xi = lift12_ * bi;
        for (int c = 0; c < 18; ++c) {
          Cplx cv(xr(c), xi(c));
          if (cv != Cplx(0.0, 0.0)) out[c].add_term(mask, cv);
        }
      }
    }
    return unflatten(Shape{3, 4, 1, 2}, out);
  }

  // frame components: Z = Z^(a) e_a + Z^(n) e_n for a (0,1)-valued Z
  template <class R>
  std::array<Gr<R>, 4> frame_components(const Form<R>& Z) const {
    auto rhs = flatten(Z);  // 4 channels in the v-basis
    auto coords = solve_channels(basis_lu_, rhs, 4);
    return {coords[0], coords[1], coords[2], coords[3]};
  }

 private:
  template <class R>
  static Form<R> expand_kernel(const std::vector<Gr<R>>& coords, const MatX& kernel, Shape sh) {
    std::vector<Gr<R>> v(kernel.rows());
    for (int c = 0; c < int(coords.size()); ++c)
      for (int i = 0; i < kernel.rows(); ++i) {
        double w = kernel(i, c);
        if (w == 0.0) continue;
        for (auto& tm : coords[c].terms()) v[i].add_term(tm.first, R(w) * tm.second);
      }
    return unflatten(sh, v);
  }

  Coframe frame_;
  Form<double> e_, en_;
  MatX kerW3_01_, kerW2_02_, kerW1_12_;
  MatX Ae_, Phie_, Dmat_;
  Eigen::PartialPivLU<MatX> Aelu_, Phielu_, Dlu_;
  Eigen::PartialPivLU<Eigen::Matrix4d> basis_lu_;
  MatX lift12_;
};

// Pi~ = Pi + p with p in Ker W3^{(0,1)} and (e, Pi) = sign * dphi.
template <class R>
std::pair<Form<R>, Form<R>> decompose_Pi(const FrameSolvers& fs, const Form<R>& Pi_tilde,
                                         const Form<R>& dphi, int sign = -1) {
  Form<double> e = fs.e();
  Form<R> ef = e.map([](double v) { return R(v); });
  Form<R> K = eta_pair(ef, Pi_tilde) - R(double(sign)) * dphi;
  Form<R> p = fs.solve_Ae(K);
  return {Pi_tilde - p, p};
}

// B~ = B + b with b in Ker W2^{(0,2)} and F_A + 1/2 (e^2, B) = 0 (one Lie component).
template <class R>
std::pair<Form<R>, Form<R>> decompose_B(const FrameSolvers& fs, const Form<R>& B_tilde,
                                        const Form<R>& F_A) {
  Form<double> e2d = wedge(fs.e(), fs.e());
  Form<R> e2 = e2d.map([](double v) { return R(v); });
  Form<R> K = F_A + R(0.5) * eta_pair(e2, B_tilde);
  Form<R> b = fs.solve_phie(K);
  return {B_tilde - b, b};
}

}  // namespace pcv
