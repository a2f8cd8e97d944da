#pragma once

#include <Eigen/Dense>
#include <optional>
#include <stdexcept>

#include "pcv/galg/sampling.hpp"

namespace pcv {

using Mat3 = Eigen::Matrix3d;
using MatX = Eigen::MatrixXd;
using VecX = Eigen::VectorXd;

struct DegenerateFrameError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Boundary coframe at a point: e as a 3x4 array of columns e_mu in the V basis,
// plus a completing internal vector e_n. Carries the induced metric.
struct Coframe {
  std::array<std::array<double, 4>, 3> e;  // e[mu][a]
  std::array<double, 4> en;

  double metric(int mu, int nu) const {
    double g = 0;
    for (int a = 0; a < 4; ++a) g += eta_diag(a) * e[mu][a] * e[nu][a];
    return g;
  }
  double metric_det() const {
    Mat3 g;
    for (int i = 0; i < 3; ++i)
      for (int j = 0; j < 3; ++j) g(i, j) = metric(i, j);
    return g.determinant();
  }
  // 4x4 basis matrix (columns e_1 e_2 e_3 e_n)
  Eigen::Matrix4d basis_matrix() const {
    Eigen::Matrix4d m;
    for (int mu = 0; mu < 3; ++mu)
      for (int a = 0; a < 4; ++a) m(a, mu) = e[mu][a];
    for (int a = 0; a < 4; ++a) m(a, 3) = en[a];
    return m;
  }

  Form<double> coframe_form() const {
    Form<double> f(Shape{3, 4, 1, 1});
    const auto& bI = Comb::basis(3, 1);
    const auto& bJ = Comb::basis(4, 1);
    for (int mu = 0; mu < 3; ++mu)
      for (int a = 0; a < 4; ++a)
        if (e[mu][a] != 0.0) f.at(bI.rank(1u << mu), bJ.rank(1u << a)).add_term(0, e[mu][a]);
    return f;
  }
  Form<double> en_form() const {
    Form<double> f(Shape{3, 4, 0, 1});
    const auto& bJ = Comb::basis(4, 1);
    for (int a = 0; a < 4; ++a)
      if (en[a] != 0.0) f.at(0, bJ.rank(1u << a)).add_term(0, en[a]);
    return f;
  }
};

// eta-unit completion of span(e_1,e_2,e_3) by Gram-Schmidt against eta.
// Works on the nondegenerate stratum; the complement direction has
// eta-norm of sign opposite to det(g) sign bookkeeping, normalized to |.|=1.
inline std::array<double, 4> eta_complement(const std::array<std::array<double, 4>, 3>& e) {
  // solve eta(u, e_mu) = 0: u in the kernel of the 3x4 matrix (eta e_mu)^T
  Eigen::Matrix<double, 3, 4> m;
  for (int mu = 0; mu < 3; ++mu)
    for (int a = 0; a < 4; ++a) m(mu, a) = eta_diag(a) * e[mu][a];
  Eigen::JacobiSVD<Eigen::Matrix<double, 3, 4>> svd(m, Eigen::ComputeFullV);
  Eigen::Vector4d u = svd.matrixV().col(3);
  double n = 0;
  for (int a = 0; a < 4; ++a) n += eta_diag(a) * u(a) * u(a);
  if (std::abs(n) < 1e-12) throw DegenerateFrameError("lightlike complement direction");
  u /= std::sqrt(std::abs(n));
  if (u(0) < 0) u = -u;  // continuous branch
  std::array<double, 4> out;
  for (int a = 0; a < 4; ++a) out[a] = u(a);
  return out;
}

inline Coframe make_coframe(const std::array<std::array<double, 4>, 3>& e,
                            std::optional<std::array<double, 4>> en = std::nullopt) {
  Coframe f;
  f.e = e;
  f.en = en ? *en : eta_complement(e);
  return f;
}

inline Coframe random_coframe(Rng& rng, double min_gdet = 1e-2) {
  for (;;) {
    std::array<std::array<double, 4>, 3> e;
    for (auto& col : e)
      for (auto& v : col) v = rng.sym();
    Coframe f;
    f.e = e;
    if (std::abs(f.metric_det()) < min_gdet) continue;
    f.en = eta_complement(e);
    if (std::abs(f.basis_matrix().determinant()) < 1e-3) continue;
    return f;
  }
}

// A frame whose induced boundary metric has a lightlike direction (rank 2),
// used to exercise the degeneracy error paths.
inline Coframe lightlike_coframe() {
  Coframe f;
  // e_1 = v_0 + v_1 (null), e_2 = v_2, e_3 = v_3
  f.e = {{{1, 1, 0, 0}, {0, 0, 1, 0}, {0, 0, 0, 1}}};
  f.en = {1, 0, 0, 0};  // completes the basis; eta-complement would be null here
  return f;
}

}  // namespace pcv
