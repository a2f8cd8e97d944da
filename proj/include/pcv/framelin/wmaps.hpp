#pragma once

#include <string>
#include <vector>

#include "pcv/framelin/frame.hpp"

namespace pcv {

// Matrix of the linear map x -> a ^ x between lexicographic bases.
template <class S>
DenseMat<S> wedge_matrix_exact(const Form<S>& a, Shape in) {
  Shape os{in.d, in.N, in.p + a.shape().p, in.q + a.shape().q};
  int rows = Comb::dim(os.d, os.p) * Comb::dim(os.N, os.q);
  int cols = Comb::dim(in.d, in.p) * Comb::dim(in.N, in.q);
  DenseMat<S> m(rows, cols);
  if (!rows || !cols) return m;
  int dj = Comb::dim(in.N, in.q);
  for (int c = 0; c < cols; ++c) {
    Form<S> basis(in);
    basis.at(c / dj, c % dj).add_term(0, ScalarOps<S>::one());
    Form<S> img = wedge(a, basis);
    int oj = img.dimJ();
    for (int i = 0; i < img.dimI(); ++i)
      for (int j = 0; j < oj; ++j) m(i * oj + j, c) = img.at(i, j).body();
  }
  return m;
}

inline MatX to_eigen(const DenseMat<double>& m) {
  MatX out(m.rows, m.cols);
  for (int i = 0; i < m.rows; ++i)
    for (int j = 0; j < m.cols; ++j) out(i, j) = m(i, j);
  return out;
}

inline MatX wedge_matrix(const Form<double>& a, Shape in) {
  return to_eigen(wedge_matrix_exact(a, in));
}

// Matrix of x -> (a, x) for the internal pairing (rho_n maps).
template <class S>
DenseMat<S> pair_matrix_exact(const Form<S>& a, Shape in) {
  Shape os{in.d, in.N, in.p + a.shape().p, 0};
  int rows = Comb::dim(os.d, os.p);
  int cols = Comb::dim(in.d, in.p) * Comb::dim(in.N, in.q);
  DenseMat<S> m(rows, cols);
  if (!rows || !cols) return m;
  int dj = Comb::dim(in.N, in.q);
  for (int c = 0; c < cols; ++c) {
    Form<S> basis(in);
    basis.at(c / dj, c % dj).add_term(0, ScalarOps<S>::one());
    Form<S> img = eta_pair(a, basis);
    for (int i = 0; i < img.dimI(); ++i) m(i, c) = img.at(i, 0).body();
  }
  return m;
}

struct RankInfo {
  int rank = 0;
  int kernel_dim = 0;
  MatX kernel;  // columns span the kernel
  double sigma_min = 0, sigma_max = 0;
};

inline RankInfo numeric_rank(const MatX& m, double rel_tol = 1e-8) {
  Eigen::JacobiSVD<MatX> svd(m, Eigen::ComputeFullV);
  RankInfo info;
  const auto& sv = svd.singularValues();
  info.sigma_max = sv.size() ? sv(0) : 0.0;
  double thr = rel_tol * std::max(info.sigma_max, 1e-300);
  for (int i = 0; i < sv.size(); ++i)
    if (sv(i) > thr) ++info.rank;
  info.kernel_dim = int(m.cols()) - info.rank;
  info.sigma_min = sv.size() ? sv(sv.size() - 1) : 0.0;
  info.kernel = svd.matrixV().rightCols(info.kernel_dim);
  return info;
}

struct LinearMapReport {
  std::string id;
  int domain = 0, codomain = 0, rank = 0, kernel_dim = 0;
  bool pass = false;
  std::string expectation;
};

// Matrix of W_k^{(i,j)} = e^k ^ . for a boundary coframe (d=3) or bulk frame.
inline MatX assemble_W(int k, int i, int j, const Form<double>& e) {
  if (i + k > e.shape().d || j + k > e.shape().N)
    throw std::invalid_argument("assemble_W: out-of-range degrees");
  Form<double> ek = e;
  for (int t = 1; t < k; ++t) ek = wedge(ek, e);
  if (k == 0) {
    ek = Form<double>(Shape{e.shape().d, e.shape().N, 0, 0});
    ek.at(0, 0).add_term(0, 1.0);
  }
  return wedge_matrix(ek, Shape{e.shape().d, e.shape().N, i, j});
}

// Boundary and bulk rank/kernel checks of the W-map lemmas at N = 4:
// boundary items 1,2,3,4,7, the item-5 kernel equality, bulk injectivity of
// W_3^{(1,0)} and W_2^{(2,0)}, and bijectivity of rho_1, rho_2.
inline std::vector<LinearMapReport> verify_W_lemma(const Coframe& frame, Rng& rng) {
  std::vector<LinearMapReport> reports;
  Form<double> e = frame.coframe_form();

  auto check = [&](const std::string& id, const MatX& m, const std::string& expect,
                   int want_rank) {
    RankInfo info = numeric_rank(m);
    LinearMapReport r{id, int(m.cols()), int(m.rows()), info.rank, info.kernel_dim,
                      info.rank == want_rank, expect};
    reports.push_back(r);
    return info;
  };

  check("W1_boundary_21", assemble_W(1, 2, 1, e), "surjective", 6);       // item 1
  check("W1_boundary_11", assemble_W(1, 1, 1, e), "injective", 12);       // item 2
  auto i12 = check("W1_boundary_12", assemble_W(1, 1, 2, e), "surjective", 12);  // item 3
  check("W3_boundary_00", assemble_W(3, 0, 0, e), "injective", 1);        // item 4
  check("W2_boundary_10", assemble_W(2, 1, 0, e), "injective", 3);        // item 7
  auto i21 = numeric_rank(assemble_W(1, 2, 1, e));
  // item 5: dim Ker W1^{(1,2)} = dim Ker W1^{(2,1)}
  LinearMapReport item5{"kernel_equality_item5", 18, 12, i12.rank, i12.kernel_dim,
                        i12.kernel_dim == i21.kernel_dim && i12.kernel_dim == 6,
                        "dim Ker W1(1,2) == dim Ker W1(2,1) == 6"};
  reports.push_back(item5);
  check("W3_boundary_01", assemble_W(3, 0, 1, e), "kernel dim 3", 1);
  check("W2_boundary_02", assemble_W(2, 0, 2, e), "kernel dim 3", 3);

  // A_e and phi_e bijectivity: the entries that detect a degenerate metric
  {
    RankInfo k3 = numeric_rank(assemble_W(3, 0, 1, e));
    MatX pe = to_eigen(pair_matrix_exact(e, Shape{3, 4, 0, 1}));
    MatX Ae = pe * k3.kernel;
    RankInfo ra = numeric_rank(Ae);
    reports.push_back({"A_e", int(Ae.cols()), int(Ae.rows()), ra.rank, ra.kernel_dim,
                       ra.rank == int(Ae.cols()) && int(Ae.cols()) == 3, "bijective"});
    RankInfo k2 = numeric_rank(assemble_W(2, 0, 2, e));
    Form<double> e2 = wedge(e, e);
    MatX pe2 = 0.5 * to_eigen(pair_matrix_exact(e2, Shape{3, 4, 0, 2}));
    MatX Phie = pe2 * k2.kernel;
    RankInfo rp = numeric_rank(Phie);
    reports.push_back({"phi_e", int(Phie.cols()), int(Phie.rows()), rp.rank, rp.kernel_dim,
                       rp.rank == int(Phie.cols()) && int(Phie.cols()) == 3, "bijective"});
  }

  // bulk checks on a random nondegenerate 4x4 frame
  auto bulk = random_bulk_frame<double>(rng);
  Form<double> eb = bulk.coframe_form();
  check("W3_bulk_10", assemble_W(3, 1, 0, eb), "injective", 4);
  check("W2_bulk_20", assemble_W(2, 2, 0, eb), "injective", 6);
  Form<double> eb2 = wedge(eb, eb);
  check("rho_1_bulk", to_eigen(pair_matrix_exact(eb, Shape{4, 4, 0, 1})), "bijective", 4);
  check("rho_2_bulk", to_eigen(pair_matrix_exact(eb2, Shape{4, 4, 0, 2})), "bijective", 6);
  return reports;
}

}  // namespace pcv
