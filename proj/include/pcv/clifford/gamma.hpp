#pragma once

#include <stdexcept>
#include <vector>

#include "pcv/clifford/clifford.hpp"
#include "pcv/core/scalar.hpp"

namespace pcv {

// Small dense square matrix over S (gamma-matrix work; exact or floating).
template <class S>
class Mat {
 public:
  Mat() = default;
  explicit Mat(int n) : n_(n), a_(size_t(n) * n, ScalarOps<S>::zero()) {}
  static Mat id(int n) {
    Mat m(n);
    for (int i = 0; i < n; ++i) m(i, i) = ScalarOps<S>::one();
    return m;
  }

  int n() const { return n_; }
  S& operator()(int i, int j) { return a_[size_t(i) * n_ + j]; }
  const S& operator()(int i, int j) const { return a_[size_t(i) * n_ + j]; }

  friend Mat operator+(const Mat& x, const Mat& y) {
    Mat out = x;
    for (size_t i = 0; i < out.a_.size(); ++i) out.a_[i] = out.a_[i] + y.a_[i];
    return out;
  }
  friend Mat operator-(const Mat& x, const Mat& y) {
    Mat out = x;
    for (size_t i = 0; i < out.a_.size(); ++i) out.a_[i] = out.a_[i] - y.a_[i];
    return out;
  }
  friend Mat operator-(const Mat& x) {
    Mat out = x;
    for (auto& v : out.a_) v = -v;
    return out;
  }
  friend Mat operator*(const S& s, const Mat& x) {
    Mat out = x;
    for (auto& v : out.a_) v = s * v;
    return out;
  }
  friend Mat operator*(const Mat& x, const Mat& y) {
    Mat out(x.n_);
    for (int i = 0; i < x.n_; ++i)
      for (int k = 0; k < x.n_; ++k) {
        if (ScalarOps<S>::is_zero(x(i, k))) continue;
        for (int j = 0; j < x.n_; ++j) out(i, j) = out(i, j) + x(i, k) * y(k, j);
      }
    return out;
  }

  Mat adjoint() const {
    Mat out(n_);
    for (int i = 0; i < n_; ++i)
      for (int j = 0; j < n_; ++j) out(i, j) = ScalarOps<S>::conj((*this)(j, i));
    return out;
  }

  S trace() const {
    S t = ScalarOps<S>::zero();
    for (int i = 0; i < n_; ++i) t = t + (*this)(i, i);
    return t;
  }

  double mag() const {
    double m = 0;
    for (auto& v : a_) m = std::max(m, ScalarOps<S>::mag(v));
    return m;
  }
  bool is_zero() const {
    for (auto& v : a_)
      if (!ScalarOps<S>::is_zero(v)) return false;
    return true;
  }

  friend Mat kron(const Mat& x, const Mat& y) {
    Mat out(x.n_ * y.n_);
    for (int i = 0; i < x.n_; ++i)
      for (int j = 0; j < x.n_; ++j)
        for (int k = 0; k < y.n_; ++k)
          for (int l = 0; l < y.n_; ++l)
            out(i * y.n_ + k, j * y.n_ + l) = x(i, j) * y(k, l);
    return out;
  }

 private:
  int n_ = 0;
  std::vector<S> a_;
};

namespace detail {
template <class S>
S imag_unit();
template <>
inline Cplx imag_unit<Cplx>() { return Cplx(0, 1); }
template <>
inline CRat imag_unit<CRat>() { return CRat::i(); }
}  // namespace detail

// Gamma representation of C(N-1,1) for even N: matrices gamma_a with
// {gamma_a, gamma_b} = -2 eta_ab and the chirality element.
//
// The Pauli tensor construction yields a Euclidean algebra with all squares +1;
// the spacelike gammas are multiplied by i so that gamma_0^2 = +1 = -eta_00 and
// gamma_k^2 = -1 = -eta_kk, matching the target relation exactly.
template <class S>
struct GammaRep {
  int N = 4;
  std::vector<Mat<S>> g;  // gamma_0 .. gamma_{N-1}
  Mat<S> chirality;       // gamma_{2m+1}

  Mat<S> lowered(int a) const { return g[a]; }
  Mat<S> raised(int a) const { return clif_eta(a) < 0 ? -g[a] : g[a]; }

  // spin representation of the basis bivector v_a ^ v_b (a < b): 1/4 [g_a, g_b]
  Mat<S> spin_basis(int a, int b) const {
    Mat<S> c = g[a] * g[b] - g[b] * g[a];
    S quarter = ScalarOps<S>::one();
    // exact 1/4
    if constexpr (std::is_same_v<S, CRat>)
      quarter = CRat(Rat(1, 4));
    else
      quarter = S(0.25);
    return quarter * c;
  }
};

template <class S>
GammaRep<S> build_gamma(int N) {
  if (N % 2 || N < 2 || N > 6) throw std::invalid_argument("build_gamma: N must be in {2,4,6}");
  int m = N / 2;
  S I = detail::imag_unit<S>();
  S one = ScalarOps<S>::one();
  Mat<S> s1(2), s2(2), s3(2), id2 = Mat<S>::id(2);
  s1(0, 1) = one;
  s1(1, 0) = one;
  s2(0, 1) = -I;
  s2(1, 0) = I;
  s3(0, 0) = one;
  s3(1, 1) = -one;

  auto chain = [&](const Mat<S>& head, int pos) {
    // 1 x ... x head(pos) x s3 x ... x s3
    Mat<S> acc = Mat<S>::id(1);
    for (int k = 0; k < m; ++k) {
      const Mat<S>& f = (k < pos) ? id2 : (k == pos ? head : s3);
      acc = kron(acc, f);
    }
    return acc;
  };

  std::vector<Mat<S>> euclid;
  for (int j = 0; j < m; ++j) euclid.push_back(chain(s1, j));
  for (int j = 0; j < m; ++j) euclid.push_back(chain(s2, j));

  GammaRep<S> rep;
  rep.N = N;
  rep.g.resize(N);
  rep.g[0] = euclid[0];
  for (int k = 1; k < N; ++k) rep.g[k] = I * euclid[k];

  // chirality (-i)^m gamma^E_1 ... gamma^E_{2m} of the Euclidean factors
  Mat<S> ch = Mat<S>::id(1 << m);
  for (int k = 0; k < N; ++k) ch = ch * euclid[k];
  for (int k = 0; k < m; ++k) ch = (-I) * ch;
  rep.chirality = ch;
  return rep;
}

// so(N-1,1) matrix of the basis bivector v_a ^ v_b through the spin Lie algebra
// isomorphism: ldot(v_ab)^d_c = delta^d_b eta_ac - delta^d_a eta_bc.
inline std::vector<std::vector<int>> spin_lie_matrix(int N, int a, int b) {
  std::vector<std::vector<int>> M(N, std::vector<int>(N, 0));
  M[b][a] = clif_eta(a);
  M[a][b] = -clif_eta(b);
  return M;
}

}  // namespace pcv
