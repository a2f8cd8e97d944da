#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "pcv/fields/deriv_identities.hpp"
#include "pcv/theory/sampling.hpp"

using namespace pcv;

TEST_CASE("spectral derivative: frozen mode, d.d = 0, Leibniz exact") {
  // single mode exp(i x^1) scalar: d gives i on the dx^1 slot
  TField f(Shape{3, 4, 0, 0});
  TPoly m = TPoly::mode(1, 0, 0, Cplx(1, 0));
  f.at(0, 0).add_term(0, m);
  TField df = field_d(f);
  const auto& bI = Comb::basis(3, 1);
  auto v = df.at(bI.rank(1u << 0), 0).body();
  bool found = false;
  for (auto& tm : v.terms()) {
    int k[3];
    TPoly::unkey(tm.first, k);
    if (k[0] == 1 && k[1] == 0 && k[2] == 0) {
      CHECK(tm.second == Cplx(0, 1));
      found = true;
    }
  }
  CHECK(found);
  // constant -> 0
  TField cst(Shape{3, 4, 0, 2});
  cst.at(0, 3).add_term(0, TPoly(2.5));
  CHECK(field_d(cst).mag() == 0.0);

  // exact mode: d.d = 0 and Leibniz over 50 seeds
  for (uint64_t seed = 1; seed <= 50; ++seed) {
    Rng rng(seed);
    using S = CRat;
    auto a = derivid::random_field<S>(rng, Shape{3, 4, 1, 1}, 1, {0});
    auto b = derivid::random_field<S>(rng, Shape{3, 4, 0, 2}, 1);
    CHECK(field_d(field_d(a)).mag() == 0.0);
    auto lhs = field_d(wedge(a, b));
    // d(ab) = da b + (-1)^{|a|} a db, |a| = full parity of a (odd here)
    auto rhs = wedge(field_d(a), b) - wedge(a, field_d(b));
    CHECK((lhs - rhs).mag() == 0.0);
    // integration by parts: int d(.) = 0 on the closed torus
    auto c2 = derivid::random_field<S>(rng, Shape{3, 4, 2, 4}, 1);
    CHECK(gr_mag(integrate_zero_mode(field_d(c2))) == 0.0);
  }
}

TEST_CASE("quadrature agrees with the exact zero mode") {
  Rng rng(3);
  auto a = derivid::random_field<Cplx>(rng, Shape{3, 4, 1, 1}, 2);
  auto b = derivid::random_field<Cplx>(rng, Shape{3, 4, 2, 3}, 2, {0});
  auto prod = wedge(a, b);
  GrC exact = integrate_exact(prod);
  // grid evaluation: alias-free needs M >= 2*2 + 2*2 + 1 = 9
  for (int M : {9, 12}) {
    NodalForm na = nodal(a, M), nb = nodal(b, M);
    GrC acc;
    size_t n = size_t(M) * M * M;
    for (size_t node = 0; node < n; ++node) {
      FormC w = wedge(na.at(node), nb.at(node));
      for (auto& tm : w.at(0, 0).terms()) acc.add_term(tm.first, tm.second);
    }
    double vol = 8 * M_PI * M_PI * M_PI / double(n);
    GrC scaled;
    for (auto& tm : acc.terms()) scaled.add_term(tm.first, vol * tm.second);
    CHECK(gr_mag(scaled - exact) < 1e-12 * (1 + gr_mag(exact)));
  }
}

TEST_CASE("nodal transforms round trip and differentiate") {
  Rng rng(4);
  auto a = derivid::random_field<Cplx>(rng, Shape{3, 4, 1, 2}, 3, {1});
  int M = 12;
  NodalForm na = nodal(a, M);
  TField back = to_modal(na);
  NodalForm nb = nodal(back, M);
  // the interpolant agrees with the samples at the nodes
  size_t n = size_t(M) * M * M;
  double r = 0;
  for (size_t node = 0; node < n; ++node) r = std::max(r, (na.at(node) - nb.at(node)).mag());
  CHECK(r < 1e-12);
  // nodal_d equals the modal derivative at nodes for bandlimited input
  NodalForm nd = nodal_d(na);
  NodalForm md = nodal(field_d(a), M);
  r = 0;
  for (size_t node = 0; node < n; ++node) r = std::max(r, (nd.at(node) - md.at(node)).mag());
  CHECK(r < 1e-11);
}

TEST_CASE("derivative identity catalog: exact zero in rational convolution mode") {
  for (const auto& id : derivative_identity_catalog()) {
    for (uint64_t seed = 1; seed <= 5; ++seed) {
      double r = verify_derivative_identity<CRat>(id, seed, 1);
      INFO(id, " seed ", seed);
      CHECK(r == 0.0);
    }
  }
}

TEST_CASE("grassmann linear solve with nilpotent perturbations") {
  Rng rng(5);
  for (int it = 0; it < 20; ++it) {
    int n = 4;
    std::vector<GrC> A(n * n), b(n);
    for (int i = 0; i < n; ++i) {
      for (int j = 0; j < n; ++j) {
        A[i * n + j].add_term(0, Cplx(rng.sym(), rng.sym()) + Cplx(i == j ? 3 : 0, 0));
        A[i * n + j].add_term(0b11, Cplx(rng.sym(), 0));   // even nilpotent
      }
      b[i].add_term(0, Cplx(rng.sym(), rng.sym()));
      b[i].add_term(0b01, Cplx(rng.sym(), 0));             // odd channel
    }
    auto x = gr_solve(n, A, b);
    double r = 0;
    for (int i = 0; i < n; ++i) {
      GrC acc = b[i];
      for (int j = 0; j < n; ++j) acc -= A[i * n + j] * x[j];
      r = std::max(r, gr_mag(acc));
    }
    CHECK(r < 1e-12);
  }
}

TEST_CASE("sampled configurations are reproducible and enforced") {
  SampleOptions opt;
  opt.K = 1;
  opt.M = 8;  // small grid keeps the unit test quick
  auto p1 = sample_config(Theory::Scalar, 42, opt);
  auto p2 = sample_config(Theory::Scalar, 42, opt);
  CHECK((p1.e - p2.e).mag() == 0.0);
  CHECK((p1.omega - p2.omega).mag() == 0.0);
  CHECK((p1.p - p2.p).mag() == 0.0);

  // structural constraint at the enforcement nodes: e_n d_omega e in Im W1^{(1,1)}
  int M = opt.M;
  size_t n = size_t(M) * M * M;
  NodalForm en = nodal(p1.e, M);
  NodalForm tn = nodal(torsion_modal(p1.e, p1.omega), M);
  double res = 0;
  for (size_t node = 0; node < n; ++node) {
    FormC e_val = en.at(node);
    Coframe fr = coframe_at(e_val, opt.en_const);
    FrameSolvers fs(fr);
    FormC enf = fs.en().map([](double x) { return Cplx(x, 0); });
    FormC T = wedge(enf, tn.at(node));
    auto [sig, v] = fs.decompose_omega_source(T);
    res = std::max(res, v.mag());
  }
  CHECK(res < 1e-10);

  // scalar structural constraint (e, Pi) = -dphi via the stored Darboux p
  NodalForm pn = nodal(p1.p, M), dphin = nodal(field_d(p1.phi), M);
  double resc = 0;
  for (size_t node = 0; node < n; ++node) {
    FormC e_val = en.at(node);
    FrameSolvers fs(coframe_at(e_val, opt.en_const));
    // reconstruct Pi from (e, p, dphi) and check both defining equations
    // rows: (e,Pi) = -dphi (3), e^3 Pi / 3! = p (1)
    std::vector<GrC> A(16), b(4);
    const auto& b1 = Comb::basis(4, 1);
    for (int a = 0; a < 4; ++a) {
      FormC basis(Shape{3, 4, 0, 1});
      basis.at(0, b1.rank(1u << a)).add_term(0, Cplx(1, 0));
      FormC pe = eta_pair(e_val, basis);
      for (int mu = 0; mu < 3; ++mu) A[mu * 4 + a] = pe.at(mu, 0);
      FormC e3 = wedge(wedge(e_val, e_val), e_val);
      FormC w = Cplx(1.0 / 6.0, 0) * wedge(e3, basis);
      A[3 * 4 + a] = w.at(0, 0);
    }
    FormC dphiv = dphin.at(node);
    for (int mu = 0; mu < 3; ++mu) b[mu] = -dphiv.at(mu, 0);
    b[3] = pn.at(node).at(0, 0);
    auto x = gr_solve(4, A, b);
    // residual of the first three equations with the solved Pi
    for (int mu = 0; mu < 3; ++mu) {
      GrC acc = b[mu];
      for (int a = 0; a < 4; ++a) acc -= A[mu * 4 + a] * x[a];
      resc = std::max(resc, gr_mag(acc));
    }
  }
  CHECK(resc < 1e-10);
}

TEST_CASE("K = 0 sampling reduces to single-point framelin data") {
  SampleOptions opt;
  opt.K = 0;
  opt.M = 2;
  auto pt = sample_config(Theory::Scalar, 7, opt);
  CHECK(field_bandwidth(pt.e) == 0);
  CHECK(field_bandwidth(pt.omega) == 0);
}
