#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "pcv/framelin/kernels.hpp"

using namespace pcv;

namespace {

Coframe orthonormal_frame() {
  Coframe f;
  f.e = {{{0, 1, 0, 0}, {0, 0, 1, 0}, {0, 0, 0, 1}}};
  f.en = {1, 0, 0, 0};
  return f;
}

Form<double> to_form(const MatX& kernel, int col, Shape sh) {
  return FrameSolvers::kernel_form(kernel, col, sh);
}

}  // namespace

TEST_CASE("W lemma rank/kernel checks over random frames") {
  Rng rng(1);
  for (int it = 0; it < 25; ++it) {
    Coframe fr = random_coframe(rng);
    auto reports = verify_W_lemma(fr, rng);
    for (auto& r : reports) {
      INFO(r.id, " expected ", r.expectation, " rank ", r.rank);
      CHECK(r.pass);
    }
  }
  // orthonormal frame gives identical dimensions
  auto reports = verify_W_lemma(orthonormal_frame(), rng);
  for (auto& r : reports) CHECK(r.pass);
}

TEST_CASE("exact rational rank oracle agrees with the numeric path") {
  Rng rng(2);
  struct Case {
    int k, i, j, rank;
  };
  const Case cases[] = {{1, 1, 1, 12}, {1, 1, 2, 12}, {1, 2, 1, 6}, {3, 0, 1, 1}, {2, 0, 2, 3},
                        {2, 1, 0, 3},  {3, 0, 0, 1}};
  for (int it = 0; it < 10; ++it) {
    auto fr = random_boundary_frame<Rat>(rng);
    Form<Rat> e = fr.coframe_form();
    for (auto& c : cases) {
      Form<Rat> ek(Shape{3, 4, 0, 0});
      ek.at(0, 0).add_term(0, Rat(1));
      for (int t = 0; t < c.k; ++t) ek = wedge(ek, e);
      auto m = wedge_matrix_exact(ek, Shape{3, 4, c.i, c.j});
      CHECK(gauss_rank(m) == c.rank);
    }
  }
}

TEST_CASE("A_e: frozen values, round trip, degeneracy error") {
  // orthonormal frame: kernel of W3^{(0,1)} is span{v1,v2,v3}; (e, v_mu) = dx^mu
  FrameSolvers fs(orthonormal_frame());
  Form<double> p(Shape{3, 4, 0, 1});
  p.at_mask(0, 1u << 1).add_term(0, 1.0);  // v_1
  auto img = eta_pair(fs.e(), p);
  CHECK(img.at_mask(1u << 0, 0).body() == doctest::Approx(1.0));  // +dx^1

  // p = 0 -> 0
  Form<double> zero(Shape{3, 4, 0, 1});
  CHECK(fs.solve_Ae(Form<double>(Shape{3, 4, 1, 0})).mag() == 0.0);
  (void)zero;

  Rng rng(3);
  for (int it = 0; it < 100; ++it) {
    FrameSolvers s(random_coframe(rng));
    auto target = random_form<double>(rng, Shape{3, 4, 1, 0});
    auto sol = s.solve_Ae(target);
    // membership: e^3 ^ sol = 0
    auto memb = wedge(wedge(wedge(s.e(), s.e()), s.e()), sol);
    CHECK(memb.mag() < 1e-10);
    auto back = eta_pair(s.e(), sol);
    CHECK((back - target).mag() < 1e-12 * (1 + target.mag()));
  }

  CHECK_THROWS_AS((void)FrameSolvers{lightlike_coframe()}, DegenerateFrameError);
}

TEST_CASE("phi_e: identity-like diagonal and round trip") {
  FrameSolvers fs(orthonormal_frame());
  // kernel of W2^{(0,2)} = span{v_ab : a,b in {1,2,3}}; phi_e(v_12) = +-dx^1dx^2
  Form<double> b(Shape{3, 4, 0, 2});
  b.at_mask(0, 0b0110).add_term(0, 1.0);  // v_1 ^ v_2
  auto img = eta_pair(wedge(fs.e(), fs.e()), b);
  // only the dx^{12} slot is populated, with unit magnitude
  for (int i = 0; i < img.dimI(); ++i) {
    double v = std::abs(img.at(i, 0).body());
    uint32_t mask = Comb::basis(3, 2).mask(i);
    if (mask == 0b011)
      CHECK(0.5 * v == doctest::Approx(1.0));
    else
      CHECK(v == 0.0);
  }

  Rng rng(4);
  for (int it = 0; it < 100; ++it) {
    FrameSolvers s(random_coframe(rng));
    auto target = random_form<double>(rng, Shape{3, 4, 2, 0});
    auto sol = s.solve_phie(target);
    auto memb = wedge(wedge(s.e(), s.e()), sol);
    CHECK(memb.mag() < 1e-10);
    Form<double> back = 0.5 * eta_pair(wedge(s.e(), s.e()), sol);
    CHECK((back - target).mag() < 1e-12 * (1 + target.mag()));
  }
}

TEST_CASE("omega decomposition: zero, forward reconstruction, uniqueness") {
  Rng rng(5);
  for (int it = 0; it < 100; ++it) {
    FrameSolvers s(random_coframe(rng));
    // T = 0 -> (0,0)
    auto [s0, v0] = s.decompose_omega_source(Form<double>(Shape{3, 4, 2, 2}));
    CHECK(s0.mag() == 0.0);
    CHECK(v0.mag() == 0.0);

    // forward-construct from known sigma and kernel element
    auto sigma0 = random_form<double>(rng, Shape{3, 4, 1, 1});
    auto vker = to_form(s.ker_W1_12(), int(rng.below(6)), Shape{3, 4, 1, 2});
    auto T = wedge(s.e(), sigma0) + wedge(s.en(), lie_bracket(vker, s.e()));
    auto [sig, v] = s.decompose_omega_source(T);
    CHECK((sig - sigma0).mag() < 1e-10 * (1 + sigma0.mag()));
    CHECK((v - vker).mag() < 1e-10);

    // random T: residual and idempotence
    auto Tr = random_form<double>(rng, Shape{3, 4, 2, 2});
    auto [sg, vv] = s.decompose_omega_source(Tr);
    auto rec = wedge(s.e(), sg) + wedge(s.en(), lie_bracket(vv, s.e()));
    CHECK((rec - Tr).mag() < 1e-10 * (1 + Tr.mag()));
    // solution matrix full rank
    CHECK(numeric_rank(s.omega_matrix()).rank == 18);
    // projection property: decomposing e ^ sg again returns (sg, 0)
    auto [sg2, vv2] = s.decompose_omega_source(wedge(s.e(), sg));
    CHECK((sg2 - sg).mag() < 1e-12 * (1 + sg.mag()));
    CHECK(vv2.mag() < 1e-12 * (1 + sg.mag()));
  }
}

TEST_CASE("Pi decomposition") {
  Rng rng(6);
  for (int it = 0; it < 100; ++it) {
    FrameSolvers s(random_coframe(rng));
    auto Pi_t = random_form<double>(rng, Shape{3, 4, 0, 1});
    auto dphi = random_form<double>(rng, Shape{3, 4, 1, 0});
    auto [Pi, p] = decompose_Pi(s, Pi_t, dphi, -1);
    // constraint (e,Pi) = -dphi
    auto cons = eta_pair(s.e(), Pi) + dphi;
    CHECK(cons.mag() < 1e-12 * (1 + dphi.mag() + Pi_t.mag()));
    // kernel membership of p
    auto e3 = wedge(wedge(s.e(), s.e()), s.e());
    CHECK(wedge(e3, p).mag() < 1e-10 * (1 + p.mag()));
    // already-enforced input: p = 0
    auto [Pi2, p2] = decompose_Pi(s, Pi, dphi, -1);
    CHECK(p2.mag() < 1e-12 * (1 + Pi.mag()));
    // dphi = 0, kernel input: Pi = 0, p = input
    auto vker = to_form(s.ker_W3_01(), int(rng.below(3)), Shape{3, 4, 0, 1});
    auto [Pi3, p3] = decompose_Pi(s, vker, Form<double>(Shape{3, 4, 1, 0}), -1);
    CHECK(Pi3.mag() < 1e-12);
    CHECK((p3 - vker).mag() < 1e-12);
  }
}

TEST_CASE("B decomposition") {
  Rng rng(7);
  for (int it = 0; it < 100; ++it) {
    FrameSolvers s(random_coframe(rng));
    auto B_t = random_form<double>(rng, Shape{3, 4, 0, 2});
    auto FA = random_form<double>(rng, Shape{3, 4, 2, 0});
    auto [B, b] = decompose_B(s, B_t, FA);
    auto e2 = wedge(s.e(), s.e());
    auto cons = FA + 0.5 * eta_pair(e2, B);
    CHECK(cons.mag() < 1e-12 * (1 + FA.mag() + B_t.mag()));
    CHECK(wedge(e2, b).mag() < 1e-10 * (1 + b.mag()));
    // B~ = 0: B = -phi_e^{-1}(F_A) up to sign bookkeeping
    auto [B2, b2] = decompose_B(s, Form<double>(Shape{3, 4, 0, 2}), FA);
    CHECK((FA + 0.5 * eta_pair(e2, B2)).mag() < 1e-12 * (1 + FA.mag()));
    // zero kernel part stays zero when constraint already holds
    auto [B3, b3] = decompose_B(s, B, FA);
    CHECK(b3.mag() < 1e-12 * (1 + B.mag()));
  }
}

TEST_CASE("presymplectic kernel dimensions per theory") {
  Rng rng(8);
  for (int it = 0; it < 30; ++it) {
    Coframe fr = random_coframe(rng);
    CHECK(presymplectic_kernel(Theory::PC, fr, rng).kernel_dim == 6);
    auto rs = presymplectic_kernel(Theory::Scalar, fr, rng);
    CHECK(rs.kernel_dim == 9);
    CHECK(rs.shape_residual < 1e-10);
    auto ry = presymplectic_kernel(Theory::YM, fr, rng);
    CHECK(ry.kernel_dim == 15);
    CHECK(ry.shape_residual < 1e-10);
    auto rsp = presymplectic_kernel(Theory::Spinor, fr, rng);
    CHECK(rsp.kernel_dim == 6);
  }
}

TEST_CASE("Omega^{(2,1)} joint-kernel lemma") {
  // alpha = 0 iff e ^ alpha = 0 and e_n ^ alpha in Im W1^{(1,1)}
  Rng rng(9);
  for (int it = 0; it < 25; ++it) {
    Coframe fr = random_coframe(rng);
    Form<double> e = fr.coframe_form(), en = fr.en_form();
    MatX We = wedge_matrix(e, Shape{3, 4, 2, 1});    // (3,2): 6 x 12
    MatX Wen = wedge_matrix(en, Shape{3, 4, 2, 1});  // (2,2): 18 x 12
    MatX W11 = assemble_W(1, 1, 1, e);               // 18 x 12
    // projector onto the orthogonal complement of Im W11
    Eigen::HouseholderQR<MatX> qr(W11);
    MatX Q = qr.householderQ() * MatX::Identity(18, 12);
    MatX P = MatX::Identity(18, 18) - Q * Q.transpose();
    MatX joint(6 + 18, 12);
    joint.topRows(6) = We;
    joint.bottomRows(18) = P * Wen;
    CHECK(numeric_rank(joint).kernel_dim == 0);
  }
}

TEST_CASE("lightlike frame rank drop is reported, not crashed") {
  Rng rng(10);
  Coframe f = lightlike_coframe();
  auto reports = verify_W_lemma(f, rng);
  bool some_fail = false;
  for (auto& r : reports) some_fail |= !r.pass;
  CHECK(some_fail);  // expected rank drop on the degenerate stratum
}
