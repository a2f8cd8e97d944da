#pragma once

#include "pcv/theory/point.hpp"

namespace pcv {

struct SamplerError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

namespace spinor_detail {

inline const GammaRep<Cplx>& grep() {
  static const GammaRep<Cplx> rep = build_gamma<Cplx>(4);
  return rep;
}

// (i/16) psibar ( j_g j_g(X) gamma + gamma j_g j_g(X) ) psi at a node,
// for an even (2,2)-valued X; the spinor torsion correction source.
inline FormC torsion_correction(const FormC& e2, const std::array<FormC, 4>& psibar,
                                const std::array<FormC, 4>& psi) {
  const auto& rep = grep();
  MatForm<Cplx, Cplx> jj = jgamma2(e2, rep);
  MatForm<Cplx, Cplx> gam = MatForm<Cplx, Cplx>::gamma_vector(3, rep);
  MatForm<Cplx, Cplx> comb = wedge(jj, gam) + wedge(gam, jj);
  SpinorF<Cplx> right = mat_apply(comb, psi);
  FormC out = pair_spinor(psibar, right);
  return Cplx(0, 1.0 / 16.0) * out;
}

}  // namespace spinor_detail

// d_omega e at the modal level (all factors bandlimited)
inline TField torsion_modal(const TField& e, const TField& omega) {
  return field_d(e) + lie_bracket(omega, e);
}

// Enforce the structural constraints pointwise on the M^3 grid:
//   - omega := omega~ - v with e_n (d_omega e - spinor term) in Im W_1^{(1,1)}
//   - scalar: (e, Pi) = pi_sign d(phi), p := e^3 Pi / 3!
//   - YM:     F_A + 1/2 (e^2, B) = 0,   rho := 1/2 e^2 B
// Matter decompositions consume the sampled Pi~ / B~ fields.
inline void enforce_representative(PhaseSpacePoint& pt, const TField* Pi_tilde,
                                   const GField* B_tilde) {
  int M = pt.opt.M;
  size_t n = size_t(M) * M * M;

  NodalForm e_nod = nodal(pt.e, M);
  TField dwe = torsion_modal(pt.e, pt.omega);
  NodalForm dwe_nod = nodal(dwe, M);

  std::array<NodalForm, 4> psi_nod, psibar_nod;
  if (pt.has_spinor())
    for (int i = 0; i < 4; ++i) {
      psi_nod[i] = nodal(pt.psi[i], M);
      psibar_nod[i] = nodal(pt.psibar[i], M);
    }

  NodalForm Pi_nod, dphi_nod;
  if (pt.has_scalar() && Pi_tilde) {
    Pi_nod = nodal(*Pi_tilde, M);
    dphi_nod = nodal(field_d(pt.phi), M);
  }
  std::vector<NodalForm> B_nod, FA_nod;
  if (pt.has_ym() && B_tilde) {
    GField FA(pt.lie.dim);
    auto half_AA = g_bracket(pt.lie, pt.A, pt.A);
    for (int I = 0; I < pt.lie.dim; ++I) {
      FA[I] = field_d(pt.A[I]) + TPoly(0.5) * half_AA[I];
      B_nod.push_back(nodal((*B_tilde)[I], M));
      FA_nod.push_back(nodal(FA[I], M));
    }
  }

  // per-node corrections
  NodalForm v_nod;
  v_nod.sh = Shape{3, 4, 1, 2};
  v_nod.M = M;
  NodalForm p_nod;  // scalar momentum density (3,4)
  p_nod.sh = Shape{3, 4, 3, 4};
  p_nod.M = M;
  std::vector<NodalForm> rho_nod(pt.has_ym() ? pt.lie.dim : 0);
  for (auto& r : rho_nod) {
    r.sh = Shape{3, 4, 2, 4};
    r.M = M;
  }

  std::vector<std::map<std::pair<int, uint32_t>, std::vector<Cplx>>> rho_ch(rho_nod.size());
  std::map<std::pair<int, uint32_t>, std::vector<Cplx>> v_ch, p_ch;
  auto put = [&](std::map<std::pair<int, uint32_t>, std::vector<Cplx>>& dst, int slot,
                 uint32_t mask, size_t node, Cplx val) {
    if (val == Cplx(0, 0)) return;
    auto& cube = dst[{slot, mask}];
    if (cube.empty()) cube.assign(n, Cplx(0, 0));
    cube[node] = val;
  };

  for (size_t node = 0; node < n; ++node) {
    FormC e_val = e_nod.at(node);
    Coframe fr = coframe_at(e_val, pt.opt.en_const);
    FrameSolvers fs(fr);
    FormC en_val = fs.en().map([](double x) { return Cplx(x, 0); });

    FormC T = wedge(en_val, dwe_nod.at(node));
    if (pt.has_spinor()) {
      std::array<FormC, 4> pv, pbv;
      for (int i = 0; i < 4; ++i) {
        pv[i] = psi_nod[i].at(node);
        pbv[i] = psibar_nod[i].at(node);
      }
      FormC e2 = wedge(e_val, e_val);
      T = T - wedge(en_val, spinor_detail::torsion_correction(e2, pbv, pv));
    }
    auto [sigma, v] = fs.decompose_omega_source(T);
    (void)sigma;
    int dj = v.dimJ();
    for (int i = 0; i < v.dimI(); ++i)
      for (int j = 0; j < dj; ++j)
        for (auto& tm : v.at(i, j).terms()) put(v_ch, i * dj + j, tm.first, node, tm.second);

    if (pt.has_scalar() && Pi_tilde) {
      auto [Pi, pk] = decompose_Pi(fs, Pi_nod.at(node), dphi_nod.at(node), pt.opt.pi_sign);
      (void)pk;
      FormC e3 = wedge(wedge(e_val, e_val), e_val);
      FormC dens = Cplx(1.0 / 6.0, 0) * wedge(e3, Pi);
      for (auto& tm : dens.at(0, 0).terms()) put(p_ch, 0, tm.first, node, tm.second);
    }
    if (pt.has_ym() && B_tilde) {
      FormC e2 = wedge(e_val, e_val);
      for (int I = 0; I < pt.lie.dim; ++I) {
        auto [B, bk] = decompose_B(fs, B_nod[I].at(node), FA_nod[I].at(node));
        (void)bk;
        FormC r = Cplx(0.5, 0) * wedge(e2, B);
        int rdj = r.dimJ();
        for (int i = 0; i < r.dimI(); ++i)
          for (int j = 0; j < rdj; ++j)
            for (auto& tm : r.at(i, j).terms())
              put(rho_ch[I], i * rdj + j, tm.first, node, tm.second);
      }
    }
  }

  auto pack = [&](NodalForm& nf, std::map<std::pair<int, uint32_t>, std::vector<Cplx>>& ch) {
    for (auto& [k, cube] : ch) nf.chans.push_back({k.first, k.second, std::move(cube)});
  };
  pack(v_nod, v_ch);
  pt.omega = pt.omega - to_modal(v_nod);
  if (pt.has_scalar() && Pi_tilde) {
    pack(p_nod, p_ch);
    pt.p = to_modal(p_nod);
  }
  if (pt.has_ym() && B_tilde) {
    pt.rho.assign(pt.lie.dim, TField());
    for (int I = 0; I < pt.lie.dim; ++I) {
      pack(rho_nod[I], rho_ch[I]);
      pt.rho[I] = to_modal(rho_nod[I]);
    }
  }
}

// Randomized field configuration with the representative enforced.
inline PhaseSpacePoint sample_config(Theory th, uint64_t seed, const SampleOptions& opt = {}) {
  PhaseSpacePoint pt;
  pt.theory = th;
  pt.seed = seed;
  pt.opt = opt;
  pt.gens = GenLayout(opt.grassmann_budget);
  if (th == Theory::YM) pt.lie = LieAlgebra::su2();
  Rng rng(seed);

  Shape e_sh{3, 4, 1, 1};
  const auto& bI = Comb::basis(3, 1);
  const auto& bJ = Comb::basis(4, 1);

  // nondegenerate coframe: orthonormal body + bandlimited perturbation
  bool ok = false;
  for (int attempt = 0; attempt < 100 && !ok; ++attempt) {
    pt.e = TField(e_sh);
    for (int mu = 0; mu < 3; ++mu)
      for (int a = 0; a < 4; ++a) {
        TPoly coef = random_real_poly(rng, opt.K, opt.eps);
        if (a == mu + 1) coef += TPoly(1.0);
        if (!coef.is_zero()) pt.e.at(bI.rank(1u << mu), bJ.rank(1u << a)).add_term(0, coef);
      }
    ok = true;
    NodalForm en = nodal(pt.e, opt.M);
    size_t n = size_t(opt.M) * opt.M * opt.M;
    for (size_t node = 0; node < n && ok; ++node) {
      auto cols = columns_at(en.at(node));
      Coframe fr;
      fr.e = cols;
      if (std::abs(fr.metric_det()) < opt.min_gdet) ok = false;
    }
  }
  if (!ok) throw SamplerError("nondegenerate coframe unreachable after 100 resamples");

  pt.omega = random_real_field(rng, Shape{3, 4, 1, 2}, opt.K, opt.matter_amp);
  pt.omega0 = opt.nonzero_refs ? random_real_field(rng, Shape{3, 4, 1, 2}, opt.K, 0.3)
                               : TField(Shape{3, 4, 1, 2});

  TField Pi_tilde;
  GField B_tilde;
  if (th == Theory::Scalar) {
    pt.phi = random_real_field(rng, Shape{3, 4, 0, 0}, opt.K, opt.matter_amp);
    Pi_tilde = random_real_field(rng, Shape{3, 4, 0, 1}, opt.K, opt.matter_amp);
  }
  if (th == Theory::YM) {
    pt.A.assign(pt.lie.dim, TField());
    pt.A0.assign(pt.lie.dim, TField(Shape{3, 4, 1, 0}));
    for (int I = 0; I < pt.lie.dim; ++I) {
      pt.A[I] = random_real_field(rng, Shape{3, 4, 1, 0}, opt.K, opt.matter_amp);
      if (opt.nonzero_refs) pt.A0[I] = random_real_field(rng, Shape{3, 4, 1, 0}, opt.K, 0.3);
      B_tilde.push_back(random_real_field(rng, Shape{3, 4, 0, 2}, opt.K, opt.matter_amp));
    }
  }
  if (th == Theory::Spinor) {
    for (int i = 0; i < 4; ++i) {
      pt.psi[i] = TField(Shape{3, 4, 0, 0});
      pt.psibar[i] = TField(Shape{3, 4, 0, 0});
      for (int g = 0; g < pt.gens.budget; ++g) {
        TPoly re = random_real_poly(rng, opt.K, opt.matter_amp);
        TPoly im = random_real_poly(rng, opt.K, opt.matter_amp);
        pt.psi[i].at(0, 0).add_term(1u << (pt.gens.psi0 + g), re + TPoly(Cplx(0, 1)) * im);
        TPoly re2 = random_real_poly(rng, opt.K, opt.matter_amp);
        TPoly im2 = random_real_poly(rng, opt.K, opt.matter_amp);
        pt.psibar[i].at(0, 0).add_term(1u << (pt.gens.psibar0 + g),
                                       re2 + TPoly(Cplx(0, 1)) * im2);
      }
    }
  }

  enforce_representative(pt, th == Theory::Scalar ? &Pi_tilde : nullptr,
                         th == Theory::YM ? &B_tilde : nullptr);
  return pt;
}

}  // namespace pcv
