#include "fockq/report.hpp"

#include <algorithm>
#include <atomic>
#include <chrono>
#include <thread>

#include <json.hpp>

#include "fockq/models.hpp"
#include "fockq/quantize.hpp"
#include "fockq/symmetries.hpp"

namespace fockq {

namespace {

constexpr Species kAllSpecies[] = {
    Species::NeutralBosonic, Species::NeutralFermionic,
    Species::ChargedBosonic, Species::ChargedFermionic};
constexpr Species kNeutral[] = {Species::NeutralBosonic,
                                Species::NeutralFermionic};
constexpr Species kCharged[] = {Species::ChargedBosonic,
                                Species::ChargedFermionic};

Eigen::Index dim_for(Species s) { return is_charged(s) ? 3 : 4; }

QuantizedSystem random_quantized(Species s, Rng& rng, const CheckOptions& opt,
                                 int cutoff = 0) {
  ModelSystem m = random_system(s, dim_for(s), rng.integer());
  return quantize(m.phase, m.dynamics, cutoff > 0 ? cutoff : opt.cutoff,
                  opt.tol);
}

void bump(CheckResult& res, double r) {
  res.residual = std::max(res.residual, r);
}

// Structural expectations (flags, counts) are reported as a unit residual
// with an explanatory detail.
void expect(CheckResult& res, bool ok, const std::string& what) {
  if (!ok) {
    res.residual = std::max(res.residual, 1.0);
    if (!res.detail.empty()) res.detail += "; ";
    res.detail += what;
  }
}

RMat rand_orthogonal(Rng& rng, Eigen::Index n) {
  Eigen::HouseholderQR<RMat> qr(rng.real_matrix(n, n));
  return qr.householderQ() * RMat::Identity(n, n);
}

Mat rand_unitary(Rng& rng, Eigen::Index n) {
  Eigen::HouseholderQR<Mat> qr(rng.complex_matrix(n, n));
  return qr.householderQ() * Mat::Identity(n, n);
}

std::vector<double> sorted_eigs(const Mat& h) {
  RVec v = herm_eig(Mat((h + h.adjoint()) / 2.0), "sorted_eigs").values;
  return std::vector<double>(v.data(), v.data() + v.size());
}

// Expected spectrum of dGamma(h) on the truncated space: occupation sums of
// the one-particle eigenvalues.
std::vector<double> occupation_spectrum(const FockRep& f, const Mat& h) {
  RVec lam = herm_eig(h, "occupation_spectrum").values;
  std::vector<double> out;
  out.reserve(std::size_t(f.dim()));
  for (const auto& occ : f.basis) {
    double e = 0.0;
    for (std::size_t k = 0; k < occ.size(); ++k) e += occ[k] * lam(Eigen::Index(k));
    out.push_back(e);
  }
  std::sort(out.begin(), out.end());
  return out;
}

double spectrum_diff(const std::vector<double>& a,
                     const std::vector<double>& b) {
  if (a.size() != b.size()) return 1.0;
  double d = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i)
    d = std::max(d, std::abs(a[i] - b[i]));
  return d;
}

Mat scalar_block(Complex c, Eigen::Index n) {
  return c * Mat::Identity(n, n);
}

// ---- individual checks ---------------------------------------------------

void check_form_classification(const CheckOptions& opt, CheckResult& res) {
  Rng rng(sub_seed(opt.seed, res.name));
  for (Species s : kAllSpecies)
    for (int t = 0; t < opt.trials; ++t) {
      ModelSystem m = random_system(s, dim_for(s), rng.integer());
      const FormClassification& c = m.phase.classification;
      switch (s) {
        case Species::NeutralBosonic:
          expect(res, c.antisymmetric && c.nondegenerate,
                 "omega must be antisymmetric nondegenerate");
          bump(res, c.r_antisymmetric);
          break;
        case Species::NeutralFermionic:
          expect(res, c.symmetric && c.positive,
                 "nu must be symmetric positive");
          bump(res, c.r_symmetric);
          break;
        case Species::ChargedBosonic:
          expect(res, c.antihermitian && c.nondegenerate,
                 "charged omega must be antihermitian nondegenerate");
          bump(res, c.r_antihermitian);
          break;
        case Species::ChargedFermionic:
          expect(res, c.hermitian && c.positive,
                 "scalar product must be hermitian positive");
          bump(res, c.r_hermitian);
          break;
      }
    }
  res.tolerance = 100 * opt.tol;
  if (res.detail.empty())
    res.detail = "species form contracts on random systems";
}

void check_stability_energy(const CheckOptions& opt, CheckResult& res) {
  Rng rng(sub_seed(opt.seed, res.name));
  double scale = 1.0;
  for (Species s : {Species::NeutralBosonic, Species::ChargedBosonic})
    for (int t = 0; t < opt.trials; ++t) {
      ModelSystem m = random_system(s, dim_for(s), rng.integer());
      StabilityReport rep = check_stability(m.phase, m.dynamics, opt.tol);
      expect(res, rep.weakly_stable, "random bosonic system must be stable");
      expect(res, rep.beta_positive && rep.ker_a_trivial,
             "energy Gram must be positive with trivial kernel");
      expect(res, rep.beta_matches, "derived beta must match the given one");
      bump(res, rep.beta_match_residual);
      scale = std::max(scale, norm_inf(rep.beta.entries));
    }
  res.tolerance = tol_scale(100 * opt.tol, {scale});
  if (res.detail.empty()) res.detail = "beta = omega a positive definite";
}

void check_kahler_polar(const CheckOptions& opt, CheckResult& res) {
  Rng rng(sub_seed(opt.seed, res.name));
  double scale = 1.0;
  for (Species s : kNeutral)
    for (int t = 0; t < opt.trials; ++t) {
      ModelSystem m = random_system(s, dim_for(s), rng.integer());
      KahlerData k = polar_kahler(m.phase, m.dynamics, opt.tol);
      bump(res, k.r_involution);
      bump(res, k.r_commute);
      bump(res, k.r_factor);
      bump(res, k.r_form);
      Eigen::SelfAdjointEigenSolver<RMat> es(RMat((k.h + k.h.transpose()) / 2));
      bump(res, std::max(0.0, -es.eigenvalues().minCoeff()));
      expect(res, es.eigenvalues().minCoeff() > opt.tol,
             "one-particle energy h must be positive");
      scale = std::max({scale, norm_inf(k.h),
                        norm_inf(m.dynamics.generator.entries)});
    }
  res.tolerance = tol_scale(100 * opt.tol, {scale});
  if (res.detail.empty()) res.detail = "polar factors of the generator";
}

void check_kahler_compatibility(const CheckOptions& opt, CheckResult& res) {
  Rng rng(sub_seed(opt.seed, res.name));
  double scale = 1.0;
  for (int t = 0; t < opt.trials; ++t) {
    // Bosonic: nu = omega j must come out symmetric positive, j symplectic.
    ModelSystem mb =
        random_system(Species::NeutralBosonic, 4, rng.integer());
    KahlerData kb = polar_kahler(mb.phase, mb.dynamics, opt.tol);
    OperatorMatrix j = make_operator(kb.j.cast<Complex>());
    RMat nu = mb.phase.form.real() * kb.j;
    KahlerCheck kc = kahler_compatibility(
        make_form(nu.cast<Complex>(), FormKind::RealBilinear), mb.phase.form,
        j, opt.tol);
    expect(res, kc.compatible && kc.j_symplectic,
           "polar j must be compatible with omega");
    bump(res, kc.r_definition);
    bump(res, kc.r_symplectic);

    // A generic conjugated anti-involution must be rejected.
    RMat p = rng.real_matrix(4, 4) + 4.0 * RMat::Identity(4, 4);
    RMat j_bad = p * kb.j * p.inverse();
    KahlerCheck kc_bad = kahler_compatibility(
        make_form((mb.phase.form.real() * j_bad).cast<Complex>(),
                  FormKind::RealBilinear),
        mb.phase.form, make_operator(j_bad.cast<Complex>()), opt.tol);
    expect(res, !kc_bad.compatible || kc_bad.r_definition <= opt.tol,
           "incompatible j must be flagged");

    // Fermionic: j must be nu-orthogonal with nu j antisymmetric.
    ModelSystem mf =
        random_system(Species::NeutralFermionic, 4, rng.integer());
    KahlerData kf = polar_kahler(mf.phase, mf.dynamics, opt.tol);
    KahlerCheckEuclidean ke = kahler_compatibility_euclidean(
        mf.phase.form, make_operator(kf.j.cast<Complex>()), opt.tol);
    expect(res, ke.compatible && ke.j_orthogonal,
           "polar j must be nu-orthogonal");
    bump(res, ke.r_definition);
    bump(res, ke.r_orthogonal);
    scale = std::max({scale, norm_inf(nu), norm_inf(ke.omega)});
  }
  res.tolerance = tol_scale(100 * opt.tol, {scale});
  if (res.detail.empty()) res.detail = "two routes to compatibility agree";
}

void check_holomorphic_basis(const CheckOptions& opt, CheckResult& res) {
  Rng rng(sub_seed(opt.seed, res.name));
  for (Species s : kNeutral)
    for (int t = 0; t < opt.trials; ++t) {
      QuantizedSystem q = random_quantized(s, rng, opt);
      const KahlerData& k = *q.kahler;
      expect(res, k.z_basis.cols() == q.dim() / 2,
             "Z must have half the real dimension");
      bump(res, norm_inf(Mat(k.z_gram - Mat::Identity(k.z_basis.cols(),
                                                      k.z_basis.cols()))));
      Mat drift = k.j.cast<Complex>() * k.z_basis -
                  Complex(0, 1) * k.z_basis;
      bump(res, norm_inf(drift));
    }
  res.tolerance = 100 * opt.tol;
  if (res.detail.empty()) res.detail = "j z = i z and unit Gram on Z";
}

void check_charged_splitting(const CheckOptions& opt, CheckResult& res) {
  Rng rng(sub_seed(opt.seed, res.name));
  double scale = 1.0;
  for (Species s : kCharged)
    for (int t = 0; t < opt.trials; ++t) {
      QuantizedSystem q = random_quantized(s, rng, opt);
      const ChargedSplit& sp = *q.split;
      bump(res, sp.r_idempotent);
      bump(res, sp.r_q_involution);
      bump(res, sp.r_commute);
      bump(res, sp.r_recompose);
      bump(res, norm_inf(Mat(sp.p_plus + sp.p_minus -
                             Mat::Identity(q.dim(), q.dim()))));
      scale = std::max({scale, norm_inf(sp.h),
                        norm_inf(q.dynamics.generator.entries)});
    }
  res.tolerance = tol_scale(100 * opt.tol, {scale});
  if (res.detail.empty()) res.detail = "spectral splitting of b in the Gram";
}

void check_ccr_fields(const CheckOptions& opt, CheckResult& res) {
  Rng rng(sub_seed(opt.seed, res.name));
  double scale = 1.0;
  for (int t = 0; t < opt.trials; ++t) {
    QuantizedSystem q = random_quantized(Species::NeutralBosonic, rng, opt);
    int sector = q.fock.cutoff - 2;
    for (int p = 0; p < 4; ++p) {
      RVec y1 = rng.real_vector(q.dim()), y2 = rng.real_vector(q.dim());
      Mat f1 = field(q, y1.cast<Complex>()).matrix;
      Mat f2 = field(q, y2.cast<Complex>()).matrix;
      Complex c(0.0, y1.dot(q.phase.form.real() * y2));
      bump(res, sector_residual(q.fock, Mat(f1 * f2 - f2 * f1),
                                scalar_block(c, q.fock.dim()), sector));
      scale = std::max(scale, std::abs(c));
    }
  }
  res.tolerance = tol_scale(100 * opt.tol, {scale});
  if (res.detail.empty()) res.detail = "bosonic commutator on safe sectors";
}

void check_car_fields(const CheckOptions& opt, CheckResult& res) {
  Rng rng(sub_seed(opt.seed, res.name));
  double scale = 1.0;
  for (int t = 0; t < opt.trials; ++t) {
    QuantizedSystem q = random_quantized(Species::NeutralFermionic, rng, opt);
    for (int p = 0; p < 4; ++p) {
      RVec y1 = rng.real_vector(q.dim()), y2 = rng.real_vector(q.dim());
      Mat f1 = field(q, y1.cast<Complex>()).matrix;
      Mat f2 = field(q, y2.cast<Complex>()).matrix;
      Complex c(2.0 * y1.dot(q.phase.form.real() * y2), 0.0);
      bump(res, norm_inf(Mat(f1 * f2 + f2 * f1 -
                             scalar_block(c, q.fock.dim()))));
      scale = std::max(scale, std::abs(c));
    }
  }
  res.tolerance = tol_scale(100 * opt.tol, {scale});
  if (res.detail.empty()) res.detail = "fermionic anticommutator, full space";
}

void check_ccr_charged(const CheckOptions& opt, CheckResult& res) {
  Rng rng(sub_seed(opt.seed, res.name));
  double scale = 1.0;
  for (int t = 0; t < opt.trials; ++t) {
    QuantizedSystem q = random_quantized(Species::ChargedBosonic, rng, opt);
    int sector = q.fock.cutoff - 2;
    for (int p = 0; p < 4; ++p) {
      Vec y1 = rng.complex_vector(q.dim()), y2 = rng.complex_vector(q.dim());
      Mat a1 = psi(q, y1).matrix;
      Mat a2s = psi_star(q, y2).matrix;
      Mat a2 = psi(q, y2).matrix;
      Complex c = Complex(0, 1) *
                  (y1.adjoint() * q.phase.form.entries * y2)(0, 0);
      bump(res, sector_residual(q.fock, Mat(a1 * a2s - a2s * a1),
                                scalar_block(c, q.fock.dim()), sector));
      bump(res, sector_residual(q.fock, Mat(a1 * a2 - a2 * a1),
                                Mat::Zero(q.fock.dim(), q.fock.dim()),
                                sector));
      scale = std::max(scale, std::abs(c));
    }
  }
  res.tolerance = tol_scale(100 * opt.tol, {scale});
  if (res.detail.empty())
    res.detail = "[psi, psi*] pairs against the charged form";
}

void check_car_charged(const CheckOptions& opt, CheckResult& res) {
  Rng rng(sub_seed(opt.seed, res.name));
  double scale = 1.0;
  for (int t = 0; t < opt.trials; ++t) {
    QuantizedSystem q = random_quantized(Species::ChargedFermionic, rng, opt);
    for (int p = 0; p < 4; ++p) {
      Vec y1 = rng.complex_vector(q.dim()), y2 = rng.complex_vector(q.dim());
      Mat a1 = psi(q, y1).matrix;
      Mat a2s = psi_star(q, y2).matrix;
      Mat a2 = psi(q, y2).matrix;
      Complex c = (y1.adjoint() * q.phase.form.entries * y2)(0, 0);
      bump(res, norm_inf(Mat(a1 * a2s + a2s * a1 -
                             scalar_block(c, q.fock.dim()))));
      bump(res, norm_inf(Mat(a1 * a2 + a2 * a1)));
      scale = std::max(scale, std::abs(c));
    }
  }
  res.tolerance = tol_scale(100 * opt.tol, {scale});
  if (res.detail.empty())
    res.detail = "{psi, psi*} pairs against the scalar product";
}

void check_weyl_relation(const CheckOptions& opt, CheckResult& res) {
  Rng rng(sub_seed(opt.seed, res.name));
  int cutoff = std::max(opt.cutoff, 10);
  for (int t = 0; t < opt.trials; ++t) {
    QuantizedSystem q =
        random_quantized(Species::NeutralBosonic, rng, opt, cutoff);
    for (int p = 0; p < 2; ++p) {
      RVec y1 = rng.real_vector(q.dim()), y2 = rng.real_vector(q.dim());
      y1 *= 0.7 / y1.norm();
      y2 *= 0.7 / y2.norm();
      WeylResult w1 = weyl(q.fock, field(q, y1.cast<Complex>()).matrix);
      WeylResult w2 = weyl(q.fock, field(q, y2.cast<Complex>()).matrix);
      WeylResult w12 =
          weyl(q.fock, field(q, (y1 + y2).cast<Complex>()).matrix);
      bump(res, norm_inf(Mat(w1.w.adjoint() * w1.w -
                             Mat::Identity(q.fock.dim(), q.fock.dim()))));
      Complex phase =
          std::exp(Complex(0, -0.5 * y1.dot(q.phase.form.real() * y2)));
      bump(res, sector_residual(q.fock, Mat(w1.w * w2.w), Mat(phase * w12.w),
                                1));
    }
  }
  res.tolerance = 1e-6;
  if (res.detail.empty())
    res.detail = "group law on low sectors, exact unitarity";
}

void check_field_adjoints(const CheckOptions& opt, CheckResult& res) {
  Rng rng(sub_seed(opt.seed, res.name));
  for (Species s : kAllSpecies) {
    QuantizedSystem q = random_quantized(s, rng, opt);
    for (int p = 0; p < 3; ++p) {
      if (!is_charged(s)) {
        Mat f = field(q, rng.real_vector(q.dim()).cast<Complex>()).matrix;
        bump(res, norm_inf(Mat(f - f.adjoint())));
      } else {
        Vec y = rng.complex_vector(q.dim());
        bump(res, norm_inf(Mat(psi(q, y).matrix -
                               psi_star(q, y).matrix.adjoint())));
      }
      Vec z = rng.complex_vector(q.modes());
      bump(res, norm_inf(Mat(annihilation(q.fock, z) -
                             creation(q.fock, z).adjoint())));
    }
  }
  res.tolerance = 100 * opt.tol;
  if (res.detail.empty())
    res.detail = "phi self-adjoint, psi = psi*^dag, a(z) = a*(z)^dag";
}

void check_vacuum_state(const CheckOptions& opt, CheckResult& res) {
  Rng rng(sub_seed(opt.seed, res.name));
  for (Species s : kAllSpecies)
    for (int t = 0; t < opt.trials; ++t) {
      QuantizedSystem q = random_quantized(s, rng, opt);
      bump(res, q.r_vacuum);
      Vec om = vacuum(q.fock);
      Vec z = rng.complex_vector(q.modes());
      bump(res, (annihilation(q.fock, z) * om).norm());
    }
  res.tolerance = 100 * opt.tol;
  if (res.detail.empty()) res.detail = "H vacuum = 0 and a(z) vacuum = 0";
}

void check_positivity(const CheckOptions& opt, CheckResult& res) {
  Rng rng(sub_seed(opt.seed, res.name));
  for (Species s : kAllSpecies)
    for (int t = 0; t < opt.trials; ++t) {
      QuantizedSystem q = random_quantized(s, rng, opt);
      std::vector<double> eigs = sorted_eigs(q.hamiltonian);
      bump(res, std::max(0.0, -eigs.front()));
      std::size_t nker = 0;
      for (double e : eigs)
        if (std::abs(e) <= 1e-8) ++nker;
      expect(res, nker == 1, "ker H must be spanned by the vacuum");
    }
  res.tolerance = 100 * opt.tol;
  if (res.detail.empty()) res.detail = "H >= 0 with one-dimensional kernel";
}

void check_charge_commutation(const CheckOptions& opt, CheckResult& res) {
  Rng rng(sub_seed(opt.seed, res.name));
  double scale = 1.0;
  for (Species s : kCharged)
    for (int t = 0; t < opt.trials; ++t) {
      QuantizedSystem q = random_quantized(s, rng, opt);
      bump(res, norm_inf(Mat(q.hamiltonian * q.charge -
                             q.charge * q.hamiltonian)));
      for (double e : sorted_eigs(q.charge))
        bump(res, std::abs(e - std::round(e)));
      scale = std::max(scale, norm_inf(q.hamiltonian));
    }
  res.tolerance = tol_scale(100 * opt.tol, {scale});
  if (res.detail.empty()) res.detail = "[H, Q] = 0 and integer Q spectrum";
}

void check_charge_rotation(const CheckOptions& opt, CheckResult& res) {
  Rng rng(sub_seed(opt.seed, res.name));
  for (Species s : kCharged)
    for (int t = 0; t < opt.trials; ++t) {
      QuantizedSystem q = random_quantized(s, rng, opt);
      std::vector<Vec> ys;
      for (int p = 0; p < 3; ++p) ys.push_back(rng.complex_vector(q.dim()));
      ResidualReport rep = verify_charge_rotation(
          q, {M_PI / 7, M_PI / 2, M_PI}, ys, opt.tol);
      bump(res, rep.max_residual);
      res.tolerance = std::max(res.tolerance, rep.tolerance);
    }
  if (res.detail.empty())
    res.detail = "e^{i theta Q} rotates psi* by e^{i theta}";
}

void check_intertwining(const CheckOptions& opt, CheckResult& res) {
  Rng rng(sub_seed(opt.seed, res.name));
  for (Species s : kAllSpecies)
    for (int t = 0; t < opt.trials; ++t) {
      QuantizedSystem q = random_quantized(s, rng, opt);
      std::vector<Vec> ys;
      for (int p = 0; p < 3; ++p)
        ys.push_back(is_charged(s)
                         ? rng.complex_vector(q.dim())
                         : Vec(rng.real_vector(q.dim()).cast<Complex>()));
      ResidualReport rep = verify_intertwining(q, {0.25, 0.7}, ys, opt.tol);
      bump(res, rep.max_residual);
      res.tolerance = std::max(res.tolerance, rep.tolerance);
    }
  if (res.detail.empty())
    res.detail = "Heisenberg evolution matches the classical flow";
}

void check_functor_multiplicativity(const CheckOptions& opt,
                                    CheckResult& res) {
  Rng rng(sub_seed(opt.seed, res.name));
  for (Statistics st : {Statistics::Bose, Statistics::Fermi}) {
    int modes = st == Statistics::Bose ? 2 : 3;
    FockRep f = build_fock(st, modes, opt.cutoff);
    bump(res, norm_inf(Mat(gamma_lift(f, Mat::Identity(modes, modes)) -
                           Mat::Identity(f.dim(), f.dim()))));
    for (int t = 0; t < opt.trials; ++t) {
      Mat u1 = rand_unitary(rng, modes), u2 = rand_unitary(rng, modes);
      bump(res, norm_inf(Mat(gamma_lift(f, Mat(u1 * u2)) -
                             gamma_lift(f, u1) * gamma_lift(f, u2))));
    }
  }
  res.tolerance = 100 * opt.tol;
  if (res.detail.empty())
    res.detail = "Gamma(m1 m2) = Gamma(m1) Gamma(m2), Gamma(1) = 1";
}

void check_functor_exponential(const CheckOptions& opt, CheckResult& res) {
  Rng rng(sub_seed(opt.seed, res.name));
  for (Statistics st : {Statistics::Bose, Statistics::Fermi}) {
    int modes = st == Statistics::Bose ? 2 : 3;
    FockRep f = build_fock(st, modes, opt.cutoff);
    for (int t = 0; t < opt.trials; ++t) {
      Mat g = rng.complex_matrix(modes, modes);
      Mat h = (g + g.adjoint()) / 2.0;
      double tt = rng.uniform(0.2, 1.2);
      bump(res, norm_inf(Mat(
                    gamma_lift(f, herm_phase_exp(h, tt, res.name)) -
                    herm_phase_exp(d_gamma(f, h), tt, res.name))));
    }
  }
  res.tolerance = 100 * opt.tol;
  if (res.detail.empty()) res.detail = "Gamma(e^{ith}) = e^{it dGamma(h)}";
}

void check_dgamma_commutator(const CheckOptions& opt, CheckResult& res) {
  Rng rng(sub_seed(opt.seed, res.name));
  double scale = 1.0;
  for (Statistics st : {Statistics::Bose, Statistics::Fermi}) {
    int modes = st == Statistics::Bose ? 2 : 3;
    FockRep f = build_fock(st, modes, opt.cutoff);
    for (int t = 0; t < opt.trials; ++t) {
      Mat h1 = rng.complex_matrix(modes, modes);
      Mat h2 = rng.complex_matrix(modes, modes);
      Mat lhs = d_gamma(f, h1) * d_gamma(f, h2) -
                d_gamma(f, h2) * d_gamma(f, h1);
      Mat rhs = d_gamma(f, Mat(h1 * h2 - h2 * h1));
      bump(res, norm_inf(Mat(lhs - rhs)));
      scale = std::max(scale, norm_inf(rhs));
    }
  }
  res.tolerance = tol_scale(100 * opt.tol, {scale});
  if (res.detail.empty())
    res.detail = "[dGamma(h1), dGamma(h2)] = dGamma([h1, h2])";
}

void check_number_parity(const CheckOptions& opt, CheckResult& res) {
  Rng rng(sub_seed(opt.seed, res.name));
  for (Statistics st : {Statistics::Bose, Statistics::Fermi}) {
    int modes = st == Statistics::Bose ? 2 : 3;
    FockRep f = build_fock(st, modes, opt.cutoff);
    Mat eye = Mat::Identity(f.dim(), f.dim());
    Mat par = parity_op(f);
    bump(res, norm_inf(Mat(number_op(f) -
                           d_gamma(f, Mat::Identity(modes, modes)))));
    bump(res, norm_inf(Mat(par - gamma_lift(f, Mat(-Mat::Identity(modes,
                                                                  modes))))));
    bump(res, norm_inf(Mat(par * par - eye)));
    Vec z = rng.complex_vector(modes);
    Mat cr = creation(f, z);
    bump(res, sector_residual(f, Mat(par * cr * par), Mat(-cr),
                              f.cutoff - 1));
  }
  res.tolerance = 100 * opt.tol;
  if (res.detail.empty())
    res.detail = "N = dGamma(1), (-1)^N = Gamma(-1) flips a*(z)";
}

void check_oracle_ladders(const CheckOptions& opt, CheckResult& res) {
  Rng rng(sub_seed(opt.seed, res.name));
  for (Statistics st : {Statistics::Bose, Statistics::Fermi}) {
    int modes = st == Statistics::Bose ? 2 : 3;
    int cutoff = st == Statistics::Bose ? 4 : modes;
    FockRep f = build_fock(st, modes, cutoff);
    for (int t = 0; t < opt.trials; ++t) {
      Vec z = rng.complex_vector(modes);
      bump(res, norm_inf(Mat(creation(f, z) - oracle_creation(f, z))));
      Mat h = rng.complex_matrix(modes, modes);
      bump(res, norm_inf(Mat(d_gamma(f, h) - oracle_d_gamma(f, h))));
    }
  }
  res.tolerance = 100 * opt.tol;
  if (res.detail.empty())
    res.detail = "occupation ladders match the tensor construction";
}

void check_spectra_models(const CheckOptions& opt, CheckResult& res) {
  // Harmonic ring against the closed-form dispersion.
  ChainSpec hs{3, 1.0, 0.5, true};
  ModelSystem hm = harmonic_chain(hs, opt.tol);
  QuantizedSystem hq = quantize(hm.phase, hm.dynamics, opt.cutoff, opt.tol);
  std::vector<double> disp = harmonic_dispersion(hs);
  bump(res, spectrum_diff(sorted_eigs(hq.h_z), disp));
  std::vector<double> expected;
  for (const auto& occ : hq.fock.basis) {
    double e = 0.0;
    for (std::size_t k = 0; k < occ.size(); ++k) e += occ[k] * disp[k];
    expected.push_back(e);
  }
  std::sort(expected.begin(), expected.end());
  bump(res, spectrum_diff(sorted_eigs(hq.hamiltonian), expected));

  // Charged fermions: many-body spectrum = subset sums of |eig b|.
  ChainSpec fs{3, 0.7, 0.4, true};
  ModelSystem fm = fermion_chain(fs, opt.tol);
  QuantizedSystem fq = quantize(fm.phase, fm.dynamics, opt.cutoff, opt.tol);
  std::vector<double> one;
  for (double e : sorted_eigs(fm.dynamics.generator.entries))
    one.push_back(std::abs(e));
  bump(res, spectrum_diff(sorted_eigs(fq.hamiltonian), subset_sums(one)));

  // Self-adjoint chain against its closed-form mode energies.
  ModelSystem mm = majorana_chain(4, 0.6, opt.tol);
  QuantizedSystem mq = quantize(mm.phase, mm.dynamics, opt.cutoff, opt.tol);
  bump(res, spectrum_diff(sorted_eigs(mq.hamiltonian),
                          subset_sums(majorana_dispersion(4, 0.6))));
  res.tolerance = 100 * opt.tol;
  if (res.detail.empty())
    res.detail = "lattice spectra against closed forms";
}

void check_neutral_charge_structure(const CheckOptions& opt,
                                    CheckResult& res) {
  Rng rng(sub_seed(opt.seed, res.name));
  for (Species s : kNeutral)
    for (int t = 0; t < opt.trials; ++t) {
      QuantizedSystem q = random_quantized(s, rng, opt);
      NeutralChargeStructure cs = charged_fields_from_neutral(
          q, make_operator(q.kahler->j.cast<Complex>()), opt.tol);
      bump(res, cs.r_contract);
      bump(res, cs.r_dynamics);
    }
  res.tolerance = 100 * opt.tol;
  if (res.detail.empty())
    res.detail = "j-split neutral fields obey the charged contract";
}

void check_time_reversal(const CheckOptions& opt, CheckResult& res) {
  Rng rng(sub_seed(opt.seed, res.name));
  auto run_case = [&](const PhaseSpace& phase, const LinearDynamics& dyn,
                      const OperatorMatrix& s, int want_sign) {
    SymmetryOp sym = validate_discrete_symmetry(
        phase, dyn, s, SymmetryKind::TimeReversal, opt.tol);
    bump(res, sym.r_form);
    bump(res, sym.r_dynamics);
    expect(res, sym.square_sign == want_sign, "classical square sign");
    QuantizedSystem q = quantize(phase, dyn, opt.cutoff, opt.tol);
    LiftedSymmetry L = lift(q, sym, opt.tol);
    expect(res, L.antilinear, "lifted time reversal must be antiunitary");
    bump(res, L.r_hamiltonian);
    bump(res, L.r_fields);
    bump(res, L.r_square);
    if (is_charged(phase.species)) bump(res, L.r_charge);
  };

  {  // oscillator ring, tau (q, p) = (q, -p)
    ModelSystem m = harmonic_chain({2, 1.0, 0.4, true}, opt.tol);
    RMat tau = RMat::Identity(4, 4);
    tau(2, 2) = tau(3, 3) = -1.0;
    run_case(m.phase, m.dynamics, make_operator(tau.cast<Complex>()), +1);
  }
  {  // self-adjoint chain, staggered sign flip
    ModelSystem m = majorana_chain(4, 0.7, opt.tol);
    RMat tau = RMat::Zero(4, 4);
    for (int j = 0; j < 4; ++j) tau(j, j) = (j % 2 == 0) ? 1.0 : -1.0;
    run_case(m.phase, m.dynamics, make_operator(tau.cast<Complex>()), +1);
  }
  {  // charged fermions with a real b: complex conjugation
    ModelSystem m = fermion_chain({4, 0.5, 0.3, false}, opt.tol);
    run_case(m.phase, m.dynamics,
             make_operator(Mat::Identity(4, 4), Linearity::Antilinear), +1);
  }
  {  // charged bosons with real data: complex conjugation
    Eigen::Index n = 3;
    RMat o = rand_orthogonal(rng, n);
    RVec f(n);
    for (Eigen::Index i = 0; i < n; ++i)
      f(i) = rng.uniform(0.3, 2.0) * (rng.integer() % 2 == 0 ? 1.0 : -1.0);
    RMat hf = o * f.asDiagonal() * o.transpose();
    hf = RMat((hf + hf.transpose()) / 2.0);
    RMat l = rng.real_matrix(n, n);
    RMat p = l * l.transpose() + 0.3 * RMat::Identity(n, n);
    RMat b = -hf.fullPivLu().solve(p);
    PhaseSpace phase = build_phase_space(
        Species::ChargedBosonic,
        make_form(Complex(0, 1) * hf.cast<Complex>(), FormKind::Sesquilinear),
        {}, opt.tol);
    LinearDynamics dyn = build_dynamics(phase, b.cast<Complex>(), opt.tol);
    run_case(phase, dyn,
             make_operator(Mat::Identity(n, n), Linearity::Antilinear), +1);
  }
  res.tolerance = 1e-8;
  if (res.detail.empty())
    res.detail = "T H T^-1 = H, T phi(y) T^-1 = phi(tau y) in all species";
}

void check_charge_reversal(const CheckOptions& opt, CheckResult& res) {
  Rng rng(sub_seed(opt.seed, res.name));
  auto run_case = [&](const PhaseSpace& phase, const LinearDynamics& dyn,
                      const OperatorMatrix& s) {
    SymmetryOp sym = validate_discrete_symmetry(
        phase, dyn, s, SymmetryKind::ChargeReversal, opt.tol);
    bump(res, sym.r_form);
    bump(res, sym.r_dynamics);
    QuantizedSystem q = quantize(phase, dyn, opt.cutoff, opt.tol);
    LiftedSymmetry L = lift(q, sym, opt.tol);
    bump(res, L.r_hamiltonian);
    bump(res, L.r_charge);
    bump(res, L.r_fields);
    bump(res, L.r_square);
  };

  {  // hopping chain with sublattice conjugation: chi b = -b chi
    ModelSystem m = fermion_chain({4, 0.0, 0.4, false}, opt.tol);
    Mat d = Mat::Zero(4, 4);
    for (int j = 0; j < 4; ++j) d(j, j) = (j % 2 == 0) ? 1.0 : -1.0;
    run_case(m.phase, m.dynamics, make_operator(d, Linearity::Antilinear));
  }
  {  // doubled neutral system: conjugation is the canonical charge reversal
    ModelSystem m = random_system(Species::NeutralBosonic, 4, rng.integer());
    ChargedDoubling dd = double_to_charged(m.phase, m.dynamics);
    run_case(dd.phase, dd.dynamics, dd.chi);
  }
  {
    ModelSystem m = random_system(Species::NeutralFermionic, 4, rng.integer());
    ChargedDoubling dd = double_to_charged(m.phase, m.dynamics);
    run_case(dd.phase, dd.dynamics, dd.chi);
  }
  res.tolerance = 1e-8;
  if (res.detail.empty())
    res.detail = "C Q C^-1 = -Q and C psi*(y) C^-1 = psi(chi y)";
}

void check_square_lifts(const CheckOptions& opt, CheckResult& res) {
  // tau^2 = -1 on a neutral fermionic doublet pair.
  {
    RMat j2(2, 2);
    j2 << 0, -1, 1, 0;
    RMat a = RMat::Zero(4, 4);
    a.topLeftCorner(2, 2) = 0.8 * j2;
    a.bottomRightCorner(2, 2) = -0.8 * j2;
    PhaseSpace phase = build_phase_space(
        Species::NeutralFermionic,
        make_form(Mat::Identity(4, 4), FormKind::RealBilinear), {}, opt.tol);
    LinearDynamics dyn = build_dynamics(phase, a.cast<Complex>(), opt.tol);
    RMat tau = RMat::Zero(4, 4);
    tau.topRightCorner(2, 2) = -RMat::Identity(2, 2);
    tau.bottomLeftCorner(2, 2) = RMat::Identity(2, 2);
    SymmetryOp sym = validate_discrete_symmetry(
        phase, dyn, make_operator(tau.cast<Complex>()),
        SymmetryKind::TimeReversal, opt.tol);
    expect(res, sym.square_sign == -1, "doublet tau must square to -1");
    QuantizedSystem q = quantize(phase, dyn, opt.cutoff, opt.tol);
    LiftedSymmetry L = lift(q, sym, opt.tol);
    expect(res, L.square_sign == -1, "lift must square to (-1)^N");
    bump(res, L.r_square);
    bump(res, L.r_hamiltonian);
  }
  // chi^2 = -1 on a two-mode charged fermionic system.
  {
    Mat b(2, 2);
    b << 1, 0, 0, -1;
    Mat j2(2, 2);
    j2 << 0, -1, 1, 0;
    PhaseSpace phase = build_phase_space(
        Species::ChargedFermionic,
        make_form(Mat::Identity(2, 2), FormKind::Sesquilinear), {}, opt.tol);
    LinearDynamics dyn = build_dynamics(phase, b, opt.tol);
    SymmetryOp sym = validate_discrete_symmetry(
        phase, dyn, make_operator(j2, Linearity::Antilinear),
        SymmetryKind::ChargeReversal, opt.tol);
    expect(res, sym.square_sign == -1, "chi must square to -1");
    QuantizedSystem q = quantize(phase, dyn, opt.cutoff, opt.tol);
    LiftedSymmetry L = lift(q, sym, opt.tol);
    expect(res, L.square_sign == -1, "lift must square to (-1)^N");
    bump(res, L.r_square);
    bump(res, L.r_charge);
  }
  // tau^2 = +1 lifts to an involution.
  {
    ModelSystem m = majorana_chain(4, 0.5, opt.tol);
    RMat tau = RMat::Zero(4, 4);
    for (int j = 0; j < 4; ++j) tau(j, j) = (j % 2 == 0) ? 1.0 : -1.0;
    SymmetryOp sym = validate_discrete_symmetry(
        m.phase, m.dynamics, make_operator(tau.cast<Complex>()),
        SymmetryKind::TimeReversal, opt.tol);
    expect(res, sym.square_sign == +1, "staggered tau must square to +1");
    QuantizedSystem q = quantize(m.phase, m.dynamics, opt.cutoff, opt.tol);
    LiftedSymmetry L = lift(q, sym, opt.tol);
    expect(res, L.square_sign == +1, "lift must square to 1");
    bump(res, L.r_square);
  }
  res.tolerance = 1e-8;
  if (res.detail.empty())
    res.detail = "S^2 = +-1 downstairs forces S^2 = 1 or (-1)^N upstairs";
}

void check_chi_tau_classes(const CheckOptions& opt, CheckResult& res) {
  Rng rng(sub_seed(opt.seed, res.name));
  Mat i2 = Mat::Identity(2, 2);
  Mat j2(2, 2), sz(2, 2), sx(2, 2);
  j2 << 0, -1, 1, 0;
  sz << 1, 0, 0, -1;
  sx << 0, 1, 1, 0;
  auto dsum = [](const Mat& a, const Mat& b) {
    Mat m = Mat::Zero(4, 4);
    m.topLeftCorner(2, 2) = a;
    m.bottomRightCorner(2, 2) = b;
    return m;
  };
  Mat off_sz = Mat::Zero(4, 4);
  off_sz.topRightCorner(2, 2) = -sz;
  off_sz.bottomLeftCorner(2, 2) = sz;

  struct Canon {
    Mat chi, tau;
    int schi, stau;
    bool anticommute;
  };
  std::vector<Canon> canon = {
      {dsum(i2, i2), dsum(i2, i2), +1, +1, false},
      {dsum(i2, i2), dsum(j2, j2), +1, -1, false},
      {dsum(j2, j2), dsum(i2, i2), -1, +1, false},
      {dsum(j2, j2), dsum(j2, j2), -1, -1, false},
      {dsum(sz, sz), dsum(sx, sx), +1, +1, true},
      {dsum(sz, sz), dsum(j2, j2), +1, -1, true},
      {dsum(j2, j2), dsum(sz, sz), -1, +1, true},
      {dsum(j2, j2), off_sz, -1, -1, true},
  };
  auto expected_row = [](int sc, int st) {
    if (sc > 0 && st > 0) return 0;
    if (sc < 0 && st < 0) return 1;
    if (sc > 0) return 2;
    return 3;
  };

  int seen[4] = {0, 0, 0, 0};
  for (int t = 0; t < std::max(2, opt.trials); ++t)
    for (const Canon& c : canon) {
      Mat v = rand_unitary(rng, 4);
      OperatorMatrix chi =
          make_operator(Mat(v * c.chi * v.transpose()), Linearity::Antilinear);
      OperatorMatrix tau =
          make_operator(Mat(v * c.tau * v.transpose()), Linearity::Antilinear);
      ChiTauClass cls = normalize_chi_tau(chi, tau, opt.tol);
      expect(res, cls.rescaled == c.anticommute,
             "rescaling exactly for anticommuting pairs");
      expect(res, cls.chi_sq == c.schi && cls.tau_sq == c.stau,
             "squares are conjugation invariants");
      expect(res, cls.row == expected_row(c.schi, c.stau),
             "class row determined by the squares");
      if (cls.row >= 0 && cls.row < 4) seen[cls.row]++;
    }
  expect(res, seen[0] > 0 && seen[1] > 0 && seen[2] > 0 && seen[3] > 0,
         "all four classes must occur");
  res.tolerance = 100 * opt.tol;
  if (res.detail.empty())
    res.detail = "normalized pairs fall into exactly four sign classes";
}

void check_doubling_roundtrip(const CheckOptions& opt, CheckResult& res) {
  Rng rng(sub_seed(opt.seed, res.name));
  for (Species s : kNeutral)
    for (int t = 0; t < opt.trials; ++t) {
      ModelSystem m = random_system(s, 4, rng.integer());
      ChargedDoubling dd = double_to_charged(m.phase, m.dynamics);
      NeutralReduction red =
          neutral_subspace(dd.phase, dd.dynamics, dd.chi, opt.tol);
      bump(res, red.r_restrict);
      bump(res, norm_inf(Mat(red.embedding.imag().cast<Complex>())));
      RMat o = red.embedding.real();
      bump(res, norm_inf(RMat(o.transpose() * m.phase.form.real() * o -
                              red.phase.form.real())));
      bump(res, norm_inf(RMat(
                    o.transpose() * m.dynamics.generator.entries.real() * o -
                    red.dynamics.generator.entries.real())));
      QuantizedSystem q0 = quantize(m.phase, m.dynamics, opt.cutoff, opt.tol);
      QuantizedSystem q1 =
          quantize(red.phase, red.dynamics, opt.cutoff, opt.tol);
      bump(res, spectrum_diff(sorted_eigs(q0.hamiltonian),
                              sorted_eigs(q1.hamiltonian)));
    }
  res.tolerance = 1e-8;
  if (res.detail.empty())
    res.detail = "double then reduce returns the system up to a rotation";
}

void check_bogoliubov_implementer(const CheckOptions& opt, CheckResult& res) {
  Rng rng(sub_seed(opt.seed, res.name));
  for (Species s : kAllSpecies) {
    QuantizedSystem q = random_quantized(s, rng, opt);
    // The flow itself preserves the complex structure.
    BogoliubovResult flow =
        bogoliubov_action(q, evolve(q.dynamics, 0.6), opt.tol);
    expect(res, flow.implemented, "the flow must be implemented");
    bump(res, flow.r_implementer);
    if (!is_charged(s)) {
      BogoliubovResult jr = bogoliubov_action(
          q, make_operator(q.kahler->j.cast<Complex>()), opt.tol);
      expect(res, jr.implemented, "j itself must be implemented");
      bump(res, jr.r_implementer);
    } else {
      BogoliubovResult rot = bogoliubov_action(
          q, charge_symmetry_from_j(make_operator(q.split->j), 0.8, opt.tol),
          opt.tol);
      expect(res, rot.implemented, "charge rotations must be implemented");
      bump(res, rot.r_implementer);
    }
  }
  {  // canonical but structure-breaking: no Gamma-form implementer
    ModelSystem m = fermion_chain({4, 0.5, 0.3, false}, opt.tol);
    QuantizedSystem q = quantize(m.phase, m.dynamics, opt.cutoff, opt.tol);
    BogoliubovResult r =
        bogoliubov_action(q, make_operator(rand_unitary(rng, 4)), opt.tol);
    expect(res, !r.implemented,
           "a generic unitary must not commute with the splitting");
    // scaling by 2 violates the contract
    bool threw = false;
    try {
      bogoliubov_action(q, make_operator(Mat(2.0 * Mat::Identity(4, 4))),
                        opt.tol);
    } catch (const Error& e) {
      threw = e.code() == ErrorCode::NotCanonical;
    }
    expect(res, threw, "non-canonical maps must be rejected");
  }
  {  // neutral structure-breaking case: a symplectic squeeze
    ModelSystem m = random_system(Species::NeutralBosonic, 4, rng.integer());
    QuantizedSystem q = quantize(m.phase, m.dynamics, opt.cutoff, opt.tol);
    RMat sym = rng.real_matrix(4, 4);
    sym = RMat((sym + sym.transpose()) / 4.0);
    RMat omega = m.phase.form.real();
    RMat gen = omega.fullPivLu().solve(sym);
    RMat r = matrix_exp(gen);
    BogoliubovResult br =
        bogoliubov_action(q, make_operator(r.cast<Complex>()), opt.tol);
    expect(res, !br.implemented, "a squeeze has no Gamma-form implementer");
    bump(res, std::max(0.0, opt.tol - br.r_structure));
  }
  res.tolerance = 1e-8;
  if (res.detail.empty())
    res.detail = "Gamma(r_Z) conjugates fields exactly when [r, j] = 0";
}

}  // namespace

const std::vector<CheckSpec>& check_registry() {
  static const std::vector<CheckSpec> registry = [] {
    std::vector<CheckSpec> v;
    auto add = [&v](std::string name, std::string anchor, auto fn) {
      v.push_back({std::move(name), std::move(anchor), fn});
    };
    add("bogoliubov_implementer",
        "[r, j] = 0  =>  Gamma(r_Z) phi(y) Gamma(r_Z)^-1 = phi(r y)",
        check_bogoliubov_implementer);
    add("car_charged",
        "{psi(y1), psi*(y2)} = (y1|y2) 1, {psi(y1), psi(y2)} = 0",
        check_car_charged);
    add("car_fields", "{phi(y1), phi(y2)} = 2 y1.(nu y2) 1", check_car_fields);
    add("ccr_charged",
        "[psi(y1), psi*(y2)] = i (y1|omega y2) 1, [psi(y1), psi(y2)] = 0",
        check_ccr_charged);
    add("ccr_fields", "[phi(y1), phi(y2)] = i y1.(omega y2) 1",
        check_ccr_fields);
    add("charge_commutation", "[H, Q] = 0, spec Q integer",
        check_charge_commutation);
    add("charge_reversal",
        "chi b = -b chi  =>  C Q C^-1 = -Q, C psi*(y) C^-1 = psi(chi y)",
        check_charge_reversal);
    add("charge_rotation",
        "e^{i theta Q} psi*(y) e^{-i theta Q} = psi*(e^{i theta} y)",
        check_charge_rotation);
    add("charged_splitting",
        "1 = 1_+ + 1_-, q = 1_+ - 1_-, [q, b] = 0, b = |b| q",
        check_charged_splitting);
    add("chi_tau_classes",
        "(chi^2, tau^2, (chi tau)^2) in {(+,+,+), (-,-,+), (+,-,-), (-,+,-)}",
        check_chi_tau_classes);
    add("dgamma_commutator", "[dGamma(h1), dGamma(h2)] = dGamma([h1, h2])",
        check_dgamma_commutator);
    add("doubling_roundtrip",
        "fixed points of chi on (CY, -ia) recover (Y, a)",
        check_doubling_roundtrip);
    add("field_adjoints", "phi(y)^dag = phi(y), psi(y) = psi*(y)^dag",
        check_field_adjoints);
    add("form_classification",
        "omega^T = -omega, nu > 0, (.|omega.)^dag = -(.|omega.), (.|.) > 0",
        check_form_classification);
    add("functor_exponential", "Gamma(e^{ith}) = e^{it dGamma(h)}",
        check_functor_exponential);
    add("functor_multiplicativity",
        "Gamma(m1 m2) = Gamma(m1) Gamma(m2), Gamma(1) = 1",
        check_functor_multiplicativity);
    add("holomorphic_basis", "Z = Ker(j - i), z^dag G z = 1",
        check_holomorphic_basis);
    add("intertwining", "e^{itH} phi(y) e^{-itH} = phi(r_t y)",
        check_intertwining);
    add("kahler_compatibility",
        "nu = omega j positive  <=>  j^T omega j = omega, j^2 = -1",
        check_kahler_compatibility);
    add("kahler_polar", "a = h j = j h, h > 0, j^2 = -1", check_kahler_polar);
    add("neutral_charge_structure",
        "psi*(y) = kappa(phi(y) - i phi(j y)) obeys the charged contract",
        check_neutral_charge_structure);
    add("number_parity", "N = dGamma(1), I = Gamma(-1) = (-1)^N",
        check_number_parity);
    add("oracle_ladders",
        "a*(z) = sqrt(n+1) Theta (z tensor .) on every grade",
        check_oracle_ladders);
    add("positivity", "H >= 0, Ker H = C vacuum", check_positivity);
    add("spectra_models",
        "spec H = occupation sums of the one-particle energies",
        check_spectra_models);
    add("square_lifts", "S^2 = +-1 lifts to Gamma(S)^2 = 1 or (-1)^N",
        check_square_lifts);
    add("stability_energy", "beta = omega a > 0 iff weakly stable",
        check_stability_energy);
    add("time_reversal",
        "tau r_t = r_{-t} tau  =>  T H T^-1 = H, T phi(y) T^-1 = phi(tau y)",
        check_time_reversal);
    add("vacuum_state", "H vacuum = 0, a(z) vacuum = 0", check_vacuum_state);
    add("weyl_relation",
        "W(y1) W(y2) = e^{-i/2 y1.(omega y2)} W(y1 + y2)",
        check_weyl_relation);
    std::sort(v.begin(), v.end(),
              [](const CheckSpec& a, const CheckSpec& b) {
                return a.name < b.name;
              });
    return v;
  }();
  return registry;
}

std::vector<CheckResult> run_checks(const std::vector<std::string>& names,
                                    const CheckOptions& opt) {
  const auto& registry = check_registry();
  std::vector<const CheckSpec*> todo;
  if (names.empty()) {
    for (const auto& spec : registry) todo.push_back(&spec);
  } else {
    for (const auto& n : names) {
      const CheckSpec* found = nullptr;
      for (const auto& spec : registry)
        if (spec.name == n) found = &spec;
      require(found != nullptr, ErrorCode::ConfigError,
              "unknown check: " + n);
      todo.push_back(found);
    }
  }

  std::vector<CheckResult> results(todo.size());
  std::atomic<std::size_t> next{0};
  auto worker = [&] {
    for (;;) {
      std::size_t i = next.fetch_add(1);
      if (i >= todo.size()) break;
      CheckResult& res = results[i];
      res.name = todo[i]->name;
      res.anchor = todo[i]->anchor;
      auto t0 = std::chrono::steady_clock::now();
      try {
        todo[i]->run(opt, res);
        res.passed = res.residual <= res.tolerance;
      } catch (const std::exception& e) {
        res.passed = false;
        if (!res.detail.empty()) res.detail += "; ";
        res.detail += std::string("error: ") + e.what();
      }
      res.seconds =
          std::chrono::duration<double>(std::chrono::steady_clock::now() - t0)
              .count();
    }
  };

  int jobs = std::max(1, opt.jobs);
  if (jobs == 1) {
    worker();
  } else {
    std::vector<std::thread> pool;
    for (int j = 0; j < jobs; ++j) pool.emplace_back(worker);
    for (auto& th : pool) th.join();
  }
  return results;
}

std::string serialize_report(const std::vector<CheckResult>& results,
                             const CheckOptions& opt) {
  std::vector<const CheckResult*> ordered;
  for (const auto& r : results) ordered.push_back(&r);
  std::sort(ordered.begin(), ordered.end(),
            [](const CheckResult* a, const CheckResult* b) {
              return a->name < b->name;
            });

  nlohmann::json j;
  j["schema"] = "fockq-report/1";
  j["options"] = {{"seed", opt.seed},
                  {"tol", opt.tol},
                  {"cutoff", opt.cutoff},
                  {"trials", opt.trials}};
  std::size_t passed = 0;
  nlohmann::json checks = nlohmann::json::array();
  for (const CheckResult* r : ordered) {
    if (r->passed) ++passed;
    // No timing in the serialized report: bytes depend only on the seed.
    checks.push_back({{"name", r->name},
                      {"anchor", r->anchor},
                      {"passed", r->passed},
                      {"residual", r->residual},
                      {"tolerance", r->tolerance},
                      {"detail", r->detail}});
  }
  j["summary"] = {{"total", ordered.size()},
                  {"passed", passed},
                  {"failed", ordered.size() - passed}};
  j["checks"] = checks;
  return j.dump(2) + "\n";
}

}  // namespace fockq
