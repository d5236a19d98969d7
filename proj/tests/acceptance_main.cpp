// Acceptance suite: end-to-end verification of the quantization library.
// Each criterion prints exactly one PASS/FAIL line; the exit code is the
// number of failed criteria.

#include <chrono>
#include <cstdio>
#include <functional>
#include <string>
#include <vector>

#include "fockq/models.hpp"
#include "fockq/symmetries.hpp"

using namespace fockq;

namespace {

int g_failures = 0;

void criterion(const std::string& name,
               const std::function<std::string()>& body) {
  auto t0 = std::chrono::steady_clock::now();
  bool ok = true;
  std::string detail;
  try {
    detail = body();
  } catch (const Error& e) {
    ok = false;
    detail = std::string("error [") + error_code_name(e.code()) + "] " +
             e.what();
  } catch (const std::exception& e) {
    ok = false;
    detail = std::string("exception: ") + e.what();
  }
  if (detail.rfind("FAIL", 0) == 0) ok = false;
  double ms = std::chrono::duration<double, std::milli>(
                  std::chrono::steady_clock::now() - t0)
                  .count();
  std::printf("%s %-28s %s (%.0f ms)\n", ok ? "PASS" : "FAIL", name.c_str(),
              detail.c_str(), ms);
  std::fflush(stdout);
  if (!ok) ++g_failures;
}

std::string failf(const char* fmt, double v) {
  char buf[160];
  std::snprintf(buf, sizeof buf, fmt, v);
  return std::string("FAIL ") + buf;
}

Mat rand_unitary(Rng& rng, Eigen::Index n) {
  Eigen::HouseholderQR<Mat> qr(rng.complex_matrix(n, n));
  return qr.householderQ() * Mat::Identity(n, n);
}

RVec sorted_eigs(const Mat& m) {
  return Eigen::SelfAdjointEigenSolver<Mat>(m).eigenvalues();
}

// ---- 1: polar decomposition into (h, j) across seeded neutral systems ----
std::string polar_kahler_batch() {
  auto t0 = std::chrono::steady_clock::now();
  int count = 0;
  double worst = 0.0, worst_form = 0.0;
  for (Species sp : {Species::NeutralBosonic, Species::NeutralFermionic})
    for (Eigen::Index dim : {2, 4, 6, 8})
      for (std::uint64_t seed = 0; seed < 25; ++seed) {
        ModelSystem m = random_system(sp, dim, 1000 * dim + seed);
        KahlerData k = polar_kahler(m.phase, m.dynamics);
        worst = std::max({worst, k.r_involution, k.r_commute, k.r_factor});
        worst = std::max(worst,
                         norm_inf(Mat(k.z_gram -
                                      Mat::Identity(dim / 2, dim / 2))));
        worst_form = std::max(worst_form, k.r_form);
        ++count;
      }
  double secs = std::chrono::duration<double>(
                    std::chrono::steady_clock::now() - t0)
                    .count();
  if (worst > 1e-10) return failf("structure residual %.3e > 1e-10", worst);
  if (worst_form > 1e-8)
    return failf("form reproduction %.3e > 1e-8", worst_form);
  if (secs > 10.0) return failf("took %.1f s > 10 s", secs);
  char buf[160];
  std::snprintf(buf, sizeof buf,
                "%d systems, structure %.1e, form %.1e", count, worst,
                worst_form);
  return buf;
}

// ---- 2: anticommutation relations, exact on the complete fermion space ----
std::string car_full_space() {
  double worst = 0.0;
  Rng rng(101);

  // neutral: {phi(y1), phi(y2)} = 2 y1.nu y2
  for (int variant = 0; variant < 3; ++variant) {
    ModelSystem m = variant == 0
                        ? majorana_chain(6, 0.8)
                        : random_system(Species::NeutralFermionic,
                                        variant == 1 ? 4 : 6, 55 + variant);
    QuantizedSystem sys = quantize(m.phase, m.dynamics, 0);
    RMat nu = m.phase.form.real();
    Mat eye = Mat::Identity(sys.fock.dim(), sys.fock.dim());
    for (int t = 0; t < 4; ++t) {
      RVec y1 = rng.real_vector(m.phase.dim());
      RVec y2 = rng.real_vector(m.phase.dim());
      Mat f1 = field(sys, y1.cast<Complex>()).matrix;
      Mat f2 = field(sys, y2.cast<Complex>()).matrix;
      worst = std::max(worst, norm_inf(Mat(f1 * f2 + f2 * f1 -
                                           2.0 * y1.dot(nu * y2) * eye)));
    }
  }

  // charged: {psi(y1), psi*(y2)} = (y1|F y2), {psi, psi} = 0
  for (int variant = 0; variant < 2; ++variant) {
    ModelSystem m = variant == 0 ? fermion_chain(ChainSpec{})
                                 : random_system(Species::ChargedFermionic, 3,
                                                 77);
    QuantizedSystem sys = quantize(m.phase, m.dynamics, 0);
    Mat eye = Mat::Identity(sys.fock.dim(), sys.fock.dim());
    for (int t = 0; t < 4; ++t) {
      Vec y1 = rng.complex_vector(m.phase.dim());
      Vec y2 = rng.complex_vector(m.phase.dim());
      Mat p1 = psi(sys, y1).matrix;
      Mat p2s = psi_star(sys, y2).matrix;
      Mat p2 = psi(sys, y2).matrix;
      Complex pair = (y1.adjoint() * m.phase.form.entries * y2)(0, 0);
      worst = std::max(worst, norm_inf(Mat(p1 * p2s + p2s * p1 - pair * eye)));
      worst = std::max(worst, norm_inf(Mat(p1 * p2 + p2 * p1)));
    }
  }
  if (worst > 1e-12) return failf("residual %.3e > 1e-12", worst);
  char buf[96];
  std::snprintf(buf, sizeof buf, "max residual %.1e", worst);
  return buf;
}

// ---- 3: commutation relations on the sectors shielded from truncation ----
std::string ccr_safe_sectors() {
  const int cutoff = 12;
  double worst = 0.0;
  Rng rng(202);

  ModelSystem nb = random_system(Species::NeutralBosonic, 4, 7);
  QuantizedSystem snb = quantize(nb.phase, nb.dynamics, cutoff);
  RMat w = nb.phase.form.real();
  int sector = cutoff - 2;
  Eigen::Index sd = sector_dim(snb.fock, sector);
  for (int t = 0; t < 4; ++t) {
    RVec y1 = rng.real_vector(4), y2 = rng.real_vector(4);
    Mat f1 = field(snb, y1.cast<Complex>()).matrix;
    Mat f2 = field(snb, y2.cast<Complex>()).matrix;
    Mat br = f1 * f2 - f2 * f1;
    worst = std::max(
        worst, norm_inf(Mat(br.topLeftCorner(sd, sd) -
                            Complex(0, y1.dot(w * y2)) *
                                Mat::Identity(sd, sd))));
  }

  ModelSystem cb = random_system(Species::ChargedBosonic, 2, 9);
  QuantizedSystem scb = quantize(cb.phase, cb.dynamics, cutoff);
  Eigen::Index sdc = sector_dim(scb.fock, sector);
  for (int t = 0; t < 4; ++t) {
    Vec y1 = rng.complex_vector(2), y2 = rng.complex_vector(2);
    Mat p1 = psi(scb, y1).matrix;
    Mat p2s = psi_star(scb, y2).matrix;
    Mat p2 = psi(scb, y2).matrix;
    Complex pair = (y1.adjoint() * cb.phase.form.entries * y2)(0, 0);
    Mat br = p1 * p2s - p2s * p1;
    worst = std::max(worst,
                     norm_inf(Mat(br.topLeftCorner(sdc, sdc) -
                                  Complex(0, 1) * pair *
                                      Mat::Identity(sdc, sdc))));
    Mat br0 = p1 * p2 - p2 * p1;
    worst = std::max(worst, norm_inf(Mat(br0.topLeftCorner(sdc, sdc))));
  }
  if (worst > 1e-9) return failf("residual %.3e > 1e-9", worst);
  char buf[96];
  std::snprintf(buf, sizeof buf, "cutoff %d, max residual %.1e", cutoff,
                worst);
  return buf;
}

// ---- 4: multiplication law of the exponentiated fields ----
std::string weyl_group_law() {
  Mat wform(2, 2);
  wform << 0, -1, 1, 0;
  PhaseSpace nb = build_phase_space(Species::NeutralBosonic,
                                    make_form(wform, FormKind::RealBilinear));
  Mat a(2, 2);
  a << 0, 1, -1, 0;
  QuantizedSystem sys = quantize(nb, build_dynamics(nb, a), 16);

  Rng rng(303);
  double worst = 0.0, unit = 0.0;
  RMat w = nb.form.real();
  for (int t = 0; t < 4; ++t) {
    RVec y1 = rng.real_vector(2), y2 = rng.real_vector(2);
    y1 *= 0.7 / y1.norm();
    y2 *= 0.7 / y2.norm();
    WeylResult w1 = weyl(sys.fock, field(sys, y1.cast<Complex>()).matrix);
    WeylResult w2 = weyl(sys.fock, field(sys, y2.cast<Complex>()).matrix);
    WeylResult w12 =
        weyl(sys.fock, field(sys, Vec((y1 + y2).cast<Complex>())).matrix);
    unit = std::max(unit,
                    norm_inf(Mat(w1.w.adjoint() * w1.w -
                                 Mat::Identity(sys.fock.dim(),
                                               sys.fock.dim()))));
    Complex phase = std::exp(Complex(0, -0.5 * y1.dot(w * y2)));
    worst = std::max(worst, sector_residual(sys.fock, Mat(w1.w * w2.w),
                                            Mat(phase * w12.w), 8));
  }
  if (unit > 1e-12) return failf("unitarity defect %.3e > 1e-12", unit);
  if (worst > 1e-6) return failf("group law residual %.3e > 1e-6", worst);
  char buf[96];
  std::snprintf(buf, sizeof buf, "unitary %.1e, group law %.1e", unit, worst);
  return buf;
}

// ---- 5: Heisenberg evolution of fields matches the classical flow ----
std::string dynamics_intertwining() {
  std::vector<double> times = {0.3, 0.7, 1.1};
  Rng rng(404);
  double worst_f = 0.0, worst_b = 0.0;

  {
    ModelSystem m = majorana_chain(6, 0.8);
    QuantizedSystem sys = quantize(m.phase, m.dynamics, 0);
    std::vector<Vec> ys;
    for (int i = 0; i < 3; ++i)
      ys.push_back(rng.real_vector(6).cast<Complex>());
    worst_f = std::max(worst_f,
                       verify_intertwining(sys, times, ys).max_residual);
  }
  {
    ModelSystem m = fermion_chain(ChainSpec{});
    QuantizedSystem sys = quantize(m.phase, m.dynamics, 0);
    std::vector<Vec> ys;
    for (int i = 0; i < 3; ++i) ys.push_back(rng.complex_vector(4));
    worst_f = std::max(worst_f,
                       verify_intertwining(sys, times, ys).max_residual);
  }
  {
    ChainSpec spec;
    spec.sites = 2;
    ModelSystem m = harmonic_chain(spec);
    QuantizedSystem sys = quantize(m.phase, m.dynamics, 8);
    std::vector<Vec> ys;
    for (int i = 0; i < 3; ++i)
      ys.push_back(rng.real_vector(4).cast<Complex>());
    worst_b = std::max(worst_b,
                       verify_intertwining(sys, times, ys).max_residual);
  }
  {
    ModelSystem m = random_system(Species::ChargedBosonic, 2, 21);
    QuantizedSystem sys = quantize(m.phase, m.dynamics, 8);
    std::vector<Vec> ys;
    for (int i = 0; i < 3; ++i) ys.push_back(rng.complex_vector(2));
    worst_b = std::max(worst_b,
                       verify_intertwining(sys, times, ys).max_residual);
  }
  if (worst_f > 1e-10) return failf("fermionic residual %.3e > 1e-10", worst_f);
  if (worst_b > 1e-8) return failf("bosonic residual %.3e > 1e-8", worst_b);
  char buf[96];
  std::snprintf(buf, sizeof buf, "fermionic %.1e, bosonic %.1e", worst_f,
                worst_b);
  return buf;
}

// ---- 6: the vacuum is the unique ground state at energy zero ----
std::string vacuum_and_positivity() {
  double worst_neg = 0.0, worst_vac = 0.0;
  for (Species sp : {Species::NeutralBosonic, Species::NeutralFermionic,
                     Species::ChargedBosonic, Species::ChargedFermionic}) {
    Eigen::Index dim = is_charged(sp) ? 3 : 4;
    for (std::uint64_t seed : {3ull, 8ull}) {
      ModelSystem m = random_system(sp, dim, seed);
      QuantizedSystem sys =
          quantize(m.phase, m.dynamics, is_bosonic(sp) ? 5 : 0);
      worst_neg = std::max(worst_neg, sys.r_positive);
      worst_vac = std::max(worst_vac, sys.r_vacuum);
      RVec eigs = sorted_eigs(sys.hamiltonian);
      int kernel = 0;
      for (Eigen::Index i = 0; i < eigs.size(); ++i)
        if (std::abs(eigs(i)) < sys.h_z_min / 2) ++kernel;
      if (kernel != 1)
        return failf("ground space dimension %.0f != 1", double(kernel));
    }
  }
  if (worst_neg > 1e-12) return failf("negative part %.3e > 1e-12", worst_neg);
  if (worst_vac > 1e-12) return failf("|H vacuum| %.3e > 1e-12", worst_vac);
  char buf[96];
  std::snprintf(buf, sizeof buf, "negativity %.1e, |H vac| %.1e", worst_neg,
                worst_vac);
  return buf;
}

// ---- 7: charge operator, rotation covariance, reversal signs ----
std::string charge_structure() {
  double worst_comm = 0.0, worst_rot = 0.0, worst_rev = 0.0;
  Rng rng(505);
  std::vector<double> thetas = {M_PI / 7, M_PI / 2, M_PI};

  ModelSystem cf = fermion_chain(ChainSpec{});
  QuantizedSystem scf = quantize(cf.phase, cf.dynamics, 0);
  ModelSystem cb = random_system(Species::ChargedBosonic, 2, 31);
  QuantizedSystem scb = quantize(cb.phase, cb.dynamics, 6);

  for (const QuantizedSystem* sys : {&scf, &scb}) {
    worst_comm = std::max(
        worst_comm, norm_inf(Mat(sys->hamiltonian * sys->charge -
                                 sys->charge * sys->hamiltonian)));
    std::vector<Vec> ys;
    for (int i = 0; i < 3; ++i) ys.push_back(rng.complex_vector(sys->dim()));
    worst_rot = std::max(
        worst_rot,
        verify_charge_rotation(*sys, thetas, ys).max_residual);
  }

  // reversal signs on the complexified oscillator pair: time reversal
  // preserves Q, charge reversal flips it
  ChainSpec spec;
  spec.sites = 2;
  ModelSystem chain = harmonic_chain(spec);
  ChargedDoubling dbl = double_to_charged(chain.phase, chain.dynamics);
  QuantizedSystem sdb = quantize(dbl.phase, dbl.dynamics, 3);

  Mat tau = Mat::Identity(4, 4);
  tau(2, 2) = -1;
  tau(3, 3) = -1;
  SymmetryOp trev = validate_discrete_symmetry(
      dbl.phase, dbl.dynamics, make_operator(tau, Linearity::Antilinear),
      SymmetryKind::TimeReversal);
  LiftedSymmetry lt = lift(sdb, trev);
  worst_rev = std::max(worst_rev, lt.r_charge);

  SymmetryOp crev = validate_discrete_symmetry(
      dbl.phase, dbl.dynamics, dbl.chi, SymmetryKind::ChargeReversal);
  LiftedSymmetry lc = lift(sdb, crev);
  worst_rev = std::max(worst_rev, lc.r_charge);

  if (worst_comm > 1e-12) return failf("[H,Q] %.3e > 1e-12", worst_comm);
  if (worst_rot > 1e-9) return failf("rotation residual %.3e > 1e-9", worst_rot);
  if (worst_rev > 1e-10) return failf("reversal residual %.3e > 1e-10", worst_rev);
  char buf[120];
  std::snprintf(buf, sizeof buf, "[H,Q] %.1e, rotations %.1e", worst_comm,
                worst_rot);
  return buf;
}

// ---- 8: squares of lifted involutions land in the four sign classes ----
std::string antiunitary_square_classes() {
  // (a) concrete realizations of both squares for T and C
  struct Case {
    const char* label;
    int want;
  };
  double worst = 0.0;

  // mechanical chain: T^2 = +1
  {
    ChainSpec spec;
    spec.sites = 3;
    ModelSystem m = harmonic_chain(spec);
    Mat tau = Mat::Identity(6, 6);
    tau.bottomRightCorner(3, 3) *= -1.0;
    SymmetryOp s = validate_discrete_symmetry(
        m.phase, m.dynamics, make_operator(tau), SymmetryKind::TimeReversal);
    QuantizedSystem sys = quantize(m.phase, m.dynamics, 3);
    LiftedSymmetry ls = lift(sys, s);
    if (ls.square_sign != 1) return "FAIL chain time reversal square != +1";
    worst = std::max(worst, ls.r_square);
  }
  // spin-doublet fermion: Kramers T^2 = -1
  {
    Mat f = Mat::Identity(2, 2);
    PhaseSpace cf = build_phase_space(Species::ChargedFermionic,
                                      make_form(f, FormKind::Sesquilinear));
    LinearDynamics dyn = build_dynamics(cf, Mat::Identity(2, 2));
    Mat j2(2, 2);
    j2 << 0, -1, 1, 0;
    SymmetryOp s = validate_discrete_symmetry(
        cf, dyn, make_operator(j2, Linearity::Antilinear),
        SymmetryKind::TimeReversal);
    if (s.square_sign != -1) return "FAIL Kramers square != -1 classically";
    QuantizedSystem sys = quantize(cf, dyn, 0);
    LiftedSymmetry ls = lift(sys, s);
    if (ls.square_sign != -1) return "FAIL Kramers lift square != -1";
    worst = std::max(worst, ls.r_square);
  }
  // self-adjoint chain: staggered T^2 = +1
  {
    ModelSystem m = majorana_chain(4, 0.6);
    Mat tau = Mat::Identity(4, 4);
    for (int j = 0; j < 4; ++j) tau(j, j) = (j % 2 == 0) ? 1.0 : -1.0;
    SymmetryOp s = validate_discrete_symmetry(
        m.phase, m.dynamics, make_operator(tau), SymmetryKind::TimeReversal);
    QuantizedSystem sys = quantize(m.phase, m.dynamics, 0);
    LiftedSymmetry ls = lift(sys, s);
    if (ls.square_sign != 1) return "FAIL staggered reversal square != +1";
    worst = std::max(worst, ls.r_square);
  }
  // complexified pair: C^2 = +1; sublattice fermion reversal: C^2 = -1
  {
    ChainSpec spec;
    spec.sites = 2;
    ModelSystem chain = harmonic_chain(spec);
    ChargedDoubling dbl = double_to_charged(chain.phase, chain.dynamics);
    SymmetryOp s = validate_discrete_symmetry(
        dbl.phase, dbl.dynamics, dbl.chi, SymmetryKind::ChargeReversal);
    QuantizedSystem sys = quantize(dbl.phase, dbl.dynamics, 3);
    LiftedSymmetry ls = lift(sys, s);
    if (ls.square_sign != 1) return "FAIL doubling reversal square != +1";
    worst = std::max(worst, ls.r_square);
  }
  {
    Mat f = Mat::Identity(2, 2);
    PhaseSpace cf = build_phase_space(Species::ChargedFermionic,
                                      make_form(f, FormKind::Sesquilinear));
    Mat sz(2, 2);
    sz << 1, 0, 0, -1;
    LinearDynamics dyn = build_dynamics(cf, sz);
    Mat j2(2, 2);
    j2 << 0, -1, 1, 0;
    SymmetryOp s = validate_discrete_symmetry(
        cf, dyn, make_operator(j2, Linearity::Antilinear),
        SymmetryKind::ChargeReversal);
    QuantizedSystem sys = quantize(cf, dyn, 0);
    LiftedSymmetry ls = lift(sys, s);
    if (ls.square_sign != -1) return "FAIL sublattice reversal square != -1";
    worst = std::max(worst, ls.r_square);
  }

  // (b) forty conjugated involution pairs: exactly four joint sign classes
  Mat eye = Mat::Identity(4, 4);
  Mat jj = Mat::Zero(4, 4);
  jj(0, 1) = -1;
  jj(1, 0) = 1;
  jj(2, 3) = -1;
  jj(3, 2) = 1;
  Mat dd = Mat::Identity(4, 4);
  dd(2, 2) = -1;
  dd(3, 3) = -1;
  Mat xx = Mat::Zero(4, 4);
  xx.topRightCorner(2, 2) = Mat::Identity(2, 2);
  xx.bottomLeftCorner(2, 2) = Mat::Identity(2, 2);
  Mat jstd = Mat::Zero(4, 4);
  jstd.topRightCorner(2, 2) = -Mat::Identity(2, 2);
  jstd.bottomLeftCorner(2, 2) = Mat::Identity(2, 2);
  Mat tm = Mat::Zero(4, 4);  // anticommuting partner with square -1 for jj
  tm(0, 2) = -1;
  tm(1, 3) = 1;
  tm(2, 0) = 1;
  tm(3, 1) = -1;

  const std::vector<std::pair<Mat, Mat>> canonical = {
      {eye, eye}, {jj, jj},   {eye, jj},  {jj, eye},
      {dd, xx},   {jj, tm},   {dd, jstd}, {jstd, dd},
  };
  Rng rng(606);
  std::vector<int> seen(4, 0);
  for (int t = 0; t < 40; ++t) {
    const auto& base = canonical[rng.integer() % canonical.size()];
    Mat v = rand_unitary(rng, 4);
    Mat uc = v * base.first * v.transpose();
    Mat ut = v * base.second * v.transpose();
    ChiTauClass cls = normalize_chi_tau(
        make_operator(uc, Linearity::Antilinear),
        make_operator(ut, Linearity::Antilinear), 1e-8);
    if (cls.row < 0 || cls.row > 3) return "FAIL class row out of range";
    seen[size_t(cls.row)] += 1;
  }
  for (int r = 0; r < 4; ++r)
    if (seen[size_t(r)] == 0)
      return failf("sign class %.0f never realized", double(r));
  if (worst > 1e-10) return failf("lift square residual %.3e > 1e-10", worst);
  char buf[120];
  std::snprintf(buf, sizeof buf,
                "classes seen %d/%d/%d/%d, square residual %.1e", seen[0],
                seen[1], seen[2], seen[3], worst);
  return buf;
}

// ---- 9: occupation-basis ladders match the tensor-product construction ---
std::string tensor_oracle_agreement() {
  double worst = 0.0;
  Rng rng(707);
  for (int modes : {1, 2}) {
    FockRep f = build_fock(Statistics::Bose, modes, 4);
    for (int t = 0; t < 3; ++t) {
      Vec z = rng.complex_vector(modes);
      worst = std::max(
          worst, norm_inf(Mat(oracle_creation(f, z) - creation(f, z))));
      Mat h = rng.complex_matrix(modes, modes);
      worst = std::max(worst,
                       norm_inf(Mat(oracle_d_gamma(f, h) - d_gamma(f, h))));
    }
  }
  for (int modes : {2, 3}) {
    FockRep f = build_fock(Statistics::Fermi, modes, modes);
    for (int t = 0; t < 3; ++t) {
      Vec z = rng.complex_vector(modes);
      worst = std::max(
          worst, norm_inf(Mat(oracle_creation(f, z) - creation(f, z))));
      Mat h = rng.complex_matrix(modes, modes);
      worst = std::max(worst,
                       norm_inf(Mat(oracle_d_gamma(f, h) - d_gamma(f, h))));
    }
  }
  if (worst > 1e-12) return failf("oracle residual %.3e > 1e-12", worst);
  char buf[96];
  std::snprintf(buf, sizeof buf, "max residual %.1e", worst);
  return buf;
}

// ---- 10: lattice model spectra match their closed forms ----
std::string model_spectra() {
  double worst = 0.0;
  for (int n = 2; n <= 8; ++n) {
    ChainSpec spec;
    spec.sites = n;
    ModelSystem m = harmonic_chain(spec);
    QuantizedSystem sys = quantize(m.phase, m.dynamics, 1);
    RVec hz = sorted_eigs(sys.h_z);
    std::vector<double> disp = harmonic_dispersion(spec);
    for (int k = 0; k < n; ++k)
      worst = std::max(worst, std::abs(hz(k) - disp[size_t(k)]));
  }

  // free-fermion many-body spectrum = subset sums of the mode energies
  {
    ModelSystem m = majorana_chain(4, 0.6);
    QuantizedSystem sys = quantize(m.phase, m.dynamics, 0);
    RVec he = sorted_eigs(sys.hamiltonian);
    std::vector<double> want = subset_sums(majorana_dispersion(4, 0.6));
    for (Eigen::Index k = 0; k < he.size(); ++k)
      worst = std::max(worst, std::abs(he(k) - want[size_t(k)]));
  }
  {
    ModelSystem m = fermion_chain(ChainSpec{});
    QuantizedSystem sys = quantize(m.phase, m.dynamics, 0);
    RVec he = sorted_eigs(sys.hamiltonian);
    RVec hz = sorted_eigs(sys.h_z);
    std::vector<double> ones(hz.data(), hz.data() + hz.size());
    std::vector<double> want = subset_sums(ones);
    for (Eigen::Index k = 0; k < he.size(); ++k)
      worst = std::max(worst, std::abs(he(k) - want[size_t(k)]));
  }
  if (worst > 1e-10) return failf("spectrum residual %.3e > 1e-10", worst);
  char buf[96];
  std::snprintf(buf, sizeof buf, "max residual %.1e", worst);
  return buf;
}

// ---- 11: complexify, reduce back, re-quantize: nothing changes ----
std::string charged_doubling_roundtrip() {
  double worst = 0.0;
  ChainSpec spec;
  spec.sites = 2;
  for (int variant = 0; variant < 2; ++variant) {
    ModelSystem m =
        variant == 0 ? harmonic_chain(spec) : majorana_chain(4, 0.6);
    ChargedDoubling dbl = double_to_charged(m.phase, m.dynamics);
    NeutralReduction red = neutral_subspace(dbl.phase, dbl.dynamics, dbl.chi);
    worst = std::max(worst, red.r_restrict);

    QuantizedSystem orig = quantize(m.phase, m.dynamics, 2);
    QuantizedSystem back = quantize(red.phase, red.dynamics, 2);
    RVec e1 = sorted_eigs(orig.h_z);
    RVec e2 = sorted_eigs(back.h_z);
    if (e1.size() != e2.size()) return "FAIL mode counts differ";
    worst = std::max(worst, (e1 - e2).cwiseAbs().maxCoeff());

    // the doubled system carries each neutral energy twice
    QuantizedSystem dq = quantize(dbl.phase, dbl.dynamics, 2);
    RVec ed = sorted_eigs(dq.h_z);
    for (Eigen::Index k = 0; k < e1.size(); ++k) {
      worst = std::max(worst, std::abs(ed(2 * k) - e1(k)));
      worst = std::max(worst, std::abs(ed(2 * k + 1) - e1(k)));
    }
  }
  if (worst > 1e-10) return failf("roundtrip residual %.3e > 1e-10", worst);
  char buf[96];
  std::snprintf(buf, sizeof buf, "max residual %.1e", worst);
  return buf;
}

}  // namespace

int main() {
  criterion("polar_kahler_batch", polar_kahler_batch);
  criterion("car_full_space", car_full_space);
  criterion("ccr_safe_sectors", ccr_safe_sectors);
  criterion("weyl_group_law", weyl_group_law);
  criterion("dynamics_intertwining", dynamics_intertwining);
  criterion("vacuum_and_positivity", vacuum_and_positivity);
  criterion("charge_structure", charge_structure);
  criterion("antiunitary_square_classes", antiunitary_square_classes);
  criterion("tensor_oracle_agreement", tensor_oracle_agreement);
  criterion("model_spectra", model_spectra);
  criterion("charged_doubling_roundtrip", charged_doubling_roundtrip);

  std::printf("%d/11 criteria passed\n", 11 - g_failures);
  return g_failures;
}
