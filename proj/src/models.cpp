#include "fockq/models.hpp"

#include <algorithm>
#include <cmath>

namespace fockq {

namespace {

// Chain Laplacian: 2I - S - S^T on the ring, degree-weighted on the open
// chain.
RMat chain_laplacian(int n, bool periodic) {
  RMat adj = RMat::Zero(n, n);
  int last = periodic ? n : n - 1;
  for (int j = 0; j < last; ++j) {
    int k = (j + 1) % n;
    adj(j, k) += 1.0;
    adj(k, j) += 1.0;
  }
  RMat lap = -adj;
  for (int j = 0; j < n; ++j) lap(j, j) += adj.row(j).sum();
  return lap;
}

struct RSymSqrt {
  RMat half;
  RMat inv_half;
};

RSymSqrt rsym_sqrt(const RMat& m, const char* ctx) {
  Eigen::SelfAdjointEigenSolver<RMat> es(RMat((m + m.transpose()) / 2.0));
  require(es.info() == Eigen::Success, ErrorCode::DegenerateGenerator,
          std::string(ctx) + ": eigensolver failed");
  require(es.eigenvalues().minCoeff() > 0, ErrorCode::DegenerateGenerator,
          std::string(ctx) + ": matrix is not positive definite");
  RVec sq = es.eigenvalues().cwiseSqrt();
  RSymSqrt out;
  out.half = es.eigenvectors() * sq.asDiagonal() * es.eigenvectors().transpose();
  out.inv_half = es.eigenvectors() * sq.cwiseInverse().asDiagonal() *
                 es.eigenvectors().transpose();
  return out;
}

RMat random_orthogonal(Rng& rng, Eigen::Index n) {
  RMat g = rng.real_matrix(n, n);
  Eigen::HouseholderQR<RMat> qr(g);
  return qr.householderQ() * RMat::Identity(n, n);
}

Mat random_unitary(Rng& rng, Eigen::Index n) {
  Mat g = rng.complex_matrix(n, n);
  Eigen::HouseholderQR<Mat> qr(g);
  return qr.householderQ() * Mat::Identity(n, n);
}

RVec bounded_spectrum(Rng& rng, Eigen::Index n) {
  RVec d(n);
  for (Eigen::Index i = 0; i < n; ++i) d(i) = rng.uniform(0.3, 2.0);
  return d;
}

}  // namespace

ModelSystem harmonic_chain(const ChainSpec& spec, double tol) {
  require(spec.sites >= 1, ErrorCode::ConfigError,
          "harmonic_chain: need at least one site");
  const int n = spec.sites;
  RMat k = spec.mass * spec.mass * RMat::Identity(n, n) +
           spec.coupling * chain_laplacian(n, spec.periodic);

  RMat omega = RMat::Zero(2 * n, 2 * n);
  omega.topRightCorner(n, n) = -RMat::Identity(n, n);
  omega.bottomLeftCorner(n, n) = RMat::Identity(n, n);

  RMat gen = RMat::Zero(2 * n, 2 * n);
  gen.topRightCorner(n, n) = RMat::Identity(n, n);
  gen.bottomLeftCorner(n, n) = -k;

  RMat energy = RMat::Zero(2 * n, 2 * n);
  energy.topLeftCorner(n, n) = k;
  energy.bottomRightCorner(n, n) = RMat::Identity(n, n);

  ModelSystem out;
  out.phase = build_phase_space(
      Species::NeutralBosonic,
      make_form(omega.cast<Complex>(), FormKind::RealBilinear),
      make_form(energy.cast<Complex>(), FormKind::RealBilinear), tol);
  out.dynamics = build_dynamics(out.phase, gen.cast<Complex>(), tol);
  return out;
}

std::vector<double> harmonic_dispersion(const ChainSpec& spec) {
  const int n = spec.sites;
  std::vector<double> freq(n);
  if (spec.periodic) {
    for (int k = 0; k < n; ++k) {
      double s = std::sin(M_PI * k / n);
      freq[k] = std::sqrt(spec.mass * spec.mass +
                          4.0 * spec.coupling * s * s);
    }
  } else {
    RMat k = spec.mass * spec.mass * RMat::Identity(n, n) +
             spec.coupling * chain_laplacian(n, false);
    Eigen::SelfAdjointEigenSolver<RMat> es(k);
    for (int i = 0; i < n; ++i) freq[i] = std::sqrt(es.eigenvalues()(i));
  }
  std::sort(freq.begin(), freq.end());
  return freq;
}

ModelSystem fermion_chain(const ChainSpec& spec, double tol) {
  require(spec.sites >= 1, ErrorCode::ConfigError,
          "fermion_chain: need at least one site");
  const int n = spec.sites;
  RMat b = RMat::Zero(n, n);
  int last = spec.periodic ? n : n - 1;
  for (int j = 0; j < last; ++j) {
    int k = (j + 1) % n;
    b(j, k) += spec.coupling;
    b(k, j) += spec.coupling;
  }
  for (int j = 0; j < n; ++j) b(j, j) += (j % 2 == 0 ? 1.0 : -1.0) * spec.mass;

  ModelSystem out;
  out.phase = build_phase_space(
      Species::ChargedFermionic,
      make_form(Mat::Identity(n, n), FormKind::Sesquilinear), {}, tol);
  out.dynamics = build_dynamics(out.phase, b.cast<Complex>(), tol);
  return out;
}

ModelSystem majorana_chain(int sites, double coupling, double tol) {
  require(sites >= 2 && sites % 2 == 0, ErrorCode::OddDimension,
          "majorana_chain: need an even number of sites");
  RMat a = RMat::Zero(sites, sites);
  for (int j = 0; j + 1 < sites; ++j) {
    a(j, j + 1) = coupling;
    a(j + 1, j) = -coupling;
  }
  ModelSystem out;
  out.phase = build_phase_space(
      Species::NeutralFermionic,
      make_form(Mat::Identity(sites, sites), FormKind::RealBilinear), {}, tol);
  out.dynamics = build_dynamics(out.phase, a.cast<Complex>(), tol);
  return out;
}

std::vector<double> majorana_dispersion(int sites, double coupling) {
  std::vector<double> e;
  for (int j = 1; j <= sites / 2; ++j)
    e.push_back(std::abs(2.0 * coupling * std::cos(j * M_PI / (sites + 1))));
  std::sort(e.begin(), e.end());
  return e;
}

std::vector<double> subset_sums(const std::vector<double>& energies) {
  require(energies.size() <= 20, ErrorCode::SizeGuard,
          "subset_sums: too many modes");
  std::vector<double> sums;
  sums.reserve(std::size_t(1) << energies.size());
  for (std::size_t mask = 0; mask < (std::size_t(1) << energies.size());
       ++mask) {
    double s = 0.0;
    for (std::size_t k = 0; k < energies.size(); ++k)
      if (mask & (std::size_t(1) << k)) s += energies[k];
    sums.push_back(s);
  }
  std::sort(sums.begin(), sums.end());
  return sums;
}

ModelSystem random_system(Species species, Eigen::Index n, std::uint64_t seed,
                          double tol) {
  require(n >= 1, ErrorCode::ConfigError, "random_system: dim must be >= 1");
  Rng rng(seed);
  ModelSystem out;
  switch (species) {
    case Species::NeutralBosonic: {
      require(n % 2 == 0, ErrorCode::OddDimension,
              "random_system: neutral species need even dimension");
      RMat omega = RMat::Zero(n, n);
      omega.topRightCorner(n / 2, n / 2) = -RMat::Identity(n / 2, n / 2);
      omega.bottomLeftCorner(n / 2, n / 2) = RMat::Identity(n / 2, n / 2);
      RMat q = random_orthogonal(rng, n);
      RMat beta = q * bounded_spectrum(rng, n).asDiagonal() * q.transpose();
      beta = RMat((beta + beta.transpose()) / 2.0);
      RMat gen = -omega * beta;  // omega^{-1} = -omega
      out.phase = build_phase_space(
          species, make_form(omega.cast<Complex>(), FormKind::RealBilinear),
          make_form(beta.cast<Complex>(), FormKind::RealBilinear), tol);
      out.dynamics = build_dynamics(out.phase, gen.cast<Complex>(), tol);
      break;
    }
    case Species::NeutralFermionic: {
      require(n % 2 == 0, ErrorCode::OddDimension,
              "random_system: neutral species need even dimension");
      RMat q = random_orthogonal(rng, n);
      RMat nu = q * bounded_spectrum(rng, n).asDiagonal() * q.transpose();
      nu = RMat((nu + nu.transpose()) / 2.0);
      RSymSqrt s = rsym_sqrt(nu, "random_system");
      // Generator with commuting polar factors in the nu-frame: the pair
      // (h, j) below is the general form of a nondegenerate stable
      // generator, with energies pinned into [0.3, 2].
      RMat o = random_orthogonal(rng, n);
      RVec e = bounded_spectrum(rng, n / 2);
      RMat hmat = RMat::Zero(n, n);
      hmat.topLeftCorner(n / 2, n / 2) = RMat(e.asDiagonal());
      hmat.bottomRightCorner(n / 2, n / 2) = RMat(e.asDiagonal());
      RMat jstd = RMat::Zero(n, n);
      jstd.topRightCorner(n / 2, n / 2) = -RMat::Identity(n / 2, n / 2);
      jstd.bottomLeftCorner(n / 2, n / 2) = RMat::Identity(n / 2, n / 2);
      RMat atil = (o * hmat * o.transpose()) * (o * jstd * o.transpose());
      RMat gen = s.inv_half * atil * s.half;
      out.phase = build_phase_space(
          species, make_form(nu.cast<Complex>(), FormKind::RealBilinear), {},
          tol);
      out.dynamics = build_dynamics(out.phase, gen.cast<Complex>(), tol);
      break;
    }
    case Species::ChargedBosonic: {
      // Prescribe the energy Gram P and the spectrum of b in the P-frame,
      // then recover the charged form from i F b = P.  This pins both the
      // Gram spectrum and the one-particle energies |eig b| into [0.3, 2].
      Mat w = random_unitary(rng, n);
      Mat p = w * bounded_spectrum(rng, n).cast<Complex>().asDiagonal() *
              w.adjoint();
      p = Mat((p + p.adjoint()) / 2.0);
      Mat v = random_unitary(rng, n);
      RVec mags = bounded_spectrum(rng, n);
      Vec d(n);
      for (Eigen::Index i = 0; i < n; ++i)
        d(i) = mags(i) * (rng.integer() % 2 == 0 ? 1.0 : -1.0);
      Mat htil = v * d.asDiagonal() * v.adjoint();
      Mat htil_inv = v * d.cwiseInverse().asDiagonal() * v.adjoint();
      Mat p_half = herm_sqrt(p, tol, "random_system");
      Mat p_ihalf = herm_inv_sqrt(p, tol, "random_system");
      Mat gen = p_ihalf * htil * p_half;
      Mat form = Complex(0, -1) * p_half * htil_inv * p_half;
      form = Mat((form - form.adjoint()) / 2.0);
      out.phase =
          build_phase_space(species, make_form(form, FormKind::Sesquilinear),
                            {}, tol);
      out.dynamics = build_dynamics(out.phase, gen, tol);
      break;
    }
    case Species::ChargedFermionic: {
      Mat v = random_unitary(rng, n);
      Mat g = v * bounded_spectrum(rng, n).cast<Complex>().asDiagonal() *
              v.adjoint();
      g = Mat((g + g.adjoint()) / 2.0);
      Mat w = random_unitary(rng, n);
      RVec mags = bounded_spectrum(rng, n);
      Vec d(n);
      for (Eigen::Index i = 0; i < n; ++i)
        d(i) = mags(i) * (rng.integer() % 2 == 0 ? 1.0 : -1.0);
      Mat htil = w * d.asDiagonal() * w.adjoint();
      htil = Mat((htil + htil.adjoint()) / 2.0);
      Mat gen = herm_inv_sqrt(g, tol, "random_system") * htil *
                herm_sqrt(g, tol, "random_system");
      out.phase = build_phase_space(
          species, make_form(g, FormKind::Sesquilinear), {}, tol);
      out.dynamics = build_dynamics(out.phase, gen, tol);
      break;
    }
  }
  return out;
}

}  // namespace fockq
