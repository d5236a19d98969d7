#include "fockq/kahler.hpp"

namespace fockq {

namespace {

// Real symmetric positive square root / inverse, plus the eigen data.
struct SymSqrt {
  RMat s;       // G^{1/2}
  RMat s_inv;   // G^{-1/2}
};

SymSqrt sym_sqrt(const RMat& g, double tol, const std::string& ctx) {
  Eigen::SelfAdjointEigenSolver<RMat> es(g);
  require(es.info() == Eigen::Success, ErrorCode::NanEntries,
          ctx + ": eigendecomposition failed");
  const RVec& ev = es.eigenvalues();
  double scale = std::max(1.0, ev.cwiseAbs().maxCoeff());
  require(ev.minCoeff() > tol * scale, ErrorCode::DegenerateGenerator,
          ctx + ": Gram matrix is not positive definite");
  RVec sq = ev.cwiseSqrt();
  SymSqrt out;
  out.s = es.eigenvectors() * sq.asDiagonal() * es.eigenvectors().transpose();
  out.s_inv = es.eigenvectors() * sq.cwiseInverse().asDiagonal() *
              es.eigenvectors().transpose();
  return out;
}

}  // namespace

KahlerData polar_kahler(const PhaseSpace& phase, const LinearDynamics& dyn,
                        double tol) {
  require(!is_charged(phase.species), ErrorCode::WrongSpecies,
          "polar_kahler: applies to neutral species (use charged_splitting)");
  require(dyn.species == phase.species, ErrorCode::SpeciesFormMismatch,
          "polar_kahler: dynamics species differs from the phase space");

  RMat a = dyn.generator.entries.real();
  const Eigen::Index n = a.rows();
  require(n % 2 == 0, ErrorCode::OddDimension,
          "polar_kahler: phase space of odd dimension");

  RMat gram;  // energy Gram the polar decomposition is taken in
  if (phase.species == Species::NeutralBosonic) {
    StabilityReport st = check_stability(phase, dyn, tol);
    if (!st.beta_matches)
      fail(ErrorCode::StabilityFailure,
           "polar_kahler: provided energy form does not match omega.a "
           "(residual " +
               std::to_string(st.beta_match_residual) + ")");
    if (!st.weakly_stable)
      fail(ErrorCode::StabilityFailure,
           std::string("polar_kahler: dynamics is not weakly stable (") +
               (!st.beta_positive ? "energy form not positive definite"
                                  : "generator has a nontrivial kernel") +
               ")");
    gram = st.beta.real();
  } else {
    gram = phase.form.real();
    double msv = smallest_singular_value(a.cast<Complex>());
    require(msv > tol_scale(tol, {norm_inf(a)}), ErrorCode::DegenerateGenerator,
            "polar_kahler: generator has a (near-)zero singular value " +
                std::to_string(msv));
  }

  // Work in the Gram-orthonormal frame where a becomes plainly
  // antisymmetric; h = sqrt(a^T a) and j = h^{-1} a stay real.
  SymSqrt s = sym_sqrt(gram, tol, "polar_kahler: energy Gram");
  RMat at = s.s * a * s.s_inv;
  double skew = norm_inf(RMat(at + at.transpose()));
  require(skew <= tol_scale(tol, {norm_inf(at)}), ErrorCode::SpeciesFormMismatch,
          "polar_kahler: generator is not anti-self-adjoint in the energy "
          "Gram (residual " +
              std::to_string(skew) + ")");
  at = RMat((at - at.transpose()) / 2.0);

  RMat m = at.transpose() * at;  // = -at^2, symmetric psd
  Eigen::SelfAdjointEigenSolver<RMat> es(m);
  require(es.info() == Eigen::Success, ErrorCode::NanEntries,
          "polar_kahler: eigendecomposition failed");
  const RVec& ev = es.eigenvalues();
  double scale = std::max(1.0, ev.cwiseAbs().maxCoeff());
  require(ev.minCoeff() > tol * scale, ErrorCode::DegenerateGenerator,
          "polar_kahler: |a| has a (near-)zero eigenvalue");
  RVec hv = ev.cwiseSqrt();
  RMat ht = es.eigenvectors() * hv.asDiagonal() * es.eigenvectors().transpose();
  RMat ht_inv = es.eigenvectors() * hv.cwiseInverse().asDiagonal() *
                es.eigenvectors().transpose();

  KahlerData k;
  k.energy_gram = gram;
  k.h = s.s_inv * ht * s.s;
  k.j = s.s_inv * (ht_inv * at) * s.s;
  k.r_involution = norm_inf(RMat(k.j * k.j + RMat::Identity(n, n)));
  k.r_commute = norm_inf(RMat(k.h * k.j - k.j * k.h));
  k.r_factor = norm_inf(RMat(a - k.h * k.j));

  // Holomorphic inner product Gram: the unique sesquilinear product on Z
  // whose imaginary (bosonic) / real (fermionic) part restricted to real
  // vectors reproduces the species form.
  if (phase.species == Species::NeutralBosonic) {
    // beta h^{-1} = S ht^{-1} S, the s = 1/2 dynamical product.
    k.z_product = (s.s * ht_inv * s.s).cast<Complex>();
  } else {
    k.z_product = (2.0 * gram).cast<Complex>();
  }

  HolomorphicBasis hb = holomorphic_basis(
      make_operator(k.j.cast<Complex>(), Linearity::Linear), k.z_product, tol);
  k.z_basis = hb.z_basis;
  k.z_gram = hb.z_gram;

  // h acts on Z in coordinates via the left inverse z_basis^dag z_product.
  Mat coords = k.z_basis.adjoint() * k.z_product;
  k.h_z = coords * k.h.cast<Complex>() * k.z_basis;
  k.h_z = Mat((k.h_z + k.h_z.adjoint()) / 2.0);

  // Verify the form constraint on sampled real vectors: with
  // c(y) = coords . 1_Z y, 2 Im(c1^dag c2) = y1 omega y2 (bosonic) and
  // Re(c1^dag c2) = y1 nu y2 (fermionic).
  Mat one_z = 0.5 * (Mat::Identity(n, n) -
                     Complex(0, 1) * k.j.cast<Complex>());
  Mat cmap = coords * one_z;
  Rng rng(sub_seed(0x666f636b71ull, "polar_kahler form constraint"));
  RMat fr = phase.form.real();
  double worst = 0.0;
  for (int trial = 0; trial < 16; ++trial) {
    RVec y1 = rng.real_vector(n), y2 = rng.real_vector(n);
    Complex c12 = (cmap * y1.cast<Complex>()).dot(cmap * y2.cast<Complex>());
    double want = y1.dot(fr * y2);
    double got = phase.species == Species::NeutralBosonic ? 2.0 * c12.imag()
                                                          : c12.real();
    worst = std::max(worst, std::abs(got - want));
  }
  k.r_form = worst;
  require(k.r_form <= tol_scale(tol * 100, {norm_inf(fr)}),
          ErrorCode::SpeciesFormMismatch,
          "polar_kahler: holomorphic product fails to reproduce the form "
          "(residual " +
              std::to_string(k.r_form) + ")");
  return k;
}

RMat dyn_gram(const KahlerData& k, double s) {
  require(s >= 0.0 && s <= 1.0, ErrorCode::ConfigError,
          "dyn_gram: s must lie in [0, 1]");
  // beta h^{-2s}; computed through the spectral decomposition of h in the
  // energy-orthonormal frame so the result is exactly symmetric.
  SymSqrt sq = sym_sqrt(k.energy_gram, kDefaultTol, "dyn_gram");
  RMat ht = sq.s * k.h * sq.s_inv;
  ht = RMat((ht + ht.transpose()) / 2.0);
  Eigen::SelfAdjointEigenSolver<RMat> es(ht);
  RVec powed(es.eigenvalues().size());
  for (Eigen::Index i = 0; i < powed.size(); ++i)
    powed(i) = std::pow(es.eigenvalues()(i), -2.0 * s);
  RMat core = es.eigenvectors() * powed.asDiagonal() *
              es.eigenvectors().transpose();
  RMat g = sq.s * core * sq.s;
  return (g + g.transpose()) / 2.0;
}

HolomorphicBasis holomorphic_basis(const OperatorMatrix& j,
                                   const Mat& z_product, double tol) {
  require(!j.antilinear(), ErrorCode::SpeciesFormMismatch,
          "holomorphic_basis: j must be linear");
  RMat jm = real_part_checked(j.entries, "holomorphic_basis: j");
  const Eigen::Index n = jm.rows();
  require(n % 2 == 0, ErrorCode::OddDimension,
          "holomorphic_basis: odd-dimensional space has no complex structure");
  require(z_product.rows() == n, ErrorCode::DimensionMismatch,
          "holomorphic_basis: product Gram size differs from j");
  double rj = norm_inf(RMat(jm * jm + RMat::Identity(n, n)));
  require(rj <= tol_scale(tol, {norm_inf(jm)}), ErrorCode::JNotAntiInvolution,
          "holomorphic_basis: j^2 != -1 (residual " + std::to_string(rj) + ")");

  // 1_Z = (1 - i j)/2 projects onto Ker(j_C - i); rank-revealing QR picks a
  // deterministic set of independent columns.
  Mat proj = 0.5 * (Mat::Identity(n, n) - Complex(0, 1) * jm.cast<Complex>());
  Eigen::ColPivHouseholderQR<Mat> qr(proj);
  qr.setThreshold(1e-7);
  require(qr.rank() == n / 2, ErrorCode::EigenspaceDimensionMismatch,
          "holomorphic_basis: holomorphic subspace has dimension " +
              std::to_string(qr.rank()) + ", expected " + std::to_string(n / 2));
  Mat picked(n, n / 2);
  for (Eigen::Index c = 0; c < n / 2; ++c)
    picked.col(c) = proj.col(qr.colsPermutation().indices()(c));

  HolomorphicBasis hb;
  hb.z_basis = gram_schmidt(picked, z_product, tol, "holomorphic_basis");
  // Double-check the span survived orthonormalization: j_C z = i z.
  double rz = norm_inf(Mat(jm.cast<Complex>() * hb.z_basis -
                           Complex(0, 1) * hb.z_basis));
  require(rz <= tol_scale(std::sqrt(tol), {norm_inf(jm)}),
          ErrorCode::EigenspaceDimensionMismatch,
          "holomorphic_basis: basis drifted off the holomorphic subspace");
  hb.z_gram = hb.z_basis.adjoint() * z_product * hb.z_basis;
  return hb;
}

ChargedSplit charged_splitting(const OperatorMatrix& b, const Mat& gram,
                               double tol) {
  require(!b.antilinear(), ErrorCode::SpeciesFormMismatch,
          "charged_splitting: b must be linear");
  const Mat& bm = b.entries;
  require_square(bm, "charged_splitting");
  require(gram.rows() == bm.rows(), ErrorCode::DimensionMismatch,
          "charged_splitting: Gram size differs from b");

  // Solve the Gram-hermitian eigenproblem by conjugating into the
  // orthonormal frame of the Gram.
  Mat g_half = herm_sqrt(gram, tol, "charged_splitting: Gram");
  Mat g_ihalf = herm_inv_sqrt(gram, tol, "charged_splitting: Gram");
  Mat bt = g_half * bm * g_ihalf;
  double herm = norm_inf(Mat(bt - bt.adjoint()));
  require(herm <= tol_scale(tol, {norm_inf(bt)}), ErrorCode::SpeciesFormMismatch,
          "charged_splitting: b is not self-adjoint in the Gram (residual " +
              std::to_string(herm) + ")");
  HermEig e = herm_eig(Mat((bt + bt.adjoint()) / 2.0), "charged_splitting");

  double scale = std::max(1.0, e.values.cwiseAbs().maxCoeff());
  for (Eigen::Index i = 0; i < e.values.size(); ++i)
    require(std::abs(e.values(i)) > tol * scale, ErrorCode::NearZeroEigenvalue,
            "charged_splitting: b has a (near-)zero eigenvalue " +
                std::to_string(e.values(i)));

  ChargedSplit sp;
  sp.gram = gram;
  sp.eigs = e.values;
  sp.modes = g_ihalf * e.vectors;  // Gram-orthonormal columns

  const Eigen::Index n = bm.rows();
  sp.p_plus = Mat::Zero(n, n);
  sp.p_minus = Mat::Zero(n, n);
  for (Eigen::Index i = 0; i < n; ++i) {
    Mat rank1 = sp.modes.col(i) * sp.modes.col(i).adjoint() * gram;
    if (e.values(i) > 0)
      sp.p_plus += rank1;
    else
      sp.p_minus += rank1;
  }
  sp.q = sp.p_plus - sp.p_minus;
  sp.h = sp.modes * e.values.cwiseAbs().asDiagonal() * sp.modes.adjoint() * gram;
  sp.j = Complex(0, 1) * sp.q;

  sp.r_idempotent = std::max(norm_inf(Mat(sp.p_plus * sp.p_plus - sp.p_plus)),
                             norm_inf(Mat(sp.p_minus * sp.p_minus - sp.p_minus)));
  sp.r_q_involution = norm_inf(Mat(sp.q * sp.q - Mat::Identity(n, n)));
  sp.r_commute = norm_inf(Mat(sp.q * bm - bm * sp.q));
  sp.r_recompose = norm_inf(Mat(bm - sp.h * sp.q));
  return sp;
}

}  // namespace fockq
