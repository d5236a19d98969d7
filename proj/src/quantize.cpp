#include "fockq/quantize.hpp"

namespace fockq {

namespace {

Mat commutator(const Mat& a, const Mat& b) { return a * b - b * a; }
Mat anticommutator(const Mat& a, const Mat& b) { return a * b + b * a; }

}  // namespace

QuantizedSystem quantize(const PhaseSpace& phase, const LinearDynamics& dyn,
                         int cutoff, double tol) {
  QuantizedSystem sys;
  sys.species = phase.species;
  sys.phase = phase;
  sys.dynamics = dyn;

  const Eigen::Index n = phase.dim();
  if (!is_charged(phase.species)) {
    KahlerData k = polar_kahler(phase, dyn, tol);
    const Eigen::Index d = n / 2;
    Mat coords = k.z_basis.adjoint() * k.z_product;  // left inverse on Z
    Mat one_z = 0.5 * (Mat::Identity(n, n) -
                       Complex(0, 1) * k.j.cast<Complex>());
    sys.coord_lin = coords * one_z;
    sys.coord_anti = Mat::Zero(d, n);
    sys.recon_lin = k.z_basis;
    sys.recon_anti = k.z_basis.conjugate();
    sys.h_z = k.h_z;
    sys.kahler = std::move(k);
    sys.fock = build_fock(phase.species == Species::NeutralBosonic
                              ? Statistics::Bose
                              : Statistics::Fermi,
                          int(d), cutoff);
  } else {
    Mat gram;
    if (phase.species == Species::ChargedBosonic) {
      StabilityReport st = check_stability(phase, dyn, tol);
      if (!st.beta_matches)
        fail(ErrorCode::StabilityFailure,
             "quantize: provided energy form does not match i omega b "
             "(residual " +
                 std::to_string(st.beta_match_residual) + ")");
      if (!st.weakly_stable)
        fail(ErrorCode::StabilityFailure,
             std::string("quantize: charged dynamics is not weakly stable (") +
                 (!st.beta_positive ? "energy Gram not positive definite"
                                    : "generator has a nontrivial kernel") +
                 ")");
      gram = st.beta.entries;
    } else {
      gram = phase.form.entries;
    }
    ChargedSplit sp = charged_splitting(dyn.generator, gram, tol);

    // Scaled mode coordinates: zeta_k(y) = (v_k|G y)/s_k on positive modes
    // and conj((v_k|G y))/s_k on negative ones, with s_k chosen so the
    // induced holomorphic product is the standard one (bosonic: sqrt|l_k|).
    sys.coord_lin = Mat::Zero(n, n);
    sys.coord_anti = Mat::Zero(n, n);
    sys.recon_lin = Mat::Zero(n, n);
    sys.recon_anti = Mat::Zero(n, n);
    Mat rows = sp.modes.adjoint() * gram;
    sys.h_z = Mat::Zero(n, n);
    sys.q_z = Mat::Zero(n, n);
    for (Eigen::Index k = 0; k < n; ++k) {
      double s = phase.species == Species::ChargedBosonic
                     ? std::sqrt(std::abs(sp.eigs(k)))
                     : 1.0;
      sys.h_z(k, k) = std::abs(sp.eigs(k));
      sys.q_z(k, k) = sp.eigs(k) > 0 ? 1.0 : -1.0;
      if (sp.eigs(k) > 0) {
        sys.coord_lin.row(k) = rows.row(k) / s;
        sys.recon_lin.col(k) = s * sp.modes.col(k);
      } else {
        sys.coord_anti.row(k) = rows.row(k).conjugate() / s;
        sys.recon_anti.col(k) = s * sp.modes.col(k);
      }
    }
    sys.split = std::move(sp);
    sys.fock = build_fock(phase.species == Species::ChargedBosonic
                              ? Statistics::Bose
                              : Statistics::Fermi,
                          int(n), cutoff);
  }

  sys.hamiltonian = d_gamma(sys.fock, sys.h_z);
  sys.hamiltonian =
      Mat((sys.hamiltonian + sys.hamiltonian.adjoint()) / 2.0);
  if (is_charged(sys.species)) sys.charge = d_gamma(sys.fock, sys.q_z);

  HermEig hz = herm_eig(sys.h_z, "quantize: h_z");
  sys.h_z_min = hz.values.minCoeff();
  require(sys.h_z_min > -tol, ErrorCode::StabilityFailure,
          "quantize: one-particle energy has a negative eigenvalue " +
              std::to_string(sys.h_z_min));

  sys.r_vacuum = (sys.hamiltonian * vacuum(sys.fock)).cwiseAbs().maxCoeff();
  HermEig he = herm_eig(sys.hamiltonian, "quantize: H");
  sys.r_positive = std::max(0.0, -he.values.minCoeff());
  return sys;
}

FockOperator field(const QuantizedSystem& sys, const Vec& y) {
  require(!is_charged(sys.species), ErrorCode::WrongSpecies,
          "field: neutral field on a charged system (use psi/psi_star)");
  require(y.size() == sys.dim(), ErrorCode::DimensionMismatch,
          "field: vector size differs from the phase space");
  Vec z_lin = sys.coord_lin * y;
  Vec z_anti = sys.coord_lin * y.conjugate();
  FockOperator op;
  op.matrix = creation(sys.fock, z_lin) + annihilation(sys.fock, z_anti);
  op.safe_sector = sys.fock.cutoff - 1;
  return op;
}

FockOperator psi_star(const QuantizedSystem& sys, const Vec& y) {
  require(is_charged(sys.species), ErrorCode::WrongSpecies,
          "psi_star: charged field on a neutral system (use field)");
  require(y.size() == sys.dim(), ErrorCode::DimensionMismatch,
          "psi_star: vector size differs from the phase space");
  FockOperator op;
  op.matrix = creation(sys.fock, Vec(sys.coord_lin * y)) +
              annihilation(sys.fock, Vec(sys.coord_anti * y.conjugate()));
  op.safe_sector = sys.fock.cutoff - 1;
  return op;
}

FockOperator psi(const QuantizedSystem& sys, const Vec& y) {
  FockOperator op = psi_star(sys, y);
  op.matrix = op.matrix.adjoint().eval();
  return op;
}

ResidualReport verify_intertwining(const QuantizedSystem& sys,
                                   const std::vector<double>& times,
                                   const std::vector<Vec>& ys, double tol) {
  ResidualReport rep;
  int sector = sys.fock.cutoff - 1;
  for (double t : times) {
    Mat u = herm_phase_exp(sys.hamiltonian, t, "verify_intertwining");
    OperatorMatrix rt = evolve(sys.dynamics, t);
    for (const Vec& y : ys) {
      Vec ry = rt.entries * y;
      if (!is_charged(sys.species)) {
        Mat lhs = u * field(sys, y).matrix * u.adjoint();
        rep.max_residual = std::max(
            rep.max_residual,
            sector_residual(sys.fock, lhs, field(sys, ry).matrix, sector));
      } else {
        Mat lhs = u * psi_star(sys, y).matrix * u.adjoint();
        rep.max_residual = std::max(
            rep.max_residual,
            sector_residual(sys.fock, lhs, psi_star(sys, ry).matrix, sector));
        Mat lhs2 = u * psi(sys, y).matrix * u.adjoint();
        rep.max_residual = std::max(
            rep.max_residual,
            sector_residual(sys.fock, lhs2, psi(sys, ry).matrix, sector));
      }
    }
  }
  rep.tolerance = tol;
  rep.pass = rep.max_residual <= tol;
  return rep;
}

ResidualReport verify_charge_rotation(const QuantizedSystem& sys,
                                      const std::vector<double>& thetas,
                                      const std::vector<Vec>& ys, double tol) {
  require(is_charged(sys.species), ErrorCode::WrongSpecies,
          "verify_charge_rotation: system has no charge operator");
  ResidualReport rep;
  int sector = sys.fock.cutoff - 1;
  for (double theta : thetas) {
    Mat u = herm_phase_exp(sys.charge, theta, "verify_charge_rotation");
    Complex phase = std::exp(Complex(0.0, theta));
    for (const Vec& y : ys) {
      Mat lhs = u * psi(sys, y).matrix * u.adjoint();
      Mat rhs = psi(sys, Vec(phase * y)).matrix;
      rep.max_residual =
          std::max(rep.max_residual, sector_residual(sys.fock, lhs, rhs, sector));
      Mat lhs2 = u * psi_star(sys, y).matrix * u.adjoint();
      Mat rhs2 = psi_star(sys, Vec(phase * y)).matrix;
      rep.max_residual = std::max(rep.max_residual,
                                  sector_residual(sys.fock, lhs2, rhs2, sector));
    }
  }
  rep.tolerance = tol;
  rep.pass = rep.max_residual <= tol;
  return rep;
}

NeutralChargeStructure charged_fields_from_neutral(const QuantizedSystem& sys,
                                                   const OperatorMatrix& j_ch,
                                                   double tol) {
  require(!is_charged(sys.species), ErrorCode::WrongSpecies,
          "charged_fields_from_neutral: system is already charged");
  require(j_ch.dim() == sys.dim(), ErrorCode::DimensionMismatch,
          "charged_fields_from_neutral: j_ch size differs from phase space");

  NeutralChargeStructure cs;
  cs.j_ch = real_part_checked(j_ch.entries, "charged_fields_from_neutral");
  RMat a = sys.dynamics.generator.entries.real();
  double eff = tol_scale(tol, {norm_inf(cs.j_ch), norm_inf(a)});

  if (sys.species == Species::NeutralBosonic) {
    // (omega, j_ch) must be pseudo-Kahler: j_ch symplectic, omega j_ch
    // symmetric (this is the induced real part of the charged form).
    FormMatrix nu_ind = make_form(
        (sys.phase.form.real() * cs.j_ch).cast<Complex>(), FormKind::RealBilinear);
    KahlerCheck kc = kahler_compatibility(nu_ind, sys.phase.form, j_ch, tol);
    require(kc.j_symplectic, ErrorCode::JNotCompatible,
            "charged_fields_from_neutral: j_ch is not symplectic (residual " +
                std::to_string(kc.r_symplectic) + ")");
    FormClassification nc = classify_form(nu_ind, tol);
    require(nc.symmetric, ErrorCode::JNotCompatible,
            "charged_fields_from_neutral: omega j_ch is not symmetric");
    cs.kappa = 1.0 / std::sqrt(2.0);
  } else {
    KahlerCheckEuclidean kc =
        kahler_compatibility_euclidean(sys.phase.form, j_ch, tol);
    require(kc.compatible && kc.j_orthogonal, ErrorCode::JNotCompatible,
            "charged_fields_from_neutral: j_ch is not Kahler for nu");
    cs.kappa = 0.5;
  }

  cs.r_dynamics = norm_inf(RMat(cs.j_ch * a - a * cs.j_ch));
  require(cs.r_dynamics <= eff, ErrorCode::JNotCompatible,
          "charged_fields_from_neutral: j_ch does not commute with the "
          "dynamics (residual " +
              std::to_string(cs.r_dynamics) + ")");

  // Verify the charged commutation contract on sampled pairs: the induced
  // sesquilinear pairing is (y1|F y2) = y1 F y2 - i y1 F j_ch y2.
  Rng rng(sub_seed(0x666f636b71ull, "charged_fields_from_neutral"));
  const Eigen::Index n = sys.dim();
  RMat fr = sys.phase.form.real();
  int sector = sys.fock.cutoff - 2;
  Eigen::Index sd = sector_dim(sys.fock, sector);
  Mat eye = Mat::Identity(sd, sd);
  for (int trial = 0; trial < 8; ++trial) {
    RVec y1 = rng.real_vector(n), y2 = rng.real_vector(n);
    Mat p1 = neutral_psi(sys, cs, y1).matrix;
    Mat p2s = neutral_psi_star(sys, cs, y2).matrix;
    Mat p2 = neutral_psi(sys, cs, y2).matrix;
    Complex pairing(y1.dot(fr * y2), -y1.dot(fr * cs.j_ch * y2));
    Mat bracket, bracket0;
    Complex want;
    if (sys.species == Species::NeutralBosonic) {
      bracket = commutator(p1, p2s);
      bracket0 = commutator(p1, p2);
      want = Complex(0, 1) * pairing;
    } else {
      bracket = anticommutator(p1, p2s);
      bracket0 = anticommutator(p1, p2);
      want = pairing;
    }
    cs.r_contract = std::max(
        cs.r_contract,
        norm_inf(Mat(bracket.topLeftCorner(sd, sd) - want * eye)));
    cs.r_contract = std::max(
        cs.r_contract, norm_inf(Mat(bracket0.topLeftCorner(sd, sd))));
  }
  require(cs.r_contract <= tol_scale(100 * tol, {norm_inf(fr)}),
          ErrorCode::NotCanonical,
          "charged_fields_from_neutral: induced fields violate the charged "
          "commutation contract (residual " +
              std::to_string(cs.r_contract) + ")");
  return cs;
}

FockOperator neutral_psi_star(const QuantizedSystem& sys,
                              const NeutralChargeStructure& cs, const RVec& y) {
  Vec w = cs.kappa * (y.cast<Complex>() -
                      Complex(0, 1) * (cs.j_ch * y).cast<Complex>());
  return field(sys, w);
}

FockOperator neutral_psi(const QuantizedSystem& sys,
                         const NeutralChargeStructure& cs, const RVec& y) {
  Vec w = cs.kappa * (y.cast<Complex>() +
                      Complex(0, 1) * (cs.j_ch * y).cast<Complex>());
  return field(sys, w);
}

}  // namespace fockq
