#include "fockq/symmetries.hpp"

namespace fockq {

namespace {

constexpr std::uint64_t kVerifySeed = 0x666f636b71ull;

// Square sign of an (anti)linear involution-up-to-sign; throws when the
// square is not +-1 within tolerance.
int square_sign_of(const OperatorMatrix& s, double tol, const char* what) {
  OperatorMatrix s2 = compose(s, s);
  Mat eye = Mat::Identity(s.dim(), s.dim());
  double rp = norm_inf(Mat(s2.entries - eye));
  double rm = norm_inf(Mat(s2.entries + eye));
  double eff = tol_scale(tol, {norm_inf(s.entries) * norm_inf(s.entries)});
  require(std::min(rp, rm) <= eff, ErrorCode::SymmetryViolation,
          std::string(what) + ": square is not +-1 (residuals " +
              std::to_string(rp) + ", " + std::to_string(rm) + ")");
  return rp <= rm ? +1 : -1;
}

}  // namespace

const char* symmetry_kind_name(SymmetryKind k) noexcept {
  switch (k) {
    case SymmetryKind::TimeReversal: return "time_reversal";
    case SymmetryKind::ChargeReversal: return "charge_reversal";
    case SymmetryKind::Parity: return "parity";
    case SymmetryKind::Bogoliubov: return "bogoliubov";
  }
  return "unknown";
}

SymmetryOp validate_discrete_symmetry(const PhaseSpace& phase,
                                      const LinearDynamics& dyn,
                                      const OperatorMatrix& s,
                                      SymmetryKind kind, double tol) {
  require(s.dim() == phase.dim(), ErrorCode::DimensionMismatch,
          "validate_discrete_symmetry: sizes differ");
  const bool charged = is_charged(phase.species);

  switch (kind) {
    case SymmetryKind::TimeReversal:
      require(s.antilinear() == charged, ErrorCode::SpeciesFormMismatch,
              charged ? "time reversal on a charged space must be antilinear"
                      : "time reversal on a neutral space must be linear");
      break;
    case SymmetryKind::ChargeReversal:
      require(charged, ErrorCode::WrongSpecies,
              "charge reversal applies to charged species");
      require(s.antilinear(), ErrorCode::SpeciesFormMismatch,
              "charge reversal must be antilinear");
      break;
    case SymmetryKind::Parity:
    case SymmetryKind::Bogoliubov:
      require(!s.antilinear(), ErrorCode::SpeciesFormMismatch,
              "parity/bogoliubov transformations must be linear");
      break;
  }

  SymmetryOp out;
  out.kind = kind;
  out.op = s;

  TransformKind want = TransformKind::Symplectic;
  switch (phase.species) {
    case Species::NeutralBosonic:
      want = kind == SymmetryKind::TimeReversal ? TransformKind::AntiSymplectic
                                                : TransformKind::Symplectic;
      break;
    case Species::NeutralFermionic:
      want = TransformKind::Orthogonal;
      break;
    case Species::ChargedBosonic:
      want = kind == SymmetryKind::TimeReversal
                 ? TransformKind::AntiChargedAntiSymplectic
             : kind == SymmetryKind::ChargeReversal
                 ? TransformKind::AntiChargedSymplectic
                 : TransformKind::ChargedSymplectic;
      break;
    case Species::ChargedFermionic:
      want = s.antilinear() ? TransformKind::AntiUnitary
                            : TransformKind::Unitary;
      break;
  }
  TransformReport tr = validate_transformation(phase, s, tol);
  out.r_form = tr.residuals.at(want);
  require(tr.matches(want), ErrorCode::SymmetryViolation,
          std::string("validate_discrete_symmetry: expected a ") +
              transform_kind_name(want) + " map (residual " +
              std::to_string(out.r_form) + ")");

  if (kind != SymmetryKind::Bogoliubov) {
    // (anti)commutation with the evolution at sampled times.
    double sign = kind == SymmetryKind::TimeReversal ? -1.0 : 1.0;
    for (double t : {0.3, 0.7, 1.1}) {
      OperatorMatrix lhs = compose(s, evolve(dyn, t));
      OperatorMatrix rhs = compose(evolve(dyn, sign * t), s);
      out.r_dynamics =
          std::max(out.r_dynamics, norm_inf(Mat(lhs.entries - rhs.entries)));
    }
    double eff = tol_scale(
        tol, {norm_inf(s.entries), norm_inf(evolve(dyn, 1.1).entries)});
    require(out.r_dynamics <= eff, ErrorCode::SymmetryViolation,
            std::string("validate_discrete_symmetry: s r_t != r_") +
                (sign < 0 ? "-t" : "t") + " s (residual " +
                std::to_string(out.r_dynamics) + ")");
    out.square_sign =
        square_sign_of(s, tol, "validate_discrete_symmetry");
    OperatorMatrix s2 = compose(s, s);
    Mat eye = Mat::Identity(s.dim(), s.dim());
    out.r_square = norm_inf(Mat(s2.entries - double(out.square_sign) * eye));
    if (kind == SymmetryKind::Parity)
      require(out.square_sign == 1, ErrorCode::SymmetryViolation,
              "validate_discrete_symmetry: parity must square to +1");
  }
  return out;
}

ZRestriction restrict_to_z(const QuantizedSystem& sys, const OperatorMatrix& s,
                           double tol) {
  require(s.dim() == sys.dim(), ErrorCode::DimensionMismatch,
          "restrict_to_z: sizes differ");
  const Eigen::Index d = sys.modes();
  Mat m(d, d), m_i(d, d);
  for (Eigen::Index l = 0; l < d; ++l) {
    Vec e = Vec::Zero(d);
    e(l) = 1.0;
    m.col(l) = sys.zeta(s.apply(sys.unzeta(e)));
    e(l) = Complex(0.0, 1.0);
    m_i.col(l) = sys.zeta(s.apply(sys.unzeta(e)));
  }
  double r_lin = norm_inf(Mat(m_i - Complex(0, 1) * m));
  double r_anti = norm_inf(Mat(m_i + Complex(0, 1) * m));

  ZRestriction out;
  out.antilinear = r_anti < r_lin;
  out.r_linearity = std::min(r_lin, r_anti);
  double eff = tol_scale(tol, {norm_inf(s.entries), norm_inf(m)});
  require(out.r_linearity <= eff, ErrorCode::LiftMismatch,
          "restrict_to_z: map does not act (anti)linearly on the "
          "one-particle space (residuals " +
              std::to_string(r_lin) + ", " + std::to_string(r_anti) + ")");
  out.m = m;
  out.r_unitary = norm_inf(Mat(m.adjoint() * m - Mat::Identity(d, d)));
  require(out.r_unitary <= eff, ErrorCode::LiftMismatch,
          "restrict_to_z: restriction is not unitary (residual " +
              std::to_string(out.r_unitary) + ")");
  return out;
}

LiftedSymmetry lift(const QuantizedSystem& sys, const SymmetryOp& sym,
                    double tol) {
  ZRestriction zr = restrict_to_z(sys, sym.op, tol);
  LiftedSymmetry L;
  L.kind = sym.kind;
  L.antilinear = zr.antilinear;
  L.m_z = zr.m;
  L.gamma = gamma_lift(sys.fock, zr.m);

  L.r_hamiltonian = norm_inf(Mat(L.conjugate(sys.hamiltonian) - sys.hamiltonian));

  if (is_charged(sys.species)) {
    double qsign = sym.kind == SymmetryKind::ChargeReversal ? -1.0 : 1.0;
    L.r_charge = norm_inf(Mat(L.conjugate(sys.charge) - qsign * sys.charge));
  }

  // Field covariance on sampled vectors: T phi(y) T^-1 = phi(tau y),
  // C psi*(y) C^-1 = psi(chi y) (and the adjoint relation follows).
  Rng rng(sub_seed(kVerifySeed, "lift fields"));
  int sector = sys.fock.cutoff - 1;
  for (int trial = 0; trial < 6; ++trial) {
    if (!is_charged(sys.species)) {
      Vec y = rng.real_vector(sys.dim()).cast<Complex>();
      Mat lhs = L.conjugate(field(sys, y).matrix);
      Mat rhs = field(sys, sym.op.apply(y)).matrix;
      L.r_fields = std::max(L.r_fields,
                            sector_residual(sys.fock, lhs, rhs, sector));
    } else {
      Vec y = rng.complex_vector(sys.dim());
      Vec sy = sym.op.apply(y);
      Mat lhs = L.conjugate(psi_star(sys, y).matrix);
      Mat rhs = sym.kind == SymmetryKind::ChargeReversal
                    ? psi(sys, sy).matrix
                    : psi_star(sys, sy).matrix;
      L.r_fields = std::max(L.r_fields,
                            sector_residual(sys.fock, lhs, rhs, sector));
    }
  }

  // S^2 at the one-particle level forces S^2 = 1 or (-1)^N upstairs.
  Mat m2 = L.antilinear ? Mat(zr.m * zr.m.conjugate()) : Mat(zr.m * zr.m);
  Mat eye_d = Mat::Identity(zr.m.rows(), zr.m.cols());
  double rp = norm_inf(Mat(m2 - eye_d));
  double rm = norm_inf(Mat(m2 + eye_d));
  L.square_sign = rp <= rm ? +1 : -1;
  Mat s2 = L.antilinear ? Mat(L.gamma * L.gamma.conjugate())
                        : Mat(L.gamma * L.gamma);
  Mat want = L.square_sign > 0
                 ? Mat(Mat::Identity(sys.fock.dim(), sys.fock.dim()))
                 : parity_op(sys.fock);
  L.r_square = std::max(std::min(rp, rm), norm_inf(Mat(s2 - want)));
  if (sym.square_sign != 0)
    require(L.square_sign == sym.square_sign, ErrorCode::LiftMismatch,
            "lift: one-particle square sign differs from the classical one");
  return L;
}

ChiTauClass normalize_chi_tau(const OperatorMatrix& chi,
                              const OperatorMatrix& tau, double tol) {
  require(chi.antilinear() && tau.antilinear(), ErrorCode::SpeciesFormMismatch,
          "normalize_chi_tau: chi and tau must both be antilinear");
  require(chi.dim() == tau.dim(), ErrorCode::DimensionMismatch,
          "normalize_chi_tau: sizes differ");

  ChiTauClass out;
  out.tau = tau;
  OperatorMatrix ct = compose(chi, tau);
  OperatorMatrix tc = compose(tau, chi);
  double eff =
      tol_scale(tol, {norm_inf(chi.entries) * norm_inf(tau.entries)});
  double r_comm = norm_inf(Mat(ct.entries - tc.entries));
  double r_anti = norm_inf(Mat(ct.entries + tc.entries));
  if (r_comm <= eff) {
    out.chi = chi;
  } else if (r_anti <= eff) {
    // chi' = i chi: for antilinear chi the square is phase-invariant, while
    // (chi' tau) = i (chi tau) flips the sign of the product's square, and
    // the pair now commutes.
    out.chi = scale_operator(Complex(0, 1), chi);
    out.rescaled = true;
  } else {
    fail(ErrorCode::NotProjectivelyCommuting,
         "normalize_chi_tau: chi and tau neither commute nor anticommute "
         "(residuals " +
             std::to_string(r_comm) + ", " + std::to_string(r_anti) + ")");
  }

  out.chi_sq = square_sign_of(out.chi, tol, "normalize_chi_tau: chi");
  out.tau_sq = square_sign_of(out.tau, tol, "normalize_chi_tau: tau");
  OperatorMatrix prod = compose(out.chi, out.tau);  // linear
  Mat p2 = prod.entries * prod.entries;
  Mat eye = Mat::Identity(prod.dim(), prod.dim());
  double rp = norm_inf(Mat(p2 - eye));
  double rm = norm_inf(Mat(p2 + eye));
  require(std::min(rp, rm) <= tol_scale(tol, {norm_inf(p2)}),
          ErrorCode::SymmetryViolation,
          "normalize_chi_tau: (chi tau)^2 is not +-1");
  out.chi_tau_sq = rp <= rm ? +1 : -1;
  require(out.chi_tau_sq == out.chi_sq * out.tau_sq,
          ErrorCode::SymmetryViolation,
          "normalize_chi_tau: commuting pair with inconsistent squares");

  const int rows[4][3] = {{1, 1, 1}, {-1, -1, 1}, {1, -1, -1}, {-1, 1, -1}};
  for (int r = 0; r < 4; ++r)
    if (rows[r][0] == out.chi_sq && rows[r][1] == out.tau_sq &&
        rows[r][2] == out.chi_tau_sq)
      out.row = r;
  require(out.row >= 0, ErrorCode::SymmetryViolation,
          "normalize_chi_tau: signs fall outside the four classes");
  return out;
}

NeutralReduction neutral_subspace(const PhaseSpace& phase,
                                  const LinearDynamics& dyn,
                                  const OperatorMatrix& chi, double tol) {
  require(is_charged(phase.species), ErrorCode::WrongSpecies,
          "neutral_subspace: input must be a charged system");
  require(chi.antilinear(), ErrorCode::SpeciesFormMismatch,
          "neutral_subspace: chi must be antilinear");
  require(chi.dim() == phase.dim(), ErrorCode::DimensionMismatch,
          "neutral_subspace: sizes differ");

  const Eigen::Index n = phase.dim();
  const Mat& u = chi.entries;
  const Mat& b = dyn.generator.entries;
  double eff = tol_scale(tol, {norm_inf(u), norm_inf(b)});

  Mat c2 = u * u.conjugate();
  Mat eye = Mat::Identity(n, n);
  if (norm_inf(Mat(c2 + eye)) <= eff)
    fail(ErrorCode::ChiSquaredMinusOne,
         "neutral_subspace: chi^2 = -1 has no fixed points");
  require(norm_inf(Mat(c2 - eye)) <= eff, ErrorCode::SymmetryViolation,
          "neutral_subspace: chi is not an involution");

  // chi commutes with r_t = exp(itb) iff U conj(B) = -B U.
  double r_comm = norm_inf(Mat(u * b.conjugate() + b * u));
  require(r_comm <= eff, ErrorCode::SymmetryViolation,
          "neutral_subspace: chi does not commute with the dynamics "
          "(residual " +
              std::to_string(r_comm) + ")");

  TransformKind want = phase.species == Species::ChargedBosonic
                           ? TransformKind::AntiChargedSymplectic
                           : TransformKind::AntiUnitary;
  TransformReport tr = validate_transformation(phase, chi, tol);
  require(tr.matches(want), ErrorCode::SymmetryViolation,
          std::string("neutral_subspace: chi must be ") +
              transform_kind_name(want) + " (residual " +
              std::to_string(tr.residuals.at(want)) + ")");

  // Fixed points of y = U conj(y): realify y = p + iq into R^{2n}.
  RMat ur = u.real(), ui = u.imag();
  RMat big(2 * n, 2 * n);
  big << ur - RMat::Identity(n, n), ui, ui, -ur - RMat::Identity(n, n);
  RMat ker = null_space(big, 1e-8);
  require(ker.cols() == n, ErrorCode::EigenspaceDimensionMismatch,
          "neutral_subspace: fixed-point space has real dimension " +
              std::to_string(ker.cols()) + ", expected " + std::to_string(n));
  Mat embed = ker.topRows(n).cast<Complex>() +
              Complex(0, 1) * ker.bottomRows(n).cast<Complex>();

  NeutralReduction red;
  red.embedding = embed;

  // Restricted form: real on the fixed subspace by the anti-compatibility.
  Mat f_r = embed.adjoint() * phase.form.entries * embed;
  red.r_restrict = norm_inf(Mat(f_r.imag().cast<Complex>()));

  // Restricted generator: a = d/dt exp(itb) = i b, expressed in the basis.
  Mat target = Complex(0, 1) * b * embed;
  RMat lhs(2 * n, n), rhs(2 * n, n);
  lhs << embed.real(), embed.imag();
  rhs << target.real(), target.imag();
  RMat a_r = lhs.colPivHouseholderQr().solve(rhs);
  red.r_restrict =
      std::max(red.r_restrict, norm_inf(RMat(lhs * a_r - rhs)));
  require(red.r_restrict <= tol_scale(100 * tol, {norm_inf(b)}),
          ErrorCode::SymmetryViolation,
          "neutral_subspace: dynamics does not preserve the fixed subspace "
          "(residual " +
              std::to_string(red.r_restrict) + ")");

  Species ns = phase.species == Species::ChargedBosonic
                   ? Species::NeutralBosonic
                   : Species::NeutralFermionic;
  red.phase = build_phase_space(
      ns, make_form(f_r.real().cast<Complex>(), FormKind::RealBilinear), {},
      tol * 100);
  red.dynamics = build_dynamics(red.phase, a_r.cast<Complex>(), tol * 100);
  return red;
}

ChargedDoubling double_to_charged(const PhaseSpace& phase,
                                  const LinearDynamics& dyn) {
  require(!is_charged(phase.species), ErrorCode::WrongSpecies,
          "double_to_charged: input must be a neutral system");
  const Eigen::Index n = phase.dim();
  Species cs = phase.species == Species::NeutralBosonic
                   ? Species::ChargedBosonic
                   : Species::ChargedFermionic;
  ChargedDoubling out;
  // The real bilinear form, read as a sesquilinear pairing on C^n.
  out.phase = build_phase_space(cs, make_form(phase.form.entries,
                                              FormKind::Sesquilinear));
  // r_t = exp(t a) = exp(it b) with b = -i a.
  out.dynamics =
      build_dynamics(out.phase, Mat(Complex(0, -1) * dyn.generator.entries));
  out.chi = make_operator(Mat::Identity(n, n), Linearity::Antilinear);
  return out;
}

BogoliubovResult bogoliubov_action(const QuantizedSystem& sys,
                                   const OperatorMatrix& r, double tol) {
  require(!r.antilinear(), ErrorCode::SpeciesFormMismatch,
          "bogoliubov_action: r must be linear");
  require(r.dim() == sys.dim(), ErrorCode::DimensionMismatch,
          "bogoliubov_action: sizes differ");
  const Mat& rm = r.entries;

  BogoliubovResult out;
  Rng rng(sub_seed(kVerifySeed, "bogoliubov contract"));
  const Eigen::Index n = sys.dim();
  int sector = sys.fock.cutoff - 2;
  Eigen::Index sd = sector_dim(sys.fock, sector);
  Mat eye = Mat::Identity(sd, sd);
  auto top = [&](const Mat& m) { return Mat(m.topLeftCorner(sd, sd)); };

  for (int trial = 0; trial < 8; ++trial) {
    if (!is_charged(sys.species)) {
      RVec y1 = rng.real_vector(n), y2 = rng.real_vector(n);
      RMat fr = sys.phase.form.real();
      Mat f1 = field(sys, Vec((rm * y1.cast<Complex>()))).matrix;
      Mat f2 = field(sys, Vec((rm * y2.cast<Complex>()))).matrix;
      if (sys.species == Species::NeutralBosonic) {
        Mat br = f1 * f2 - f2 * f1;
        out.r_contract = std::max(
            out.r_contract,
            norm_inf(Mat(top(br) - Complex(0, y1.dot(fr * y2)) * eye)));
      } else {
        Mat br = f1 * f2 + f2 * f1;
        out.r_contract =
            std::max(out.r_contract,
                     norm_inf(Mat(top(br) - Complex(2 * y1.dot(fr * y2)) * eye)));
      }
    } else {
      Vec y1 = rng.complex_vector(n), y2 = rng.complex_vector(n);
      Mat p1 = psi(sys, Vec(rm * y1)).matrix;
      Mat p2s = psi_star(sys, Vec(rm * y2)).matrix;
      Mat p2 = psi(sys, Vec(rm * y2)).matrix;
      Complex pairing = (y1.adjoint() * sys.phase.form.entries * y2)(0, 0);
      if (sys.species == Species::ChargedBosonic) {
        out.r_contract = std::max(
            out.r_contract,
            norm_inf(Mat(top(Mat(p1 * p2s - p2s * p1)) -
                         Complex(0, 1) * pairing * eye)));
        out.r_contract = std::max(
            out.r_contract, norm_inf(top(Mat(p1 * p2 - p2 * p1))));
      } else {
        out.r_contract = std::max(
            out.r_contract,
            norm_inf(Mat(top(Mat(p1 * p2s + p2s * p1)) - pairing * eye)));
        out.r_contract = std::max(
            out.r_contract, norm_inf(top(Mat(p1 * p2 + p2 * p1))));
      }
    }
  }
  double eff = tol_scale(100 * tol, {norm_inf(rm) * norm_inf(rm) *
                                     norm_inf(sys.phase.form.entries)});
  if (out.r_contract > eff)
    fail(ErrorCode::NotCanonical,
         "bogoliubov_action: transformed fields violate the commutation "
         "contract (residual " +
             std::to_string(out.r_contract) + ")");

  // Implementer exists in Gamma form when r preserves the complex
  // structure; then r_Z is unitary and Gamma(r_Z) phi(y) Gamma(r_Z)^-1 =
  // phi(r y).
  Mat structure = is_charged(sys.species)
                      ? sys.split->q
                      : sys.kahler->j.cast<Complex>();
  out.r_structure = norm_inf(Mat(rm * structure - structure * rm));
  if (out.r_structure <=
      tol_scale(tol, {norm_inf(rm), norm_inf(structure)})) {
    ZRestriction zr = restrict_to_z(sys, r, tol);
    out.implementer = gamma_lift(sys.fock, zr.m);
    out.implemented = true;
    Rng rng2(sub_seed(kVerifySeed, "bogoliubov implementer"));
    for (int trial = 0; trial < 6; ++trial) {
      if (!is_charged(sys.species)) {
        Vec y = rng2.real_vector(n).cast<Complex>();
        Mat lhs = out.implementer * field(sys, y).matrix *
                  out.implementer.adjoint();
        out.r_implementer = std::max(
            out.r_implementer,
            sector_residual(sys.fock, lhs, field(sys, Vec(rm * y)).matrix,
                            sys.fock.cutoff - 1));
      } else {
        Vec y = rng2.complex_vector(n);
        Mat lhs = out.implementer * psi_star(sys, y).matrix *
                  out.implementer.adjoint();
        out.r_implementer = std::max(
            out.r_implementer,
            sector_residual(sys.fock, lhs, psi_star(sys, Vec(rm * y)).matrix,
                            sys.fock.cutoff - 1));
      }
    }
  }
  return out;
}

}  // namespace fockq
