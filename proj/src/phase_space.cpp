#include "fockq/phase_space.hpp"

namespace fockq {

const char* species_name(Species s) noexcept {
  switch (s) {
    case Species::NeutralBosonic: return "neutral_bosonic";
    case Species::NeutralFermionic: return "neutral_fermionic";
    case Species::ChargedBosonic: return "charged_bosonic";
    case Species::ChargedFermionic: return "charged_fermionic";
  }
  return "unknown";
}

std::optional<Species> parse_species(const std::string& name) {
  if (name == "neutral_bosonic") return Species::NeutralBosonic;
  if (name == "neutral_fermionic") return Species::NeutralFermionic;
  if (name == "charged_bosonic") return Species::ChargedBosonic;
  if (name == "charged_fermionic") return Species::ChargedFermionic;
  return std::nullopt;
}

PhaseSpace build_phase_space(Species species, FormMatrix form,
                             std::optional<FormMatrix> energy_form,
                             double tol) {
  FormKind want_kind = is_charged(species) ? FormKind::Sesquilinear
                                           : FormKind::RealBilinear;
  require(form.kind == want_kind, ErrorCode::SpeciesFormMismatch,
          std::string("build_phase_space: ") + species_name(species) +
              " expects a " +
              (want_kind == FormKind::RealBilinear ? "real bilinear"
                                                   : "sesquilinear") +
              " form");

  FormClassification cls = classify_form(form, tol);
  auto reject = [&](const std::string& what) {
    fail(ErrorCode::SpeciesFormMismatch,
         std::string("build_phase_space: ") + species_name(species) + ": " +
             what);
  };
  switch (species) {
    case Species::NeutralBosonic:
      if (!cls.antisymmetric)
        reject("omega is not antisymmetric (residual " +
               std::to_string(cls.r_antisymmetric) + ")");
      if (!cls.nondegenerate) reject("omega is degenerate");
      if (form.dim() % 2 != 0)
        fail(ErrorCode::OddDimension,
             "build_phase_space: symplectic space of odd dimension");
      break;
    case Species::NeutralFermionic:
      if (!cls.symmetric)
        reject("nu is not symmetric (residual " +
               std::to_string(cls.r_symmetric) + ")");
      if (!cls.positive) reject("nu is not positive definite");
      break;
    case Species::ChargedBosonic:
      if (!cls.antihermitian)
        reject("charged form is not antihermitian (residual " +
               std::to_string(cls.r_antihermitian) + ")");
      if (!cls.nondegenerate) reject("charged form is degenerate");
      break;
    case Species::ChargedFermionic:
      if (!cls.hermitian)
        reject("scalar product is not hermitian (residual " +
               std::to_string(cls.r_hermitian) + ")");
      if (!cls.positive) reject("scalar product is not positive definite");
      break;
  }

  if (energy_form) {
    require(is_bosonic(species), ErrorCode::SpeciesFormMismatch,
            "build_phase_space: energy form only applies to bosonic species");
    require(energy_form->dim() == form.dim(), ErrorCode::DimensionMismatch,
            "build_phase_space: energy form size differs from omega");
    FormKind ek = is_charged(species) ? FormKind::Sesquilinear
                                      : FormKind::RealBilinear;
    require(energy_form->kind == ek, ErrorCode::SpeciesFormMismatch,
            "build_phase_space: energy form has the wrong kind");
  }

  PhaseSpace p;
  p.species = species;
  p.form = std::move(form);
  p.energy_form = std::move(energy_form);
  p.classification = cls;
  return p;
}

LinearDynamics build_dynamics(const PhaseSpace& phase, Mat generator,
                              double tol) {
  require_square(generator, "build_dynamics");
  require_finite(generator, "build_dynamics");
  require(generator.rows() == phase.dim(), ErrorCode::DimensionMismatch,
          "build_dynamics: generator size differs from the phase space");

  const Mat& f = phase.form.entries;
  double eff = tol_scale(tol, {norm_inf(generator), norm_inf(f)});
  LinearDynamics d;
  d.species = phase.species;

  if (!is_charged(phase.species)) {
    RMat a = real_part_checked(generator, "build_dynamics: neutral generator");
    RMat fr = f.real();
    d.r_contract = norm_inf(RMat(a.transpose() * fr + fr * a));
    require(d.r_contract <= eff, ErrorCode::SpeciesFormMismatch,
            std::string("build_dynamics: generator does not preserve the ") +
                (phase.species == Species::NeutralBosonic ? "symplectic form"
                                                          : "scalar product") +
                " (residual " + std::to_string(d.r_contract) + ")");
    d.generator = make_operator(a.cast<Complex>(), Linearity::Linear);
  } else {
    // r_t = exp(itb) preserves the sesquilinear form iff b is form
    // self-adjoint: b^dag F = F b.
    d.r_contract = norm_inf(Mat(generator.adjoint() * f - f * generator));
    require(d.r_contract <= eff, ErrorCode::SpeciesFormMismatch,
            "build_dynamics: b is not self-adjoint w.r.t. the charged form "
            "(residual " +
                std::to_string(d.r_contract) + ")");
    d.generator = make_operator(std::move(generator), Linearity::Linear);
  }
  return d;
}

OperatorMatrix evolve(const LinearDynamics& dyn, double t) {
  if (!is_charged(dyn.species)) {
    RMat a = dyn.generator.entries.real();
    return make_operator(matrix_exp(RMat(t * a)).cast<Complex>(),
                         Linearity::Linear);
  }
  Mat itb = Complex(0.0, t) * dyn.generator.entries;
  return make_operator(matrix_exp(itb), Linearity::Linear);
}

const char* transform_kind_name(TransformKind k) noexcept {
  switch (k) {
    case TransformKind::Symplectic: return "symplectic";
    case TransformKind::AntiSymplectic: return "anti_symplectic";
    case TransformKind::Orthogonal: return "orthogonal";
    case TransformKind::ChargedSymplectic: return "charged_symplectic";
    case TransformKind::ChargedAntiSymplectic:
      return "charged_anti_symplectic";
    case TransformKind::AntiChargedSymplectic:
      return "anti_charged_symplectic";
    case TransformKind::AntiChargedAntiSymplectic:
      return "anti_charged_anti_symplectic";
    case TransformKind::Unitary: return "unitary";
    case TransformKind::AntiUnitary: return "anti_unitary";
  }
  return "unknown";
}

TransformReport validate_transformation(const PhaseSpace& phase,
                                        const OperatorMatrix& r, double tol) {
  require(r.dim() == phase.dim(), ErrorCode::DimensionMismatch,
          "validate_transformation: sizes differ");
  const Mat& f = phase.form.entries;
  const Mat& m = r.entries;
  double eff = tol_scale(tol, {norm_inf(m), norm_inf(f)});

  TransformReport rep;
  auto add = [&](TransformKind k, double res) {
    rep.residuals[k] = res;
    if (res <= eff) rep.kinds.push_back(k);
  };

  switch (phase.species) {
    case Species::NeutralBosonic: {
      require(!r.antilinear(), ErrorCode::SpeciesFormMismatch,
              "validate_transformation: antilinear maps need a complex space");
      RMat rr = real_part_checked(m, "validate_transformation: r");
      RMat w = f.real();
      add(TransformKind::Symplectic, norm_inf(RMat(rr.transpose() * w * rr - w)));
      add(TransformKind::AntiSymplectic,
          norm_inf(RMat(rr.transpose() * w * rr + w)));
      break;
    }
    case Species::NeutralFermionic: {
      require(!r.antilinear(), ErrorCode::SpeciesFormMismatch,
              "validate_transformation: antilinear maps need a complex space");
      RMat rr = real_part_checked(m, "validate_transformation: r");
      RMat n = f.real();
      add(TransformKind::Orthogonal, norm_inf(RMat(rr.transpose() * n * rr - n)));
      break;
    }
    case Species::ChargedBosonic: {
      if (!r.antilinear()) {
        add(TransformKind::ChargedSymplectic, norm_inf(Mat(m.adjoint() * f * m - f)));
        add(TransformKind::ChargedAntiSymplectic,
            norm_inf(Mat(m.adjoint() * f * m + f)));
      } else {
        // (ry1|F ry2) = y1^T (U^dag F U) conj(y2) vs conj((y1|F y2)) =
        // y1^T conj(F) conj(y2): antilinear kinds compare against conj(F).
        add(TransformKind::AntiChargedSymplectic,
            norm_inf(Mat(m.adjoint() * f * m - f.conjugate())));
        add(TransformKind::AntiChargedAntiSymplectic,
            norm_inf(Mat(m.adjoint() * f * m + f.conjugate())));
      }
      break;
    }
    case Species::ChargedFermionic: {
      if (!r.antilinear()) {
        add(TransformKind::Unitary, norm_inf(Mat(m.adjoint() * f * m - f)));
      } else {
        add(TransformKind::AntiUnitary,
            norm_inf(Mat(m.adjoint() * f * m - f.conjugate())));
      }
      break;
    }
  }
  return rep;
}

StabilityReport check_stability(const PhaseSpace& phase,
                                const LinearDynamics& dyn, double tol) {
  require(is_bosonic(phase.species), ErrorCode::WrongSpecies,
          "check_stability: stability analysis applies to bosonic species");
  require(dyn.species == phase.species, ErrorCode::SpeciesFormMismatch,
          "check_stability: dynamics species differs from the phase space");

  StabilityReport rep;
  const Mat& f = phase.form.entries;
  const Mat& g = dyn.generator.entries;
  double eff = tol_scale(tol, {norm_inf(f), norm_inf(g)});

  Mat beta;
  if (phase.species == Species::NeutralBosonic) {
    beta = f.real().cast<Complex>() * g;  // y beta y' = y omega a y'
    rep.beta = make_form(beta, FormKind::RealBilinear);
  } else {
    beta = Complex(0, 1) * f * g;  // (y|beta y') = i (y|omega b y')
    rep.beta = make_form(beta, FormKind::Sesquilinear);
  }

  if (phase.energy_form) {
    rep.beta_match_residual = norm_inf(Mat(phase.energy_form->entries - beta));
    rep.beta_matches = rep.beta_match_residual <= eff;
  }

  FormClassification bc = classify_form(rep.beta, tol);
  rep.beta_positive = bc.positive;
  rep.beta_min_eig = bc.smallest_eig;

  rep.generator_min_sv = smallest_singular_value(g);
  rep.ker_a_trivial = rep.generator_min_sv > eff;

  rep.weakly_stable = rep.beta_positive && rep.ker_a_trivial && rep.beta_matches;

  if (rep.weakly_stable) {
    // |omega(y1,y2)| <= |y1|_beta |y2|_beta  <=>  |B^{-1/2} F B^{-1/2}|_2 <= 1.
    Mat bis = herm_inv_sqrt((beta + beta.adjoint()) / 2.0, tol,
                            "check_stability: beta");
    Mat core = bis * f * bis;
    Eigen::JacobiSVD<Mat> svd(core);
    rep.strong_norm = svd.singularValues().maxCoeff();
    rep.strongly_stable = rep.strong_norm <= 1.0 + tol;
  }
  return rep;
}

OperatorMatrix charge_symmetry_from_j(const OperatorMatrix& j_ch, double theta,
                                      double tol) {
  require(!j_ch.antilinear(), ErrorCode::SpeciesFormMismatch,
          "charge_symmetry_from_j: j must be linear");
  const Mat& jm = j_ch.entries;
  double eff = tol_scale(tol, {norm_inf(jm)});
  double r = norm_inf(Mat(jm * jm + Mat::Identity(jm.rows(), jm.cols())));
  require(r <= eff, ErrorCode::JNotAntiInvolution,
          "charge_symmetry_from_j: j^2 != -1 (residual " + std::to_string(r) +
              ")");
  Mat u = std::cos(theta) * Mat::Identity(jm.rows(), jm.cols()) +
          std::sin(theta) * jm;
  return make_operator(std::move(u), Linearity::Linear);
}

}  // namespace fockq
