#include "fockq/phase_space.hpp"

#include "helpers.hpp"

using namespace fockq;

namespace {

Mat omega_std(int n) {
  RMat w = RMat::Zero(2 * n, 2 * n);
  w.topRightCorner(n, n) = -RMat::Identity(n, n);
  w.bottomLeftCorner(n, n) = RMat::Identity(n, n);
  return w.cast<Complex>();
}

}  // namespace

TEST_CASE("species names round-trip") {
  for (Species s : {Species::NeutralBosonic, Species::NeutralFermionic,
                    Species::ChargedBosonic, Species::ChargedFermionic}) {
    auto back = parse_species(species_name(s));
    REQUIRE(back.has_value());
    CHECK(*back == s);
  }
  CHECK(!parse_species("bogus").has_value());
}

TEST_CASE("species form contracts are enforced") {
  // neutral bosonic needs an antisymmetric nondegenerate real form
  CHECK(build_phase_space(Species::NeutralBosonic,
                          make_form(omega_std(2), FormKind::RealBilinear))
            .dim() == 4);
  CHECK_ERROR_CODE(
      build_phase_space(Species::NeutralBosonic,
                        make_form(Mat::Identity(2, 2), FormKind::RealBilinear)),
      ErrorCode::SpeciesFormMismatch);
  // an odd-dimensional antisymmetric form is automatically degenerate
  Mat odd = Mat::Zero(3, 3);
  odd(0, 1) = 1;
  odd(1, 0) = -1;
  odd(1, 2) = 1;
  odd(2, 1) = -1;
  CHECK_ERROR_CODE(
      build_phase_space(Species::NeutralBosonic,
                        make_form(odd, FormKind::RealBilinear)),
      ErrorCode::SpeciesFormMismatch);

  // neutral fermionic needs a positive definite symmetric real form
  CHECK(build_phase_space(Species::NeutralFermionic,
                          make_form(Mat::Identity(3, 3), FormKind::RealBilinear))
            .classification.positive);
  Mat indef = Mat::Identity(2, 2);
  indef(1, 1) = -1;
  CHECK_ERROR_CODE(
      build_phase_space(Species::NeutralFermionic,
                        make_form(indef, FormKind::RealBilinear)),
      ErrorCode::SpeciesFormMismatch);

  // charged bosonic: antihermitian nondegenerate sesquilinear
  Mat cb(2, 2);
  cb << Complex(0, -1), 0, 0, Complex(0, 1);
  CHECK(build_phase_space(Species::ChargedBosonic,
                          make_form(cb, FormKind::Sesquilinear))
            .classification.antihermitian);
  CHECK_ERROR_CODE(
      build_phase_space(Species::ChargedBosonic,
                        make_form(Mat::Identity(2, 2), FormKind::Sesquilinear)),
      ErrorCode::SpeciesFormMismatch);

  // charged fermionic: hermitian positive definite sesquilinear
  CHECK(build_phase_space(Species::ChargedFermionic,
                          make_form(Mat::Identity(2, 2), FormKind::Sesquilinear))
            .classification.positive);
  CHECK_ERROR_CODE(
      build_phase_space(Species::ChargedFermionic,
                        make_form(cb, FormKind::Sesquilinear)),
      ErrorCode::SpeciesFormMismatch);

  // a form of the wrong kind for the species is rejected outright
  CHECK_ERROR_CODE(
      build_phase_space(Species::NeutralBosonic,
                        make_form(cb, FormKind::Sesquilinear)),
      ErrorCode::SpeciesFormMismatch);
}

TEST_CASE("dynamics generators must preserve the form") {
  PhaseSpace nb = build_phase_space(
      Species::NeutralBosonic, make_form(omega_std(1), FormKind::RealBilinear));
  Mat a(2, 2);
  a << 0, 1, -4, 0;  // oscillator with omega^2 = 4
  LinearDynamics dyn = build_dynamics(nb, a);
  CHECK(dyn.r_contract <= 1e-12);

  Mat bad(2, 2);
  bad << 1, 0, 0, 1;  // pure scaling does not preserve omega
  CHECK_ERROR_CODE(build_dynamics(nb, bad), ErrorCode::SpeciesFormMismatch);

  // evolution is symplectic at every time
  for (double t : {0.0, 0.4, 1.7, -2.3}) {
    OperatorMatrix rt = evolve(dyn, t);
    TransformReport rep = validate_transformation(nb, rt);
    CHECK(rep.matches(TransformKind::Symplectic));
  }

  // the charged contract is self-adjointness w.r.t. the form
  Mat f(2, 2);
  f << Complex(0, -1), 0, 0, Complex(0, 1);
  PhaseSpace cb = build_phase_space(Species::ChargedBosonic,
                                    make_form(f, FormKind::Sesquilinear));
  Mat b(2, 2);
  b << 1, 0, 0, -2;  // real diagonal: b^dag F = F b holds for diagonal F
  CHECK(build_dynamics(cb, b).r_contract <= 1e-12);
  Mat nb2(2, 2);
  nb2 << 0, 1, 0, 0;
  CHECK_ERROR_CODE(build_dynamics(cb, nb2), ErrorCode::SpeciesFormMismatch);
}

TEST_CASE("transformation taxonomy distinguishes the anti variants") {
  PhaseSpace nb = build_phase_space(
      Species::NeutralBosonic, make_form(omega_std(1), FormKind::RealBilinear));
  Mat flip(2, 2);
  flip << 1, 0, 0, -1;  // q -> q, p -> -p reverses omega
  TransformReport rep = validate_transformation(nb, make_operator(flip));
  CHECK(rep.matches(TransformKind::AntiSymplectic));
  CHECK(!rep.matches(TransformKind::Symplectic));

  PhaseSpace nf = build_phase_space(
      Species::NeutralFermionic,
      make_form(Mat::Identity(2, 2), FormKind::RealBilinear));
  rep = validate_transformation(nf, make_operator(flip));
  CHECK(rep.matches(TransformKind::Orthogonal));

  // charged fermionic: unitary vs antiunitary by linearity
  PhaseSpace cf = build_phase_space(
      Species::ChargedFermionic,
      make_form(Mat::Identity(2, 2), FormKind::Sesquilinear));
  Mat u(2, 2);
  u << 0, 1, 1, 0;
  rep = validate_transformation(cf, make_operator(u));
  CHECK(rep.matches(TransformKind::Unitary));
  rep = validate_transformation(cf, make_operator(u, Linearity::Antilinear));
  CHECK(rep.matches(TransformKind::AntiUnitary));
  CHECK(!rep.matches(TransformKind::Unitary));
}

TEST_CASE("stability analysis for bosonic dynamics") {
  PhaseSpace nb = build_phase_space(
      Species::NeutralBosonic, make_form(omega_std(1), FormKind::RealBilinear));
  Mat a(2, 2);
  a << 0, 1, -4, 0;
  StabilityReport st = check_stability(nb, build_dynamics(nb, a));
  CHECK(st.beta_positive);
  CHECK(st.ker_a_trivial);
  CHECK(st.weakly_stable);
  CHECK(st.strongly_stable);
  // beta = omega a = diag(4, 1) for this oscillator
  Mat beta_expected(2, 2);
  beta_expected << 4, 0, 0, 1;
  CHECK_MAT_NEAR(st.beta.entries, beta_expected, 1e-12);

  // an inverted oscillator has indefinite energy
  Mat a_bad(2, 2);
  a_bad << 0, 1, 4, 0;
  StabilityReport bad = check_stability(nb, build_dynamics(nb, a_bad));
  CHECK(!bad.beta_positive);
  CHECK(!bad.weakly_stable);
  CHECK(!bad.strongly_stable);

  // a provided energy form must match the derived one
  PhaseSpace with_energy = build_phase_space(
      Species::NeutralBosonic, make_form(omega_std(1), FormKind::RealBilinear),
      make_form(beta_expected, FormKind::RealBilinear));
  StabilityReport matched =
      check_stability(with_energy, build_dynamics(with_energy, a));
  CHECK(matched.beta_matches);
  CHECK(matched.beta_match_residual <= 1e-12);
}

TEST_CASE("charge rotations form a one-parameter group") {
  Mat j(2, 2);
  j << 0, -1, 1, 0;
  OperatorMatrix u1 = charge_symmetry_from_j(make_operator(j), 0.3);
  OperatorMatrix u2 = charge_symmetry_from_j(make_operator(j), 1.1);
  OperatorMatrix u12 = charge_symmetry_from_j(make_operator(j), 1.4);
  CHECK_MAT_NEAR(compose(u1, u2).entries, u12.entries, 1e-12);
  // theta = 0 is the identity
  CHECK_MAT_NEAR(charge_symmetry_from_j(make_operator(j), 0.0).entries,
                 Mat::Identity(2, 2), 1e-15);
  // a non-anti-involution is rejected
  Mat notj(2, 2);
  notj << 0, -2, 2, 0;
  CHECK_ERROR_CODE(charge_symmetry_from_j(make_operator(notj), 0.5),
                   ErrorCode::JNotAntiInvolution);
}
