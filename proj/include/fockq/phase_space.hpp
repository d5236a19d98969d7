#pragma once

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "fockq/forms.hpp"

namespace fockq {

// The four quantization species.  Neutral spaces are real with a bilinear
// form (symplectic omega / euclidean nu); charged spaces are complex with a
// sesquilinear form (anti-hermitian charged-symplectic / hermitian unitary).
enum class Species {
  NeutralBosonic,
  NeutralFermionic,
  ChargedBosonic,
  ChargedFermionic,
};

inline bool is_charged(Species s) {
  return s == Species::ChargedBosonic || s == Species::ChargedFermionic;
}
inline bool is_bosonic(Species s) {
  return s == Species::NeutralBosonic || s == Species::ChargedBosonic;
}
inline bool is_fermionic(Species s) { return !is_bosonic(s); }

const char* species_name(Species s) noexcept;
std::optional<Species> parse_species(const std::string& name);

struct PhaseSpace {
  Species species = Species::NeutralBosonic;
  FormMatrix form;                        // omega / nu / (.|omega.) / (.|.)
  std::optional<FormMatrix> energy_form;  // beta Gram for bosonic species
  FormClassification classification;

  Eigen::Index dim() const { return form.dim(); }
};

// Validates the form against the species contract:
//   neutral bosonic:   real antisymmetric nondegenerate
//   neutral fermionic: real symmetric positive definite
//   charged bosonic:   antihermitian nondegenerate
//   charged fermionic: hermitian positive definite
// An optional energy form (bosonic beta) is checked to be of the right kind.
PhaseSpace build_phase_space(Species species, FormMatrix form,
                             std::optional<FormMatrix> energy_form = {},
                             double tol = kDefaultTol);

// One-parameter dynamics.  Neutral: r_t = exp(t a) with a real; charged:
// r_t = exp(i t b).  The generator must preserve the species form:
//   neutral bosonic:   a^T Omega + Omega a = 0
//   neutral fermionic: a^T N + N a = 0
//   charged:           b self-adjoint w.r.t. the form, b^dag F = F b.
struct LinearDynamics {
  Species species = Species::NeutralBosonic;
  OperatorMatrix generator;
  double r_contract = 0.0;  // residual of the form-preservation identity
};

LinearDynamics build_dynamics(const PhaseSpace& phase, Mat generator,
                              double tol = kDefaultTol);

OperatorMatrix evolve(const LinearDynamics& dyn, double t);

enum class TransformKind {
  Symplectic,
  AntiSymplectic,
  Orthogonal,
  ChargedSymplectic,
  ChargedAntiSymplectic,
  AntiChargedSymplectic,
  AntiChargedAntiSymplectic,
  Unitary,
  AntiUnitary,
};

const char* transform_kind_name(TransformKind k) noexcept;

// Residuals of every structure-preservation identity applicable to the
// species and (anti)linearity of r.  `kinds` lists the ones that hold.
struct TransformReport {
  std::map<TransformKind, double> residuals;
  std::vector<TransformKind> kinds;

  bool matches(TransformKind k) const {
    for (TransformKind x : kinds)
      if (x == k) return true;
    return false;
  }
};

TransformReport validate_transformation(const PhaseSpace& phase,
                                        const OperatorMatrix& r,
                                        double tol = kDefaultTol);

// Energy-form analysis for bosonic dynamics.  beta is derived from the
// generator (neutral: beta = omega a; charged: beta-Gram = i Omega b) and
// compared against a provided energy form if any.  Weak stability is
// "beta positive definite and ker a = 0"; strong stability additionally
// bounds the symplectic form by the energy Gram.
struct StabilityReport {
  bool weakly_stable = false;
  bool strongly_stable = false;
  bool ker_a_trivial = false;
  bool beta_positive = false;
  bool beta_matches = true;  // true when no energy form was provided
  double beta_min_eig = 0.0;
  double beta_match_residual = 0.0;
  double generator_min_sv = 0.0;
  double strong_norm = 0.0;  // |beta^{-1/2} Omega beta^{-1/2}|_2
  FormMatrix beta;           // the derived energy Gram
};

StabilityReport check_stability(const PhaseSpace& phase,
                                const LinearDynamics& dyn,
                                double tol = kDefaultTol);

// u_theta = cos(theta) 1 + sin(theta) j_ch for an anti-involution j_ch;
// the one-parameter U(1) group generated by a charge structure.
OperatorMatrix charge_symmetry_from_j(const OperatorMatrix& j_ch, double theta,
                                      double tol = kDefaultTol);

}  // namespace fockq
