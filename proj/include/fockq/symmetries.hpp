#pragma once

#include "fockq/quantize.hpp"

namespace fockq {

enum class SymmetryKind { TimeReversal, ChargeReversal, Parity, Bogoliubov };

const char* symmetry_kind_name(SymmetryKind k) noexcept;

// A classically validated discrete symmetry.
//   TimeReversal: s r_t = r_{-t} s; neutral: linear anti-symplectic
//     (bosonic) / orthogonal (fermionic); charged: antilinear, commuting
//     with b, anti-(anti-)symplectic (bosonic) / anti-unitary (fermionic).
//   ChargeReversal: charged species only; antilinear, s r_t = r_t s
//     (equivalently s b = -b s), anti-charged symplectic / anti-unitary.
//   Parity: linear, form-preserving, commuting with r_t.
//   Bogoliubov: linear, form-preserving; no dynamics constraint.
struct SymmetryOp {
  SymmetryKind kind = SymmetryKind::Bogoliubov;
  OperatorMatrix op;
  int square_sign = 0;  // +1 / -1 when s^2 = +-1 applies, else 0
  double r_square = 0.0;
  double r_dynamics = 0.0;  // (anti)commutation with r_t at sampled t
  double r_form = 0.0;      // the applicable form-preservation residual
};

SymmetryOp validate_discrete_symmetry(const PhaseSpace& phase,
                                      const LinearDynamics& dyn,
                                      const OperatorMatrix& s, SymmetryKind kind,
                                      double tol = kDefaultTol);

// Restriction of a real-linear phase-space map to the one-particle space,
// through the coordinate maps of a quantized system.  `antilinear` says how
// the restriction acts on Z (a linear map on Y can restrict antilinearly
// and vice versa: time reversal flips the complex structure).
struct ZRestriction {
  Mat m;
  bool antilinear = false;
  double r_linearity = 0.0;  // consistency of the (anti)linear reading
  double r_unitary = 0.0;    // |M^dag M - 1|
};

ZRestriction restrict_to_z(const QuantizedSystem& sys, const OperatorMatrix& s,
                           double tol = kDefaultTol);

// Second-quantized symmetry U = Gamma(M) (times entrywise conjugation when
// antilinear).  square_sign = +1 means U^2 = 1, -1 means U^2 = (-1)^N.
struct LiftedSymmetry {
  SymmetryKind kind = SymmetryKind::Bogoliubov;
  Mat gamma;
  bool antilinear = false;
  Mat m_z;
  int square_sign = 0;
  double r_hamiltonian = 0.0;  // |S H S^-1 - H|
  double r_charge = 0.0;       // |S Q S^-1 -+ Q| (charged species)
  double r_fields = 0.0;       // field covariance on sampled vectors
  double r_square = 0.0;       // |S^2 - (1 or parity)|

  Mat conjugate(const Mat& op) const {
    return antilinear ? Mat(gamma * op.conjugate() * gamma.adjoint())
                      : Mat(gamma * op * gamma.adjoint());
  }
};

LiftedSymmetry lift(const QuantizedSystem& sys, const SymmetryOp& sym,
                    double tol = kDefaultTol);

// Joint normal form of a charge reversal chi and a time reversal tau:
// when they anticommute, chi is replaced by i chi so the pair commutes.
// The class row is (chi^2, tau^2, (chi tau)^2); exactly four rows occur.
struct ChiTauClass {
  OperatorMatrix chi;  // possibly rescaled by i
  OperatorMatrix tau;
  bool rescaled = false;
  int chi_sq = 0, tau_sq = 0, chi_tau_sq = 0;
  int row = -1;  // index into {(1,1,1), (-1,-1,1), (1,-1,-1), (-1,1,-1)}
};

ChiTauClass normalize_chi_tau(const OperatorMatrix& chi,
                              const OperatorMatrix& tau,
                              double tol = kDefaultTol);

// Fixed-point reduction of a charged system under an antilinear involution
// chi (chi^2 = +1) commuting with the dynamics: the neutral phase space
// Y_chi = {y : chi y = y} with the restricted (real) form and generator.
// `embedding` has the Y_chi basis as columns; restricted data is expressed
// in that basis.
struct NeutralReduction {
  PhaseSpace phase;
  LinearDynamics dynamics;
  Mat embedding;          // dim x k complex
  double r_restrict = 0.0;  // invariance residual of the restriction
};

NeutralReduction neutral_subspace(const PhaseSpace& phase,
                                  const LinearDynamics& dyn,
                                  const OperatorMatrix& chi,
                                  double tol = kDefaultTol);

// Complexification of a neutral system into a charged one: the same matrix
// read as a sesquilinear form, generator b = -i a, and chi = entrywise
// conjugation as the distinguished charge reversal.  neutral_subspace of
// the result recovers the input.
struct ChargedDoubling {
  PhaseSpace phase;
  LinearDynamics dynamics;
  OperatorMatrix chi;
};

ChargedDoubling double_to_charged(const PhaseSpace& phase,
                                  const LinearDynamics& dyn);

// Action of a canonical transformation r on the quantized system: checks
// that the transformed fields still satisfy the species contract, and when
// r preserves the complex structure (neutral: [r, j] = 0; charged:
// [r, q] = 0) builds the implementer Gamma(r_Z) with
// U phi(y) U^-1 = phi(r y).
struct BogoliubovResult {
  double r_contract = 0.0;
  bool implemented = false;
  double r_structure = 0.0;  // |[r, j]| resp. |[r, q]|
  Mat implementer;
  double r_implementer = 0.0;
};

BogoliubovResult bogoliubov_action(const QuantizedSystem& sys,
                                   const OperatorMatrix& r,
                                   double tol = kDefaultTol);

}  // namespace fockq
