#pragma once

#include <optional>

#include "fockq/fock.hpp"
#include "fockq/kahler.hpp"

namespace fockq {

// A classical linear system together with its positive-energy Fock
// quantization.  The coordinate maps identify phase space with the
// one-particle space C^modes the Fock space is built over:
//   zeta(y) = coord_lin y + coord_anti conj(y)       (C-linear on Z)
//   y(zeta) = recon_lin zeta + recon_anti conj(zeta) (left inverse)
// Neutral species: zeta(y) are the holomorphic coordinates of 1_Z y.
// Charged species: zeta(y) are the scaled mode coordinates, linear on the
// positive-charge modes and antilinear on the negative-charge ones.
struct QuantizedSystem {
  Species species = Species::NeutralBosonic;
  PhaseSpace phase;
  LinearDynamics dynamics;
  std::optional<KahlerData> kahler;   // neutral species
  std::optional<ChargedSplit> split;  // charged species
  FockRep fock;

  Mat h_z;          // one-particle energy on C^modes, hermitian positive
  Mat q_z;          // one-particle charge (charged species), diag +-1
  Mat hamiltonian;  // dGamma(h_z)
  Mat charge;       // dGamma(q_z), empty for neutral species

  Mat coord_lin, coord_anti;  // modes x dim
  Mat recon_lin, recon_anti;  // dim x modes

  double h_z_min = 0.0;       // smallest one-particle energy
  double r_vacuum = 0.0;      // |H vacuum|
  double r_positive = 0.0;    // max(0, -min eig H)

  int modes() const { return fock.modes; }
  Eigen::Index dim() const { return phase.dim(); }

  Vec zeta(const Vec& y) const {
    return coord_lin * y + coord_anti * y.conjugate();
  }
  Vec unzeta(const Vec& z) const {
    return recon_lin * z + recon_anti * z.conjugate();
  }
};

// Builds the Fock quantization.  Neutral species go through the polar
// Kahler structure, charged species through the spectral splitting of b
// in the energy Gram (bosonic) or the scalar product (fermionic).  The
// cutoff applies to bosonic spaces; fermionic spaces are complete.
QuantizedSystem quantize(const PhaseSpace& phase, const LinearDynamics& dyn,
                         int cutoff, double tol = kDefaultTol);

// Neutral field operator phi(y) = a*(z(y)) + a(z(y)); accepts complex y as
// the C-linear extension phi(y1 + i y2) = phi(y1) + i phi(y2).
FockOperator field(const QuantizedSystem& sys, const Vec& y);

// Charged fields: psi_star is C-linear in y, psi = psi_star^dag antilinear.
FockOperator psi_star(const QuantizedSystem& sys, const Vec& y);
FockOperator psi(const QuantizedSystem& sys, const Vec& y);

struct ResidualReport {
  double max_residual = 0.0;
  double tolerance = 0.0;
  bool pass = false;
};

// e^{itH} phi(y) e^{-itH} = phi(r_t y) on the safe sectors, over the given
// times and phase-space vectors (charged species use psi_star/psi).
ResidualReport verify_intertwining(const QuantizedSystem& sys,
                                   const std::vector<double>& times,
                                   const std::vector<Vec>& ys,
                                   double tol = kDefaultTol);

// e^{i theta Q} psi(y) e^{-i theta Q} = psi(e^{i theta} y).
ResidualReport verify_charge_rotation(const QuantizedSystem& sys,
                                      const std::vector<double>& thetas,
                                      const std::vector<Vec>& ys,
                                      double tol = kDefaultTol);

// Charge structure on a neutral system: an anti-involution j_ch that is
// compatible with the form and commutes with the dynamics splits the
// neutral field into charged pairs
//   psi*(y) = kappa (phi(y) - i phi(j_ch y)),
//   psi(y)  = kappa (phi(y) + i phi(j_ch y)),
// kappa = 1/sqrt(2) (Bose) or 1/2 (Fermi).  The returned residual is the
// verification of the charged commutation contract they satisfy.
struct NeutralChargeStructure {
  RMat j_ch;
  double kappa = 0.0;
  double r_contract = 0.0;   // charged CCR/CAR residual on safe sectors
  double r_dynamics = 0.0;   // |[j_ch, a]|
};

NeutralChargeStructure charged_fields_from_neutral(const QuantizedSystem& sys,
                                                   const OperatorMatrix& j_ch,
                                                   double tol = kDefaultTol);

FockOperator neutral_psi_star(const QuantizedSystem& sys,
                              const NeutralChargeStructure& cs, const RVec& y);
FockOperator neutral_psi(const QuantizedSystem& sys,
                         const NeutralChargeStructure& cs, const RVec& y);

}  // namespace fockq
