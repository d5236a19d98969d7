#pragma once

#include "fockq/phase_space.hpp"

namespace fockq {

// Neutral positive-energy structure: polar decomposition a = h j of the
// dynamics generator w.r.t. the energy Gram (bosonic: beta; fermionic: nu),
// with h positive and j the compatible complex structure, plus the
// holomorphic subspace Z = Ker(j_C - i) carrying the one-particle data.
struct KahlerData {
  RMat h;            // positive "one-particle energy" on Y, a = h j = j h
  RMat j;            // anti-involution, symplectic/orthogonal per species
  RMat energy_gram;  // the Gram used for the polar decomposition
  Mat z_product;     // sesquilinear Gram of the holomorphic inner product on
                     // the ambient complexified space
  Mat z_basis;       // dim x (dim/2), orthonormal w.r.t. z_product
  Mat z_gram;        // Gram of z_basis (identity up to roundoff)
  Mat h_z;           // h restricted to Z in that basis, hermitian positive

  double r_involution = 0.0;  // |j^2 + 1|
  double r_commute = 0.0;     // |h j - j h|
  double r_factor = 0.0;      // |a - h j|
  double r_form = 0.0;        // holomorphic product reproduces omega / nu
};

KahlerData polar_kahler(const PhaseSpace& phase, const LinearDynamics& dyn,
                        double tol = kDefaultTol);

// Dynamical scalar product family for weakly stable bosonic dynamics:
// y1 ._s y2 = y1 beta h^{-2s} y2; s = 0 gives beta, s = 1/2 the product
// whose imaginary holomorphic part is omega.
RMat dyn_gram(const KahlerData& k, double s);

// Basis of Z = Ker(j_C - i), orthonormalized against a sesquilinear
// product Gram.  z_gram is the Gram of the returned basis.
struct HolomorphicBasis {
  Mat z_basis;
  Mat z_gram;
};

HolomorphicBasis holomorphic_basis(const OperatorMatrix& j,
                                   const Mat& z_product,
                                   double tol = kDefaultTol);

// Charged positive-energy structure: spectral splitting of the generator b
// w.r.t. the species Gram (bosonic: the beta Gram; fermionic: the scalar
// product).  q = 1_+ - 1_-, h = |b|, j = i q.
struct ChargedSplit {
  Mat gram;     // the hermitian positive Gram the splitting is taken in
  RVec eigs;    // eigenvalues of b, ascending
  Mat modes;    // Gram-orthonormal eigenvectors (columns), same order
  Mat p_plus;   // Gram-self-adjoint idempotents onto the +/- subspaces
  Mat p_minus;
  Mat q;        // p_plus - p_minus
  Mat h;        // |b|
  Mat j;        // i q

  double r_idempotent = 0.0;
  double r_q_involution = 0.0;  // |q^2 - 1|
  double r_commute = 0.0;       // |[q, b]|
  double r_recompose = 0.0;     // |b - h q|
};

ChargedSplit charged_splitting(const OperatorMatrix& b, const Mat& gram,
                               double tol = kDefaultTol);

}  // namespace fockq
