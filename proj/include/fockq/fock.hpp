#pragma once

#include <cstdint>
#include <map>
#include <vector>

#include "fockq/linalg.hpp"

namespace fockq {

enum class Statistics { Bose, Fermi };

// Truncated Fock space over C^modes in the occupation-number basis.
// States are graded by total particle number; within a grade they are
// enumerated in descending lexicographic order of the occupation tuple,
// e.g. Fermi d=2: (0,0), (1,0), (0,1), (1,1).
//
// Fermi spaces are always complete (cutoff = modes).  Bose spaces keep the
// sectors with total occupation <= cutoff; identities built from ladder
// polynomials of degree g hold exactly on sectors <= cutoff - g.
struct FockRep {
  Statistics stats = Statistics::Bose;
  int modes = 0;
  int cutoff = 0;
  std::vector<std::vector<int>> basis;
  std::vector<Eigen::Index> grade_offset;  // size cutoff+2, last = dim
  std::vector<Mat> create;                 // per-mode a*_k
  std::vector<Mat> annihilate;             // per-mode a_k = (a*_k)^dag

  Eigen::Index dim() const { return Eigen::Index(basis.size()); }
  Eigen::Index index_of(const std::vector<int>& occ) const;  // -1 if absent
  int total(Eigen::Index idx) const;
  std::uint64_t basis_hash() const;

 private:
  mutable std::map<std::vector<int>, Eigen::Index> index_;
  friend FockRep build_fock(Statistics, int, int);
};

FockRep build_fock(Statistics stats, int modes, int cutoff);

// An operator on the truncated space together with the largest total-number
// sector through which its defining identity is exact.
struct FockOperator {
  Mat matrix;
  int safe_sector = 0;
};

// a*(z) = sum_k z_k a*_k (linear in z); a(z) = a*(z)^dag (antilinear in z).
Mat creation(const FockRep& f, const Vec& z);
Mat annihilation(const FockRep& f, const Vec& z);

// Additive second quantization dGamma(h) = sum h_kl a*_k a_l; exact on all
// kept sectors since it preserves the grade.
Mat d_gamma(const FockRep& f, const Mat& h);

// Multiplicative second quantization Gamma(m)|_{H_n} = m tensor ... tensor m.
Mat gamma_lift(const FockRep& f, const Mat& m);

Mat number_op(const FockRep& f);   // dGamma(1)
Mat parity_op(const FockRep& f);   // Gamma(-1) = (-1)^N
Vec vacuum(const FockRep& f);

// Weyl operator exp(i phi) for a hermitian field matrix.  The result is
// unitary by construction; `unitarity_defect` reports |W^dag W - 1| on the
// sectors <= cutoff - 2 for the caller's records.
struct WeylResult {
  Mat w;
  double unitarity_defect = 0.0;
};

WeylResult weyl(const FockRep& f, const Mat& field_matrix,
                double tol = kDefaultTol);

// Orthogonal projector onto the sectors with total <= s (as a block size).
Eigen::Index sector_dim(const FockRep& f, int s);

// Max-entry norm of P_s (A - B) P_s.
double sector_residual(const FockRep& f, const Mat& a, const Mat& b, int s);

// ---- Tensor-product oracle ----------------------------------------------
// Independent construction of the same operators on the (anti)symmetrized
// tensor algebra, for cross-validation at small sizes.  Guarded: refuses
// modes^(cutoff+1) beyond a few thousand.

// (Anti)symmetrizer on (C^modes)^{tensor n}.
Mat symmetrizer(Statistics stats, int modes, int n);

// a*(z) built grade-by-grade as sqrt(n+1) Theta (z tensor .), mapped back to
// the occupation basis of `f` through the canonical isometries.
Mat oracle_creation(const FockRep& f, const Vec& z);

// dGamma(h) built as sum_k 1 x..x h x..x 1 on each grade.
Mat oracle_d_gamma(const FockRep& f, const Mat& h);

}  // namespace fockq
