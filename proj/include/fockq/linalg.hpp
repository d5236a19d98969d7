#pragma once

#include <Eigen/Dense>
#include <complex>
#include <random>
#include <string>
#include <vector>

#include "fockq/errors.hpp"

namespace fockq {

using Mat = Eigen::MatrixXcd;
using RMat = Eigen::MatrixXd;
using Vec = Eigen::VectorXcd;
using RVec = Eigen::VectorXd;
using Complex = std::complex<double>;

inline constexpr double kDefaultTol = 1e-10;

// Max absolute entry.  All residuals in this library are reported in this
// norm; thresholds are scaled by max(1, norm of the inputs).
inline double norm_inf(const Mat& m) {
  return m.size() == 0 ? 0.0 : m.cwiseAbs().maxCoeff();
}
inline double norm_inf(const RMat& m) {
  return m.size() == 0 ? 0.0 : m.cwiseAbs().maxCoeff();
}

inline double tol_scale(double tol, std::initializer_list<double> norms) {
  double s = 1.0;
  for (double n : norms) s = std::max(s, n);
  return tol * s;
}

inline void require_square(const Mat& m, const std::string& ctx) {
  require(m.rows() == m.cols(), ErrorCode::NonSquare,
          ctx + ": matrix is " + std::to_string(m.rows()) + "x" +
              std::to_string(m.cols()));
}

inline void require_finite(const Mat& m, const std::string& ctx) {
  require(m.allFinite(), ErrorCode::NanEntries,
          ctx + ": matrix has NaN/Inf entries");
}

inline bool is_real(const Mat& m, double tol = 0.0) {
  return m.size() == 0 || m.imag().cwiseAbs().maxCoeff() <= tol;
}

inline RMat real_part_checked(const Mat& m, const std::string& ctx,
                              double tol = 0.0) {
  require(is_real(m, tol), ErrorCode::ComplexEntries,
          ctx + ": expected a real matrix");
  return m.real();
}

// Hermitian eigendecomposition with an optional positivity requirement.
struct HermEig {
  RVec values;  // ascending
  Mat vectors;  // orthonormal columns
};

inline HermEig herm_eig(const Mat& m, const std::string& ctx) {
  require_square(m, ctx);
  Eigen::SelfAdjointEigenSolver<Mat> es(m);
  require(es.info() == Eigen::Success, ErrorCode::NanEntries,
          ctx + ": eigendecomposition failed");
  return {es.eigenvalues(), es.eigenvectors()};
}

// f applied through the spectral decomposition of a hermitian matrix.
template <typename F>
Mat herm_apply(const Mat& m, F&& f, const std::string& ctx) {
  HermEig e = herm_eig(m, ctx);
  Vec fv(e.values.size());
  for (Eigen::Index i = 0; i < e.values.size(); ++i) fv(i) = f(e.values(i));
  return e.vectors * fv.asDiagonal() * e.vectors.adjoint();
}

// Square root / inverse square root of a hermitian positive definite matrix.
Mat herm_sqrt(const Mat& m, double tol, const std::string& ctx);
Mat herm_inv_sqrt(const Mat& m, double tol, const std::string& ctx);

// exp(i * scale * H) for hermitian H, exactly unitary up to roundoff.
Mat herm_phase_exp(const Mat& h, double scale, const std::string& ctx);

// General (non-normal) matrix exponential, Pade scaling-and-squaring.
Mat matrix_exp(const Mat& m);
RMat matrix_exp(const RMat& m);

// Adjoint with respect to a hermitian positive definite Gram matrix:
// A# = G^{-1} A^dag G, i.e. (x|Ay)_G = (A#x|y)_G.
Mat gram_adjoint(const Mat& a, const Mat& gram, double tol = kDefaultTol);

// Smallest singular value (0 for empty input).
double smallest_singular_value(const Mat& m);

// Orthonormal basis of the null space of a real matrix (columns), via SVD.
RMat null_space(const RMat& m, double tol);

// In-place modified Gram-Schmidt against a sesquilinear product
// (x|y) = x^dag G y.  Returns the G-orthonormalized columns.
Mat gram_schmidt(const Mat& columns, const Mat& gram, double tol,
                 const std::string& ctx);

// Deterministic RNG used by sampled verifications; fixed algorithm so the
// same seed yields the same report bytes everywhere.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : gen_(seed) {}

  double uniform(double lo = -1.0, double hi = 1.0) {
    return std::uniform_real_distribution<double>(lo, hi)(gen_);
  }
  double gaussian() { return std::normal_distribution<double>(0.0, 1.0)(gen_); }

  RVec real_vector(Eigen::Index n) {
    RVec v(n);
    for (Eigen::Index i = 0; i < n; ++i) v(i) = gaussian();
    return v;
  }
  Vec complex_vector(Eigen::Index n) {
    Vec v(n);
    for (Eigen::Index i = 0; i < n; ++i) v(i) = Complex(gaussian(), gaussian());
    return v;
  }
  RMat real_matrix(Eigen::Index r, Eigen::Index c) {
    RMat m(r, c);
    for (Eigen::Index j = 0; j < c; ++j)
      for (Eigen::Index i = 0; i < r; ++i) m(i, j) = gaussian();
    return m;
  }
  Mat complex_matrix(Eigen::Index r, Eigen::Index c) {
    Mat m(r, c);
    for (Eigen::Index j = 0; j < c; ++j)
      for (Eigen::Index i = 0; i < r; ++i)
        m(i, j) = Complex(gaussian(), gaussian());
    return m;
  }
  std::uint64_t integer() { return gen_(); }

 private:
  std::mt19937_64 gen_;
};

// Stable per-purpose sub-seed (FNV-1a over the label mixed into the seed).
std::uint64_t sub_seed(std::uint64_t seed, const std::string& label);

}  // namespace fockq
