#include "fockq/linalg.hpp"

#include <unsupported/Eigen/MatrixFunctions>

namespace fockq {

Mat herm_sqrt(const Mat& m, double tol, const std::string& ctx) {
  HermEig e = herm_eig(m, ctx);
  double scale = std::max(1.0, e.values.cwiseAbs().maxCoeff());
  require(e.values.minCoeff() > tol * scale, ErrorCode::DegenerateGenerator,
          ctx + ": matrix is not positive definite (min eig " +
              std::to_string(e.values.minCoeff()) + ")");
  Vec s(e.values.size());
  for (Eigen::Index i = 0; i < s.size(); ++i) s(i) = std::sqrt(e.values(i));
  return e.vectors * s.asDiagonal() * e.vectors.adjoint();
}

Mat herm_inv_sqrt(const Mat& m, double tol, const std::string& ctx) {
  HermEig e = herm_eig(m, ctx);
  double scale = std::max(1.0, e.values.cwiseAbs().maxCoeff());
  require(e.values.minCoeff() > tol * scale, ErrorCode::DegenerateGenerator,
          ctx + ": matrix is not positive definite (min eig " +
              std::to_string(e.values.minCoeff()) + ")");
  Vec s(e.values.size());
  for (Eigen::Index i = 0; i < s.size(); ++i)
    s(i) = 1.0 / std::sqrt(e.values(i));
  return e.vectors * s.asDiagonal() * e.vectors.adjoint();
}

Mat herm_phase_exp(const Mat& h, double scale, const std::string& ctx) {
  HermEig e = herm_eig(h, ctx);
  Vec p(e.values.size());
  for (Eigen::Index i = 0; i < p.size(); ++i)
    p(i) = std::exp(Complex(0.0, scale * e.values(i)));
  return e.vectors * p.asDiagonal() * e.vectors.adjoint();
}

Mat matrix_exp(const Mat& m) { return m.exp(); }
RMat matrix_exp(const RMat& m) { return m.exp(); }

Mat gram_adjoint(const Mat& a, const Mat& gram, double tol) {
  require_square(a, "gram_adjoint");
  require(a.rows() == gram.rows(), ErrorCode::DimensionMismatch,
          "gram_adjoint: operator and Gram sizes differ");
  double herm = norm_inf(Mat(gram - gram.adjoint()));
  require(herm <= tol_scale(tol, {norm_inf(gram)}), ErrorCode::SpeciesFormMismatch,
          "gram_adjoint: Gram matrix is not hermitian");
  // Solve G X = A^dag G instead of forming G^{-1}.
  Eigen::PartialPivLU<Mat> lu(gram);
  return lu.solve(a.adjoint() * gram);
}

double smallest_singular_value(const Mat& m) {
  if (m.size() == 0) return 0.0;
  Eigen::JacobiSVD<Mat> svd(m);
  return svd.singularValues().minCoeff();
}

RMat null_space(const RMat& m, double tol) {
  Eigen::JacobiSVD<RMat> svd(m, Eigen::ComputeFullV);
  const RVec& sv = svd.singularValues();
  double scale = sv.size() == 0 ? 1.0 : std::max(1.0, sv.maxCoeff());
  Eigen::Index rank = 0;
  for (Eigen::Index i = 0; i < sv.size(); ++i)
    if (sv(i) > tol * scale) ++rank;
  return svd.matrixV().rightCols(m.cols() - rank);
}

Mat gram_schmidt(const Mat& columns, const Mat& gram, double tol,
                 const std::string& ctx) {
  Mat q = columns;
  for (Eigen::Index k = 0; k < q.cols(); ++k) {
    for (Eigen::Index j = 0; j < k; ++j) {
      Complex c = q.col(j).dot(gram * q.col(k));  // Eigen dot conjugates lhs
      q.col(k) -= c * q.col(j);
    }
    double n2 = q.col(k).dot(gram * q.col(k)).real();
    require(n2 > tol, ErrorCode::EigenspaceDimensionMismatch,
            ctx + ": dependent column in Gram-Schmidt");
    q.col(k) /= std::sqrt(n2);
  }
  return q;
}

std::uint64_t sub_seed(std::uint64_t seed, const std::string& label) {
  std::uint64_t h = 14695981039346656037ull ^ seed;
  for (unsigned char c : label) {
    h ^= c;
    h *= 1099511628211ull;
  }
  return h;
}

const char* error_code_name(ErrorCode code) noexcept {
  switch (code) {
    case ErrorCode::NonSquare: return "NonSquare";
    case ErrorCode::NanEntries: return "NanEntries";
    case ErrorCode::ComplexEntries: return "ComplexEntries";
    case ErrorCode::DimensionMismatch: return "DimensionMismatch";
    case ErrorCode::OddDimension: return "OddDimension";
    case ErrorCode::SpeciesFormMismatch: return "SpeciesFormMismatch";
    case ErrorCode::MissingEnergyForm: return "MissingEnergyForm";
    case ErrorCode::WrongSpecies: return "WrongSpecies";
    case ErrorCode::JNotAntiInvolution: return "JNotAntiInvolution";
    case ErrorCode::JNotCompatible: return "JNotCompatible";
    case ErrorCode::DegenerateGenerator: return "DegenerateGenerator";
    case ErrorCode::StabilityFailure: return "StabilityFailure";
    case ErrorCode::EigenspaceDimensionMismatch:
      return "EigenspaceDimensionMismatch";
    case ErrorCode::NearZeroEigenvalue: return "NearZeroEigenvalue";
    case ErrorCode::NonHermitianField: return "NonHermitianField";
    case ErrorCode::SizeGuard: return "SizeGuard";
    case ErrorCode::SymmetryViolation: return "SymmetryViolation";
    case ErrorCode::LiftMismatch: return "LiftMismatch";
    case ErrorCode::ChiSquaredMinusOne: return "ChiSquaredMinusOne";
    case ErrorCode::NotProjectivelyCommuting:
      return "NotProjectivelyCommuting";
    case ErrorCode::NotCanonical: return "NotCanonical";
    case ErrorCode::ConfigError: return "ConfigError";
    case ErrorCode::IoError: return "IoError";
  }
  return "UnknownError";
}

}  // namespace fockq
