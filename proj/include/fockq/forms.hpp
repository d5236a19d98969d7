#pragma once

#include <optional>

#include "fockq/linalg.hpp"

namespace fockq {

// A bilinear or sesquilinear form y1 F y2.  Convention throughout:
//   RealBilinear:  y1 F y2 = y1^T F y2   (entries must be real)
//   Sesquilinear:  (y1|F y2) = y1^dag F y2, antilinear in the first slot.
enum class FormKind { RealBilinear, Sesquilinear };

struct FormMatrix {
  Mat entries;
  FormKind kind = FormKind::RealBilinear;

  Eigen::Index dim() const { return entries.rows(); }
  RMat real() const { return entries.real(); }
};

FormMatrix make_form(Mat entries, FormKind kind);

// A linear or antilinear map on phase space.  Antilinear maps act as
// y -> entries * conj(y); the pair (matrix, flag) composes by
// (M1,c1)(M2,c2) = (M1 * conj^c1(M2), c1 xor c2).
enum class Linearity { Linear, Antilinear };

struct OperatorMatrix {
  Mat entries;
  Linearity linearity = Linearity::Linear;

  Eigen::Index dim() const { return entries.rows(); }
  bool antilinear() const { return linearity == Linearity::Antilinear; }

  Vec apply(const Vec& y) const {
    return antilinear() ? Vec(entries * y.conjugate()) : Vec(entries * y);
  }
};

OperatorMatrix make_operator(Mat entries, Linearity lin = Linearity::Linear);
OperatorMatrix identity_operator(Eigen::Index n);
OperatorMatrix compose(const OperatorMatrix& a, const OperatorMatrix& b);
OperatorMatrix scale_operator(Complex s, const OperatorMatrix& a);

// Structural classification of a form.  Each flag is decided against
// tol * max(1, |F|_inf); the raw residuals are kept for reporting.
struct FormClassification {
  bool symmetric = false;
  bool antisymmetric = false;
  bool hermitian = false;
  bool antihermitian = false;
  bool nondegenerate = false;
  bool positive = false;  // hermitian with spectrum > tol

  double r_symmetric = 0.0;
  double r_antisymmetric = 0.0;
  double r_hermitian = 0.0;
  double r_antihermitian = 0.0;
  double smallest_sv = 0.0;
  double smallest_eig = 0.0;  // of the hermitian part; meaningful if hermitian
};

FormClassification classify_form(const FormMatrix& f, double tol = kDefaultTol);

// Linear and antilinear complex extensions of a real operator r: the same
// matrix read as r_C (linear) and as r_C * conj (antilinear).
struct ComplexifiedPair {
  OperatorMatrix linear_ext;
  OperatorMatrix antilinear_ext;
};

ComplexifiedPair complexify_operator(const OperatorMatrix& r);

// Compatibility of an anti-involution j with a real symplectic form omega,
// optionally against a given symmetric nu.  Two routes are computed:
//   definition: nu = omega j entrywise,
//   theorem:    j^T Omega j = Omega  (j symplectic).
// For valid triples both agree; `compatible` reports the definitional route.
struct KahlerCheck {
  bool compatible = false;
  bool j_symplectic = false;
  bool j_anti_involution = false;
  double r_definition = 0.0;  // |Omega J - N|
  double r_symplectic = 0.0;  // |J^T Omega J - Omega|
  double r_involution = 0.0;  // |J^2 + 1|
};

KahlerCheck kahler_compatibility(const FormMatrix& nu, const FormMatrix& omega,
                                 const OperatorMatrix& j,
                                 double tol = kDefaultTol);

// Euclidean variant: j compatible with a positive symmetric nu when
// omega := nu j is antisymmetric; by the theorem this happens iff j is
// nu-orthogonal.
struct KahlerCheckEuclidean {
  bool compatible = false;
  bool j_orthogonal = false;
  bool j_anti_involution = false;
  double r_definition = 0.0;  // |(N J)^T + N J|
  double r_orthogonal = 0.0;  // |J^T N J - N|
  double r_involution = 0.0;
  RMat omega;  // the induced antisymmetric form N J
};

KahlerCheckEuclidean kahler_compatibility_euclidean(const FormMatrix& nu,
                                                    const OperatorMatrix& j,
                                                    double tol = kDefaultTol);

}  // namespace fockq
