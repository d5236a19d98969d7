#include "fockq/forms.hpp"

namespace fockq {

FormMatrix make_form(Mat entries, FormKind kind) {
  require_square(entries, "make_form");
  require_finite(entries, "make_form");
  if (kind == FormKind::RealBilinear) {
    require(is_real(entries), ErrorCode::ComplexEntries,
            "make_form: real bilinear form with complex entries");
  }
  return {std::move(entries), kind};
}

OperatorMatrix make_operator(Mat entries, Linearity lin) {
  require_square(entries, "make_operator");
  require_finite(entries, "make_operator");
  return {std::move(entries), lin};
}

OperatorMatrix identity_operator(Eigen::Index n) {
  return {Mat::Identity(n, n), Linearity::Linear};
}

OperatorMatrix compose(const OperatorMatrix& a, const OperatorMatrix& b) {
  require(a.dim() == b.dim(), ErrorCode::DimensionMismatch,
          "compose: operator sizes differ");
  Mat m = a.antilinear() ? Mat(a.entries * b.entries.conjugate())
                         : Mat(a.entries * b.entries);
  Linearity lin = (a.antilinear() != b.antilinear()) ? Linearity::Antilinear
                                                     : Linearity::Linear;
  return {std::move(m), lin};
}

OperatorMatrix scale_operator(Complex s, const OperatorMatrix& a) {
  return {Mat(s * a.entries), a.linearity};
}

FormClassification classify_form(const FormMatrix& f, double tol) {
  const Mat& m = f.entries;
  require_square(m, "classify_form");
  require_finite(m, "classify_form");

  FormClassification c;
  double eff = tol_scale(tol, {norm_inf(m)});

  c.r_symmetric = norm_inf(Mat(m - m.transpose()));
  c.r_antisymmetric = norm_inf(Mat(m + m.transpose()));
  c.r_hermitian = norm_inf(Mat(m - m.adjoint()));
  c.r_antihermitian = norm_inf(Mat(m + m.adjoint()));
  c.symmetric = c.r_symmetric <= eff;
  c.antisymmetric = c.r_antisymmetric <= eff;
  c.hermitian = c.r_hermitian <= eff;
  c.antihermitian = c.r_antihermitian <= eff;

  c.smallest_sv = smallest_singular_value(m);
  c.nondegenerate = c.smallest_sv > eff;

  if (c.hermitian) {
    Mat h = (m + m.adjoint()) / 2.0;
    HermEig e = herm_eig(h, "classify_form");
    c.smallest_eig = e.values.minCoeff();
    c.positive = c.smallest_eig > eff;
  }
  return c;
}

ComplexifiedPair complexify_operator(const OperatorMatrix& r) {
  require(!r.antilinear(), ErrorCode::SpeciesFormMismatch,
          "complexify_operator: input must be a (real) linear operator");
  real_part_checked(r.entries, "complexify_operator");
  return {{r.entries, Linearity::Linear}, {r.entries, Linearity::Antilinear}};
}

KahlerCheck kahler_compatibility(const FormMatrix& nu, const FormMatrix& omega,
                                 const OperatorMatrix& j, double tol) {
  require(nu.kind == FormKind::RealBilinear &&
              omega.kind == FormKind::RealBilinear,
          ErrorCode::SpeciesFormMismatch,
          "kahler_compatibility: expects real bilinear forms");
  require(nu.dim() == omega.dim() && omega.dim() == j.dim(),
          ErrorCode::DimensionMismatch, "kahler_compatibility: sizes differ");
  RMat n = real_part_checked(nu.entries, "kahler_compatibility: nu");
  RMat w = real_part_checked(omega.entries, "kahler_compatibility: omega");
  RMat jm = real_part_checked(j.entries, "kahler_compatibility: j");
  require(!j.antilinear(), ErrorCode::SpeciesFormMismatch,
          "kahler_compatibility: j must be linear");

  KahlerCheck out;
  double eff = tol_scale(tol, {norm_inf(n), norm_inf(w), norm_inf(jm)});
  out.r_involution =
      norm_inf(RMat(jm * jm + RMat::Identity(jm.rows(), jm.cols())));
  out.j_anti_involution = out.r_involution <= eff;
  require(out.j_anti_involution, ErrorCode::JNotAntiInvolution,
          "kahler_compatibility: j^2 != -1 (residual " +
              std::to_string(out.r_involution) + ")");

  out.r_definition = norm_inf(RMat(w * jm - n));
  out.compatible = out.r_definition <= eff;
  out.r_symplectic = norm_inf(RMat(jm.transpose() * w * jm - w));
  out.j_symplectic = out.r_symplectic <= eff;
  return out;
}

KahlerCheckEuclidean kahler_compatibility_euclidean(const FormMatrix& nu,
                                                    const OperatorMatrix& j,
                                                    double tol) {
  require(nu.kind == FormKind::RealBilinear, ErrorCode::SpeciesFormMismatch,
          "kahler_compatibility_euclidean: expects a real bilinear nu");
  require(nu.dim() == j.dim(), ErrorCode::DimensionMismatch,
          "kahler_compatibility_euclidean: sizes differ");
  RMat n = real_part_checked(nu.entries, "kahler_compatibility_euclidean: nu");
  RMat jm = real_part_checked(j.entries, "kahler_compatibility_euclidean: j");
  require(!j.antilinear(), ErrorCode::SpeciesFormMismatch,
          "kahler_compatibility_euclidean: j must be linear");

  KahlerCheckEuclidean out;
  double eff = tol_scale(tol, {norm_inf(n), norm_inf(jm)});
  out.r_involution =
      norm_inf(RMat(jm * jm + RMat::Identity(jm.rows(), jm.cols())));
  out.j_anti_involution = out.r_involution <= eff;
  require(out.j_anti_involution, ErrorCode::JNotAntiInvolution,
          "kahler_compatibility_euclidean: j^2 != -1 (residual " +
              std::to_string(out.r_involution) + ")");

  out.omega = n * jm;
  out.r_definition = norm_inf(RMat(out.omega + out.omega.transpose()));
  out.compatible = out.r_definition <= eff;
  out.r_orthogonal = norm_inf(RMat(jm.transpose() * n * jm - n));
  out.j_orthogonal = out.r_orthogonal <= eff;
  return out;
}

}  // namespace fockq
