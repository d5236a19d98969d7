#include "fockq/fock.hpp"

#include <algorithm>
#include <numeric>

namespace fockq {

namespace {

// Occupation tuples of a fixed total, in descending lexicographic order.
void enumerate_grade(int modes, int total, int max_per_mode, int pos,
                     std::vector<int>& cur,
                     std::vector<std::vector<int>>& out) {
  if (pos == modes - 1) {
    if (total <= max_per_mode) {
      cur[pos] = total;
      out.push_back(cur);
    }
    return;
  }
  for (int n = std::min(total, max_per_mode); n >= 0; --n) {
    cur[pos] = n;
    enumerate_grade(modes, total - n, max_per_mode, pos + 1, cur, out);
  }
}

double factorial(int n) {
  double f = 1.0;
  for (int i = 2; i <= n; ++i) f *= i;
  return f;
}

Eigen::Index pow_index(int base, int exp) {
  Eigen::Index p = 1;
  for (int i = 0; i < exp; ++i) p *= base;
  return p;
}

// Canonical isometry from the grade-n occupation basis into the
// (anti)symmetric subspace of (C^d)^{tensor n}: |occ> maps to the
// normalized symmetrization of e_1^{n_1} x ... x e_d^{n_d}.
Mat grade_isometry(const FockRep& f, int n) {
  const int d = f.modes;
  Eigen::Index tdim = pow_index(d, n);
  Eigen::Index lo = f.grade_offset[n], hi = f.grade_offset[n + 1];
  Mat t = Mat::Zero(tdim, hi - lo);
  Mat theta = symmetrizer(f.stats, d, n);
  for (Eigen::Index idx = lo; idx < hi; ++idx) {
    const std::vector<int>& occ = f.basis[idx];
    // Flat tensor index of e_{i_1} x ... x e_{i_n}, modes ascending.
    Eigen::Index flat = 0;
    for (int k = 0; k < d; ++k)
      for (int c = 0; c < occ[k]; ++c) flat = flat * d + k;
    double norm_sq = 1.0;  // n! / prod(n_k!) for Bose, n! for Fermi
    for (int k = 0; k < d; ++k) norm_sq /= factorial(occ[k]);
    norm_sq *= factorial(n);
    t.col(idx - lo) = std::sqrt(norm_sq) * theta.col(flat);
  }
  return t;
}

void oracle_guard(const FockRep& f) {
  require(f.cutoff + 1 <= 6 && pow_index(f.modes, f.cutoff + 1) <= 4096,
          ErrorCode::SizeGuard,
          "tensor oracle refused: explicit (anti)symmetrizers need modes^n <= "
          "4096 and n <= 6");
}

Mat kron(const Mat& a, const Mat& b) {
  Mat out(a.rows() * b.rows(), a.cols() * b.cols());
  for (Eigen::Index i = 0; i < a.rows(); ++i)
    for (Eigen::Index j = 0; j < a.cols(); ++j)
      out.block(i * b.rows(), j * b.cols(), b.rows(), b.cols()) = a(i, j) * b;
  return out;
}

}  // namespace

Eigen::Index FockRep::index_of(const std::vector<int>& occ) const {
  auto it = index_.find(occ);
  return it == index_.end() ? Eigen::Index(-1) : it->second;
}

int FockRep::total(Eigen::Index idx) const {
  const std::vector<int>& occ = basis[size_t(idx)];
  return std::accumulate(occ.begin(), occ.end(), 0);
}

std::uint64_t FockRep::basis_hash() const {
  std::uint64_t h = 14695981039346656037ull;
  auto mix = [&h](std::uint64_t v) {
    for (int b = 0; b < 8; ++b) {
      h ^= (v >> (8 * b)) & 0xff;
      h *= 1099511628211ull;
    }
  };
  mix(stats == Statistics::Bose ? 1 : 2);
  mix(std::uint64_t(modes));
  mix(std::uint64_t(cutoff));
  for (const auto& occ : basis)
    for (int n : occ) mix(std::uint64_t(n));
  return h;
}

FockRep build_fock(Statistics stats, int modes, int cutoff) {
  require(modes >= 1, ErrorCode::ConfigError, "build_fock: modes must be >= 1");
  FockRep f;
  f.stats = stats;
  f.modes = modes;
  f.cutoff = stats == Statistics::Fermi ? modes : cutoff;
  require(f.cutoff >= 0, ErrorCode::ConfigError,
          "build_fock: cutoff must be >= 0");

  // Dimension guard before enumeration: C(modes+cutoff, modes) or 2^modes.
  double dim_est = 1.0;
  if (stats == Statistics::Bose) {
    for (int i = 1; i <= modes; ++i)
      dim_est *= double(f.cutoff + i) / double(i);
  } else {
    dim_est = std::pow(2.0, modes);
  }
  require(dim_est <= double(1 << 14), ErrorCode::SizeGuard,
          "build_fock: dense Fock space of dimension ~" +
              std::to_string(std::llround(dim_est)) + " refused (max 16384)");

  int max_per_mode = stats == Statistics::Fermi ? 1 : f.cutoff;
  std::vector<int> cur(modes, 0);
  f.grade_offset.resize(f.cutoff + 2, 0);
  for (int n = 0; n <= f.cutoff; ++n) {
    f.grade_offset[n] = Eigen::Index(f.basis.size());
    enumerate_grade(modes, n, max_per_mode, 0, cur, f.basis);
  }
  f.grade_offset[f.cutoff + 1] = Eigen::Index(f.basis.size());
  for (Eigen::Index i = 0; i < f.dim(); ++i) f.index_[f.basis[size_t(i)]] = i;

  const Eigen::Index dim = f.dim();
  f.create.assign(size_t(modes), Mat::Zero(dim, dim));
  for (Eigen::Index idx = 0; idx < dim; ++idx) {
    std::vector<int> occ = f.basis[size_t(idx)];
    for (int k = 0; k < modes; ++k) {
      if (stats == Statistics::Bose) {
        if (f.total(idx) >= f.cutoff) continue;  // raised state truncated away
        occ[k] += 1;
        Eigen::Index tgt = f.index_of(occ);
        occ[k] -= 1;
        f.create[size_t(k)](tgt, idx) = std::sqrt(double(occ[k] + 1));
      } else {
        if (occ[k] == 1) continue;
        int swaps = 0;  // Jordan-Wigner string
        for (int j = 0; j < k; ++j) swaps += occ[j];
        occ[k] = 1;
        Eigen::Index tgt = f.index_of(occ);
        occ[k] = 0;
        f.create[size_t(k)](tgt, idx) = (swaps % 2 == 0) ? 1.0 : -1.0;
      }
    }
  }
  f.annihilate.reserve(size_t(modes));
  for (const Mat& c : f.create) f.annihilate.push_back(c.adjoint());
  return f;
}

Mat creation(const FockRep& f, const Vec& z) {
  require(z.size() == f.modes, ErrorCode::DimensionMismatch,
          "creation: vector size differs from mode count");
  Mat out = Mat::Zero(f.dim(), f.dim());
  for (int k = 0; k < f.modes; ++k)
    if (z(k) != Complex(0, 0)) out += z(k) * f.create[size_t(k)];
  return out;
}

Mat annihilation(const FockRep& f, const Vec& z) {
  return creation(f, z).adjoint();
}

Mat d_gamma(const FockRep& f, const Mat& h) {
  require(h.rows() == f.modes && h.cols() == f.modes,
          ErrorCode::DimensionMismatch,
          "d_gamma: one-particle operator size differs from mode count");
  Mat out = Mat::Zero(f.dim(), f.dim());
  for (int k = 0; k < f.modes; ++k)
    for (int l = 0; l < f.modes; ++l)
      if (h(k, l) != Complex(0, 0))
        out += h(k, l) * (f.create[size_t(k)] * f.annihilate[size_t(l)]);
  return out;
}

Mat gamma_lift(const FockRep& f, const Mat& m) {
  require(m.rows() == f.modes && m.cols() == f.modes,
          ErrorCode::DimensionMismatch,
          "gamma_lift: one-particle operator size differs from mode count");
  Mat out = Mat::Zero(f.dim(), f.dim());
  for (Eigen::Index idx = 0; idx < f.dim(); ++idx) {
    const std::vector<int>& occ = f.basis[size_t(idx)];
    Vec v = vacuum(f);
    double norm = 1.0;
    // |occ> = prod_k (a*_k)^{n_k}/sqrt(n_k!) |0> with mode index ascending
    // left-to-right, so the highest mode is applied first.
    for (int k = f.modes - 1; k >= 0; --k) {
      for (int c = 0; c < occ[size_t(k)]; ++c) v = creation(f, m.col(k)) * v;
      norm *= factorial(occ[size_t(k)]);
    }
    out.col(idx) = v / std::sqrt(norm);
  }
  return out;
}

Mat number_op(const FockRep& f) {
  Mat out = Mat::Zero(f.dim(), f.dim());
  for (Eigen::Index i = 0; i < f.dim(); ++i) out(i, i) = double(f.total(i));
  return out;
}

Mat parity_op(const FockRep& f) {
  Mat out = Mat::Zero(f.dim(), f.dim());
  for (Eigen::Index i = 0; i < f.dim(); ++i)
    out(i, i) = f.total(i) % 2 == 0 ? 1.0 : -1.0;
  return out;
}

Vec vacuum(const FockRep& f) {
  Vec v = Vec::Zero(f.dim());
  v(0) = 1.0;
  return v;
}

WeylResult weyl(const FockRep& f, const Mat& field_matrix, double tol) {
  require(field_matrix.rows() == f.dim(), ErrorCode::DimensionMismatch,
          "weyl: field matrix size differs from the Fock dimension");
  double herm = norm_inf(Mat(field_matrix - field_matrix.adjoint()));
  require(herm <= tol_scale(tol, {norm_inf(field_matrix)}),
          ErrorCode::NonHermitianField,
          "weyl: field matrix is not hermitian (residual " +
              std::to_string(herm) + ")");
  WeylResult r;
  r.w = herm_phase_exp((field_matrix + field_matrix.adjoint()) / 2.0, 1.0,
                       "weyl");
  Eigen::Index sd = sector_dim(f, f.cutoff - 2);
  Mat defect = (r.w.adjoint() * r.w - Mat::Identity(f.dim(), f.dim()))
                   .topLeftCorner(sd, sd);
  r.unitarity_defect = norm_inf(defect);
  return r;
}

Eigen::Index sector_dim(const FockRep& f, int s) {
  if (s < 0) return 0;
  s = std::min(s, f.cutoff);
  return f.grade_offset[size_t(s) + 1];
}

double sector_residual(const FockRep& f, const Mat& a, const Mat& b, int s) {
  Eigen::Index sd = sector_dim(f, s);
  if (sd == 0) return 0.0;
  return norm_inf(Mat(a.topLeftCorner(sd, sd) - b.topLeftCorner(sd, sd)));
}

Mat symmetrizer(Statistics stats, int modes, int n) {
  require(n >= 0 && n <= 6 && pow_index(modes, std::max(n, 1)) <= 4096,
          ErrorCode::SizeGuard,
          "symmetrizer refused: needs modes^n <= 4096 and n <= 6");
  Eigen::Index tdim = pow_index(modes, n);
  if (n <= 1) return Mat::Identity(tdim, tdim);

  Mat theta = Mat::Zero(tdim, tdim);
  std::vector<int> perm(static_cast<size_t>(n));
  std::iota(perm.begin(), perm.end(), 0);
  std::vector<int> inv(static_cast<size_t>(n));
  std::vector<int> digits(static_cast<size_t>(n));
  do {
    int sign = 1;
    if (stats == Statistics::Fermi) {
      int inversions = 0;
      for (int i = 0; i < n; ++i)
        for (int j = i + 1; j < n; ++j)
          if (perm[size_t(i)] > perm[size_t(j)]) ++inversions;
      sign = inversions % 2 == 0 ? 1 : -1;
    }
    for (int i = 0; i < n; ++i) inv[size_t(perm[size_t(i)])] = i;
    for (Eigen::Index src = 0; src < tdim; ++src) {
      Eigen::Index rest = src;
      for (int k = n - 1; k >= 0; --k) {
        digits[size_t(k)] = int(rest % modes);
        rest /= modes;
      }
      // P_sigma e_{i_1} x..x e_{i_n} = e_{i_{sigma^{-1}(1)}} x..x
      Eigen::Index dst = 0;
      for (int k = 0; k < n; ++k)
        dst = dst * modes + digits[size_t(inv[size_t(k)])];
      theta(dst, src) += double(sign);
    }
  } while (std::next_permutation(perm.begin(), perm.end()));
  return theta / factorial(n);
}

Mat oracle_creation(const FockRep& f, const Vec& z) {
  oracle_guard(f);
  require(z.size() == f.modes, ErrorCode::DimensionMismatch,
          "oracle_creation: vector size differs from mode count");
  Mat out = Mat::Zero(f.dim(), f.dim());
  for (int n = 0; n < f.cutoff; ++n) {
    Mat t_lo = grade_isometry(f, n);
    Mat t_hi = grade_isometry(f, n + 1);
    Mat theta_hi = symmetrizer(f.stats, f.modes, n + 1);
    // a*(z) psi_n = sqrt(n+1) Theta_{n+1} (z tensor psi_n)
    Mat insert = kron(Mat(z), Mat::Identity(pow_index(f.modes, n),
                                            pow_index(f.modes, n)));
    Mat block = t_hi.adjoint() * (std::sqrt(double(n + 1)) * theta_hi * insert) *
                t_lo;
    out.block(f.grade_offset[size_t(n) + 1], f.grade_offset[size_t(n)],
              block.rows(), block.cols()) = block;
  }
  return out;
}

Mat oracle_d_gamma(const FockRep& f, const Mat& h) {
  oracle_guard(f);
  require(h.rows() == f.modes && h.cols() == f.modes,
          ErrorCode::DimensionMismatch,
          "oracle_d_gamma: operator size differs from mode count");
  Mat out = Mat::Zero(f.dim(), f.dim());
  for (int n = 0; n <= f.cutoff; ++n) {
    Eigen::Index tdim = pow_index(f.modes, n);
    Mat on_grade = Mat::Zero(tdim, tdim);
    for (int slot = 0; slot < n; ++slot) {
      Mat term = Mat::Identity(1, 1);
      for (int k = 0; k < n; ++k)
        term = kron(term, k == slot
                              ? h
                              : Mat(Mat::Identity(f.modes, f.modes)));
      on_grade += term;
    }
    Mat t = grade_isometry(f, n);
    Mat block = t.adjoint() * on_grade * t;
    out.block(f.grade_offset[size_t(n)], f.grade_offset[size_t(n)],
              block.rows(), block.cols()) = block;
  }
  return out;
}

}  // namespace fockq
