#include "fockq/fock.hpp"

#include "helpers.hpp"

using namespace fockq;

namespace {

Mat commutator(const Mat& a, const Mat& b) { return a * b - b * a; }
Mat anticommutator(const Mat& a, const Mat& b) { return a * b + b * a; }

}  // namespace

TEST_CASE("basis enumeration is graded descending-lex") {
  FockRep fermi = build_fock(Statistics::Fermi, 2, 2);
  REQUIRE(fermi.dim() == 4);
  CHECK(fermi.basis[0] == std::vector<int>{0, 0});
  CHECK(fermi.basis[1] == std::vector<int>{1, 0});
  CHECK(fermi.basis[2] == std::vector<int>{0, 1});
  CHECK(fermi.basis[3] == std::vector<int>{1, 1});
  CHECK(fermi.grade_offset == std::vector<Eigen::Index>{0, 1, 3, 4});

  FockRep bose = build_fock(Statistics::Bose, 2, 2);
  REQUIRE(bose.dim() == 6);
  CHECK(bose.basis[1] == std::vector<int>{1, 0});
  CHECK(bose.basis[2] == std::vector<int>{0, 1});
  CHECK(bose.basis[3] == std::vector<int>{2, 0});
  CHECK(bose.basis[4] == std::vector<int>{1, 1});
  CHECK(bose.basis[5] == std::vector<int>{0, 2});
  CHECK(bose.index_of({1, 1}) == 4);
  CHECK(bose.index_of({3, 0}) == -1);
  CHECK(bose.total(5) == 2);
}

TEST_CASE("bosonic ladder matrix elements carry sqrt(n+1)") {
  FockRep f = build_fock(Statistics::Bose, 2, 3);
  const Mat& c0 = f.create[0];
  // <2,0| a*_0 |1,0> = sqrt(2)
  Eigen::Index from = f.index_of({1, 0}), to = f.index_of({2, 0});
  CHECK(std::abs(c0(to, from) - Complex(std::sqrt(2.0), 0)) <= 1e-15);
  // annihilate is the exact adjoint
  CHECK_MAT_NEAR(f.annihilate[0], f.create[0].adjoint(), 0.0);

  // canonical commutation on the safe sectors: [a_j, a*_k] = delta_jk
  for (int jm = 0; jm < 2; ++jm)
    for (int k = 0; k < 2; ++k) {
      Mat comm = commutator(f.annihilate[jm], f.create[k]);
      Mat want = jm == k ? Mat(Mat::Identity(f.dim(), f.dim()))
                         : Mat(Mat::Zero(f.dim(), f.dim()));
      CHECK(sector_residual(f, comm, want, f.cutoff - 2) <= 1e-14);
    }
}

TEST_CASE("fermionic ladders satisfy the anticommutation relations exactly") {
  FockRep f = build_fock(Statistics::Fermi, 3, 3);
  REQUIRE(f.dim() == 8);
  for (int jm = 0; jm < 3; ++jm)
    for (int k = 0; k < 3; ++k) {
      Mat acomm = anticommutator(f.annihilate[jm], f.create[k]);
      Mat want = jm == k ? Mat(Mat::Identity(8, 8)) : Mat(Mat::Zero(8, 8));
      CHECK_MAT_NEAR(acomm, want, 1e-14);
      CHECK_MAT_NEAR(anticommutator(f.create[jm], f.create[k]),
                     Mat::Zero(8, 8), 1e-14);
    }
  // nilpotency
  CHECK_MAT_NEAR(Mat(f.create[1] * f.create[1]), Mat::Zero(8, 8), 0.0);
}

TEST_CASE("number and parity act diagonally with the expected values") {
  FockRep f = build_fock(Statistics::Bose, 2, 3);
  Mat n = number_op(f);
  Mat p = parity_op(f);
  for (Eigen::Index i = 0; i < f.dim(); ++i) {
    CHECK(std::abs(n(i, i) - Complex(f.total(i), 0)) <= 1e-15);
    CHECK(std::abs(p(i, i) - Complex(f.total(i) % 2 ? -1.0 : 1.0, 0)) <=
          1e-15);
  }
  CHECK_MAT_NEAR(n, d_gamma(f, Mat::Identity(2, 2)), 1e-14);
  CHECK_MAT_NEAR(p, gamma_lift(f, Mat(-Mat::Identity(2, 2))), 1e-14);

  Vec vac = vacuum(f);
  CHECK(std::abs(vac(0) - Complex(1, 0)) <= 1e-15);
  CHECK(std::abs(vac.norm() - 1.0) <= 1e-15);
  CHECK(norm_inf(Mat(n * vac)) <= 1e-15);
}

TEST_CASE("additive and multiplicative lifts interlock") {
  Rng rng(31);
  for (Statistics st : {Statistics::Bose, Statistics::Fermi}) {
    FockRep f = build_fock(st, 3, 3);
    Mat h = rng.complex_matrix(3, 3);
    h = Mat((h + h.adjoint()) / 2.0);
    Mat h2 = rng.complex_matrix(3, 3);
    h2 = Mat((h2 + h2.adjoint()) / 2.0);

    // Gamma(e^{ith}) = e^{it dGamma(h)}: exact on the truncation since both
    // sides preserve the grade
    double t = 0.37;
    Mat lhs = gamma_lift(f, herm_phase_exp(h, t, "test"));
    Mat dg = d_gamma(f, h);
    Mat rhs = matrix_exp(Mat(Complex(0, t) * dg));
    CHECK_MAT_NEAR(lhs, rhs, 1e-12);

    // multiplicativity of Gamma on noncommuting unitaries
    Mat u = herm_phase_exp(h, 0.9, "test");
    Mat v = herm_phase_exp(h2, -0.4, "test");
    CHECK_MAT_NEAR(Mat(gamma_lift(f, u) * gamma_lift(f, v)),
                   gamma_lift(f, Mat(u * v)), 1e-12);

    // dGamma carries commutators to commutators
    CHECK_MAT_NEAR(commutator(d_gamma(f, h), d_gamma(f, h2)),
                   d_gamma(f, commutator(h, h2)), 1e-12);
  }
}

TEST_CASE("weyl operators are unitary and need hermitian input") {
  FockRep f = build_fock(Statistics::Bose, 1, 10);
  Rng rng(17);
  Vec z = rng.complex_vector(1);
  Mat phi = (creation(f, z) + annihilation(f, z)) / std::sqrt(2.0);
  WeylResult w = weyl(f, phi);
  CHECK_MAT_NEAR(Mat(w.w.adjoint() * w.w), Mat::Identity(f.dim(), f.dim()),
                 1e-12);
  CHECK(w.unitarity_defect <= 1e-12);

  Mat not_herm = phi;
  not_herm(0, 1) += Complex(0.3, 0.1);
  CHECK_ERROR_CODE(weyl(f, not_herm), ErrorCode::NonHermitianField);
}

TEST_CASE("tensor-product oracle agrees with the direct construction") {
  Rng rng(23);
  FockRep bose = build_fock(Statistics::Bose, 2, 4);
  Vec z = rng.complex_vector(2);
  CHECK_MAT_NEAR(oracle_creation(bose, z), creation(bose, z), 1e-12);
  Mat h = rng.complex_matrix(2, 2);
  CHECK_MAT_NEAR(oracle_d_gamma(bose, h), d_gamma(bose, h), 1e-12);

  FockRep fermi = build_fock(Statistics::Fermi, 3, 3);
  Vec zf = rng.complex_vector(3);
  CHECK_MAT_NEAR(oracle_creation(fermi, zf), creation(fermi, zf), 1e-12);
  Mat hf = rng.complex_matrix(3, 3);
  CHECK_MAT_NEAR(oracle_d_gamma(fermi, hf), d_gamma(fermi, hf), 1e-12);
}

TEST_CASE("symmetrizers are the right projectors") {
  // Bose: rank of the symmetrizer on (C^2)^{x3} is binom(4,3) = 4
  Mat sym = symmetrizer(Statistics::Bose, 2, 3);
  CHECK_MAT_NEAR(Mat(sym * sym), sym, 1e-12);
  CHECK(std::abs(sym.trace() - Complex(4, 0)) <= 1e-10);
  // Fermi: rank binom(3,2) = 3
  Mat anti = symmetrizer(Statistics::Fermi, 3, 2);
  CHECK_MAT_NEAR(Mat(anti * anti), anti, 1e-12);
  CHECK(std::abs(anti.trace() - Complex(3, 0)) <= 1e-10);
}

TEST_CASE("construction guards") {
  CHECK_ERROR_CODE(build_fock(Statistics::Bose, 8, 12), ErrorCode::SizeGuard);
  CHECK_ERROR_CODE(build_fock(Statistics::Bose, 0, 2), ErrorCode::ConfigError);
  CHECK_ERROR_CODE(build_fock(Statistics::Bose, 2, -1), ErrorCode::ConfigError);

  // the basis hash is stable across rebuilds and sensitive to the contents
  FockRep a = build_fock(Statistics::Bose, 2, 3);
  FockRep b = build_fock(Statistics::Bose, 2, 3);
  CHECK(a.basis_hash() == b.basis_hash());
  CHECK(a.basis_hash() != build_fock(Statistics::Bose, 2, 4).basis_hash());
  CHECK(a.basis_hash() != build_fock(Statistics::Fermi, 2, 2).basis_hash());
}
