#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <numbers>
#include <random>

#include "bnst/matcore.hpp"

using namespace bnst;

namespace {

std::mt19937_64 rng(12345);

Matrix randomComplex(Eigen::Index r, Eigen::Index c) {
  std::normal_distribution<double> g(0.0, std::sqrt(0.5));
  Matrix m(r, c);
  for (Eigen::Index i = 0; i < r; ++i) {
    for (Eigen::Index j = 0; j < c; ++j) m(i, j) = Complex(g(rng), g(rng));
  }
  return m;
}

Matrix randomHermitian(Eigen::Index n) {
  const Matrix a = randomComplex(n, n);
  return (a + a.adjoint()) / 2.0;
}

Matrix randomUnitary(Eigen::Index n) {
  Eigen::HouseholderQR<Matrix> qr(randomComplex(n, n));
  return qr.householderQ() * Matrix::Identity(n, n);
}

// Independent spectral-norm oracle: power iteration on A^* A.
double powerIterationNorm(const Matrix& a, int iters = 2000) {
  const Matrix g = a.adjoint() * a;
  Vector v = Vector::Ones(g.cols());
  v.normalize();
  for (int i = 0; i < iters; ++i) {
    v = g * v;
    v.normalize();
  }
  return std::sqrt(std::abs((v.adjoint() * g * v)(0, 0)));
}

}  // namespace

TEST_CASE("rotationMatrix identity and direct substitution") {
  const Matrix r0 = rotationMatrix(3, {0, 1, 0.0, 1.234});
  CHECK((r0 - Matrix::Identity(3, 3)).cwiseAbs().maxCoeff() == doctest::Approx(0.0));

  const Matrix r = rotationMatrix(2, {0, 1, std::numbers::pi / 2.0, 0.0});
  Matrix expect(2, 2);
  expect << 0, 1, -1, 0;
  CHECK((r - expect).cwiseAbs().maxCoeff() < 1e-15);
}

TEST_CASE("rotationMatrix is unitary for random parameters") {
  std::uniform_real_distribution<double> ut(-std::numbers::pi / 2.0,
                                            std::numbers::pi / 2.0);
  std::uniform_real_distribution<double> up(-std::numbers::pi, std::numbers::pi);
  std::uniform_int_distribution<int> ui(0, 3);
  for (int it = 0; it < 200; ++it) {
    int l = ui(rng), m = ui(rng);
    if (l == m) continue;
    if (l > m) std::swap(l, m);
    const Matrix r = rotationMatrix(4, {l, m, ut(rng), up(rng)});
    CHECK((r * r.adjoint() - Matrix::Identity(4, 4)).cwiseAbs().maxCoeff() <
          1e-12);
  }
}

TEST_CASE("rotationMatrix rejects bad indices") {
  CHECK_THROWS_AS(rotationMatrix(2, {0, 2, 0.1, 0.0}), std::invalid_argument);
  CHECK_THROWS_AS(RotationParams(2, 1, 0.1, 0.0), std::invalid_argument);
}

TEST_CASE("spectralNorm basics and power-iteration oracle") {
  CHECK(spectralNorm(Matrix::Identity(3, 3)) == doctest::Approx(1.0));
  Matrix d = Matrix::Zero(2, 2);
  d(0, 0) = 3.0;
  d(1, 1) = 1.0;
  CHECK(spectralNorm(d) == doctest::Approx(3.0));
  for (int it = 0; it < 20; ++it) {
    const Matrix a = randomComplex(4, 3);
    const double expect = powerIterationNorm(a);
    CHECK(spectralNorm(a) == doctest::Approx(expect).epsilon(1e-8));
  }
}

TEST_CASE("spectralNorm invariant under unitary factors") {
  for (int it = 0; it < 20; ++it) {
    const Matrix a = randomComplex(4, 4);
    const Matrix u = randomUnitary(4);
    const Matrix v = randomUnitary(4);
    CHECK(spectralNorm(u * a * v) ==
          doctest::Approx(spectralNorm(a)).epsilon(1e-10));
  }
}

TEST_CASE("jacobiAngles zero off-diagonal and tie-break") {
  CHECK(jacobiAngles(2.0, 1.0, 0.0).theta == doctest::Approx(0.0));
  const JacobiAngles tie = jacobiAngles(1.0, 1.0, Complex(0.0, 1.0));
  CHECK(tie.theta == doctest::Approx(std::numbers::pi / 4.0));
  CHECK(tie.phi == doctest::Approx(std::numbers::pi / 2.0));
}

TEST_CASE("jacobiAngles annihilates the off-diagonal entry") {
  // Includes the concrete (2,1,1) and (1,1,i) cases plus randomized blocks.
  std::normal_distribution<double> g(0.0, 1.0);
  for (int it = 0; it < 10000; ++it) {
    Complex a_ll, a_mm, a_lm;
    if (it == 0) {
      a_ll = 2.0; a_mm = 1.0; a_lm = 1.0;
    } else if (it == 1) {
      a_ll = 1.0; a_mm = 1.0; a_lm = Complex(0.0, 1.0);
    } else {
      a_ll = g(rng); a_mm = g(rng); a_lm = Complex(g(rng), g(rng));
    }
    const JacobiAngles ang = jacobiAngles(a_ll, a_mm, a_lm);
    Matrix a(2, 2);
    a << a_ll, a_lm, std::conj(a_lm), a_mm;
    const Matrix r = rotationMatrix(2, {0, 1, ang.theta, ang.phi});
    const Matrix b = r.adjoint() * a * r;
    CHECK(std::abs(b(0, 1)) < 1e-12);
    // minimizing branch puts the smaller diagonal entry first
    CHECK(b(0, 0).real() <= b(1, 1).real() + 1e-12);
  }
}

TEST_CASE("jacobiAngles rejects non-Hermitian diagonals") {
  CHECK_THROWS_AS(jacobiAngles(Complex(1.0, 0.5), 1.0, 0.0),
                  std::invalid_argument);
}

TEST_CASE("hermitianEigOracle diagonal input") {
  Matrix d = Matrix::Zero(3, 3);
  d(0, 0) = 3.0;
  d(1, 1) = 1.0;
  d(2, 2) = 2.0;
  const EigResult e = hermitianEigOracle(d, 1e-12);
  CHECK(e.values(0) == doctest::Approx(1.0));
  CHECK(e.values(1) == doctest::Approx(2.0));
  CHECK(e.values(2) == doctest::Approx(3.0));
  CHECK((e.vectors * e.values.asDiagonal() * e.vectors.adjoint() - d)
            .cwiseAbs()
            .maxCoeff() < 1e-12);
}

TEST_CASE("hermitianEigOracle rank-deficient Gram matrix") {
  const Matrix h = randomComplex(1, 3);
  const EigResult e = hermitianEigOracle(h.adjoint() * h, 1e-13);
  CHECK(e.values(0) < 1e-12);
  CHECK(e.values(1) < 1e-12);
}

TEST_CASE("hermitianEigOracle reconstruction, unitarity, trace") {
  for (int it = 0; it < 50; ++it) {
    const Matrix g = randomHermitian(4);
    const EigResult e = hermitianEigOracle(g, 1e-12);
    CHECK((e.vectors * e.values.asDiagonal() * e.vectors.adjoint() - g)
              .cwiseAbs()
              .maxCoeff() < 1e-9);
    CHECK((e.vectors.adjoint() * e.vectors - Matrix::Identity(4, 4))
              .cwiseAbs()
              .maxCoeff() < 1e-10);
    for (Eigen::Index i = 0; i + 1 < e.values.size(); ++i) {
      CHECK(e.values(i) <= e.values(i + 1));
    }
    CHECK(e.values.sum() == doctest::Approx(g.trace().real()).epsilon(1e-10));
  }
}

TEST_CASE("hermitianEigOracle rejects non-Hermitian input") {
  CHECK_THROWS_AS(hermitianEigOracle(randomComplex(3, 3), 1e-10),
                  std::invalid_argument);
}

TEST_CASE("nullSpace coordinate kernel") {
  Matrix h(1, 3);
  h << 1, 0, 0;
  const Matrix v = nullSpace(h, 1e-12);
  REQUIRE(v.cols() == 2);
  CHECK((h * v).cwiseAbs().maxCoeff() < 1e-12);
  for (Eigen::Index j = 0; j < v.cols(); ++j) {
    CHECK(std::abs(v(0, j)) < 1e-12);  // spanned by e2, e3
  }
}

TEST_CASE("nullSpace residual and orthonormality") {
  for (int it = 0; it < 20; ++it) {
    const Matrix h1 = randomComplex(1, 3);
    const Matrix v1 = nullSpace(h1, 1e-12);
    REQUIRE(v1.cols() == 2);
    CHECK(spectralNorm(h1 * v1) / spectralNorm(h1) < 1e-12);

    const Matrix h2 = randomComplex(2, 3);
    const Matrix v2 = nullSpace(h2, 1e-12);
    REQUIRE(v2.cols() == 1);
    CHECK((v2.adjoint() * v2 - Matrix::Identity(1, 1)).cwiseAbs().maxCoeff() <
          1e-12);
  }
}
