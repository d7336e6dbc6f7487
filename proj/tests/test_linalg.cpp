#include "doctest.h"

#include <Eigen/Eigenvalues>

#include "support/random.hpp"
#include "tomowitness/linalg.hpp"

using namespace tomowitness;
using namespace tomowitness::testing;

TEST_CASE("hermitian_eigensystem: identity and Pauli spectra") {
  const auto id = linalg::hermitian_eigensystem(ComplexMatrix::Identity(2, 2));
  CHECK(id.values(0) == doctest::Approx(1.0));
  CHECK(id.values(1) == doctest::Approx(1.0));
  CHECK(linalg::max_abs(id.vectors.adjoint() * id.vectors - ComplexMatrix::Identity(2, 2)) < 1e-12);

  ComplexMatrix sx(2, 2);
  sx << 0.0, 1.0, 1.0, 0.0;
  const auto e = linalg::hermitian_eigensystem(sx);
  CHECK(e.values(0) == doctest::Approx(-1.0).epsilon(1e-14));
  CHECK(e.values(1) == doctest::Approx(1.0).epsilon(1e-14));
}

TEST_CASE("hermitian_eigensystem: seeded Hermitian matrices, residual and reconstruction") {
  Rng rng(7);
  for (int n : {1, 2, 3, 4, 6, 9}) {
    for (int rep = 0; rep < 10; ++rep) {
      const ComplexMatrix a = random_hermitian(rng, n);
      const auto e = linalg::hermitian_eigensystem(a);
      const double scale = std::max(1.0, a.norm());
      for (int i = 0; i < n; ++i) {
        CHECK(linalg::max_abs(a * e.vectors.col(i) - e.values(i) * e.vectors.col(i)) <= 1e-10 * scale);
        if (i > 0) CHECK(e.values(i - 1) <= e.values(i));
      }
      CHECK(linalg::max_abs(e.vectors.adjoint() * e.vectors - ComplexMatrix::Identity(n, n)) <= 1e-10);
      CHECK(linalg::max_abs(e.vectors * e.values.cast<Complex>().asDiagonal() * e.vectors.adjoint() - a) <= 1e-9);

      // Independent oracle: Eigen's tridiagonal QR solver.
      Eigen::SelfAdjointEigenSolver<ComplexMatrix> ref(a);
      CHECK(linalg::max_abs(ref.eigenvalues() - e.values) <= 1e-10 * scale);
    }
  }
}

TEST_CASE("hermitian_eigensystem: real symmetric scalar") {
  Rng rng(11);
  RealMatrix g(5, 5);
  for (Eigen::Index j = 0; j < 5; ++j)
    for (Eigen::Index i = 0; i < 5; ++i) g(i, j) = normal(rng);
  const RealMatrix a = g + g.transpose();
  const auto e = linalg::hermitian_eigensystem(a);
  CHECK(linalg::max_abs(e.vectors * e.values.asDiagonal() * e.vectors.transpose() - a) <= 1e-10);
}

TEST_CASE("hermitian_eigensystem: errors") {
  ComplexMatrix a(2, 2);
  a << 1.0, 2.0, 0.0, 1.0;
  try {
    linalg::hermitian_eigensystem(a);
    FAIL("expected NotHermitian");
  } catch (const Error& e) {
    CHECK(e.code() == Errc::NotHermitian);
  }
  try {
    linalg::hermitian_eigensystem(ComplexMatrix::Zero(2, 3));
    FAIL("expected DimensionMismatch");
  } catch (const Error& e) {
    CHECK(e.code() == Errc::DimensionMismatch);
  }
}

TEST_CASE("matrix_exponential: closed forms") {
  RealMatrix a(2, 2);
  a << 0.3, -1.0, 2.0, 0.7;
  CHECK(linalg::max_abs(linalg::matrix_exponential(a, 0.0) - RealMatrix::Identity(2, 2)) == 0.0);

  RealMatrix nil(2, 2);
  nil << 0.0, 1.0, 0.0, 0.0;
  for (double t : {0.5, 3.0, 40.0}) {
    RealMatrix expected(2, 2);
    expected << 1.0, t, 0.0, 1.0;
    CHECK(linalg::max_abs(linalg::matrix_exponential(nil, t) - expected) <= 1e-12 * std::max(1.0, t));
  }

  // Flip generator gamma [[-1, 1], [1, -1]]: eigenvalues 0 and -2 gamma.
  for (double gamma : {0.1, 1.0, 7.5}) {
    for (double t : {0.01, 0.4, 2.0, 10.0}) {
      RealMatrix m(2, 2);
      m << -gamma, gamma, gamma, -gamma;
      const double e = std::exp(-2.0 * gamma * t);
      RealMatrix expected(2, 2);
      expected << 1 + e, 1 - e, 1 - e, 1 + e;
      expected *= 0.5;
      CHECK(linalg::max_abs(linalg::matrix_exponential(m, t) - expected) <= 1e-10);
    }
  }
}

TEST_CASE("matrix_exponential: spectral oracle on Hermitian matrices") {
  Rng rng(3);
  for (int rep = 0; rep < 20; ++rep) {
    const int n = 2 + rep % 5;
    const ComplexMatrix h = random_hermitian(rng, n);
    Eigen::SelfAdjointEigenSolver<ComplexMatrix> es(h);
    for (double t : {0.1, 1.0}) {
      const ComplexMatrix expected = es.eigenvectors() *
                                     (Complex(0.0, -t) * es.eigenvalues().cast<Complex>()).array().exp().matrix().asDiagonal() *
                                     es.eigenvectors().adjoint();
      CHECK(linalg::max_abs(linalg::matrix_exponential(ComplexMatrix(Complex(0.0, -1.0) * h), t) - expected) <= 1e-10);
      // e^{tH} for real spectra.
      const ComplexMatrix grow = es.eigenvectors() * (t * es.eigenvalues()).array().exp().matrix().cast<Complex>().asDiagonal() *
                                 es.eigenvectors().adjoint();
      CHECK(linalg::max_abs(linalg::matrix_exponential(h, t) - grow) <= 1e-10 * std::max(1.0, linalg::max_abs(grow)));
    }
  }
}

TEST_CASE("matrix_exponential: semigroup and stochastic columns") {
  Rng rng(5);
  for (int rep = 0; rep < 20; ++rep) {
    const int n = 2 + rep % 5;
    RealMatrix m = random_rates(rng, n, 2.0);
    m.diagonal().setZero();
    m.diagonal() = -m.colwise().sum().transpose();
    for (double s : {0.1, 0.7, 1.3}) {
      for (double t : {0.1, 0.7, 1.3}) {
        const RealMatrix lhs = linalg::matrix_exponential(m, s + t);
        const RealMatrix rhs = linalg::matrix_exponential(m, s) * linalg::matrix_exponential(m, t);
        CHECK(linalg::max_abs(lhs - rhs) <= 1e-9);
      }
      const RealMatrix e = linalg::matrix_exponential(m, s);
      CHECK((e.colwise().sum().array() - 1.0).abs().maxCoeff() <= 1e-12);
    }
  }
}

TEST_CASE("matrix_exponential: errors") {
  CHECK_THROWS_AS(linalg::matrix_exponential(RealMatrix::Zero(2, 3), 1.0), Error);
  RealMatrix bad = RealMatrix::Zero(2, 2);
  bad(0, 1) = std::nan("");
  try {
    linalg::matrix_exponential(bad, 1.0);
    FAIL("expected NonFinite");
  } catch (const Error& e) {
    CHECK(e.code() == Errc::NonFinite);
  }
}

TEST_CASE("least_squares_solve") {
  RealMatrix a(2, 2);
  a << 2.0, 1.0, 1.0, 3.0;
  RealVector b(2);
  b << 1.0, -2.0;
  CHECK(linalg::max_abs(linalg::least_squares_solve(a, b) - a.inverse() * b) <= 1e-12);

  RealMatrix ones(2, 1);
  ones << 1.0, 1.0;
  RealVector obs(2);
  obs << 1.0, 3.0;
  CHECK(linalg::least_squares_solve(ones, obs)(0) == doctest::Approx(2.0).epsilon(1e-14));

  Rng rng(19);
  for (int rep = 0; rep < 10; ++rep) {
    RealMatrix m(6, 4);
    for (Eigen::Index j = 0; j < 4; ++j)
      for (Eigen::Index i = 0; i < 6; ++i) m(i, j) = normal(rng);
    RealVector x0(4);
    for (Eigen::Index i = 0; i < 4; ++i) x0(i) = normal(rng);
    const RealVector x = linalg::least_squares_solve(m, RealVector(m * x0));
    CHECK(linalg::max_abs(x - x0) <= 1e-10);
  }

  RealMatrix deficient(3, 2);
  deficient << 1.0, 2.0, 2.0, 4.0, 3.0, 6.0;
  try {
    linalg::least_squares_solve(deficient, RealVector::Ones(3));
    FAIL("expected RankDeficient");
  } catch (const Error& e) {
    CHECK(e.code() == Errc::RankDeficient);
  }
  CHECK(linalg::gram_rank(deficient) == 1);
}

TEST_CASE("vec and unvec use column stacking") {
  RealMatrix a(2, 2);
  a << 1.0, 2.0, 3.0, 4.0;
  const RealVector v = linalg::vec(a);
  CHECK(v(0) == 1.0);
  CHECK(v(1) == 3.0);
  CHECK(v(2) == 2.0);
  CHECK(linalg::unvec(v, 2) == a);
}
