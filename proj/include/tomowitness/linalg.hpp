#pragma once

// Dense small-matrix kernels shared by every other module. Everything here is
// templated on the scalar so the same code serves real generators and
// complex operators.

#include <algorithm>
#include <cmath>
#include <complex>
#include <numeric>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "tomowitness/errors.hpp"

namespace tomowitness {

using Complex = std::complex<double>;

template <typename Scalar>
using Matrix = Eigen::Matrix<Scalar, Eigen::Dynamic, Eigen::Dynamic>;
template <typename Scalar>
using Vector = Eigen::Matrix<Scalar, Eigen::Dynamic, 1>;

using RealMatrix = Matrix<double>;
using ComplexMatrix = Matrix<Complex>;
using RealVector = Vector<double>;
using ComplexVector = Vector<Complex>;

namespace linalg {

template <typename Derived>
bool all_finite(const Eigen::MatrixBase<Derived>& a) {
  return a.allFinite();
}

template <typename Derived>
double max_abs(const Eigen::MatrixBase<Derived>& a) {
  return a.size() == 0 ? 0.0 : a.cwiseAbs().maxCoeff();
}

/// Induced 1-norm (maximum absolute column sum).
template <typename Derived>
double norm1(const Eigen::MatrixBase<Derived>& a) {
  return a.size() == 0 ? 0.0 : a.cwiseAbs().colwise().sum().maxCoeff();
}

template <typename Derived>
void require_square(const Eigen::MatrixBase<Derived>& a, const char* what) {
  if (a.rows() != a.cols() || a.rows() < 1) {
    throw Error(Errc::DimensionMismatch,
                std::string(what) + " must be a non-empty square matrix, got " +
                    std::to_string(a.rows()) + "x" + std::to_string(a.cols()));
  }
}

template <typename Derived>
void require_finite(const Eigen::MatrixBase<Derived>& a, const char* what) {
  if (!all_finite(a)) throw Error(Errc::NonFinite, std::string(what) + " has non-finite entries");
}

/// Column-stacking vectorization: vec(X)[i + n*j] = X(i, j).
template <typename Derived>
Vector<typename Derived::Scalar> vec(const Eigen::MatrixBase<Derived>& x) {
  Vector<typename Derived::Scalar> out(x.size());
  Eigen::Map<Matrix<typename Derived::Scalar>>(out.data(), x.rows(), x.cols()) = x;
  return out;
}

template <typename Derived>
Matrix<typename Derived::Scalar> unvec(const Eigen::MatrixBase<Derived>& v, Eigen::Index rows) {
  if (rows < 1 || v.size() % rows != 0) {
    throw Error(Errc::DimensionMismatch, "unvec: length not divisible by row count");
  }
  const Vector<typename Derived::Scalar> tmp = v;
  return Eigen::Map<const Matrix<typename Derived::Scalar>>(tmp.data(), rows, v.size() / rows);
}

template <typename Scalar>
struct HermitianEigensystem {
  RealVector values;       // ascending
  Matrix<Scalar> vectors;  // column i pairs with values(i)
};

/// Cyclic Jacobi diagonalization of a Hermitian (or real symmetric) matrix.
///
/// Each rotation first removes the phase of the pivot a_pq with a diagonal
/// unitary, then applies the classical real Jacobi rotation. Sweeps stop once
/// the off-diagonal Frobenius norm falls below 1e-13 of the matrix norm.
template <typename Derived>
HermitianEigensystem<typename Derived::Scalar> hermitian_eigensystem(
    const Eigen::MatrixBase<Derived>& input, double tol = 1e-10) {
  using Scalar = typename Derived::Scalar;
  using Eigen::numext::conj;
  require_square(input, "hermitian_eigensystem input");
  require_finite(input, "hermitian_eigensystem input");
  const double asym = max_abs(input - input.adjoint());
  if (asym > tol) {
    throw Error(Errc::NotHermitian,
                "max |A - A^H| = " + std::to_string(asym) + " exceeds " + std::to_string(tol));
  }

  const Eigen::Index n = input.rows();
  Matrix<Scalar> a = (input + input.adjoint()) / Scalar(2);
  Matrix<Scalar> v = Matrix<Scalar>::Identity(n, n);
  const double scale = a.norm();

  auto off_norm = [&] {
    double s = 0.0;
    for (Eigen::Index q = 0; q < n; ++q)
      for (Eigen::Index p = 0; p < n; ++p)
        if (p != q) s += std::norm(a(p, q));
    return std::sqrt(s);
  };

  constexpr int kMaxSweeps = 100;
  for (int sweep = 0; sweep < kMaxSweeps && scale > 0.0; ++sweep) {
    if (off_norm() <= 1e-13 * scale) break;
    for (Eigen::Index p = 0; p + 1 < n; ++p) {
      for (Eigen::Index q = p + 1; q < n; ++q) {
        const Scalar apq = a(p, q);
        const double mag = std::abs(apq);
        if (mag <= 1e-300) continue;
        const Scalar phase = apq / mag;
        const double app = Eigen::numext::real(a(p, p));
        const double aqq = Eigen::numext::real(a(q, q));
        const double tau = (aqq - app) / (2.0 * mag);
        const double t = (tau >= 0.0 ? 1.0 : -1.0) / (std::abs(tau) + std::sqrt(1.0 + tau * tau));
        const double c = 1.0 / std::sqrt(1.0 + t * t);
        const double s = t * c;
        // G = diag(1, conj(phase)) * [[c, s], [-s, c]] on the (p, q) plane.
        const Scalar gpp = c;
        const Scalar gpq = s;
        const Scalar gqp = -s * conj(phase);
        const Scalar gqq = c * conj(phase);

        for (Eigen::Index k = 0; k < n; ++k) {
          const Scalar akp = a(k, p), akq = a(k, q);
          a(k, p) = akp * gpp + akq * gqp;
          a(k, q) = akp * gpq + akq * gqq;
          const Scalar vkp = v(k, p), vkq = v(k, q);
          v(k, p) = vkp * gpp + vkq * gqp;
          v(k, q) = vkp * gpq + vkq * gqq;
        }
        for (Eigen::Index k = 0; k < n; ++k) {
          const Scalar apk = a(p, k), aqk = a(q, k);
          a(p, k) = conj(gpp) * apk + conj(gqp) * aqk;
          a(q, k) = conj(gpq) * apk + conj(gqq) * aqk;
        }
        a(p, q) = Scalar(0);
        a(q, p) = Scalar(0);
        a(p, p) = Eigen::numext::real(a(p, p));
        a(q, q) = Eigen::numext::real(a(q, q));
      }
    }
  }

  std::vector<Eigen::Index> order(static_cast<std::size_t>(n));
  std::iota(order.begin(), order.end(), Eigen::Index{0});
  std::stable_sort(order.begin(), order.end(), [&](Eigen::Index i, Eigen::Index j) {
    return Eigen::numext::real(a(i, i)) < Eigen::numext::real(a(j, j));
  });

  HermitianEigensystem<Scalar> out{RealVector(n), Matrix<Scalar>(n, n)};
  for (Eigen::Index k = 0; k < n; ++k) {
    out.values(k) = Eigen::numext::real(a(order[k], order[k]));
    out.vectors.col(k) = v.col(order[k]);
  }
  return out;
}

template <typename Derived>
double min_eigenvalue(const Eigen::MatrixBase<Derived>& a, double tol = 1e-10) {
  return hermitian_eigensystem(a, tol).values(0);
}

/// e^{tA} by scaling and squaring with a diagonal [8/8] Padé approximant.
/// The scaled argument always has 1-norm at most 0.5.
template <typename Derived>
typename Derived::PlainObject matrix_exponential(const Eigen::MatrixBase<Derived>& a, double t = 1.0) {
  using Plain = typename Derived::PlainObject;
  using Scalar = typename Derived::Scalar;
  require_square(a, "matrix_exponential input");
  require_finite(a, "matrix_exponential input");
  if (!std::isfinite(t)) throw Error(Errc::NonFinite, "matrix_exponential: t is not finite");

  const Eigen::Index n = a.rows();
  Plain x = a * Scalar(t);
  const double nrm = norm1(x);
  int squarings = 0;
  if (nrm > 0.5) squarings = static_cast<int>(std::ceil(std::log2(nrm / 0.5)));
  if (squarings > 0) x /= Scalar(std::ldexp(1.0, squarings));

  constexpr int kOrder = 8;
  const Plain identity = Plain::Identity(n, n);
  Plain numer = identity;
  Plain denom = identity;
  Plain power = identity;
  double coeff = 1.0;
  for (int k = 1; k <= kOrder; ++k) {
    coeff *= static_cast<double>(kOrder - k + 1) / (static_cast<double>(k) * (2 * kOrder - k + 1));
    power = (power * x).eval();
    numer += Scalar(coeff) * power;
    denom += Scalar(k % 2 == 0 ? coeff : -coeff) * power;
  }
  Plain result = denom.partialPivLu().solve(numer);
  for (int k = 0; k < squarings; ++k) result = (result * result).eval();
  return result;
}

namespace detail {

template <typename Scalar>
HermitianEigensystem<Scalar> checked_gram(const Matrix<Scalar>& a) {
  const Matrix<Scalar> gram = a.adjoint() * a;
  auto eig = hermitian_eigensystem(gram, 1e-8 * std::max(1.0, max_abs(gram)));
  const double largest = eig.values(eig.values.size() - 1);
  const double smallest = eig.values(0);
  if (!(largest > 0.0) || smallest < 1e-12 * largest) {
    throw Error(Errc::RankDeficient, "Gram matrix eigenvalue ratio " +
                                         std::to_string(largest > 0.0 ? smallest / largest : 0.0) +
                                         " below 1e-12");
  }
  return eig;
}

}  // namespace detail

/// Left inverse (A^H A)^{-1} A^H of a full-column-rank matrix, via the Gram
/// matrix and the Hermitian eigensolver.
template <typename Derived>
Matrix<typename Derived::Scalar> pseudoinverse(const Eigen::MatrixBase<Derived>& a) {
  using Scalar = typename Derived::Scalar;
  require_finite(a, "pseudoinverse input");
  if (a.rows() < a.cols()) {
    throw Error(Errc::DimensionMismatch, "pseudoinverse needs rows >= cols");
  }
  const Matrix<Scalar> m = a;
  const auto eig = detail::checked_gram(m);
  const RealVector inv = eig.values.cwiseInverse();
  return eig.vectors * inv.asDiagonal() * eig.vectors.adjoint() * m.adjoint();
}

/// argmin ||A x - b||_2 for full column rank A.
template <typename DerivedA, typename DerivedB>
Vector<typename DerivedA::Scalar> least_squares_solve(const Eigen::MatrixBase<DerivedA>& a,
                                                      const Eigen::MatrixBase<DerivedB>& b) {
  if (b.size() != a.rows()) {
    throw Error(Errc::DimensionMismatch, "least_squares_solve: rhs length does not match rows");
  }
  require_finite(b, "least_squares_solve rhs");
  return pseudoinverse(a) * b;
}

/// Numerical rank: number of Gram eigenvalues above 1e-12 of the largest.
template <typename Derived>
int gram_rank(const Eigen::MatrixBase<Derived>& a) {
  using Scalar = typename Derived::Scalar;
  const Matrix<Scalar> gram = a.adjoint() * a;
  const auto eig = hermitian_eigensystem(gram, 1e-8 * std::max(1.0, max_abs(gram)));
  const double largest = eig.values(eig.values.size() - 1);
  if (!(largest > 0.0)) return 0;
  return static_cast<int>((eig.values.array() > 1e-12 * largest).count());
}

}  // namespace linalg
}  // namespace tomowitness
