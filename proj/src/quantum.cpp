#include "tomowitness/quantum.hpp"

#include <cmath>
#include <string>

#include "tomowitness/classical.hpp"

namespace tomowitness {

namespace {

constexpr Complex kI{0.0, 1.0};

void require_nonnegative_rate(double g, const char* name) {
  if (!(g >= 0.0) || !std::isfinite(g)) {
    throw Error(Errc::NegativeRate, std::string(name) + " must be finite and >= 0");
  }
}

}  // namespace

ComplexMatrix pauli(int index) {
  ComplexMatrix s(2, 2);
  switch (index) {
    case 0: s << 1.0, 0.0, 0.0, 1.0; break;
    case 1: s << 0.0, 1.0, 1.0, 0.0; break;
    case 2: s << 0.0, -kI, kI, 0.0; break;
    case 3: s << 1.0, 0.0, 0.0, -1.0; break;
    default: throw Error(Errc::DimensionMismatch, "pauli index must be 0..3");
  }
  return s;
}

ComplexMatrix sigma_plus() {
  ComplexMatrix s = ComplexMatrix::Zero(2, 2);
  s(1, 0) = 1.0;
  return s;
}

ComplexMatrix sigma_minus() {
  ComplexMatrix s = ComplexMatrix::Zero(2, 2);
  s(0, 1) = 1.0;
  return s;
}

DensityMatrix::DensityMatrix(ComplexMatrix rho, double tol) : rho_(std::move(rho)) {
  linalg::require_square(rho_, "density matrix");
  linalg::require_finite(rho_, "density matrix");
  const double asym = linalg::max_abs(rho_ - rho_.adjoint());
  if (asym > tol) {
    throw Error(Errc::NotDensityMatrix, "not Hermitian (max |rho - rho^H| = " + std::to_string(asym) + ")");
  }
  const double trace_err = std::abs(rho_.trace() - 1.0);
  if (trace_err > tol) {
    throw Error(Errc::NotDensityMatrix, "trace differs from 1 by " + std::to_string(trace_err));
  }
  const double lmin = linalg::min_eigenvalue(rho_, tol);
  if (lmin < -tol) {
    throw Error(Errc::NotDensityMatrix, "minimum eigenvalue " + std::to_string(lmin) + " is negative");
  }
}

double DensityMatrix::min_eigenvalue() const { return linalg::min_eigenvalue(rho_, 1e-9); }

double DensityMatrix::purity() const { return (rho_ * rho_).trace().real(); }

double BlochVector::norm() const { return std::sqrt(x * x + y * y + z * z); }

DensityMatrix bloch_to_density(const BlochVector& b) {
  if (!std::isfinite(b.norm())) throw Error(Errc::NonFinite, "Bloch vector has non-finite entries");
  if (b.norm() > 1.0 + 1e-12) {
    throw Error(Errc::BallViolation, "|r| = " + std::to_string(b.norm()) + " exceeds 1");
  }
  ComplexMatrix rho = 0.5 * (pauli(0) + b.x * pauli(1) + b.y * pauli(2) + b.z * pauli(3));
  // Boundary states may carry eigenvalues of order -1e-16.
  return DensityMatrix(std::move(rho), 1e-10);
}

BlochVector density_to_bloch(const DensityMatrix& rho) {
  if (rho.dim() != 2) throw Error(Errc::WrongDimension, "Bloch vectors exist for qubits only");
  const ComplexMatrix& m = rho.matrix();
  return {(m(0, 1) + m(1, 0)).real(), (kI * (m(0, 1) - m(1, 0))).real(), (m(0, 0) - m(1, 1)).real()};
}

GkslGenerator::GkslGenerator(ComplexMatrix hamiltonian, std::vector<ComplexMatrix> jumps, double tol)
    : h_(std::move(hamiltonian)), jumps_(std::move(jumps)) {
  linalg::require_square(h_, "Hamiltonian");
  linalg::require_finite(h_, "Hamiltonian");
  if (linalg::max_abs(h_ - h_.adjoint()) > tol) {
    throw Error(Errc::NotHermitian, "Hamiltonian is not Hermitian");
  }
  for (std::size_t k = 0; k < jumps_.size(); ++k) {
    if (jumps_[k].rows() != h_.rows() || jumps_[k].cols() != h_.cols()) {
      throw Error(Errc::DimensionMismatch, "jump operator " + std::to_string(k) + " has wrong shape");
    }
    linalg::require_finite(jumps_[k], "jump operator");
  }
}

GkslGenerator GkslGenerator::zero(int dim) { return GkslGenerator(ComplexMatrix::Zero(dim, dim), {}); }

ComplexMatrix apply_gksl(const GkslGenerator& generator, const ComplexMatrix& x) {
  const ComplexMatrix& h = generator.hamiltonian();
  if (x.rows() != h.rows() || x.cols() != h.cols()) {
    throw Error(Errc::DimensionMismatch, "operator and generator dimensions differ");
  }
  ComplexMatrix out = -kI * (h * x - x * h);
  for (const ComplexMatrix& v : generator.jumps()) {
    const ComplexMatrix vdv = v.adjoint() * v;
    out += v * x * v.adjoint() - 0.5 * (vdv * x + x * vdv);
  }
  return out;
}

Liouvillian liouvillian_matrix(const GkslGenerator& generator) {
  // vec(A X B) = (B^T (x) A) vec(X) for column stacking.
  const int n = generator.dim();
  const ComplexMatrix id = ComplexMatrix::Identity(n, n);
  const ComplexMatrix& h = generator.hamiltonian();
  auto kron = [](const ComplexMatrix& a, const ComplexMatrix& b) {
    ComplexMatrix k(a.rows() * b.rows(), a.cols() * b.cols());
    for (Eigen::Index i = 0; i < a.rows(); ++i)
      for (Eigen::Index j = 0; j < a.cols(); ++j)
        k.block(i * b.rows(), j * b.cols(), b.rows(), b.cols()) = a(i, j) * b;
    return k;
  };
  ComplexMatrix l = -kI * (kron(id, h) - kron(h.transpose(), id));
  for (const ComplexMatrix& v : generator.jumps()) {
    const ComplexMatrix vdv = v.adjoint() * v;
    l += kron(v.conjugate(), v) - 0.5 * kron(id, vdv) - 0.5 * kron(vdv.transpose(), id);
  }
  return {n, std::move(l)};
}

ComplexMatrix propagate(const GkslGenerator& generator, const ComplexMatrix& x, double t) {
  if (x.rows() != generator.dim() || x.cols() != generator.dim()) {
    throw Error(Errc::DimensionMismatch, "operator and generator dimensions differ");
  }
  const Liouvillian l = liouvillian_matrix(generator);
  const ComplexVector out = linalg::matrix_exponential(l.matrix, t) * linalg::vec(x);
  return linalg::unvec(out, x.rows());
}

DensityMatrix evolve_density(const GkslGenerator& generator, const DensityMatrix& rho0, double t) {
  if (!(t >= 0.0) || !std::isfinite(t)) throw Error(Errc::BadGrid, "evolution time must be finite and >= 0");
  ComplexMatrix rho = propagate(generator, rho0.matrix(), t);
  rho = (0.5 * (rho + rho.adjoint())).eval();
  const double lmin = linalg::min_eigenvalue(rho, 1e-8);
  if (lmin < -1e-8) {
    throw Error(Errc::PositivityLost, "min eigenvalue " + std::to_string(lmin) + " at t = " + std::to_string(t));
  }
  return DensityMatrix(std::move(rho), 1e-8);
}

void require_orthonormal(const ComplexMatrix& basis, double tol) {
  if (basis.rows() != basis.cols() || basis.rows() < 1) {
    throw Error(Errc::BasisNotOrthonormal, "basis must hold N vectors of length N");
  }
  const double err = linalg::max_abs(basis.adjoint() * basis - ComplexMatrix::Identity(basis.cols(), basis.cols()));
  if (!(err <= tol)) {
    throw Error(Errc::BasisNotOrthonormal, "max |<e_i|e_j> - delta_ij| = " + std::to_string(err));
  }
}

RealMatrix diagonal_projection_generator(const GkslGenerator& generator, const ComplexMatrix& basis,
                                         double tol) {
  require_orthonormal(basis, tol);
  if (basis.rows() != generator.dim()) throw Error(Errc::DimensionMismatch, "basis and generator dimensions differ");
  const int n = generator.dim();
  RealMatrix m(n, n);
  for (int j = 0; j < n; ++j) {
    const ComplexMatrix pj = basis.col(j) * basis.col(j).adjoint();
    const ComplexMatrix lpj = apply_gksl(generator, pj);
    for (int i = 0; i < n; ++i) {
      m(i, j) = (basis.col(i).adjoint() * lpj * basis.col(i))(0, 0).real();
    }
  }
  const double scale = std::max(1.0, linalg::max_abs(m));
  const auto check = is_kolmogorov(m, 1e-10 * scale);
  if (!check.verdict) {
    throw Error(Errc::NotKolmogorov, "diagonal projection generator violates Kolmogorov conditions");
  }
  return m;
}

RealMatrix diagonal_projection_map(const GkslGenerator& generator, const ComplexMatrix& basis, double t,
                                   double tol) {
  require_orthonormal(basis, tol);
  if (basis.rows() != generator.dim()) throw Error(Errc::DimensionMismatch, "basis and generator dimensions differ");
  if (!(t >= 0.0) || !std::isfinite(t)) throw Error(Errc::BadGrid, "t must be finite and >= 0");
  const int n = generator.dim();
  const ComplexMatrix prop = linalg::matrix_exponential(liouvillian_matrix(generator).matrix, t);
  RealMatrix tm(n, n);
  for (int j = 0; j < n; ++j) {
    const ComplexMatrix pj = basis.col(j) * basis.col(j).adjoint();
    const ComplexMatrix out = linalg::unvec(prop * linalg::vec(pj), n);
    for (int i = 0; i < n; ++i) {
      tm(i, j) = (basis.col(i).adjoint() * out * basis.col(i))(0, 0).real();
    }
  }
  if (!is_stochastic(tm, 1e-9).verdict) {
    throw Error(Errc::NotStochastic, "diagonal projection map is not stochastic at t = " + std::to_string(t));
  }
  return tm;
}

GkslGenerator example1_generator(double omega) {
  return GkslGenerator(omega * sigma_x(), {});
}

GkslGenerator example2_generator(double omega, double gamma1, double gamma2, double gamma3) {
  require_nonnegative_rate(gamma1, "gamma1");
  require_nonnegative_rate(gamma2, "gamma2");
  require_nonnegative_rate(gamma3, "gamma3");
  return GkslGenerator(0.5 * omega * sigma_z(), {std::sqrt(gamma1) * sigma_plus(), std::sqrt(gamma2) * sigma_minus(),
                                                 std::sqrt(0.5 * gamma3) * sigma_z()});
}

GkslGenerator example3_generator(double gamma1, double gamma2, double gamma3) {
  require_nonnegative_rate(gamma1, "gamma1");
  require_nonnegative_rate(gamma2, "gamma2");
  require_nonnegative_rate(gamma3, "gamma3");
  return GkslGenerator(ComplexMatrix::Zero(2, 2), {std::sqrt(gamma1) * sigma_x(), std::sqrt(gamma2) * sigma_y(),
                                                   std::sqrt(gamma3) * sigma_z()});
}

}  // namespace tomowitness
