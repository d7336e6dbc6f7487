#include "tomowitness/tomography.hpp"

#include <cmath>
#include <numeric>

namespace tomowitness {

namespace {

constexpr Complex kI{0.0, 1.0};
constexpr double kSectorSumTol = 1e-8;

void require_matching(const TomographicVector& p, const Quorum& quorum) {
  if (p.dim != quorum.dim() || p.sectors != quorum.sector_count() || p.values.size() != quorum.size()) {
    throw Error(Errc::DimensionMismatch, "tomographic vector does not match the quorum shape");
  }
}

void require_sector_sums(const TomographicVector& p, const Quorum& quorum) {
  const RealVector err = p.sector_sums() - quorum.weights();
  const double worst = err.cwiseAbs().maxCoeff();
  if (!(worst <= kSectorSumTol)) {
    throw Error(Errc::SectorSumViolation, "sector sums differ from the weights by " + std::to_string(worst));
  }
}

}  // namespace

MeasurementBasis::MeasurementBasis(ComplexMatrix vectors, double tol) : v_(std::move(vectors)) {
  linalg::require_finite(v_, "measurement basis");
  require_orthonormal(v_, tol);
}

MeasurementBasis MeasurementBasis::standard(int dim) {
  return MeasurementBasis(ComplexMatrix::Identity(dim, dim));
}

MeasurementBasis basis_from_axis(double theta, double phi) {
  const double c = std::cos(0.5 * theta);
  const double s = std::sin(0.5 * theta);
  const Complex e = std::polar(1.0, phi);
  ComplexMatrix v(2, 2);
  v << c, -std::conj(e) * s,
       e * s, c;
  return MeasurementBasis(std::move(v));
}

Quorum::Quorum(std::vector<QuorumSector> sectors) : sectors_(std::move(sectors)) {
  if (sectors_.empty()) throw Error(Errc::BadWeights, "quorum needs at least one sector");
  double total = 0.0;
  for (const QuorumSector& s : sectors_) {
    if (!(s.weight > 0.0) || !std::isfinite(s.weight)) {
      throw Error(Errc::BadWeights, "sector weight " + std::to_string(s.weight) + " is not positive");
    }
    if (s.basis.dim() != sectors_.front().basis.dim()) {
      throw Error(Errc::DimensionMismatch, "quorum bases have different dimensions");
    }
    total += s.weight;
  }
  if (std::abs(total - 1.0) > 1e-12) {
    throw Error(Errc::BadWeights, "weights sum to " + std::to_string(total) + ", expected 1");
  }
}

RealVector Quorum::weights() const {
  RealVector w(sector_count());
  for (int a = 0; a < sector_count(); ++a) w(a) = sector(a).weight;
  return w;
}

bool Quorum::is_pauli() const {
  if (dim() != 2 || sector_count() != 3) return false;
  for (int a = 0; a < 3; ++a) {
    for (int k = 0; k < 2; ++k) {
      const ComplexMatrix expected = 0.5 * (pauli(0) + (k == 0 ? 1.0 : -1.0) * pauli(a + 1));
      if (linalg::max_abs(sector(a).basis.projector(k) - expected) > 1e-10) return false;
    }
  }
  return true;
}

Quorum pauli_quorum(double pi_x, double pi_y, double pi_z) {
  const double r = 1.0 / std::sqrt(2.0);
  ComplexMatrix bx(2, 2), by(2, 2);
  bx << r, r,
        r, -r;
  by << r, r,
        kI * r, -kI * r;
  return Quorum({{MeasurementBasis(bx), pi_x, "x"},
                 {MeasurementBasis(by), pi_y, "y"},
                 {MeasurementBasis::standard(2), pi_z, "z"}});
}

RealVector TomographicVector::sector_sums() const {
  RealVector s(sectors);
  for (int a = 0; a < sectors; ++a) s(a) = sector(a).sum();
  return s;
}

std::vector<ComplexMatrix> hermitian_basis(int dim) {
  std::vector<ComplexMatrix> basis;
  basis.reserve(static_cast<std::size_t>(dim) * dim);
  const double r = 1.0 / std::sqrt(2.0);
  for (int i = 0; i < dim; ++i) {
    ComplexMatrix e = ComplexMatrix::Zero(dim, dim);
    e(i, i) = 1.0;
    basis.push_back(std::move(e));
  }
  for (int i = 0; i < dim; ++i) {
    for (int j = i + 1; j < dim; ++j) {
      ComplexMatrix re = ComplexMatrix::Zero(dim, dim);
      re(i, j) = r;
      re(j, i) = r;
      ComplexMatrix im = ComplexMatrix::Zero(dim, dim);
      im(i, j) = kI * r;
      im(j, i) = -kI * r;
      basis.push_back(std::move(re));
      basis.push_back(std::move(im));
    }
  }
  return basis;
}

RealVector encode_linear(const ComplexMatrix& x, const Quorum& quorum) {
  if (x.rows() != quorum.dim() || x.cols() != quorum.dim()) {
    throw Error(Errc::DimensionMismatch, "operator and quorum dimensions differ");
  }
  const int n = quorum.dim();
  RealVector p(quorum.size());
  for (int a = 0; a < quorum.sector_count(); ++a) {
    const QuorumSector& s = quorum.sector(a);
    for (int k = 0; k < n; ++k) {
      const auto b = s.basis.vectors().col(k);
      p(a * n + k) = s.weight * (b.adjoint() * x * b)(0, 0).real();
    }
  }
  return p;
}

RealMatrix frame_matrix(const Quorum& quorum) {
  const auto basis = hermitian_basis(quorum.dim());
  RealMatrix f(quorum.size(), static_cast<Eigen::Index>(basis.size()));
  for (std::size_t l = 0; l < basis.size(); ++l) f.col(static_cast<Eigen::Index>(l)) = encode_linear(basis[l], quorum);
  return f;
}

TomographicVector encode(const DensityMatrix& rho, const Quorum& quorum) {
  return {quorum.dim(), quorum.sector_count(), encode_linear(rho.matrix(), quorum)};
}

int completeness_check(const Quorum& quorum) { return linalg::gram_rank(frame_matrix(quorum)); }

ComplexMatrix decode(const TomographicVector& p, const Quorum& quorum) {
  require_matching(p, quorum);
  const int n = quorum.dim();
  const RealMatrix f = frame_matrix(quorum);
  if (linalg::gram_rank(f) < n * n) {
    throw Error(Errc::IncompleteQuorum, "frame rank " + std::to_string(linalg::gram_rank(f)) + " < " +
                                            std::to_string(n * n));
  }
  require_sector_sums(p, quorum);
  const RealVector theta = linalg::least_squares_solve(f, p.values);
  const auto basis = hermitian_basis(n);
  ComplexMatrix rho = ComplexMatrix::Zero(n, n);
  for (std::size_t l = 0; l < basis.size(); ++l) rho += theta(static_cast<Eigen::Index>(l)) * basis[l];
  return rho;
}

SubsetMembership in_quantum_subset(const TomographicVector& p, const Quorum& quorum, double tol) {
  const ComplexMatrix rho = decode(p, quorum);
  const double lmin = linalg::min_eigenvalue(rho, 1e-9);
  return {lmin >= -tol, lmin};
}

double ellipsoid_value(const TomographicVector& p, const Quorum& quorum) {
  if (!quorum.is_pauli()) throw Error(Errc::WrongQuorumShape, "ellipsoid test needs the qubit Pauli quorum");
  require_matching(p, quorum);
  require_sector_sums(p, quorum);
  double value = 0.0;
  for (int a = 0; a < 3; ++a) {
    const double semi_axis = 0.5 * quorum.sector(a).weight;
    const double d = p.values(2 * a) - semi_axis;
    value += d * d / (semi_axis * semi_axis);
  }
  return value;
}

}  // namespace tomowitness
