#pragma once

// Tomographic encoding of N-level states. A quorum is a list of weighted
// orthonormal bases; measuring sector alpha yields p(k|alpha) = <b_k|rho|b_k>,
// and the stacked vector P has entries p_k^(alpha) = pi_alpha p(k|alpha),
// sector-major. With A sectors P lives in the simplex of dimension N*A - 1,
// and each sector sums to its weight.

#include <string>
#include <vector>

#include "tomowitness/linalg.hpp"
#include "tomowitness/quantum.hpp"

namespace tomowitness {

/// N orthonormal vectors, stored as the columns of an N x N matrix. The
/// unitary rotating this basis onto the computational one is vectors()^H.
class MeasurementBasis {
 public:
  explicit MeasurementBasis(ComplexMatrix vectors, double tol = 1e-10);

  int dim() const { return static_cast<int>(v_.rows()); }
  const ComplexMatrix& vectors() const { return v_; }
  ComplexMatrix projector(int k) const { return v_.col(k) * v_.col(k).adjoint(); }

  /// The computational basis.
  static MeasurementBasis standard(int dim);

 private:
  ComplexMatrix v_;
};

/// Eigenbasis of n.sigma with n = (sin t cos p, sin t sin p, cos t); the +1
/// eigenvector comes first. theta = 0 gives the computational basis.
MeasurementBasis basis_from_axis(double theta, double phi);

struct QuorumSector {
  MeasurementBasis basis;
  double weight;
  std::string label;
};

class Quorum {
 public:
  /// Weights must be positive and sum to 1 within 1e-12 (Errc::BadWeights);
  /// all bases must share one dimension.
  explicit Quorum(std::vector<QuorumSector> sectors);

  int dim() const { return sectors_.front().basis.dim(); }
  int sector_count() const { return static_cast<int>(sectors_.size()); }
  int size() const { return dim() * sector_count(); }
  const std::vector<QuorumSector>& sectors() const { return sectors_; }
  const QuorumSector& sector(int alpha) const { return sectors_[static_cast<std::size_t>(alpha)]; }
  RealVector weights() const;

  /// True for a qubit quorum whose sectors are the x, y, z Pauli
  /// eigenbases in that order (+1 eigenvector first), up to phases.
  bool is_pauli() const;

 private:
  std::vector<QuorumSector> sectors_;
};

/// Sectors are the eigenbases of sx, sy, sz; +1 eigenvector first.
Quorum pauli_quorum(double pi_x, double pi_y, double pi_z);
inline Quorum uniform_pauli_quorum() { return pauli_quorum(1.0 / 3.0, 1.0 / 3.0, 1.0 / 3.0); }

struct TomographicVector {
  int dim = 0;
  int sectors = 0;
  RealVector values;

  auto sector(int alpha) const { return values.segment(static_cast<Eigen::Index>(alpha) * dim, dim); }
  RealVector sector_sums() const;
};

/// Hilbert-Schmidt orthonormal basis of N x N Hermitian matrices: E_ii, then
/// (E_ij + E_ji)/sqrt2 and i(E_ij - E_ji)/sqrt2 for i < j.
std::vector<ComplexMatrix> hermitian_basis(int dim);

/// The linear map X -> P on Hermitian matrices, as an (N*A) x N^2 real
/// matrix in the hermitian_basis coordinates. Weights are included.
RealMatrix frame_matrix(const Quorum& quorum);

/// Linear extension of encode to any square operator (real part taken).
RealVector encode_linear(const ComplexMatrix& x, const Quorum& quorum);

TomographicVector encode(const DensityMatrix& rho, const Quorum& quorum);

/// Least-squares inversion of encode. The result is Hermitian with unit
/// trace but is NOT projected onto the positive cone.
ComplexMatrix decode(const TomographicVector& p, const Quorum& quorum);

/// Rank of the frame map; the quorum is informationally complete iff the
/// rank equals N^2.
int completeness_check(const Quorum& quorum);

struct SubsetMembership {
  bool member = false;
  double min_eigenvalue = 0.0;
};

/// Whether P decodes to a positive semidefinite matrix (within tol).
SubsetMembership in_quantum_subset(const TomographicVector& p, const Quorum& quorum, double tol = 1e-9);

/// Left-hand side of the qubit ellipsoid inequality
/// sum_alpha (p_1^(alpha) - a_alpha)^2 / a_alpha^2 <= 1, a_alpha = pi_alpha / 2.
/// Requires a Pauli quorum (Errc::WrongQuorumShape otherwise).
double ellipsoid_value(const TomographicVector& p, const Quorum& quorum);

}  // namespace tomowitness
