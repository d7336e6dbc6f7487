#pragma once

#include <vector>

#include "tomowitness/linalg.hpp"

namespace tomowitness {

// Pauli matrices; index 0 is the identity.
ComplexMatrix pauli(int index);
inline ComplexMatrix sigma_x() { return pauli(1); }
inline ComplexMatrix sigma_y() { return pauli(2); }
inline ComplexMatrix sigma_z() { return pauli(3); }
/// |2><1|, i.e. [[0, 0], [1, 0]].
ComplexMatrix sigma_plus();
/// |1><2|, i.e. [[0, 1], [0, 0]].
ComplexMatrix sigma_minus();

/// A Hermitian, unit-trace, positive semidefinite matrix.
class DensityMatrix {
 public:
  /// Validates Hermiticity, trace and positivity to `tol`; throws
  /// Errc::NotDensityMatrix otherwise.
  explicit DensityMatrix(ComplexMatrix rho, double tol = 1e-10);

  int dim() const { return static_cast<int>(rho_.rows()); }
  const ComplexMatrix& matrix() const { return rho_; }
  double min_eigenvalue() const;
  double purity() const;

 private:
  ComplexMatrix rho_;
};

/// Qubit state parametrized as rho = (I + x sx + y sy + z sz) / 2, so
/// rho_12 = (x - i y) / 2.
struct BlochVector {
  double x = 0.0;
  double y = 0.0;
  double z = 0.0;

  double norm() const;
};

DensityMatrix bloch_to_density(const BlochVector& b);
BlochVector density_to_bloch(const DensityMatrix& rho);

/// Lindblad generator L(rho) = -i[H, rho] + sum_k (V_k rho V_k^+ - {V_k^+ V_k, rho}/2).
///
/// For a single qubit jump V the population equations read
/// d rho_11/dt = -gamma rho_11 + gamma rho_22 + kappa rho_12 + conj(kappa) rho_21
/// with gamma = |V_12|^2; kappa collects the coherence-to-population terms.
/// Those coefficients are read off the lifted generator numerically rather
/// than from a closed form.
class GkslGenerator {
 public:
  GkslGenerator(ComplexMatrix hamiltonian, std::vector<ComplexMatrix> jumps, double tol = 1e-10);

  int dim() const { return static_cast<int>(h_.rows()); }
  const ComplexMatrix& hamiltonian() const { return h_; }
  const std::vector<ComplexMatrix>& jumps() const { return jumps_; }

  static GkslGenerator zero(int dim);

 private:
  ComplexMatrix h_;
  std::vector<ComplexMatrix> jumps_;
};

/// Matrix of L acting on column-stacked density matrices (N^2 x N^2).
struct Liouvillian {
  int dim = 0;
  ComplexMatrix matrix;
};

/// Applies L to any square operator; the map is linear, so traceless or
/// non-positive inputs are fine.
ComplexMatrix apply_gksl(const GkslGenerator& generator, const ComplexMatrix& x);
inline ComplexMatrix apply_gksl(const GkslGenerator& generator, const DensityMatrix& rho) {
  return apply_gksl(generator, rho.matrix());
}

Liouvillian liouvillian_matrix(const GkslGenerator& generator);

/// e^{tL} applied to an arbitrary operator. No positivity checks.
ComplexMatrix propagate(const GkslGenerator& generator, const ComplexMatrix& x, double t);

/// rho(t) = e^{tL} rho0. Throws Errc::PositivityLost when the result has an
/// eigenvalue below -1e-8.
DensityMatrix evolve_density(const GkslGenerator& generator, const DensityMatrix& rho0, double t);

/// Checks that the columns of `basis` are orthonormal to `tol`.
void require_orthonormal(const ComplexMatrix& basis, double tol);

/// M_ij = Tr[P_i L(P_j)] for P_i = |e_i><e_i|, e_i the columns of `basis`.
/// The result is checked against the Kolmogorov conditions.
RealMatrix diagonal_projection_generator(const GkslGenerator& generator, const ComplexMatrix& basis,
                                         double tol = 1e-10);

/// T_ij(t) = Tr[P_i e^{tL}(P_j)]; checked to be column stochastic.
RealMatrix diagonal_projection_map(const GkslGenerator& generator, const ComplexMatrix& basis,
                                   double t, double tol = 1e-10);

// Named qubit models.

/// H = omega * sx, no dissipation.
GkslGenerator example1_generator(double omega);

/// H = (omega / 2) sz with jumps sqrt(g1) s+, sqrt(g2) s-, sqrt(g3 / 2) sz.
/// Populations obey d rho_11/dt = -g1 rho_11 + g2 rho_22.
GkslGenerator example2_generator(double omega, double gamma1, double gamma2, double gamma3);

/// Pauli channel L(rho) = sum_k g_k (s_k rho s_k - rho).
GkslGenerator example3_generator(double gamma1, double gamma2, double gamma3);

}  // namespace tomowitness
