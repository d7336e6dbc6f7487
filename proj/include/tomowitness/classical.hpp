#pragma once

// Classical Markov dynamics on n states. All matrices are column stochastic:
// T_ij is the probability of moving from j to i, so columns sum to one.

#include <optional>

#include "tomowitness/linalg.hpp"

namespace tomowitness {

struct StochasticDiagnostics {
  bool verdict = false;
  double min_entry = 0.0;
  double max_column_sum_error = 0.0;
  Eigen::Index min_row = 0;
  Eigen::Index min_col = 0;
};

struct KolmogorovDiagnostics {
  bool verdict = false;
  /// Smallest off-diagonal entry (0 for 1x1 matrices).
  double worst_offdiagonal = 0.0;
  /// Largest |column sum|.
  double max_column_sum = 0.0;
  /// Location of the worst off-diagonal entry, when it is negative beyond tol.
  std::optional<std::pair<Eigen::Index, Eigen::Index>> violating_entry;
  /// Column with the largest |column sum|, when it exceeds tol.
  std::optional<Eigen::Index> violating_column;
};

StochasticDiagnostics is_stochastic(const RealMatrix& t, double tol = 1e-9);
KolmogorovDiagnostics is_kolmogorov(const RealMatrix& m, double tol = 1e-9);

/// A probability distribution: entries >= -1e-12, sum 1 within 1e-10.
class ProbabilityVector {
 public:
  explicit ProbabilityVector(RealVector p);
  const RealVector& values() const { return p_; }
  Eigen::Index size() const { return p_.size(); }

 private:
  RealVector p_;
};

/// Off-diagonal transition rates pi_ij >= 0 (rate of j -> i); the diagonal is
/// carried along but never used.
class TransitionRates {
 public:
  explicit TransitionRates(RealMatrix rates);
  const RealMatrix& matrix() const { return r_; }
  Eigen::Index size() const { return r_.rows(); }

 private:
  RealMatrix r_;
};

class KolmogorovGenerator {
 public:
  /// Throws Errc::NotKolmogorov unless the conditions hold to `tol`.
  explicit KolmogorovGenerator(RealMatrix m, double tol = 1e-10);
  const RealMatrix& matrix() const { return m_; }
  Eigen::Index size() const { return m_.rows(); }

 private:
  RealMatrix m_;
};

/// M_ij = pi_ij - delta_ij sum_k pi_kj.
KolmogorovGenerator generator_from_rates(const TransitionRates& rates);

/// Inverse of generator_from_rates on the off-diagonal (diagonal set to 0).
TransitionRates rates_from_generator(const KolmogorovGenerator& m);

/// Right-hand side of the Pauli rate equation, dp_i/dt = sum_j (pi_ij p_j - pi_ji p_i).
RealVector pauli_rate_rhs(const TransitionRates& rates, const ProbabilityVector& p);

ProbabilityVector evolve_classical(const KolmogorovGenerator& m, const ProbabilityVector& p0, double t);

}  // namespace tomowitness
