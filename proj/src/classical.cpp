#include "tomowitness/classical.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

namespace tomowitness {

StochasticDiagnostics is_stochastic(const RealMatrix& t, double tol) {
  linalg::require_square(t, "stochastic matrix candidate");
  StochasticDiagnostics d;
  if (!t.allFinite()) {
    d.min_entry = std::numeric_limits<double>::quiet_NaN();
    d.max_column_sum_error = std::numeric_limits<double>::infinity();
    return d;
  }
  d.min_entry = t.minCoeff(&d.min_row, &d.min_col);
  d.max_column_sum_error = (t.colwise().sum().array() - 1.0).abs().maxCoeff();
  d.verdict = d.min_entry >= -tol && d.max_column_sum_error <= tol;
  return d;
}

KolmogorovDiagnostics is_kolmogorov(const RealMatrix& m, double tol) {
  linalg::require_square(m, "generator candidate");
  KolmogorovDiagnostics d;
  if (!m.allFinite()) {
    d.max_column_sum = std::numeric_limits<double>::infinity();
    return d;
  }
  const Eigen::Index n = m.rows();
  std::pair<Eigen::Index, Eigen::Index> worst{0, 0};
  bool have_offdiag = false;
  for (Eigen::Index j = 0; j < n; ++j) {
    for (Eigen::Index i = 0; i < n; ++i) {
      if (i == j) continue;
      if (!have_offdiag || m(i, j) < d.worst_offdiagonal) {
        d.worst_offdiagonal = m(i, j);
        worst = {i, j};
        have_offdiag = true;
      }
    }
  }
  Eigen::Index col = 0;
  d.max_column_sum = m.colwise().sum().cwiseAbs().maxCoeff(&col);
  if (d.worst_offdiagonal < -tol) d.violating_entry = worst;
  if (d.max_column_sum > tol) d.violating_column = col;
  d.verdict = !d.violating_entry && !d.violating_column;
  return d;
}

ProbabilityVector::ProbabilityVector(RealVector p) : p_(std::move(p)) {
  if (p_.size() < 1 || !p_.allFinite()) throw Error(Errc::NonFinite, "probability vector must be finite and non-empty");
  if (p_.minCoeff() < -1e-12) throw Error(Errc::NotStochastic, "probability vector has a negative entry");
  if (std::abs(p_.sum() - 1.0) > 1e-10) {
    throw Error(Errc::NotStochastic, "probabilities sum to " + std::to_string(p_.sum()));
  }
}

TransitionRates::TransitionRates(RealMatrix rates) : r_(std::move(rates)) {
  linalg::require_square(r_, "transition rates");
  linalg::require_finite(r_, "transition rates");
  for (Eigen::Index j = 0; j < r_.cols(); ++j)
    for (Eigen::Index i = 0; i < r_.rows(); ++i)
      if (i != j && r_(i, j) < 0.0) {
        throw Error(Errc::NegativeRate,
                    "rate (" + std::to_string(i) + ", " + std::to_string(j) + ") = " + std::to_string(r_(i, j)));
      }
}

KolmogorovGenerator::KolmogorovGenerator(RealMatrix m, double tol) : m_(std::move(m)) {
  const auto d = is_kolmogorov(m_, tol);
  if (!d.verdict) {
    throw Error(Errc::NotKolmogorov, "worst off-diagonal " + std::to_string(d.worst_offdiagonal) +
                                         ", max |column sum| " + std::to_string(d.max_column_sum));
  }
}

KolmogorovGenerator generator_from_rates(const TransitionRates& rates) {
  RealMatrix m = rates.matrix();
  m.diagonal().setZero();
  const RealVector outflow = m.colwise().sum().transpose();
  m.diagonal() = -outflow;
  const double scale = std::max(1.0, linalg::max_abs(m));
  return KolmogorovGenerator(std::move(m), 1e-13 * scale);
}

TransitionRates rates_from_generator(const KolmogorovGenerator& m) {
  RealMatrix r = m.matrix();
  r.diagonal().setZero();
  return TransitionRates(std::move(r));
}

RealVector pauli_rate_rhs(const TransitionRates& rates, const ProbabilityVector& p) {
  const RealMatrix& r = rates.matrix();
  if (r.rows() != p.size()) throw Error(Errc::DimensionMismatch, "rates and probability vector sizes differ");
  const Eigen::Index n = p.size();
  RealVector out = RealVector::Zero(n);
  for (Eigen::Index i = 0; i < n; ++i)
    for (Eigen::Index j = 0; j < n; ++j)
      if (i != j) out(i) += r(i, j) * p.values()(j) - r(j, i) * p.values()(i);
  return out;
}

ProbabilityVector evolve_classical(const KolmogorovGenerator& m, const ProbabilityVector& p0, double t) {
  if (m.size() != p0.size()) throw Error(Errc::DimensionMismatch, "generator and probability vector sizes differ");
  if (!(t >= 0.0) || !std::isfinite(t)) throw Error(Errc::BadGrid, "t must be finite and >= 0");
  RealVector p = linalg::matrix_exponential(m.matrix(), t) * p0.values();
  if (p.minCoeff() < -1e-9 || std::abs(p.sum() - 1.0) > 1e-9) {
    throw Error(Errc::NotStochastic, "evolved distribution left the simplex");
  }
  // Round-off can leave entries a few ulps below zero.
  p = p.cwiseMax(0.0);
  p /= p.sum();
  return ProbabilityVector(std::move(p));
}

}  // namespace tomowitness
