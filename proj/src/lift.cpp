#include "tomowitness/lift.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

namespace tomowitness {

std::string_view to_string(LiftStrategy s) {
  switch (s) {
    case LiftStrategy::pseudoinverse: return "pseudoinverse";
    case LiftStrategy::sector_local: return "sector-local";
  }
  return "unknown";
}

std::optional<LiftStrategy> parse_lift_strategy(std::string_view name) {
  if (name == "pseudoinverse") return LiftStrategy::pseudoinverse;
  if (name == "sector-local" || name == "sector_local") return LiftStrategy::sector_local;
  return std::nullopt;
}

std::string_view to_string(Verdict v) {
  return v == Verdict::classical_compatible ? "classical-compatible" : "quantum-witnessed";
}

bool supports_sector_local(const Quorum& quorum) { return quorum.is_pauli(); }

LiftStrategy default_strategy(const Quorum& quorum) {
  return supports_sector_local(quorum) ? LiftStrategy::sector_local : LiftStrategy::pseudoinverse;
}

RealMatrix hermitian_generator_matrix(const GkslGenerator& generator) {
  const auto basis = hermitian_basis(generator.dim());
  const auto n2 = static_cast<Eigen::Index>(basis.size());
  RealMatrix g(n2, n2);
  for (Eigen::Index l = 0; l < n2; ++l) {
    const ComplexMatrix image = apply_gksl(generator, basis[static_cast<std::size_t>(l)]);
    for (Eigen::Index k = 0; k < n2; ++k) {
      g(k, l) = (basis[static_cast<std::size_t>(k)] * image).trace().real();
    }
  }
  return g;
}

Eigen::Matrix4d bloch_generator_matrix(const GkslGenerator& generator) {
  if (generator.dim() != 2) throw Error(Errc::WrongDimension, "Bloch coordinates exist for qubits only");
  Eigen::Matrix4d g;
  for (int b = 0; b < 4; ++b) {
    const ComplexMatrix image = apply_gksl(generator, 0.5 * pauli(b));
    for (int a = 0; a < 4; ++a) g(a, b) = (pauli(a) * image).trace().real();
  }
  return g;
}

namespace {

RealMatrix lift_pseudoinverse(const GkslGenerator& generator, const Quorum& quorum) {
  const RealMatrix e = frame_matrix(quorum);
  const int n = quorum.dim();
  if (linalg::gram_rank(e) < n * n) {
    throw Error(Errc::IncompleteQuorum, "quorum frame has rank below N^2");
  }
  return e * hermitian_generator_matrix(generator) * linalg::pseudoinverse(e);
}

RealMatrix lift_sector_local(const GkslGenerator& generator, const Quorum& quorum) {
  if (!supports_sector_local(quorum)) {
    throw Error(Errc::StrategyUnavailable, "sector-local lift needs the qubit Pauli quorum");
  }
  const Eigen::Matrix4d g = bloch_generator_matrix(generator);
  const RealVector pi = quorum.weights();
  RealMatrix m = RealMatrix::Zero(6, 6);
  for (int alpha = 0; alpha < 3; ++alpha) {
    // Reads (c, x, y, z) off P: c from this sector's sum, r_beta from the
    // difference in sector beta.
    Eigen::Matrix<double, 4, 6> read = Eigen::Matrix<double, 4, 6>::Zero();
    read(0, 2 * alpha) = read(0, 2 * alpha + 1) = 1.0 / pi(alpha);
    for (int beta = 0; beta < 3; ++beta) {
      read(beta + 1, 2 * beta) = 1.0 / pi(beta);
      read(beta + 1, 2 * beta + 1) = -1.0 / pi(beta);
    }
    const Eigen::Matrix<double, 4, 6> rates = g * read;
    // p_k^(alpha) = pi_alpha (c +/- r_alpha) / 2
    m.row(2 * alpha) = 0.5 * pi(alpha) * (rates.row(0) + rates.row(alpha + 1));
    m.row(2 * alpha + 1) = 0.5 * pi(alpha) * (rates.row(0) - rates.row(alpha + 1));
  }
  return m;
}

}  // namespace

SimplexGenerator lift_generator(const GkslGenerator& generator, const Quorum& quorum, LiftStrategy strategy) {
  if (generator.dim() != quorum.dim()) throw Error(Errc::DimensionMismatch, "generator and quorum dimensions differ");
  RealMatrix m = strategy == LiftStrategy::sector_local ? lift_sector_local(generator, quorum)
                                                        : lift_pseudoinverse(generator, quorum);
  return {quorum.dim(), quorum.sector_count(), std::move(m), strategy};
}

RealMatrix lift_map(const SimplexGenerator& g, double t) {
  if (!(t >= 0.0) || !std::isfinite(t)) throw Error(Errc::BadGrid, "t must be finite and >= 0");
  return linalg::matrix_exponential(g.matrix, t);
}

double consistency_check(const GkslGenerator& generator, const Quorum& quorum, LiftStrategy strategy,
                         const std::vector<DensityMatrix>& states, const std::vector<double>& grid) {
  const SimplexGenerator g = lift_generator(generator, quorum, strategy);
  double worst = 0.0;
  for (double t : grid) {
    const RealMatrix tm = lift_map(g, t);
    for (const DensityMatrix& rho : states) {
      const RealVector lhs = encode(evolve_density(generator, rho, t), quorum).values;
      const RealVector rhs = tm * encode(rho, quorum).values;
      worst = std::max(worst, linalg::max_abs(lhs - rhs));
    }
  }
  return worst;
}

BlockStructure block_structure(const RealMatrix& a, const std::vector<int>& partition, double tol) {
  linalg::require_square(a, "block_structure input");
  if (partition.empty() || std::any_of(partition.begin(), partition.end(), [](int s) { return s < 1; }) ||
      std::accumulate(partition.begin(), partition.end(), 0) != a.rows()) {
    throw Error(Errc::BadPartition, "partition must be positive sizes summing to " + std::to_string(a.rows()));
  }
  std::vector<int> owner;
  owner.reserve(static_cast<std::size_t>(a.rows()));
  for (std::size_t b = 0; b < partition.size(); ++b) owner.insert(owner.end(), static_cast<std::size_t>(partition[b]), static_cast<int>(b));

  BlockStructure out;
  for (Eigen::Index j = 0; j < a.cols(); ++j)
    for (Eigen::Index i = 0; i < a.rows(); ++i)
      if (owner[static_cast<std::size_t>(i)] != owner[static_cast<std::size_t>(j)])
        out.off_block_mass = std::max(out.off_block_mass, std::abs(a(i, j)));
  out.block_diagonal = out.off_block_mass <= tol;
  if (out.block_diagonal) {
    Eigen::Index start = 0;
    for (int size : partition) {
      out.blocks.push_back(a.block(start, start, size, size));
      start += size;
    }
  }
  return out;
}

std::vector<double> default_time_grid(const RealMatrix& m) {
  const double nrm = linalg::norm1(m);
  const double scale = nrm > 0.0 ? 1.0 / nrm : 1.0;
  std::vector<double> grid{0.0};
  constexpr int kPoints = 12;
  for (int k = 0; k < kPoints; ++k) {
    const double exponent = -3.0 + 4.0 * k / (kPoints - 1);
    grid.push_back(std::pow(10.0, exponent) * scale);
  }
  return grid;
}

WitnessReport witness(const GkslGenerator& generator, const Quorum& quorum, LiftStrategy strategy,
                      std::vector<double> grid, double tol) {
  const SimplexGenerator g = lift_generator(generator, quorum, strategy);
  const double nrm = linalg::norm1(g.matrix);
  if (grid.empty()) {
    grid = default_time_grid(g.matrix);
  } else {
    for (double t : grid) {
      if (!(t >= 0.0) || !std::isfinite(t)) throw Error(Errc::BadGrid, "grid times must be finite and >= 0");
    }
    if (nrm > 0.0) {
      const auto [lo, hi] = std::minmax_element(grid.begin(), grid.end());
      if (*lo > 1e-2 / nrm || *hi < 1.0 / nrm) {
        throw Error(Errc::BadGrid, "grid must reach below 1e-2/|M|_1 = " + std::to_string(1e-2 / nrm) +
                                       " and above 1/|M|_1 = " + std::to_string(1.0 / nrm));
      }
    }
  }

  WitnessReport r;
  r.strategy = strategy;
  r.grid = grid;
  r.tolerance = tol;
  r.kolmogorov = is_kolmogorov(g.matrix, tol);

  r.stochastic_on_grid = true;
  bool first = true;
  for (double t : grid) {
    const auto d = is_stochastic(lift_map(g, t), tol);
    r.stochastic_on_grid = r.stochastic_on_grid && d.verdict;
    r.max_column_sum_error = std::max(r.max_column_sum_error, d.max_column_sum_error);
    if (first || d.min_entry < r.grid_minimum.value) {
      r.grid_minimum = {d.min_entry, t, d.min_row, d.min_col};
      first = false;
    }
  }

  const std::vector<int> partition(static_cast<std::size_t>(g.sectors), g.dim);
  r.blocks = block_structure(g.matrix, partition, tol);
  for (int b = 0; b < g.sectors; ++b) {
    const RealMatrix block = g.matrix.block(b * g.dim, b * g.dim, g.dim, g.dim);
    r.block_kolmogorov.push_back(is_kolmogorov(block, tol).verdict);
  }
  const bool blocks_ok = r.blocks.block_diagonal &&
                         std::all_of(r.block_kolmogorov.begin(), r.block_kolmogorov.end(), [](bool v) { return v; });
  const bool classical = r.kolmogorov.verdict && r.stochastic_on_grid;
  r.block_criterion_consistent = classical == blocks_ok;

  if (supports_sector_local(quorum)) {
    const LiftStrategy other =
        strategy == LiftStrategy::sector_local ? LiftStrategy::pseudoinverse : LiftStrategy::sector_local;
    r.other_strategy_kolmogorov = is_kolmogorov(lift_generator(generator, quorum, other).matrix, tol).verdict;
    r.strategies_agree = *r.other_strategy_kolmogorov == r.kolmogorov.verdict;
  }

  r.verdict = classical ? Verdict::classical_compatible : Verdict::quantum_witnessed;
  return r;
}

PresetModel example1(double omega, double pi_x, double pi_y, double pi_z) {
  return {"example1", example1_generator(omega), pauli_quorum(pi_x, pi_y, pi_z)};
}

PresetModel example2(double omega, double gamma1, double gamma2, double gamma3, double pi_x, double pi_y,
                     double pi_z) {
  return {"example2", example2_generator(omega, gamma1, gamma2, gamma3), pauli_quorum(pi_x, pi_y, pi_z)};
}

PresetModel example3(double gamma1, double gamma2, double gamma3, double pi_x, double pi_y, double pi_z) {
  return {"example3", example3_generator(gamma1, gamma2, gamma3), pauli_quorum(pi_x, pi_y, pi_z)};
}

}  // namespace tomowitness
