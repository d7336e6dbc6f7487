#pragma once

// Lifting a quantum generator L to the simplex generator M that drives the
// tomographic vector, dP/dt = M P, and deciding whether the resulting
// dynamics could be classical.
//
// M is only pinned down on the physical subspace spanned by encoded states;
// off that subspace the extension is a choice. Two are provided:
//
//   pseudoinverse  M = E G E^+, with E the frame map and E^+ its left
//                  inverse. Works for any complete quorum.
//   sector_local   qubit Pauli quorum only. Every row of sector alpha reads
//                  the trace from sector alpha's own sum and each Bloch
//                  component from the sector measuring it.

#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "tomowitness/classical.hpp"
#include "tomowitness/quantum.hpp"
#include "tomowitness/tomography.hpp"

namespace tomowitness {

enum class LiftStrategy { pseudoinverse, sector_local };

std::string_view to_string(LiftStrategy s);
std::optional<LiftStrategy> parse_lift_strategy(std::string_view name);

struct SimplexGenerator {
  int dim = 0;
  int sectors = 0;
  RealMatrix matrix;
  LiftStrategy strategy = LiftStrategy::pseudoinverse;
};

bool supports_sector_local(const Quorum& quorum);

/// sector_local when the quorum allows it, pseudoinverse otherwise.
LiftStrategy default_strategy(const Quorum& quorum);

/// Matrix of L in the basis hermitian_basis(N); G_kl = Tr[B_k L(B_l)].
RealMatrix hermitian_generator_matrix(const GkslGenerator& generator);

/// Qubit generator in Bloch coordinates (c, x, y, z), where
/// X = (c I + x sx + y sy + z sz) / 2.
Eigen::Matrix4d bloch_generator_matrix(const GkslGenerator& generator);

SimplexGenerator lift_generator(const GkslGenerator& generator, const Quorum& quorum, LiftStrategy strategy);

/// T(t) = e^{tM}.
RealMatrix lift_map(const SimplexGenerator& g, double t);

/// max over states and grid of |encode(rho(t)) - T(t) encode(rho)|.
double consistency_check(const GkslGenerator& generator, const Quorum& quorum, LiftStrategy strategy,
                         const std::vector<DensityMatrix>& states, const std::vector<double>& grid);

struct BlockStructure {
  bool block_diagonal = false;
  /// Largest absolute entry outside the diagonal blocks.
  double off_block_mass = 0.0;
  /// Diagonal blocks; filled only when block_diagonal holds.
  std::vector<RealMatrix> blocks;
};

BlockStructure block_structure(const RealMatrix& a, const std::vector<int>& partition, double tol = 1e-9);

/// t = 0 plus 12 log-spaced points in [1e-3, 1e1] / |M|_1 (undivided when M = 0).
std::vector<double> default_time_grid(const RealMatrix& m);

enum class Verdict { classical_compatible, quantum_witnessed };
std::string_view to_string(Verdict v);

struct GridMinimum {
  double value = 0.0;
  double t = 0.0;
  Eigen::Index row = 0;
  Eigen::Index col = 0;
};

struct WitnessReport {
  LiftStrategy strategy = LiftStrategy::pseudoinverse;
  std::vector<double> grid;
  double tolerance = 1e-9;

  KolmogorovDiagnostics kolmogorov;
  bool stochastic_on_grid = false;
  GridMinimum grid_minimum;
  double max_column_sum_error = 0.0;

  BlockStructure blocks;
  std::vector<bool> block_kolmogorov;

  /// Stochastic on the grid with a Kolmogorov generator exactly when the
  /// generator is block diagonal with Kolmogorov blocks.
  bool block_criterion_consistent = false;

  /// Kolmogorov verdict of the other lift, when the quorum admits both.
  std::optional<bool> other_strategy_kolmogorov;
  bool strategies_agree = true;

  Verdict verdict = Verdict::quantum_witnessed;
};

/// Runs the Kolmogorov test on M, stochasticity of e^{tM} over the grid and
/// the block-structure test. The verdict is classical-compatible exactly when
/// M is a Kolmogorov generator and every grid map is stochastic.
///
/// An empty grid selects default_time_grid. A supplied grid must contain a
/// point <= 1e-2/|M|_1 and one >= 1/|M|_1 (Errc::BadGrid).
WitnessReport witness(const GkslGenerator& generator, const Quorum& quorum, LiftStrategy strategy,
                      std::vector<double> grid = {}, double tol = 1e-9);

/// A named qubit model paired with its Pauli quorum.
struct PresetModel {
  std::string name;
  GkslGenerator generator;
  Quorum quorum;
};

PresetModel example1(double omega, double pi_x = 1.0 / 3, double pi_y = 1.0 / 3, double pi_z = 1.0 / 3);
PresetModel example2(double omega, double gamma1, double gamma2, double gamma3, double pi_x = 1.0 / 3,
                     double pi_y = 1.0 / 3, double pi_z = 1.0 / 3);
PresetModel example3(double gamma1, double gamma2, double gamma3, double pi_x = 1.0 / 3, double pi_y = 1.0 / 3,
                     double pi_z = 1.0 / 3);

}  // namespace tomowitness
