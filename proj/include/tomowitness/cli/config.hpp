#pragma once

// Model configuration files (JSON). Complex numbers are written as
// [re, im]; a bare number is read as a real value.
//
//   {
//     "dimension": 2,
//     "quorum": {"type": "pauli", "weights": [0.5, 0.25, 0.25]},
//     "generator": {"preset": "example2", "omega": 1, "gamma": [1, 1, 1]},
//     "time_grid": {"start": 1e-3, "stop": 10, "count": 12, "include_zero": true},
//     "tolerance": 1e-9,
//     "strategy": "sector-local",
//     "seed": 7
//   }
//
// quorum.type "bases" takes "sectors": [{"label", "weight", "vectors"}],
// each vector a list of N complex amplitudes. An explicit generator is
// {"hamiltonian": matrix, "jumps": [matrix, ...]}, matrices as lists of rows.

#include <cstdint>
#include <filesystem>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "json.hpp"
#include "tomowitness/lift.hpp"

namespace tomowitness::cli {

using Json = nlohmann::ordered_json;

/// Malformed or inconsistent input. `path` names the offending field, e.g.
/// "quorum.weights".
class ConfigError : public std::runtime_error {
 public:
  ConfigError(std::string path, const std::string& message);
  const std::string& path() const noexcept { return path_; }

 private:
  std::string path_;
};

struct ModelConfig {
  int dimension = 0;
  Quorum quorum;
  GkslGenerator generator;
  /// Preset name, or "explicit".
  std::string model_name;
  /// Empty when the config leaves the grid to the command.
  std::vector<double> grid{};
  double tolerance = 1e-9;
  std::optional<LiftStrategy> strategy{};
  std::uint64_t seed = 0;
  /// Random states used by the witness consistency check.
  int consistency_states = 20;
  /// Extra states and raw tomograms to test against the quantum subset.
  std::vector<DensityMatrix> states{};
  std::vector<TomographicVector> tomograms{};
  /// Fully resolved config, echoed into reports.
  Json echo{};
};

Json read_json_file(const std::filesystem::path& path);

ModelConfig parse_model_config(const Json& j);
ModelConfig load_model_config(const std::filesystem::path& path);

/// {"bloch": [x, y, z]}, {"density": matrix} or {"pure": vector}.
DensityMatrix parse_state(const Json& j, int dimension, const std::string& path);

/// {"tomogram": [p...]}, sector-major.
TomographicVector parse_tomogram(const Json& j, const Quorum& quorum, const std::string& path);

Json to_json(const RealMatrix& m);
Json to_json(const ComplexMatrix& m);

}  // namespace tomowitness::cli
