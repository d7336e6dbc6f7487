#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace tomowitness {

enum class Errc {
  DimensionMismatch,
  NonFinite,
  NotHermitian,
  RankDeficient,
  BallViolation,
  WrongDimension,
  NotDensityMatrix,
  PositivityLost,
  BasisNotOrthonormal,
  BadWeights,
  IncompleteQuorum,
  SectorSumViolation,
  WrongQuorumShape,
  NegativeRate,
  NotStochastic,
  NotKolmogorov,
  StrategyUnavailable,
  BadPartition,
  BadGrid,
  TrajectoryMismatch,
};

constexpr std::string_view to_string(Errc code) {
  switch (code) {
    case Errc::DimensionMismatch: return "DimensionMismatch";
    case Errc::NonFinite: return "NonFinite";
    case Errc::NotHermitian: return "NotHermitian";
    case Errc::RankDeficient: return "RankDeficient";
    case Errc::BallViolation: return "BallViolation";
    case Errc::WrongDimension: return "WrongDimension";
    case Errc::NotDensityMatrix: return "NotDensityMatrix";
    case Errc::PositivityLost: return "PositivityLost";
    case Errc::BasisNotOrthonormal: return "BasisNotOrthonormal";
    case Errc::BadWeights: return "BadWeights";
    case Errc::IncompleteQuorum: return "IncompleteQuorum";
    case Errc::SectorSumViolation: return "SectorSumViolation";
    case Errc::WrongQuorumShape: return "WrongQuorumShape";
    case Errc::NegativeRate: return "NegativeRate";
    case Errc::NotStochastic: return "NotStochastic";
    case Errc::NotKolmogorov: return "NotKolmogorov";
    case Errc::StrategyUnavailable: return "StrategyUnavailable";
    case Errc::BadPartition: return "BadPartition";
    case Errc::BadGrid: return "BadGrid";
    case Errc::TrajectoryMismatch: return "TrajectoryMismatch";
  }
  return "Unknown";
}

/// Thrown by every library operation; `code()` identifies the violated
/// precondition or invariant.
class Error : public std::runtime_error {
 public:
  Error(Errc code, const std::string& what)
      : std::runtime_error(std::string(to_string(code)) + ": " + what), code_(code) {}

  Errc code() const noexcept { return code_; }

 private:
  Errc code_;
};

}  // namespace tomowitness
