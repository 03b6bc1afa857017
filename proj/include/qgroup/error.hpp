#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace qgroup {

enum class Errc {
  NotSquare,
  NotHermitian,
  NonFinite,
  ConvergenceFailure,
  DimensionMismatch,
  UnknownGroupName,
  OrderTooLarge,
  InvalidGroup,
  InvalidAction,
  MassCountMismatch,
  BadElement,
  SizeMismatch,
  InvalidVariable,
  NotPermissible,
  NotUnitary,
  NotHomomorphism,
  ZeroFiducial,
  NonTransitive,
  NotScalar,
  NoResolution,
  RowMismatch,
  InvalidModel,
  NegativeWeight,
  NotInSubgroupH,
  ActionDoesNotPreserveSpectrum,
  NotAnOrbit,
  NotUnit,
  BadSpin,
  BadSize,
  ConfigParseError,
  UnknownScenario,
  InternalError,
};

constexpr std::string_view errc_name(Errc c) {
  switch (c) {
    case Errc::NotSquare: return "NotSquare";
    case Errc::NotHermitian: return "NotHermitian";
    case Errc::NonFinite: return "NonFinite";
    case Errc::ConvergenceFailure: return "ConvergenceFailure";
    case Errc::DimensionMismatch: return "DimensionMismatch";
    case Errc::UnknownGroupName: return "UnknownGroupName";
    case Errc::OrderTooLarge: return "OrderTooLarge";
    case Errc::InvalidGroup: return "InvalidGroup";
    case Errc::InvalidAction: return "InvalidAction";
    case Errc::MassCountMismatch: return "MassCountMismatch";
    case Errc::BadElement: return "BadElement";
    case Errc::SizeMismatch: return "SizeMismatch";
    case Errc::InvalidVariable: return "InvalidVariable";
    case Errc::NotPermissible: return "NotPermissible";
    case Errc::NotUnitary: return "NotUnitary";
    case Errc::NotHomomorphism: return "NotHomomorphism";
    case Errc::ZeroFiducial: return "ZeroFiducial";
    case Errc::NonTransitive: return "NonTransitive";
    case Errc::NotScalar: return "NotScalar";
    case Errc::NoResolution: return "NoResolution";
    case Errc::RowMismatch: return "RowMismatch";
    case Errc::InvalidModel: return "InvalidModel";
    case Errc::NegativeWeight: return "NegativeWeight";
    case Errc::NotInSubgroupH: return "NotInSubgroupH";
    case Errc::ActionDoesNotPreserveSpectrum: return "ActionDoesNotPreserveSpectrum";
    case Errc::NotAnOrbit: return "NotAnOrbit";
    case Errc::NotUnit: return "NotUnit";
    case Errc::BadSpin: return "BadSpin";
    case Errc::BadSize: return "BadSize";
    case Errc::ConfigParseError: return "ConfigParseError";
    case Errc::UnknownScenario: return "UnknownScenario";
    case Errc::InternalError: return "InternalError";
  }
  return "Unknown";
}

/// Library-wide exception. Every failure carries a machine-checkable code.
class Error : public std::runtime_error {
 public:
  Error(Errc code, const std::string& what)
      : std::runtime_error(std::string(errc_name(code)) + ": " + what), code_(code) {}

  Errc code() const noexcept { return code_; }

 private:
  Errc code_;
};

}  // namespace qgroup
