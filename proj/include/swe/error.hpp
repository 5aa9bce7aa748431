#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>
#include <string_view>

namespace swe {

enum class ErrorCode {
  InvalidArgument,
  NonPositiveHeight,
  DegenerateJump,
  WrongRegion,
  OutOfFan,
  BadBracket,
  ConvergenceFailure,
  NoIntersection,
  NoStationaryContact,
  NoSolution,
  ZeroWaveSpeed,
  NegativeHeight,
  LengthMismatch,
  ConfigError,
};

constexpr std::string_view to_string(ErrorCode code) {
  switch (code) {
    case ErrorCode::InvalidArgument: return "InvalidArgument";
    case ErrorCode::NonPositiveHeight: return "NonPositiveHeight";
    case ErrorCode::DegenerateJump: return "DegenerateJump";
    case ErrorCode::WrongRegion: return "WrongRegion";
    case ErrorCode::OutOfFan: return "OutOfFan";
    case ErrorCode::BadBracket: return "BadBracket";
    case ErrorCode::ConvergenceFailure: return "ConvergenceFailure";
    case ErrorCode::NoIntersection: return "NoIntersection";
    case ErrorCode::NoStationaryContact: return "NoStationaryContact";
    case ErrorCode::NoSolution: return "NoSolution";
    case ErrorCode::ZeroWaveSpeed: return "ZeroWaveSpeed";
    case ErrorCode::NegativeHeight: return "NegativeHeight";
    case ErrorCode::LengthMismatch: return "LengthMismatch";
    case ErrorCode::ConfigError: return "ConfigError";
  }
  return "Unknown";
}

class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& what)
      : std::runtime_error(std::string(to_string(code)) + ": " + what), code_(code) {}

  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

/// Raised by the Godunov update; carries the interface that failed.
/// Interface k separates cell k-1 and cell k (ghost cells are -1 and N).
class InterfaceError : public Error {
 public:
  InterfaceError(ErrorCode code, std::ptrdiff_t interface, const std::string& what)
      : Error(code, "interface " + std::to_string(interface) + ": " + what),
        interface_(interface) {}

  std::ptrdiff_t interface_index() const noexcept { return interface_; }

 private:
  std::ptrdiff_t interface_;
};

}  // namespace swe
