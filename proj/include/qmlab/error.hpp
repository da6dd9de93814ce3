#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace qmlab {

enum class ErrorKind {
  InvalidBoost,
  InvalidWave,
  InvalidMomentum,
  UndefinedMass,
  InsufficientSpan,
  SingularPoint,
  Conditioning,
  DegenerateProbe,
  ModeOutOfRange,
  InvalidConfig,
  Io,
};

constexpr std::string_view to_string(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::InvalidBoost: return "invalid-boost";
    case ErrorKind::InvalidWave: return "invalid-wave";
    case ErrorKind::InvalidMomentum: return "invalid-momentum";
    case ErrorKind::UndefinedMass: return "undefined-mass";
    case ErrorKind::InsufficientSpan: return "insufficient-span";
    case ErrorKind::SingularPoint: return "singular-point";
    case ErrorKind::Conditioning: return "conditioning";
    case ErrorKind::DegenerateProbe: return "degenerate-probe";
    case ErrorKind::ModeOutOfRange: return "mode-out-of-range";
    case ErrorKind::InvalidConfig: return "invalid-config";
    case ErrorKind::Io: return "io";
  }
  return "unknown";
}

/// Every failure raised by the library carries a machine-readable kind.
class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& what)
      : std::runtime_error(std::string(to_string(kind)) + ": " + what), kind_(kind) {}

  ErrorKind kind() const noexcept { return kind_; }

 private:
  ErrorKind kind_;
};

}  // namespace qmlab
