#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace elevenfloer {

enum class ErrorKind {
  ResidueCoverage,
  NotEmbeddable,
  NotConnected,
  NotS3,
  BadBasepoint,
  WindowTooSmall,
  WindowUnstable,
  DSquaredNonzero,
  GradingInconsistent,
  SymmetryViolation,
  NonSymmetricCoefficients,
  BadParams,
  CompareMismatch,
  Parse,
  Io,
};

inline std::string_view to_string(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::ResidueCoverage: return "ResidueCoverage";
    case ErrorKind::NotEmbeddable: return "NotEmbeddable";
    case ErrorKind::NotConnected: return "NotConnected";
    case ErrorKind::NotS3: return "NotS3";
    case ErrorKind::BadBasepoint: return "BadBasepoint";
    case ErrorKind::WindowTooSmall: return "WindowTooSmall";
    case ErrorKind::WindowUnstable: return "WindowUnstable";
    case ErrorKind::DSquaredNonzero: return "DSquaredNonzero";
    case ErrorKind::GradingInconsistent: return "GradingInconsistent";
    case ErrorKind::SymmetryViolation: return "SymmetryViolation";
    case ErrorKind::NonSymmetricCoefficients: return "NonSymmetricCoefficients";
    case ErrorKind::BadParams: return "BadParams";
    case ErrorKind::CompareMismatch: return "CompareMismatch";
    case ErrorKind::Parse: return "Parse";
    case ErrorKind::Io: return "Io";
  }
  return "Unknown";
}

/// Every failure in the library is reported as an Error carrying a kind,
/// so callers (the CLI in particular) can map it to an exit code.
class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& detail)
      : std::runtime_error(std::string(to_string(kind)) + ": " + detail), kind_(kind) {}

  ErrorKind kind() const noexcept { return kind_; }

 private:
  ErrorKind kind_;
};

}  // namespace elevenfloer
