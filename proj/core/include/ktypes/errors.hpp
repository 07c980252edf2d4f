#pragma once

#include <stdexcept>
#include <string>

namespace ktypes {

// Every failure the library raises carries a kind so the CLI can map it to
// an exit code and tests can assert on it without string matching.
enum class ErrorKind {
  UnsupportedGroup,
  NotARoot,
  WrongRootType,
  NormalizationFailed,
  DominanceViolation,
  IntegralityViolation,
  ChiIncompatible,
  ZetaNotRegular,
  SingularXi,
  NonpositivePairing,
  DeformationNotProper,
  NotInImage,
  SolverInconsistency,
  ReconstructionFailed,
  PointCriterionInapplicable,
  OracleUnsupported,
  ConfigError,
  IoError,
  Internal,
};

const char* to_string(ErrorKind kind) noexcept;

class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& what)
      : std::runtime_error(std::string(to_string(kind)) + ": " + what), kind_(kind) {}

  ErrorKind kind() const noexcept { return kind_; }

 private:
  ErrorKind kind_;
};

[[noreturn]] inline void fail(ErrorKind kind, const std::string& what) { throw Error(kind, what); }

inline void require(bool cond, ErrorKind kind, const char* what) {
  if (!cond) fail(kind, what);
}

inline void require(bool cond, ErrorKind kind, const std::string& what) {
  if (!cond) fail(kind, what);
}

}  // namespace ktypes
