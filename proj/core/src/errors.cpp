#include "ktypes/errors.hpp"

namespace ktypes {

const char* to_string(ErrorKind kind) noexcept {
  switch (kind) {
    case ErrorKind::UnsupportedGroup: return "UnsupportedGroup";
    case ErrorKind::NotARoot: return "NotARoot";
    case ErrorKind::WrongRootType: return "WrongRootType";
    case ErrorKind::NormalizationFailed: return "NormalizationFailed";
    case ErrorKind::DominanceViolation: return "DominanceViolation";
    case ErrorKind::IntegralityViolation: return "IntegralityViolation";
    case ErrorKind::ChiIncompatible: return "ChiIncompatible";
    case ErrorKind::ZetaNotRegular: return "ZetaNotRegular";
    case ErrorKind::SingularXi: return "SingularXi";
    case ErrorKind::NonpositivePairing: return "NonpositivePairing";
    case ErrorKind::DeformationNotProper: return "DeformationNotProper";
    case ErrorKind::NotInImage: return "NotInImage";
    case ErrorKind::SolverInconsistency: return "SolverInconsistency";
    case ErrorKind::ReconstructionFailed: return "ReconstructionFailed";
    case ErrorKind::PointCriterionInapplicable: return "PointCriterionInapplicable";
    case ErrorKind::OracleUnsupported: return "OracleUnsupported";
    case ErrorKind::ConfigError: return "ConfigError";
    case ErrorKind::IoError: return "IoError";
    case ErrorKind::Internal: return "Internal";
  }
  return "Unknown";
}

}  // namespace ktypes
