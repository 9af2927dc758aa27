#include "indexforge/error.hpp"

namespace indexforge {

std::string_view to_string(ErrorKind kind)
{
  switch (kind) {
    case ErrorKind::DuplicateIndicatorId: return "DuplicateIndicatorId";
    case ErrorKind::EmptyPillar: return "EmptyPillar";
    case ErrorKind::NegativeWeight: return "NegativeWeight";
    case ErrorKind::AllZeroWeights: return "AllZeroWeights";
    case ErrorKind::MalformedManifest: return "MalformedManifest";
    case ErrorKind::MissingCell: return "MissingCell";
    case ErrorKind::UnknownIndicator: return "UnknownIndicator";
    case ErrorKind::MissingIndicator: return "MissingIndicator";
    case ErrorKind::NonNumericCell: return "NonNumericCell";
    case ErrorKind::DuplicateRegion: return "DuplicateRegion";
    case ErrorKind::MalformedData: return "MalformedData";
    case ErrorKind::ConstantComponent: return "ConstantComponent";
    case ErrorKind::NegativeInput: return "NegativeInput";
    case ErrorKind::WeightManifestMismatch: return "WeightManifestMismatch";
    case ErrorKind::InvalidMatrix: return "InvalidMatrix";
    case ErrorKind::NotSymmetric: return "NotSymmetric";
    case ErrorKind::NoConvergence: return "NoConvergence";
    case ErrorKind::ConstantColumn: return "ConstantColumn";
    case ErrorKind::ConstantVector: return "ConstantVector";
    case ErrorKind::LengthMismatch: return "LengthMismatch";
    case ErrorKind::TooShort: return "TooShort";
    case ErrorKind::RegionSetMismatch: return "RegionSetMismatch";
    case ErrorKind::FewerThanTwoMethods: return "FewerThanTwoMethods";
    case ErrorKind::Usage: return "Usage";
    case ErrorKind::Io: return "Io";
  }
  return "Unknown";
}

ErrorCategory category_of(ErrorKind kind)
{
  switch (kind) {
    case ErrorKind::Io: return ErrorCategory::Io;
    case ErrorKind::NoConvergence: return ErrorCategory::Numerical;
    default: return ErrorCategory::Validation;
  }
}

int exit_code(ErrorCategory category)
{
  switch (category) {
    case ErrorCategory::Validation: return 2;
    case ErrorCategory::Io: return 3;
    case ErrorCategory::Numerical: return 4;
  }
  return 1;
}

Error::Error(ErrorKind kind, const std::string& message, ErrorContext context)
    : std::runtime_error(std::string(to_string(kind)) + ": " + message),
      kind_(kind),
      context_(std::move(context))
{
}

}  // namespace indexforge
