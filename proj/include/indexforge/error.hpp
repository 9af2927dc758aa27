#pragma once

#include <stdexcept>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace indexforge {

enum class ErrorKind {
  DuplicateIndicatorId,
  EmptyPillar,
  NegativeWeight,
  AllZeroWeights,
  MalformedManifest,
  MissingCell,
  UnknownIndicator,
  MissingIndicator,
  NonNumericCell,
  DuplicateRegion,
  MalformedData,
  ConstantComponent,
  NegativeInput,
  WeightManifestMismatch,
  InvalidMatrix,
  NotSymmetric,
  NoConvergence,
  ConstantColumn,
  ConstantVector,
  LengthMismatch,
  TooShort,
  RegionSetMismatch,
  FewerThanTwoMethods,
  Usage,
  Io,
};

enum class ErrorCategory { Validation, Io, Numerical };

std::string_view to_string(ErrorKind kind);
ErrorCategory category_of(ErrorKind kind);

/// Process exit code for an error category: 2 validation/usage, 3 I/O, 4 numerical.
int exit_code(ErrorCategory category);

/// Key/value pairs naming the offending entity (region, indicator, pillar...).
using ErrorContext = std::vector<std::pair<std::string, std::string>>;

class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& message, ErrorContext context = {});

  ErrorKind kind() const noexcept { return kind_; }
  ErrorCategory category() const noexcept { return category_of(kind_); }
  const ErrorContext& context() const noexcept { return context_; }

 private:
  ErrorKind kind_;
  ErrorContext context_;
};

}  // namespace indexforge
