#pragma once

#include <ostream>
#include <span>
#include <string>
#include <vector>

#include "indexforge/core_model.hpp"

namespace indexforge {

struct NormalizationRecord {
  std::string indicator;
  double observed_min = 0.0;
  double observed_max = 0.0;
  Direction direction = Direction::Benefit;
  bool degenerate = false;
};

struct NormalizedColumn {
  std::vector<double> values;
  NormalizationRecord record;
};

/// Min-max to [0,1] on the observed range; Cost columns are inverted so the
/// largest raw value maps to 0. A constant column maps to 0.5 and is flagged.
NormalizedColumn normalize_column(std::span<const double> values, Direction direction,
                                  std::string indicator = {});

struct NormalizedMatrix {
  IndicatorMatrix matrix;
  std::vector<NormalizationRecord> records;
  std::vector<std::string> warnings;
};

NormalizedMatrix normalize_matrix(const IndicatorMatrix& raw, const Manifest& manifest);

/// Audit table: id,min,max,direction,degenerate
void write_normalization_csv(std::ostream& out, std::span<const NormalizationRecord> records);

}  // namespace indexforge
