#include "indexforge/normalize.hpp"

#include <algorithm>

#include "indexforge/csv.hpp"
#include "indexforge/error.hpp"

namespace indexforge {

NormalizedColumn normalize_column(std::span<const double> values, Direction direction,
                                  std::string indicator)
{
  if (values.empty()) {
    throw Error(ErrorKind::TooShort, "cannot normalize an empty column", {{"indicator", indicator}});
  }
  auto [lo, hi] = std::minmax_element(values.begin(), values.end());
  NormalizedColumn out;
  out.record = {std::move(indicator), *lo, *hi, direction, *lo == *hi};
  out.values.reserve(values.size());
  if (out.record.degenerate) {
    out.values.assign(values.size(), 0.5);
    return out;
  }
  const double min = *lo;
  const double max = *hi;
  const double range = max - min;
  for (double x : values) {
    double v = direction == Direction::Benefit ? (x - min) / range : (max - x) / range;
    out.values.push_back(std::clamp(v, 0.0, 1.0));
  }
  return out;
}

NormalizedMatrix normalize_matrix(const IndicatorMatrix& raw, const Manifest& manifest)
{
  if (raw.stage() != Stage::Raw) {
    throw Error(ErrorKind::InvalidMatrix, "normalize_matrix expects a raw-stage matrix");
  }
  check_against_manifest(raw, manifest);
  const std::size_t rows = raw.region_count();
  const std::size_t cols = raw.indicator_count();
  std::vector<double> values(rows * cols);
  std::vector<NormalizationRecord> records;
  std::vector<std::string> warnings;
  for (std::size_t c = 0; c < cols; ++c) {
    const auto& id = raw.indicators()[c];
    auto column = raw.column(c);
    auto norm = normalize_column(column, manifest.at(id).direction, id);
    for (std::size_t r = 0; r < rows; ++r) values[r * cols + c] = norm.values[r];
    if (norm.record.degenerate) {
      warnings.push_back("indicator '" + id + "' is constant across regions; normalized to 0.5");
    }
    records.push_back(std::move(norm.record));
  }
  return {IndicatorMatrix(raw.regions(), raw.indicators(), std::move(values), Stage::Normalized),
          std::move(records), std::move(warnings)};
}

void write_normalization_csv(std::ostream& out, std::span<const NormalizationRecord> records)
{
  csv::write_row(out, {"id", "min", "max", "direction", "degenerate"});
  for (const auto& r : records) {
    csv::write_row(out, {r.indicator, csv::format_fixed(r.observed_min), csv::format_fixed(r.observed_max),
                         std::string(to_string(r.direction)), r.degenerate ? "true" : "false"});
  }
}

}  // namespace indexforge
