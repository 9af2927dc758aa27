#pragma once

#include <filesystem>
#include <istream>
#include <ostream>
#include <span>
#include <string>
#include <vector>

#include "indexforge/core_model.hpp"

namespace indexforge {

enum class DataFormat { Csv, Json };

struct DatasetFile {
  std::filesystem::path manifest_path;
  std::filesystem::path data_path;
  DataFormat format = DataFormat::Csv;
};

/// ".json" (any case) selects JSON, everything else CSV.
DataFormat detect_format(const std::filesystem::path& path);

/// Manifest CSV: id,label,pillar,direction,weight,unit. Blank weight = unspecified.
Manifest parse_manifest(std::istream& in);
Manifest load_manifest(const std::filesystem::path& path);
void write_manifest_csv(std::ostream& out, const Manifest& manifest);

/// Data CSV: first column "region", then indicator ids. Columns of the result
/// follow manifest order; rows follow file order.
IndicatorMatrix parse_dataset_csv(std::istream& in, const Manifest& manifest);
/// JSON object {regions: [...], indicators: [...], values: [[...], ...]}.
IndicatorMatrix parse_dataset_json(std::istream& in, const Manifest& manifest);
IndicatorMatrix parse_dataset(const DatasetFile& file, const Manifest& manifest);

/// Values written with 17 significant digits so parsing restores them exactly.
void write_dataset_csv(std::ostream& out, const IndicatorMatrix& matrix);
void write_dataset_json(std::ostream& out, const IndicatorMatrix& matrix);

struct NamedColumn {
  std::string name;
  std::vector<double> values;
};

/// Equal-weight average of min-max normalized components, e.g. doctors and
/// hospital beds per 1,000 inhabitants combined into one health-services column.
/// Throws ConstantComponent, LengthMismatch, TooShort (fewer than 2 components).
std::vector<double> composite_indicator(std::span<const NamedColumn> components);

}  // namespace indexforge
