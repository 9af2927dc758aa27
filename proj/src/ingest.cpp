#include "indexforge/ingest.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <optional>
#include <set>

#include "json.hpp"

#include "indexforge/csv.hpp"
#include "indexforge/error.hpp"

namespace indexforge {

namespace {

std::optional<double> parse_number(std::string_view text)
{
  text = csv::trim(text);
  if (text.empty()) return std::nullopt;
  if (text.front() == '+') text.remove_prefix(1);
  double v = 0.0;
  auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), v);
  if (ec != std::errc() || ptr != text.data() + text.size() || !std::isfinite(v)) return std::nullopt;
  return v;
}

std::ifstream open_input(const std::filesystem::path& path)
{
  std::ifstream in(path, std::ios::binary);
  if (!in) {
    throw Error(ErrorKind::Io, "cannot open '" + path.string() + "'", {{"path", path.string()}});
  }
  return in;
}

std::string format_roundtrip(double v)
{
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

}  // namespace

DataFormat detect_format(const std::filesystem::path& path)
{
  auto ext = path.extension().string();
  std::transform(ext.begin(), ext.end(), ext.begin(), [](unsigned char c) { return std::tolower(c); });
  return ext == ".json" ? DataFormat::Json : DataFormat::Csv;
}

// ----------------------------------------------------------------- manifest

Manifest parse_manifest(std::istream& in)
{
  auto rows = csv::read_rows(in);
  const csv::Row expected{"id", "label", "pillar", "direction", "weight", "unit"};
  if (rows.empty()) throw Error(ErrorKind::MalformedManifest, "manifest file is empty");
  csv::Row header;
  for (const auto& h : rows.front()) header.emplace_back(csv::trim(h));
  if (header != expected) {
    throw Error(ErrorKind::MalformedManifest, "manifest header must be id,label,pillar,direction,weight,unit");
  }
  std::vector<IndicatorSpec> specs;
  for (std::size_t i = 1; i < rows.size(); ++i) {
    const auto& row = rows[i];
    std::string line = std::to_string(i + 1);
    if (row.size() != expected.size()) {
      throw Error(ErrorKind::MalformedManifest, "manifest line " + line + " has " +
                      std::to_string(row.size()) + " fields, expected 6",
                  {{"line", line}});
    }
    IndicatorSpec s;
    s.id = std::string(csv::trim(row[0]));
    s.label = std::string(csv::trim(row[1]));
    auto pillar = parse_pillar(csv::trim(row[2]));
    if (!pillar) {
      throw Error(ErrorKind::MalformedManifest, "unknown pillar '" + row[2] + "' on line " + line,
                  {{"line", line}, {"indicator", s.id}});
    }
    s.pillar = *pillar;
    auto direction = parse_direction(csv::trim(row[3]));
    if (!direction) {
      throw Error(ErrorKind::MalformedManifest, "direction must be benefit or cost on line " + line,
                  {{"line", line}, {"indicator", s.id}});
    }
    s.direction = *direction;
    if (!csv::trim(row[4]).empty()) {
      auto w = parse_number(row[4]);
      if (!w) {
        throw Error(ErrorKind::MalformedManifest, "weight is not a number on line " + line,
                    {{"line", line}, {"indicator", s.id}});
      }
      s.weight = *w;
    }
    s.unit = std::string(csv::trim(row[5]));
    specs.push_back(std::move(s));
  }
  return validate_manifest(std::move(specs));
}

Manifest load_manifest(const std::filesystem::path& path)
{
  auto in = open_input(path);
  return parse_manifest(in);
}

void write_manifest_csv(std::ostream& out, const Manifest& manifest)
{
  csv::write_row(out, {"id", "label", "pillar", "direction", "weight", "unit"});
  for (const auto& s : manifest.specs()) {
    csv::write_row(out, {s.id, s.label, std::string(to_string(s.pillar)),
                         std::string(to_string(s.direction)),
                         s.weight ? format_roundtrip(*s.weight) : std::string(), s.unit});
  }
}

// ------------------------------------------------------------------ dataset

namespace {

// Reorders file columns into manifest order and checks the header against it.
std::vector<std::size_t> manifest_column_order(const std::vector<std::string>& header_ids,
                                               const Manifest& manifest)
{
  std::set<std::string_view> seen;
  for (const auto& id : header_ids) {
    if (!seen.insert(id).second) {
      throw Error(ErrorKind::DuplicateIndicatorId, "indicator '" + id + "' appears twice in the header",
                  {{"indicator", id}});
    }
    if (!manifest.contains(id)) {
      throw Error(ErrorKind::UnknownIndicator, "indicator '" + id + "' is not in the manifest",
                  {{"indicator", id}});
    }
  }
  std::vector<std::size_t> order;
  for (const auto& s : manifest.specs()) {
    auto it = std::find(header_ids.begin(), header_ids.end(), s.id);
    if (it == header_ids.end()) {
      throw Error(ErrorKind::MissingIndicator, "manifest indicator '" + s.id + "' has no data column",
                  {{"indicator", s.id}});
    }
    order.push_back(static_cast<std::size_t>(it - header_ids.begin()));
  }
  return order;
}

std::vector<std::string> manifest_ids(const Manifest& manifest)
{
  std::vector<std::string> ids;
  for (const auto& s : manifest.specs()) ids.push_back(s.id);
  return ids;
}

void check_unique_region(std::set<std::string>& seen, const std::string& region)
{
  if (region.empty()) throw Error(ErrorKind::MalformedData, "empty region label");
  if (!seen.insert(region).second) {
    throw Error(ErrorKind::DuplicateRegion, "region '" + region + "' appears twice", {{"region", region}});
  }
}

}  // namespace

IndicatorMatrix parse_dataset_csv(std::istream& in, const Manifest& manifest)
{
  auto rows = csv::read_rows(in);
  if (rows.empty()) throw Error(ErrorKind::MalformedData, "data file is empty");
  const auto& header = rows.front();
  if (csv::trim(header.front()) != "region") {
    throw Error(ErrorKind::MalformedData, "first data column must be 'region'");
  }
  std::vector<std::string> header_ids;
  for (std::size_t c = 1; c < header.size(); ++c) header_ids.emplace_back(csv::trim(header[c]));
  auto order = manifest_column_order(header_ids, manifest);
  if (rows.size() < 2) throw Error(ErrorKind::MalformedData, "data file has no regions");

  std::vector<std::string> regions;
  std::vector<double> values;
  std::set<std::string> seen;
  for (std::size_t i = 1; i < rows.size(); ++i) {
    const auto& row = rows[i];
    std::string region(csv::trim(row.front()));
    check_unique_region(seen, region);
    if (row.size() > header.size()) {
      throw Error(ErrorKind::MalformedData, "region '" + region + "' has more cells than the header",
                  {{"region", region}});
    }
    for (std::size_t col : order) {
      const std::string& id = header_ids[col];
      ErrorContext where{{"region", region}, {"indicator", id}};
      std::size_t field = col + 1;
      if (field >= row.size() || csv::trim(row[field]).empty()) {
        throw Error(ErrorKind::MissingCell, "missing value for " + region + "/" + id, where);
      }
      auto v = parse_number(row[field]);
      if (!v) {
        throw Error(ErrorKind::NonNumericCell,
                    "non-numeric value '" + row[field] + "' for " + region + "/" + id, where);
      }
      values.push_back(*v);
    }
    regions.push_back(std::move(region));
  }
  return IndicatorMatrix(std::move(regions), manifest_ids(manifest), std::move(values), Stage::Raw);
}

IndicatorMatrix parse_dataset_json(std::istream& in, const Manifest& manifest)
{
  nlohmann::json doc;
  try {
    doc = nlohmann::json::parse(in);
  } catch (const nlohmann::json::exception& e) {
    throw Error(ErrorKind::MalformedData, std::string("invalid JSON: ") + e.what());
  }
  if (!doc.is_object() || !doc.contains("regions") || !doc.contains("indicators") ||
      !doc.contains("values")) {
    throw Error(ErrorKind::MalformedData, "JSON data needs regions, indicators and values");
  }
  std::vector<std::string> header_ids;
  for (const auto& id : doc["indicators"]) {
    if (!id.is_string()) throw Error(ErrorKind::MalformedData, "indicator ids must be strings");
    header_ids.push_back(id.get<std::string>());
  }
  auto order = manifest_column_order(header_ids, manifest);
  const auto& jregions = doc["regions"];
  const auto& jvalues = doc["values"];
  if (!jregions.is_array() || !jvalues.is_array() || jregions.size() != jvalues.size()) {
    throw Error(ErrorKind::MalformedData, "values must have one row per region");
  }
  std::vector<std::string> regions;
  std::vector<double> values;
  std::set<std::string> seen;
  for (std::size_t r = 0; r < jregions.size(); ++r) {
    if (!jregions[r].is_string()) throw Error(ErrorKind::MalformedData, "region labels must be strings");
    std::string region = jregions[r].get<std::string>();
    check_unique_region(seen, region);
    const auto& row = jvalues[r];
    if (!row.is_array() || row.size() > header_ids.size()) {
      throw Error(ErrorKind::MalformedData, "bad value row for region '" + region + "'",
                  {{"region", region}});
    }
    for (std::size_t col : order) {
      const std::string& id = header_ids[col];
      ErrorContext where{{"region", region}, {"indicator", id}};
      if (col >= row.size() || row[col].is_null()) {
        throw Error(ErrorKind::MissingCell, "missing value for " + region + "/" + id, where);
      }
      if (!row[col].is_number()) {
        throw Error(ErrorKind::NonNumericCell, "non-numeric value for " + region + "/" + id, where);
      }
      values.push_back(row[col].get<double>());
    }
    regions.push_back(std::move(region));
  }
  if (regions.empty()) throw Error(ErrorKind::MalformedData, "data file has no regions");
  return IndicatorMatrix(std::move(regions), manifest_ids(manifest), std::move(values), Stage::Raw);
}

IndicatorMatrix parse_dataset(const DatasetFile& file, const Manifest& manifest)
{
  auto in = open_input(file.data_path);
  return file.format == DataFormat::Json ? parse_dataset_json(in, manifest)
                                         : parse_dataset_csv(in, manifest);
}

void write_dataset_csv(std::ostream& out, const IndicatorMatrix& matrix)
{
  csv::Row header{"region"};
  header.insert(header.end(), matrix.indicators().begin(), matrix.indicators().end());
  csv::write_row(out, header);
  for (std::size_t r = 0; r < matrix.region_count(); ++r) {
    csv::Row row{matrix.regions()[r]};
    for (double v : matrix.row(r)) row.push_back(format_roundtrip(v));
    csv::write_row(out, row);
  }
}

void write_dataset_json(std::ostream& out, const IndicatorMatrix& matrix)
{
  nlohmann::ordered_json doc;
  doc["regions"] = matrix.regions();
  doc["indicators"] = matrix.indicators();
  auto rows = nlohmann::ordered_json::array();
  for (std::size_t r = 0; r < matrix.region_count(); ++r) {
    auto row = matrix.row(r);
    rows.push_back(std::vector<double>(row.begin(), row.end()));
  }
  doc["values"] = std::move(rows);
  out << doc.dump(2) << '\n';
}

// ---------------------------------------------------------------- composite

std::vector<double> composite_indicator(std::span<const NamedColumn> components)
{
  if (components.size() < 2) {
    throw Error(ErrorKind::TooShort, "a composite indicator needs at least two components");
  }
  const std::size_t n = components.front().values.size();
  if (n == 0) throw Error(ErrorKind::TooShort, "components have no regions");
  std::vector<double> out(n, 0.0);
  for (const auto& comp : components) {
    if (comp.values.size() != n) {
      throw Error(ErrorKind::LengthMismatch, "component '" + comp.name + "' has a different region count",
                  {{"component", comp.name}});
    }
    auto [lo, hi] = std::minmax_element(comp.values.begin(), comp.values.end());
    double range = *hi - *lo;
    if (!(range > 0.0)) {
      throw Error(ErrorKind::ConstantComponent, "component '" + comp.name + "' is constant",
                  {{"component", comp.name}});
    }
    for (std::size_t r = 0; r < n; ++r) out[r] += (comp.values[r] - *lo) / range;
  }
  for (double& v : out) v /= static_cast<double>(components.size());
  return out;
}

}  // namespace indexforge
