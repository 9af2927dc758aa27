#pragma once

#include <cmath>
#include <filesystem>
#include <fstream>
#include <string>
#include <vector>

#include "indexforge/core_model.hpp"
#include "indexforge/error.hpp"
#include "indexforge/ingest.hpp"
#include "indexforge/normalize.hpp"
#include "indexforge/stats.hpp"

namespace support {

inline std::filesystem::path fixture(const std::string& name)
{
  return std::filesystem::path(INDEXFORGE_FIXTURE_DIR) / name;
}

inline indexforge::Manifest fixture_manifest()
{
  return indexforge::load_manifest(fixture("manifest.csv"));
}

inline indexforge::IndicatorMatrix fixture_raw()
{
  auto manifest = fixture_manifest();
  return indexforge::parse_dataset({fixture("manifest.csv"), fixture("nuts3.csv")}, manifest);
}

inline indexforge::NormalizedMatrix fixture_normalized()
{
  return indexforge::normalize_matrix(fixture_raw(), fixture_manifest());
}

inline std::vector<indexforge::IndexResult> published_table()
{
  std::ifstream in(fixture("table3.csv"));
  return indexforge::parse_published_table(in);
}

inline const indexforge::IndexResult& published(const std::vector<indexforge::IndexResult>& all,
                                                indexforge::Method m)
{
  for (const auto& r : all) {
    if (r.method == m) return r;
  }
  throw std::runtime_error("method missing from published table");
}

inline bool near(double a, double b, double tol) { return std::abs(a - b) <= tol; }

// Runs f and reports which error kind it raised, if any.
template <class F>
std::optional<indexforge::ErrorKind> kind_of(F&& f)
{
  try {
    f();
  } catch (const indexforge::Error& e) {
    return e.kind();
  }
  return std::nullopt;
}

// Manifest with ids p<pillar>_<k>, all benefit unless listed in cost_ids.
inline indexforge::Manifest small_manifest(std::array<std::size_t, indexforge::kPillarCount> counts,
                                           const std::vector<std::string>& cost_ids = {})
{
  std::vector<indexforge::IndicatorSpec> specs;
  for (auto p : indexforge::kPillars) {
    for (std::size_t k = 0; k < counts[indexforge::index_of(p)]; ++k) {
      indexforge::IndicatorSpec s;
      s.id = "p" + std::to_string(indexforge::index_of(p)) + "_" + std::to_string(k);
      s.label = s.id;
      s.pillar = p;
      s.direction = std::find(cost_ids.begin(), cost_ids.end(), s.id) != cost_ids.end()
                        ? indexforge::Direction::Cost
                        : indexforge::Direction::Benefit;
      specs.push_back(s);
    }
  }
  return indexforge::validate_manifest(std::move(specs));
}

inline std::vector<std::string> ids_of(const indexforge::Manifest& m)
{
  std::vector<std::string> ids;
  for (const auto& s : m.specs()) ids.push_back(s.id);
  return ids;
}

inline std::vector<std::string> region_labels(std::size_t n)
{
  std::vector<std::string> out;
  for (std::size_t i = 0; i < n; ++i) out.push_back("R" + std::string(i < 10 ? "0" : "") + std::to_string(i));
  return out;
}

inline const std::vector<std::string>& fixture_regions()
{
  static const std::vector<std::string> regions{
      "Alto Minho",       "Terras de Trás-os-Montes",   "Região de Coimbra",
      "Beiras e Serra da Estrela", "Alentejo Litoral", "Alto Alentejo",
      "Algarve",          "Região Autónoma dos Açores", "Região Autónoma da Madeira"};
  return regions;
}

}  // namespace support
