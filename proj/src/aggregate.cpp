#include "indexforge/aggregate.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "indexforge/error.hpp"

namespace indexforge {

namespace {

void require_normalized(const IndicatorMatrix& m, const Manifest& manifest)
{
  if (m.stage() != Stage::Normalized) {
    throw Error(ErrorKind::InvalidMatrix, "aggregation expects a normalized matrix");
  }
  check_against_manifest(m, manifest);
}

// Column indices of each pillar's indicators.
std::array<std::vector<std::size_t>, kPillarCount> pillar_columns(const IndicatorMatrix& m,
                                                                  const Manifest& manifest)
{
  std::array<std::vector<std::size_t>, kPillarCount> cols;
  for (std::size_t c = 0; c < m.indicator_count(); ++c) {
    cols[index_of(manifest.at(m.indicators()[c]).pillar)].push_back(c);
  }
  for (Pillar p : kPillars) {
    if (cols[index_of(p)].empty()) {
      throw Error(ErrorKind::EmptyPillar, "pillar " + std::string(to_string(p)) + " has no indicators",
                  {{"pillar", std::string(to_string(p))}});
    }
  }
  return cols;
}

}  // namespace

PillarScores pillar_arithmetic_means(const IndicatorMatrix& normalized, const Manifest& manifest)
{
  require_normalized(normalized, manifest);
  auto cols = pillar_columns(normalized, manifest);
  PillarScores out{Method::Abreu, normalized.regions(), {}};
  out.scores.resize(normalized.region_count());
  for (std::size_t r = 0; r < normalized.region_count(); ++r) {
    for (Pillar p : kPillars) {
      const auto& idx = cols[index_of(p)];
      double sum = 0.0;
      for (std::size_t c : idx) sum += normalized.value(r, c);
      out.scores[r][index_of(p)] = sum / static_cast<double>(idx.size());
    }
  }
  return out;
}

PillarScores pillar_weighted_means(const IndicatorMatrix& normalized, const Manifest& manifest,
                                   const WeightScheme& weights)
{
  require_normalized(normalized, manifest);
  for (const auto& [id, w] : weights.indicator_weights()) {
    if (!manifest.contains(id)) {
      throw Error(ErrorKind::WeightManifestMismatch, "weight scheme names unknown indicator '" + id + "'",
                  {{"indicator", id}});
    }
  }
  auto cols = pillar_columns(normalized, manifest);
  PillarScores out{Method::Delphi, normalized.regions(), {}};
  out.scores.resize(normalized.region_count());
  for (std::size_t r = 0; r < normalized.region_count(); ++r) {
    for (Pillar p : kPillars) {
      double sum = 0.0;
      for (std::size_t c : cols[index_of(p)]) {
        sum += weights.indicator(normalized.indicators()[c]) * normalized.value(r, c);
      }
      out.scores[r][index_of(p)] = sum;
    }
  }
  return out;
}

double geometric_mean(std::span<const double> values)
{
  if (values.empty()) throw Error(ErrorKind::TooShort, "geometric mean of no values");
  double product = 1.0;
  for (double v : values) {
    if (v < 0.0 || std::isnan(v)) throw Error(ErrorKind::NegativeInput, "geometric mean of a negative value");
    if (v == 0.0) return 0.0;
    product *= v;
  }
  return std::pow(product, 1.0 / static_cast<double>(values.size()));
}

Rescaled rescale_final(std::span<const double> raw)
{
  Rescaled out;
  if (raw.empty()) return out;
  auto [lo, hi] = std::minmax_element(raw.begin(), raw.end());
  if (!(*hi > *lo)) {
    out.values.assign(raw.size(), 0.5);
    out.degenerate = true;
    return out;
  }
  const double min = *lo;
  const double range = *hi - *lo;
  out.values.reserve(raw.size());
  for (double x : raw) out.values.push_back((x - min) / range);
  return out;
}

std::vector<std::string> rank_regions(std::span<const std::string> regions, std::span<const double> values)
{
  if (regions.size() != values.size()) {
    throw Error(ErrorKind::LengthMismatch, "ranking needs one value per region");
  }
  std::vector<std::size_t> order(regions.size());
  std::iota(order.begin(), order.end(), 0);
  std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
    if (values[a] != values[b]) return values[a] > values[b];
    return regions[a] < regions[b];
  });
  std::vector<std::string> ranking;
  ranking.reserve(order.size());
  for (std::size_t i : order) ranking.push_back(regions[i]);
  return ranking;
}

IndexResult make_index_result(Method method, std::vector<std::string> regions, std::vector<double> raw)
{
  IndexResult out;
  out.method = method;
  auto rescaled = rescale_final(raw);
  if (rescaled.degenerate) {
    out.warnings.push_back(std::string(display_name(method)) +
                           ": raw index identical for every region; rescaled to 0.5");
  }
  out.rescaled = std::move(rescaled.values);
  out.ranking = rank_regions(regions, out.rescaled);
  out.regions = std::move(regions);
  out.raw = std::move(raw);
  return out;
}

IndexResult compute_abreu(const IndicatorMatrix& normalized, const Manifest& manifest)
{
  auto pillars = pillar_arithmetic_means(normalized, manifest);
  std::vector<double> raw;
  raw.reserve(pillars.scores.size());
  for (const auto& s : pillars.scores) raw.push_back(geometric_mean(s));
  return make_index_result(Method::Abreu, normalized.regions(), std::move(raw));
}

IndexResult compute_delphi(const IndicatorMatrix& normalized, const Manifest& manifest,
                           const WeightScheme& weights)
{
  auto pillars = pillar_weighted_means(normalized, manifest, weights);
  std::vector<double> raw;
  raw.reserve(pillars.scores.size());
  for (const auto& s : pillars.scores) {
    double sum = 0.0;
    for (Pillar p : kPillars) sum += weights.pillar(p) * s[index_of(p)];
    raw.push_back(sum);
  }
  return make_index_result(Method::Delphi, normalized.regions(), std::move(raw));
}

IndexResult aggregate(const IndicatorMatrix& normalized, const Manifest& manifest,
                      const AggregationConfig& config)
{
  switch (config.method) {
    case Method::Abreu:
      return compute_abreu(normalized, manifest);
    case Method::Delphi:
      if (!config.weights) throw Error(ErrorKind::Usage, "Delphi aggregation needs a weight scheme");
      return compute_delphi(normalized, manifest, *config.weights);
    case Method::Pca:
      break;
  }
  throw Error(ErrorKind::Usage, "PCA aggregation is computed by compute_pca");
}

}  // namespace indexforge
