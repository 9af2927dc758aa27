#include "indexforge/pca.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "indexforge/aggregate.hpp"
#include "indexforge/error.hpp"

namespace indexforge {

std::string_view to_string(PcaBasis basis)
{
  return basis == PcaBasis::Correlation ? "correlation" : "covariance";
}

namespace {

constexpr double kThresholdSlack = 1e-12;
constexpr double kSignTolerance = 1e-12;

struct ColumnMoments {
  double mean = 0.0;
  double sd = 0.0;  // population
};

ColumnMoments moments(const std::vector<double>& x)
{
  const double n = static_cast<double>(x.size());
  ColumnMoments m;
  m.mean = std::accumulate(x.begin(), x.end(), 0.0) / n;
  double ss = 0.0;
  for (double v : x) ss += (v - m.mean) * (v - m.mean);
  m.sd = std::sqrt(ss / n);
  return m;
}

bool is_constant(const std::vector<double>& x)
{
  auto [lo, hi] = std::minmax_element(x.begin(), x.end());
  return !(*hi > *lo);
}

void check_columns(std::span<const std::vector<double>> columns)
{
  if (columns.empty()) throw Error(ErrorKind::TooShort, "PCA needs at least one column");
  const std::size_t n = columns.front().size();
  if (n < 2) throw Error(ErrorKind::TooShort, "PCA needs at least two regions");
  for (const auto& c : columns) {
    if (c.size() != n) throw Error(ErrorKind::LengthMismatch, "PCA columns differ in length");
  }
}

std::vector<std::vector<double>> centred(std::span<const std::vector<double>> columns, bool scale)
{
  std::vector<std::vector<double>> out;
  out.reserve(columns.size());
  for (const auto& c : columns) {
    auto m = moments(c);
    std::vector<double> z(c.size());
    for (std::size_t r = 0; r < c.size(); ++r) z[r] = scale ? (c[r] - m.mean) / m.sd : c[r] - m.mean;
    out.push_back(std::move(z));
  }
  return out;
}

// Loadings summing to < 0 are flipped; a zero sum defers to the first nonzero loading.
bool orient(std::vector<double>& loadings)
{
  double sum = std::accumulate(loadings.begin(), loadings.end(), 0.0);
  bool flip = false;
  if (sum < -kSignTolerance) {
    flip = true;
  } else if (std::abs(sum) <= kSignTolerance) {
    auto first = std::find_if(loadings.begin(), loadings.end(),
                              [](double v) { return std::abs(v) > kSignTolerance; });
    flip = first != loadings.end() && *first < 0.0;
  }
  if (flip) {
    for (double& v : loadings) v = -v;
  }
  return flip;
}

// Shared core of both stages; columns are already known to vary.
void run_stage(PcaStage& stage, std::span<const std::vector<double>> columns, const PcaOptions& options)
{
  if (options.max_factors == 0) throw Error(ErrorKind::Usage, "PCA factor cap must be at least 1");
  const bool correlation = options.basis == PcaBasis::Correlation;
  auto base = centred(columns, correlation);
  SymmetricMatrix m = correlation ? correlation_matrix(columns, stage.columns) : covariance_matrix(columns);
  auto pairs = eigen_symmetric(m);

  double total = 0.0;
  for (const auto& p : pairs) {
    stage.eigenvalues.push_back(p.value);
    total += std::max(p.value, 0.0);
  }
  for (const auto& p : pairs) stage.variance_shares.push_back(std::max(p.value, 0.0) / total);

  const std::size_t cap = std::min(options.max_factors, pairs.size());
  std::size_t count = 0;
  double cumulative = 0.0;
  while (count < cap) {
    cumulative += stage.variance_shares[count];
    ++count;
    if (cumulative >= options.variance_threshold - kThresholdSlack) break;
  }
  stage.cumulative_variance = cumulative;
  stage.cap_reached_below_threshold = cumulative < options.variance_threshold - kThresholdSlack;
  if (stage.cap_reached_below_threshold) {
    stage.warnings.push_back(stage.name + ": " + std::to_string(count) +
                             " factor(s) explain only " + std::to_string(cumulative) +
                             " of the variance (cap reached below threshold)");
  }

  const std::size_t regions = columns.front().size();
  stage.scores.assign(regions, std::vector<double>(count, 0.0));
  stage.sub_index.assign(regions, 0.0);
  for (std::size_t k = 0; k < count; ++k) {
    RetainedFactor f{pairs[k], stage.variance_shares[k], false};
    f.sign_flipped = orient(f.pair.vector);
    const double weight = f.variance_share / cumulative;
    for (std::size_t r = 0; r < regions; ++r) {
      double score = 0.0;
      for (std::size_t j = 0; j < base.size(); ++j) score += base[j][r] * f.pair.vector[j];
      stage.scores[r][k] = score;
      stage.sub_index[r] += weight * score;
    }
    stage.retained.push_back(std::move(f));
  }
}

}  // namespace

SymmetricMatrix correlation_matrix(std::span<const std::vector<double>> columns,
                                   std::span<const std::string> ids)
{
  check_columns(columns);
  const std::size_t k = columns.size();
  for (std::size_t j = 0; j < k; ++j) {
    if (is_constant(columns[j])) {
      std::string id = j < ids.size() ? ids[j] : std::to_string(j);
      throw Error(ErrorKind::ConstantColumn, "column '" + id + "' is constant; correlation undefined",
                  {{"indicator", id}});
    }
  }
  auto z = centred(columns, true);
  const double n = static_cast<double>(columns.front().size());
  std::vector<double> e(k * k, 0.0);
  for (std::size_t i = 0; i < k; ++i) {
    e[i * k + i] = 1.0;
    for (std::size_t j = i + 1; j < k; ++j) {
      double r = std::inner_product(z[i].begin(), z[i].end(), z[j].begin(), 0.0) / n;
      r = std::clamp(r, -1.0, 1.0);
      e[i * k + j] = e[j * k + i] = r;
    }
  }
  return SymmetricMatrix(k, std::move(e));
}

SymmetricMatrix covariance_matrix(std::span<const std::vector<double>> columns)
{
  check_columns(columns);
  const std::size_t k = columns.size();
  auto c = centred(columns, false);
  const double n = static_cast<double>(columns.front().size());
  std::vector<double> e(k * k, 0.0);
  for (std::size_t i = 0; i < k; ++i) {
    for (std::size_t j = i; j < k; ++j) {
      double v = std::inner_product(c[i].begin(), c[i].end(), c[j].begin(), 0.0) / n;
      e[i * k + j] = e[j * k + i] = v;
    }
  }
  return SymmetricMatrix(k, std::move(e));
}

PcaStage pca_pillar(std::string name, std::span<const std::vector<double>> columns,
                    std::span<const std::string> ids, const PcaOptions& options)
{
  check_columns(columns);
  if (ids.size() != columns.size()) throw Error(ErrorKind::LengthMismatch, "one id per PCA column required");
  PcaStage stage;
  stage.name = std::move(name);
  stage.basis = options.basis;
  std::vector<std::vector<double>> kept;
  for (std::size_t j = 0; j < columns.size(); ++j) {
    if (is_constant(columns[j])) {
      stage.dropped.push_back(ids[j]);
      stage.warnings.push_back(stage.name + ": constant column '" + ids[j] + "' dropped from PCA");
    } else {
      stage.columns.push_back(ids[j]);
      kept.push_back(columns[j]);
    }
  }
  if (kept.empty()) {
    throw Error(ErrorKind::ConstantColumn, stage.name + ": every column is constant",
                {{"stage", stage.name}});
  }
  run_stage(stage, kept, options);
  return stage;
}

PcaStage pca_stage2(const std::array<std::vector<double>, kPillarCount>& sub_indexes,
                    const PcaOptions& options)
{
  PcaStage stage;
  stage.name = "stage2";
  stage.basis = options.basis;
  for (Pillar p : kPillars) stage.columns.emplace_back(to_string(p));
  check_columns(sub_indexes);
  for (Pillar p : kPillars) {
    if (is_constant(sub_indexes[index_of(p)])) {
      throw Error(ErrorKind::ConstantColumn,
                  "sub-index " + std::string(to_string(p)) + " is constant across regions",
                  {{"pillar", std::string(to_string(p))}});
    }
  }
  run_stage(stage, sub_indexes, options);
  return stage;
}

PcaOutcome compute_pca(const IndicatorMatrix& normalized, const Manifest& manifest, const PcaConfig& config)
{
  if (normalized.stage() != Stage::Normalized) {
    throw Error(ErrorKind::InvalidMatrix, "PCA aggregation expects a normalized matrix");
  }
  check_against_manifest(normalized, manifest);
  PcaOutcome out;
  std::array<std::vector<double>, kPillarCount> sub_indexes;
  for (Pillar p : kPillars) {
    auto ids = manifest.ids_in(p);
    std::vector<std::vector<double>> cols;
    for (const auto& id : ids) cols.push_back(normalized.column(id));
    out.pillars[index_of(p)] = pca_pillar(std::string(to_string(p)), cols, ids, config.pillar);
    sub_indexes[index_of(p)] = out.pillars[index_of(p)].sub_index;
  }
  out.stage2 = pca_stage2(sub_indexes, config.stage2);
  out.result = make_index_result(Method::Pca, normalized.regions(), out.stage2.sub_index);
  std::vector<std::string> warnings;
  for (const auto& s : out.pillars) warnings.insert(warnings.end(), s.warnings.begin(), s.warnings.end());
  warnings.insert(warnings.end(), out.stage2.warnings.begin(), out.stage2.warnings.end());
  warnings.insert(warnings.end(), out.result.warnings.begin(), out.result.warnings.end());
  out.result.warnings = std::move(warnings);
  return out;
}

}  // namespace indexforge
