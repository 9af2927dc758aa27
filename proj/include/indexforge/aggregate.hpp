#pragma once

#include <optional>
#include <span>
#include <string>
#include <vector>

#include "indexforge/core_model.hpp"

namespace indexforge {

/// Per-region unweighted mean of each pillar's normalized indicators.
PillarScores pillar_arithmetic_means(const IndicatorMatrix& normalized, const Manifest& manifest);

/// Per-region within-pillar weighted means using the scheme's indicator weights.
PillarScores pillar_weighted_means(const IndicatorMatrix& normalized, const Manifest& manifest,
                                   const WeightScheme& weights);

/// n-th root of the product; exactly 0 when any input is 0. Throws NegativeInput.
double geometric_mean(std::span<const double> values);

struct Rescaled {
  std::vector<double> values;
  bool degenerate = false;  // all inputs equal, every output 0.5
};

Rescaled rescale_final(std::span<const double> raw);

std::vector<std::string> rank_regions(std::span<const std::string> regions,
                                      std::span<const double> values);

/// Rescales, ranks, and records a warning when the raw index is flat.
IndexResult make_index_result(Method method, std::vector<std::string> regions,
                              std::vector<double> raw);

/// Geometric mean of the four pillar arithmetic means. Weights play no part.
IndexResult compute_abreu(const IndicatorMatrix& normalized, const Manifest& manifest);

/// Two-level weighted arithmetic mean. Throws WeightManifestMismatch when the
/// scheme names indicators outside the manifest.
IndexResult compute_delphi(const IndicatorMatrix& normalized, const Manifest& manifest,
                           const WeightScheme& weights);

struct AggregationConfig {
  Method method = Method::Abreu;
  std::optional<WeightScheme> weights;  // Delphi only
};

/// Dispatches to compute_abreu / compute_delphi. Method::Pca is rejected with Usage.
IndexResult aggregate(const IndicatorMatrix& normalized, const Manifest& manifest,
                      const AggregationConfig& config);

}  // namespace indexforge
