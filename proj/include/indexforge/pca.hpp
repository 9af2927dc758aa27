#pragma once

#include <array>
#include <cstddef>
#include <span>
#include <string>
#include <vector>

#include "indexforge/core_model.hpp"
#include "indexforge/linalg.hpp"

namespace indexforge {

enum class PcaBasis {
  Correlation,  // z-scored columns (population sd), correlation matrix
  Covariance,   // centred columns, population covariance matrix
};
std::string_view to_string(PcaBasis basis);

struct PcaOptions {
  std::size_t max_factors = 3;
  double variance_threshold = 0.80;
  PcaBasis basis = PcaBasis::Correlation;
};

/// Pearson correlation of the columns; diagonal exactly 1. Throws ConstantColumn.
SymmetricMatrix correlation_matrix(std::span<const std::vector<double>> columns,
                                   std::span<const std::string> ids);
/// Population (1/n) covariance of the columns.
SymmetricMatrix covariance_matrix(std::span<const std::vector<double>> columns);

struct RetainedFactor {
  EigenPair pair;  // sign-oriented loadings
  double variance_share = 0.0;
  bool sign_flipped = false;
};

struct PcaStage {
  std::string name;
  PcaBasis basis = PcaBasis::Correlation;
  std::vector<std::string> columns;  // ids actually analysed
  std::vector<std::string> dropped;  // constant columns left out
  std::vector<double> eigenvalues;   // all, descending
  std::vector<double> variance_shares;
  std::vector<RetainedFactor> retained;
  double cumulative_variance = 0.0;
  bool cap_reached_below_threshold = false;
  std::vector<std::vector<double>> scores;  // regions x retained factors
  std::vector<double> sub_index;
  std::vector<std::string> warnings;

  std::size_t retained_count() const noexcept { return retained.size(); }
};

/// One PCA aggregation step: standardize (or centre), eigendecompose, keep the
/// fewest factors reaching the variance threshold (at most max_factors), orient
/// each so its loadings sum to >= 0, then combine factor scores weighted by
/// their share of retained variance.
/// Throws ConstantColumn when no non-constant column remains.
PcaStage pca_pillar(std::string name, std::span<const std::vector<double>> columns,
                    std::span<const std::string> ids, const PcaOptions& options = {});

/// Second step over the four pillar sub-indexes. Every column must vary.
PcaStage pca_stage2(const std::array<std::vector<double>, kPillarCount>& sub_indexes,
                    const PcaOptions& options = {2, 0.80, PcaBasis::Covariance});

struct PcaConfig {
  PcaOptions pillar{3, 0.80, PcaBasis::Correlation};
  PcaOptions stage2{2, 0.80, PcaBasis::Covariance};
};

struct PcaOutcome {
  std::array<PcaStage, kPillarCount> pillars;
  PcaStage stage2;
  IndexResult result;
};

PcaOutcome compute_pca(const IndicatorMatrix& normalized, const Manifest& manifest,
                       const PcaConfig& config = {});

}  // namespace indexforge
