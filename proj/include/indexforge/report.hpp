#pragma once

#include <filesystem>
#include <optional>
#include <ostream>
#include <string>

#include "json.hpp"

#include "indexforge/core_model.hpp"
#include "indexforge/pca.hpp"
#include "indexforge/stats.hpp"

namespace indexforge {

/// region,raw,rescaled,rank in region order.
void write_index_csv(std::ostream& out, const IndexResult& result);
nlohmann::ordered_json to_json(const IndexResult& result);

nlohmann::ordered_json to_json(const DescriptiveStats& stats);
nlohmann::ordered_json to_json(const ComparisonReport& report);
/// Correlation block, stats block and crossings block as one CSV.
void write_report_csv(std::ostream& out, const ComparisonReport& report);

/// Published variance fingerprint a PCA run is compared against in the audit.
struct PcaReference {
  struct Entry {
    std::size_t factors = 0;
    double cumulative = 0.0;
  };
  std::string source;
  double cumulative_tolerance = 0.03;
  double first_share_tolerance = 0.04;
  std::array<Entry, kPillarCount> pillars{};
  Entry stage2;
  double stage2_first_share = 0.0;
};

PcaReference load_pca_reference(const std::filesystem::path& path);

/// Eigenvalues, shares, retained count, loadings and sign flips per stage, plus
/// a reference_comparison block listing every band miss when a reference is given.
nlohmann::ordered_json pca_audit_json(const PcaOutcome& outcome,
                                      const PcaReference* reference = nullptr);

}  // namespace indexforge
