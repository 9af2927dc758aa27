#pragma once

#include <cstddef>
#include <istream>
#include <map>
#include <ostream>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "indexforge/core_model.hpp"

namespace indexforge {

/// Sample Pearson correlation. Throws LengthMismatch, TooShort, ConstantVector.
double pearson(std::span<const double> x, std::span<const double> y);

struct DescriptiveStats {
  double min = 0.0;
  double q1 = 0.0;
  double median = 0.0;
  double q3 = 0.0;
  double max = 0.0;
  double iqr = 0.0;
  double mean = 0.0;
  double sd = 0.0;  // n - 1 denominator
  double whisker_low = 0.0;
  double whisker_high = 0.0;
};

/// Quartiles are Tukey hinges: for odd n the median belongs to both halves.
DescriptiveStats describe(std::span<const double> x);

using Rankings = std::map<Method, std::vector<std::string>>;

/// Throws RegionSetMismatch when results disagree on the region set.
Rankings rank_table(std::span<const IndexResult> results);

/// Number of region pairs ordered oppositely (discordant pairs).
std::size_t crossings(std::span<const std::string> rank_a, std::span<const std::string> rank_b);

struct ComparisonReport {
  std::vector<Method> methods;
  std::map<std::pair<Method, Method>, double> pairwise_r;  // both orders, diagonal 1
  std::map<Method, DescriptiveStats> per_method_stats;
  Rankings rankings;
  std::map<std::pair<Method, Method>, std::size_t> crossings;  // both orders
};

/// Throws FewerThanTwoMethods, RegionSetMismatch.
ComparisonReport compare_methods(std::span<const IndexResult> results);

struct Polyline {
  std::string region;
  std::vector<double> values;  // one vertex per axis
};

struct ParallelCoordinates {
  std::vector<Method> axes;
  std::vector<Polyline> lines;
};

ParallelCoordinates parallel_coordinates_export(std::span<const IndexResult> results);

/// region,<method>,<method>,... with 6 fixed decimals.
void write_parallel_csv(std::ostream& out, const ParallelCoordinates& pc);
ParallelCoordinates parse_parallel_csv(std::istream& in);
/// Full-precision form: {"axes": [...], "lines": [{"region": ..., "values": [...]}]}.
std::string parallel_json(const ParallelCoordinates& pc);
ParallelCoordinates parse_parallel_json(std::istream& in);
std::string parallel_svg(const ParallelCoordinates& pc);

/// method_x,method_y,region,x,y for every unordered method pair.
void write_scatter_csv(std::ostream& out, std::span<const IndexResult> results);

/// Builds a result from an already-rescaled published column (raw = rescaled).
IndexResult published_result(Method method, std::vector<std::string> regions,
                             std::vector<double> values);

/// Published table CSV: region,<method>,... Unknown method columns are rejected.
std::vector<IndexResult> parse_published_table(std::istream& in);

}  // namespace indexforge
