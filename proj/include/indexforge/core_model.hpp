#pragma once

#include <array>
#include <cstddef>
#include <cstdint>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace indexforge {

enum class Pillar : std::uint8_t { Population, SocialWelfare, Economy, Environment };

inline constexpr std::size_t kPillarCount = 4;
inline constexpr std::array<Pillar, kPillarCount> kPillars{
    Pillar::Population, Pillar::SocialWelfare, Pillar::Economy, Pillar::Environment};

constexpr std::size_t index_of(Pillar p) { return static_cast<std::size_t>(p); }
std::string_view to_string(Pillar p);
/// Accepts the canonical names plus "Social" as a short form.
std::optional<Pillar> parse_pillar(std::string_view text);

enum class Direction { Benefit, Cost };
std::string_view to_string(Direction d);
std::optional<Direction> parse_direction(std::string_view text);

enum class Method { Abreu, Delphi, Pca };
inline constexpr std::array<Method, 3> kMethods{Method::Abreu, Method::Delphi, Method::Pca};
/// Lower-case key used on the command line and in file names.
std::string_view to_string(Method m);
std::string_view display_name(Method m);
std::optional<Method> parse_method(std::string_view text);

enum class Stage { Raw, Normalized };
std::string_view to_string(Stage s);

struct IndicatorSpec {
  std::string id;
  std::string label;
  Pillar pillar = Pillar::Population;
  Direction direction = Direction::Benefit;
  /// Raw within-pillar weight; empty means "unspecified" (equal share by default).
  std::optional<double> weight;
  std::string unit;
};

/// A validated, immutable indicator list. Construct through validate_manifest().
class Manifest {
 public:
  const std::vector<IndicatorSpec>& specs() const noexcept { return specs_; }
  std::size_t size() const noexcept { return specs_.size(); }

  std::optional<std::size_t> find(std::string_view id) const;
  bool contains(std::string_view id) const { return find(id).has_value(); }
  const IndicatorSpec& at(std::string_view id) const;

  /// Indicator ids of one pillar, in manifest order.
  std::vector<std::string> ids_in(Pillar p) const;
  std::size_t count_in(Pillar p) const;

 private:
  friend Manifest validate_manifest(std::vector<IndicatorSpec> specs);
  explicit Manifest(std::vector<IndicatorSpec> specs) : specs_(std::move(specs)) {}

  std::vector<IndicatorSpec> specs_;
};

/// Throws DuplicateIndicatorId, EmptyPillar or NegativeWeight.
Manifest validate_manifest(std::vector<IndicatorSpec> specs);

/// The 25-indicator rural development manifest (5/7/7/6 per pillar).
Manifest default_manifest();

/// Dense regions x indicators grid. Row-major storage.
class IndicatorMatrix {
 public:
  IndicatorMatrix(std::vector<std::string> regions, std::vector<std::string> indicators,
                  std::vector<double> values, Stage stage);

  std::size_t region_count() const noexcept { return regions_.size(); }
  std::size_t indicator_count() const noexcept { return indicators_.size(); }
  const std::vector<std::string>& regions() const noexcept { return regions_; }
  const std::vector<std::string>& indicators() const noexcept { return indicators_; }
  const std::vector<double>& values() const noexcept { return values_; }
  Stage stage() const noexcept { return stage_; }

  double value(std::size_t region, std::size_t indicator) const
  {
    return values_[region * indicators_.size() + indicator];
  }
  double value(std::string_view region, std::string_view indicator) const;

  std::span<const double> row(std::size_t region) const
  {
    return {values_.data() + region * indicators_.size(), indicators_.size()};
  }
  std::vector<double> column(std::size_t indicator) const;
  std::vector<double> column(std::string_view indicator) const;

  std::optional<std::size_t> region_index(std::string_view label) const;
  std::optional<std::size_t> indicator_index(std::string_view id) const;

 private:
  std::vector<std::string> regions_;
  std::vector<std::string> indicators_;
  std::vector<double> values_;
  Stage stage_;
};

/// Throws UnknownIndicator / MissingIndicator unless the matrix columns are
/// exactly the manifest ids (any order).
void check_against_manifest(const IndicatorMatrix& matrix, const Manifest& manifest);

using PillarWeightInputs = std::map<Pillar, double>;

/// Two-level weights, each level summing to 1.
class WeightScheme {
 public:
  WeightScheme(std::array<double, kPillarCount> pillar_weights,
               std::map<std::string, double> indicator_weights)
      : pillar_(pillar_weights), indicator_(std::move(indicator_weights))
  {
  }

  double pillar(Pillar p) const { return pillar_[index_of(p)]; }
  /// Within-pillar weight; 0 for ids the scheme does not know.
  double indicator(std::string_view id) const;

  const std::array<double, kPillarCount>& pillar_weights() const noexcept { return pillar_; }
  const std::map<std::string, double>& indicator_weights() const noexcept { return indicator_; }
  PillarWeightInputs pillar_inputs() const;

 private:
  std::array<double, kPillarCount> pillar_;
  std::map<std::string, double> indicator_;
};

/// Renormalizes pillar inputs to sum 1 and within-pillar indicator weights to
/// sum 1 per pillar. Indicator weight precedence: override, manifest weight,
/// then 1.0. Missing pillars count as 0.
WeightScheme build_weight_scheme(const Manifest& manifest, const PillarWeightInputs& pillar_inputs,
                                 const std::map<std::string, double>& indicator_overrides = {});

/// Expert-panel pillar importance: Economy 28.4, Social 26.2, Environment 24, Population 21.
PillarWeightInputs published_delphi_pillar_inputs();

struct PillarScores {
  Method method = Method::Abreu;
  std::vector<std::string> regions;
  std::vector<std::array<double, kPillarCount>> scores;

  double score(std::size_t region, Pillar p) const { return scores[region][index_of(p)]; }
  std::vector<double> column(Pillar p) const;
};

struct IndexResult {
  Method method = Method::Abreu;
  std::vector<std::string> regions;
  std::vector<double> raw;
  std::vector<double> rescaled;
  /// Regions by descending rescaled value, ties by label.
  std::vector<std::string> ranking;
  std::vector<std::string> warnings;

  double rescaled_of(std::string_view region) const;
  /// 1-based position in ranking.
  std::size_t rank_of(std::string_view region) const;
};

}  // namespace indexforge
