#include "indexforge/core_model.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <numeric>
#include <set>

#include "indexforge/error.hpp"

namespace indexforge {

std::string_view to_string(Pillar p)
{
  switch (p) {
    case Pillar::Population: return "Population";
    case Pillar::SocialWelfare: return "SocialWelfare";
    case Pillar::Economy: return "Economy";
    case Pillar::Environment: return "Environment";
  }
  return "?";
}

std::optional<Pillar> parse_pillar(std::string_view text)
{
  for (Pillar p : kPillars) {
    if (text == to_string(p)) return p;
  }
  if (text == "Social") return Pillar::SocialWelfare;
  return std::nullopt;
}

std::string_view to_string(Direction d)
{
  return d == Direction::Benefit ? "benefit" : "cost";
}

std::optional<Direction> parse_direction(std::string_view text)
{
  std::string lower(text);
  std::transform(lower.begin(), lower.end(), lower.begin(), [](unsigned char c) { return std::tolower(c); });
  if (lower == "benefit") return Direction::Benefit;
  if (lower == "cost") return Direction::Cost;
  return std::nullopt;
}

std::string_view to_string(Method m)
{
  switch (m) {
    case Method::Abreu: return "abreu";
    case Method::Delphi: return "delphi";
    case Method::Pca: return "pca";
  }
  return "?";
}

std::string_view display_name(Method m)
{
  switch (m) {
    case Method::Abreu: return "RDI Abreu";
    case Method::Delphi: return "RDI Delphi";
    case Method::Pca: return "RDI PCA";
  }
  return "?";
}

std::optional<Method> parse_method(std::string_view text)
{
  for (Method m : kMethods) {
    if (text == to_string(m)) return m;
  }
  return std::nullopt;
}

std::string_view to_string(Stage s)
{
  return s == Stage::Raw ? "raw" : "normalized";
}

// ---------------------------------------------------------------- Manifest

std::optional<std::size_t> Manifest::find(std::string_view id) const
{
  for (std::size_t i = 0; i < specs_.size(); ++i) {
    if (specs_[i].id == id) return i;
  }
  return std::nullopt;
}

const IndicatorSpec& Manifest::at(std::string_view id) const
{
  auto i = find(id);
  if (!i) {
    throw Error(ErrorKind::UnknownIndicator, "indicator '" + std::string(id) + "' not in manifest",
                {{"indicator", std::string(id)}});
  }
  return specs_[*i];
}

std::vector<std::string> Manifest::ids_in(Pillar p) const
{
  std::vector<std::string> ids;
  for (const auto& s : specs_) {
    if (s.pillar == p) ids.push_back(s.id);
  }
  return ids;
}

std::size_t Manifest::count_in(Pillar p) const
{
  return static_cast<std::size_t>(
      std::count_if(specs_.begin(), specs_.end(), [p](const auto& s) { return s.pillar == p; }));
}

Manifest validate_manifest(std::vector<IndicatorSpec> specs)
{
  if (specs.empty()) throw Error(ErrorKind::MalformedManifest, "manifest is empty");
  std::set<std::string, std::less<>> seen;
  for (const auto& s : specs) {
    if (s.id.empty()) throw Error(ErrorKind::MalformedManifest, "indicator with empty id");
    if (!seen.insert(s.id).second) {
      throw Error(ErrorKind::DuplicateIndicatorId, "indicator id '" + s.id + "' appears twice",
                  {{"indicator", s.id}});
    }
    if (s.weight && (!std::isfinite(*s.weight) || *s.weight < 0.0)) {
      throw Error(ErrorKind::NegativeWeight, "indicator '" + s.id + "' has a negative weight",
                  {{"indicator", s.id}});
    }
  }
  for (Pillar p : kPillars) {
    bool any = std::any_of(specs.begin(), specs.end(), [p](const auto& s) { return s.pillar == p; });
    if (!any) {
      throw Error(ErrorKind::EmptyPillar, "pillar " + std::string(to_string(p)) + " has no indicators",
                  {{"pillar", std::string(to_string(p))}});
    }
    // Unspecified weights count as positive, so only an all-explicit-zero pillar fails.
    bool positive = std::any_of(specs.begin(), specs.end(),
                                [p](const auto& s) { return s.pillar == p && (!s.weight || *s.weight > 0.0); });
    if (!positive) {
      throw Error(ErrorKind::AllZeroWeights, "pillar " + std::string(to_string(p)) + " has only zero weights",
                  {{"pillar", std::string(to_string(p))}});
    }
  }
  return Manifest(std::move(specs));
}

Manifest default_manifest()
{
  using D = Direction;
  using P = Pillar;
  auto spec = [](const char* id, const char* label, P p, D d, const char* unit) {
    return IndicatorSpec{id, label, p, d, std::nullopt, unit};
  };
  return validate_manifest({
      spec("DmgDep", "Demographic dependency index", P::Population, D::Cost, "%"),
      spec("Pop65", "Proportion of population aged 65 or over", P::Population, D::Cost, "%"),
      spec("Pop16", "Proportion of population aged 16 or under", P::Population, D::Benefit, "%"),
      spec("PopDens", "Population density", P::Population, D::Benefit, "inhabit/km2"),
      spec("NatInc", "Rate of natural increase", P::Population, D::Benefit, "%"),
      spec("HlthServ", "Coverage of essential health services (doctors and hospital beds composite)",
           P::SocialWelfare, D::Benefit, "index"),
      spec("WorkQual", "Share of workforce with at least post-secondary education completed",
           P::SocialWelfare, D::Benefit, "%"),
      spec("Lit", "Literacy of the population aged 10 or more", P::SocialWelfare, D::Benefit, "%"),
      spec("ICT", "Proportion of youth and adults with ICT skills", P::SocialWelfare, D::Benefit, "%"),
      spec("Univ", "Share of university students", P::SocialWelfare, D::Benefit, "%"),
      spec("Facil", "Proportion of conventional dwellings of regular residence with facilities",
           P::SocialWelfare, D::Benefit, "%"),
      spec("MobNet", "Proportion of population covered by a mobile network", P::SocialWelfare,
           D::Benefit, "%"),
      spec("Earn", "Average earnings per capita", P::Economy, D::Benefit, "EUR/inhabit"),
      spec("FamInc", "Gross family income", P::Economy, D::Benefit, "EUR/year"),
      spec("PurcPw", "Per capita purchasing power", P::Economy, D::Benefit, "%"),
      spec("Unemp", "Unemployment rate", P::Economy, D::Cost, "%"),
      spec("IncPrim", "Total income of the primary sector", P::Economy, D::Benefit, "million EUR"),
      spec("PrimGVA", "Gross value added of the primary sector", P::Economy, D::Benefit, "% of GDP"),
      spec("R&D", "Research and development expenditure", P::Economy, D::Benefit, "% of GDP"),
      spec("RenEn", "Renewable energy share in total final energy consumption", P::Environment,
           D::Benefit, "%"),
      spec("WasteW", "Proportion of treated wastewater", P::Environment, D::Benefit, "%"),
      spec("ProtectA", "Proportion of important biodiversity sites covered by protected areas",
           P::Environment, D::Benefit, "%"),
      spec("WatQlt", "Proportion of bodies of water with good ambient water quality", P::Environment,
           D::Benefit, "%"),
      spec("SustAgr", "Proportion of agricultural area under productive and sustainable agriculture",
           P::Environment, D::Benefit, "%"),
      spec("ExpHer", "Expenditure per capita on cultural and natural heritage", P::Environment,
           D::Benefit, "EUR/inhabit"),
  });
}

// --------------------------------------------------------- IndicatorMatrix

IndicatorMatrix::IndicatorMatrix(std::vector<std::string> regions, std::vector<std::string> indicators,
                                 std::vector<double> values, Stage stage)
    : regions_(std::move(regions)),
      indicators_(std::move(indicators)),
      values_(std::move(values)),
      stage_(stage)
{
  if (regions_.empty() || indicators_.empty()) {
    throw Error(ErrorKind::InvalidMatrix, "matrix needs at least one region and one indicator");
  }
  if (values_.size() != regions_.size() * indicators_.size()) {
    throw Error(ErrorKind::InvalidMatrix, "value count does not match regions x indicators");
  }
  std::set<std::string_view> seen;
  for (const auto& r : regions_) {
    if (!seen.insert(r).second) {
      throw Error(ErrorKind::DuplicateRegion, "region '" + r + "' appears twice", {{"region", r}});
    }
  }
  seen.clear();
  for (const auto& id : indicators_) {
    if (!seen.insert(id).second) {
      throw Error(ErrorKind::DuplicateIndicatorId, "indicator '" + id + "' appears twice",
                  {{"indicator", id}});
    }
  }
  for (std::size_t r = 0; r < regions_.size(); ++r) {
    for (std::size_t c = 0; c < indicators_.size(); ++c) {
      double v = value(r, c);
      ErrorContext where{{"region", regions_[r]}, {"indicator", indicators_[c]}};
      if (!std::isfinite(v)) {
        throw Error(ErrorKind::InvalidMatrix, "non-finite value at " + regions_[r] + "/" + indicators_[c],
                    where);
      }
      if (stage_ == Stage::Normalized && (v < 0.0 || v > 1.0)) {
        throw Error(ErrorKind::InvalidMatrix,
                    "normalized value outside [0,1] at " + regions_[r] + "/" + indicators_[c], where);
      }
    }
  }
}

double IndicatorMatrix::value(std::string_view region, std::string_view indicator) const
{
  auto r = region_index(region);
  auto c = indicator_index(indicator);
  if (!r) throw Error(ErrorKind::InvalidMatrix, "unknown region '" + std::string(region) + "'");
  if (!c) {
    throw Error(ErrorKind::UnknownIndicator, "unknown indicator '" + std::string(indicator) + "'",
                {{"indicator", std::string(indicator)}});
  }
  return value(*r, *c);
}

std::vector<double> IndicatorMatrix::column(std::size_t indicator) const
{
  std::vector<double> out(regions_.size());
  for (std::size_t r = 0; r < regions_.size(); ++r) out[r] = value(r, indicator);
  return out;
}

std::vector<double> IndicatorMatrix::column(std::string_view indicator) const
{
  auto c = indicator_index(indicator);
  if (!c) {
    throw Error(ErrorKind::UnknownIndicator, "unknown indicator '" + std::string(indicator) + "'",
                {{"indicator", std::string(indicator)}});
  }
  return column(*c);
}

std::optional<std::size_t> IndicatorMatrix::region_index(std::string_view label) const
{
  auto it = std::find(regions_.begin(), regions_.end(), label);
  if (it == regions_.end()) return std::nullopt;
  return static_cast<std::size_t>(it - regions_.begin());
}

std::optional<std::size_t> IndicatorMatrix::indicator_index(std::string_view id) const
{
  auto it = std::find(indicators_.begin(), indicators_.end(), id);
  if (it == indicators_.end()) return std::nullopt;
  return static_cast<std::size_t>(it - indicators_.begin());
}

void check_against_manifest(const IndicatorMatrix& matrix, const Manifest& manifest)
{
  for (const auto& id : matrix.indicators()) {
    if (!manifest.contains(id)) {
      throw Error(ErrorKind::UnknownIndicator, "indicator '" + id + "' is not in the manifest",
                  {{"indicator", id}});
    }
  }
  for (const auto& s : manifest.specs()) {
    if (!matrix.indicator_index(s.id)) {
      throw Error(ErrorKind::MissingIndicator, "manifest indicator '" + s.id + "' has no data column",
                  {{"indicator", s.id}});
    }
  }
}

// ------------------------------------------------------------ WeightScheme

double WeightScheme::indicator(std::string_view id) const
{
  auto it = indicator_.find(std::string(id));
  return it == indicator_.end() ? 0.0 : it->second;
}

PillarWeightInputs WeightScheme::pillar_inputs() const
{
  PillarWeightInputs in;
  for (Pillar p : kPillars) in[p] = pillar(p);
  return in;
}

namespace {

void check_weight(double w, const std::string& what, const ErrorContext& ctx)
{
  if (!std::isfinite(w) || w < 0.0) {
    throw Error(ErrorKind::NegativeWeight, what + " must be a nonnegative finite number", ctx);
  }
}

}  // namespace

WeightScheme build_weight_scheme(const Manifest& manifest, const PillarWeightInputs& pillar_inputs,
                                 const std::map<std::string, double>& indicator_overrides)
{
  std::array<double, kPillarCount> pillar{};
  for (const auto& [p, w] : pillar_inputs) {
    check_weight(w, "pillar weight", {{"pillar", std::string(to_string(p))}});
    pillar[index_of(p)] = w;
  }
  double pillar_total = std::accumulate(pillar.begin(), pillar.end(), 0.0);
  if (!(pillar_total > 0.0)) {
    throw Error(ErrorKind::AllZeroWeights, "all pillar weights are zero", {{"scope", "pillars"}});
  }
  for (double& w : pillar) w /= pillar_total;

  for (const auto& [id, w] : indicator_overrides) {
    if (!manifest.contains(id)) {
      throw Error(ErrorKind::WeightManifestMismatch, "weight given for unknown indicator '" + id + "'",
                  {{"indicator", id}});
    }
    check_weight(w, "indicator weight", {{"indicator", id}});
  }

  std::map<std::string, double> indicator;
  for (Pillar p : kPillars) {
    double total = 0.0;
    std::vector<std::pair<std::string, double>> raw;
    for (const auto& s : manifest.specs()) {
      if (s.pillar != p) continue;
      double w = 1.0;
      if (auto it = indicator_overrides.find(s.id); it != indicator_overrides.end()) {
        w = it->second;
      } else if (s.weight) {
        w = *s.weight;
      }
      raw.emplace_back(s.id, w);
      total += w;
    }
    if (!(total > 0.0)) {
      throw Error(ErrorKind::AllZeroWeights,
                  "all indicator weights in pillar " + std::string(to_string(p)) + " are zero",
                  {{"scope", std::string(to_string(p))}});
    }
    for (auto& [id, w] : raw) indicator[id] = w / total;
  }
  return WeightScheme(pillar, std::move(indicator));
}

PillarWeightInputs published_delphi_pillar_inputs()
{
  return {{Pillar::Economy, 28.4},
          {Pillar::SocialWelfare, 26.2},
          {Pillar::Environment, 24.0},
          {Pillar::Population, 21.0}};
}

// ------------------------------------------------------------ results

std::vector<double> PillarScores::column(Pillar p) const
{
  std::vector<double> out(scores.size());
  for (std::size_t r = 0; r < scores.size(); ++r) out[r] = scores[r][index_of(p)];
  return out;
}

double IndexResult::rescaled_of(std::string_view region) const
{
  auto it = std::find(regions.begin(), regions.end(), region);
  if (it == regions.end()) {
    throw Error(ErrorKind::RegionSetMismatch, "unknown region '" + std::string(region) + "'",
                {{"region", std::string(region)}});
  }
  return rescaled[static_cast<std::size_t>(it - regions.begin())];
}

std::size_t IndexResult::rank_of(std::string_view region) const
{
  auto it = std::find(ranking.begin(), ranking.end(), region);
  if (it == ranking.end()) {
    throw Error(ErrorKind::RegionSetMismatch, "unknown region '" + std::string(region) + "'",
                {{"region", std::string(region)}});
  }
  return static_cast<std::size_t>(it - ranking.begin()) + 1;
}

}  // namespace indexforge
