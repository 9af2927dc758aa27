#include "indexforge/report.hpp"

#include <cstdio>
#include <fstream>

#include "indexforge/csv.hpp"
#include "indexforge/error.hpp"

namespace indexforge {

using nlohmann::ordered_json;

void write_index_csv(std::ostream& out, const IndexResult& result)
{
  csv::write_row(out, {"region", "raw", "rescaled", "rank"});
  for (std::size_t r = 0; r < result.regions.size(); ++r) {
    const auto& region = result.regions[r];
    csv::write_row(out, {region, csv::format_fixed(result.raw[r]), csv::format_fixed(result.rescaled[r]),
                         std::to_string(result.rank_of(region))});
  }
}

ordered_json to_json(const IndexResult& result)
{
  ordered_json doc;
  doc["method"] = std::string(to_string(result.method));
  doc["name"] = std::string(display_name(result.method));
  auto rows = ordered_json::array();
  for (std::size_t r = 0; r < result.regions.size(); ++r) {
    const auto& region = result.regions[r];
    rows.push_back({{"region", region},
                    {"raw", result.raw[r]},
                    {"rescaled", result.rescaled[r]},
                    {"rank", result.rank_of(region)}});
  }
  doc["regions"] = std::move(rows);
  doc["ranking"] = result.ranking;
  doc["warnings"] = result.warnings;
  return doc;
}

ordered_json to_json(const DescriptiveStats& s)
{
  return {{"min", s.min},   {"q1", s.q1},     {"median", s.median},           {"q3", s.q3},
          {"max", s.max},   {"iqr", s.iqr},   {"mean", s.mean},               {"sd", s.sd},
          {"whisker_low", s.whisker_low},     {"whisker_high", s.whisker_high}};
}

ordered_json to_json(const ComparisonReport& report)
{
  ordered_json doc;
  auto methods = ordered_json::array();
  for (Method m : report.methods) methods.push_back(std::string(to_string(m)));
  doc["methods"] = std::move(methods);

  ordered_json pearson_block, crossing_block, stats_block, ranking_block;
  for (Method a : report.methods) {
    ordered_json prow, crow;
    for (Method b : report.methods) {
      prow[std::string(to_string(b))] = report.pairwise_r.at({a, b});
      crow[std::string(to_string(b))] = report.crossings.at({a, b});
    }
    pearson_block[std::string(to_string(a))] = std::move(prow);
    crossing_block[std::string(to_string(a))] = std::move(crow);
    stats_block[std::string(to_string(a))] = to_json(report.per_method_stats.at(a));
    ranking_block[std::string(to_string(a))] = report.rankings.at(a);
  }
  doc["pearson"] = std::move(pearson_block);
  doc["stats"] = std::move(stats_block);
  doc["rankings"] = std::move(ranking_block);
  doc["crossings"] = std::move(crossing_block);
  return doc;
}

void write_report_csv(std::ostream& out, const ComparisonReport& report)
{
  csv::write_row(out, {"table", "key_a", "key_b", "value"});
  for (Method a : report.methods) {
    for (Method b : report.methods) {
      csv::write_row(out, {"pearson", std::string(to_string(a)), std::string(to_string(b)),
                           csv::format_fixed(report.pairwise_r.at({a, b}))});
    }
  }
  for (Method m : report.methods) {
    const auto& s = report.per_method_stats.at(m);
    const std::pair<const char*, double> fields[] = {
        {"min", s.min},   {"q1", s.q1},   {"median", s.median}, {"q3", s.q3},
        {"max", s.max},   {"iqr", s.iqr}, {"mean", s.mean},     {"sd", s.sd},
        {"whisker_low", s.whisker_low},   {"whisker_high", s.whisker_high}};
    for (const auto& [name, value] : fields) {
      csv::write_row(out, {"stats", std::string(to_string(m)), name, csv::format_fixed(value)});
    }
  }
  for (Method a : report.methods) {
    for (Method b : report.methods) {
      csv::write_row(out, {"crossings", std::string(to_string(a)), std::string(to_string(b)),
                           std::to_string(report.crossings.at({a, b}))});
    }
  }
  for (Method m : report.methods) {
    const auto& ranking = report.rankings.at(m);
    for (std::size_t i = 0; i < ranking.size(); ++i) {
      csv::write_row(out, {"ranking", std::string(to_string(m)), std::to_string(i + 1), ranking[i]});
    }
  }
}

// ------------------------------------------------------------------ PCA audit

PcaReference load_pca_reference(const std::filesystem::path& path)
{
  std::ifstream in(path);
  if (!in) throw Error(ErrorKind::Io, "cannot open '" + path.string() + "'", {{"path", path.string()}});
  PcaReference ref;
  try {
    auto doc = nlohmann::json::parse(in);
    ref.source = doc.value("source", std::string());
    ref.cumulative_tolerance = doc.value("cumulative_tolerance", ref.cumulative_tolerance);
    ref.first_share_tolerance = doc.value("first_share_tolerance", ref.first_share_tolerance);
    for (Pillar p : kPillars) {
      const auto& e = doc.at("pillars").at(std::string(to_string(p)));
      ref.pillars[index_of(p)] = {e.at("factors").get<std::size_t>(), e.at("cumulative").get<double>()};
    }
    const auto& s2 = doc.at("stage2");
    ref.stage2 = {s2.at("factors").get<std::size_t>(), s2.at("cumulative").get<double>()};
    ref.stage2_first_share = s2.at("first_share").get<double>();
  } catch (const nlohmann::json::exception& e) {
    throw Error(ErrorKind::MalformedData, std::string("invalid PCA reference: ") + e.what(),
                {{"path", path.string()}});
  }
  return ref;
}

namespace {

ordered_json stage_json(const PcaStage& stage)
{
  ordered_json doc;
  doc["name"] = stage.name;
  doc["basis"] = std::string(to_string(stage.basis));
  doc["columns"] = stage.columns;
  doc["dropped"] = stage.dropped;
  doc["eigenvalues"] = stage.eigenvalues;
  doc["variance_shares"] = stage.variance_shares;
  std::vector<double> cumulative;
  double sum = 0.0;
  for (double s : stage.variance_shares) cumulative.push_back(sum += s);
  doc["cumulative_by_count"] = cumulative;
  doc["retained"] = stage.retained_count();
  doc["cumulative_variance"] = stage.cumulative_variance;
  doc["cap_reached_below_threshold"] = stage.cap_reached_below_threshold;
  auto factors = ordered_json::array();
  for (const auto& f : stage.retained) {
    ordered_json loadings;
    for (std::size_t j = 0; j < stage.columns.size(); ++j) loadings[stage.columns[j]] = f.pair.vector[j];
    factors.push_back({{"eigenvalue", f.pair.value},
                       {"variance_share", f.variance_share},
                       {"sign_flipped", f.sign_flipped},
                       {"loadings", std::move(loadings)}});
  }
  doc["factors"] = std::move(factors);
  doc["warnings"] = stage.warnings;
  return doc;
}

std::string fmt4(double v)
{
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.4f", v);
  return buf;
}

}  // namespace

ordered_json pca_audit_json(const PcaOutcome& outcome, const PcaReference* reference)
{
  ordered_json doc;
  doc["score_convention"] = "standardized (correlation) or centred (covariance) data times unit eigenvector";
  doc["sign_convention"] = "loadings sum >= 0; zero sum resolved by first nonzero loading positive";
  auto stages = ordered_json::array();
  for (const auto& s : outcome.pillars) stages.push_back(stage_json(s));
  stages.push_back(stage_json(outcome.stage2));
  doc["stages"] = std::move(stages);
  if (!reference) return doc;

  ordered_json cmp;
  cmp["source"] = reference->source;
  cmp["cumulative_tolerance"] = reference->cumulative_tolerance;
  cmp["first_share_tolerance"] = reference->first_share_tolerance;
  auto entries = ordered_json::array();
  std::vector<std::string> deviations;
  auto check = [&](const PcaStage& stage, const PcaReference::Entry& expected) {
    const bool factors_match = stage.retained_count() == expected.factors;
    const bool in_band =
        std::abs(stage.cumulative_variance - expected.cumulative) <= reference->cumulative_tolerance;
    entries.push_back({{"stage", stage.name},
                       {"expected_factors", expected.factors},
                       {"computed_factors", stage.retained_count()},
                       {"expected_cumulative", expected.cumulative},
                       {"computed_cumulative", stage.cumulative_variance},
                       {"factors_match", factors_match},
                       {"cumulative_in_band", in_band}});
    if (!factors_match || !in_band) {
      std::string note = stage.name + ": retained " + std::to_string(stage.retained_count()) +
                         " factor(s), cumulative " + fmt4(stage.cumulative_variance) + "; reference " +
                         std::to_string(expected.factors) + " factor(s), " + fmt4(expected.cumulative);
      if (expected.factors >= 1 && expected.factors <= stage.variance_shares.size()) {
        double at_expected = 0.0;
        for (std::size_t k = 0; k < expected.factors; ++k) at_expected += stage.variance_shares[k];
        note += "; with " + std::to_string(expected.factors) + " factor(s) cumulative would be " +
                fmt4(at_expected);
      }
      deviations.push_back(std::move(note));
    }
    return factors_match && in_band;
  };
  bool all = true;
  for (Pillar p : kPillars) all = check(outcome.pillars[index_of(p)], reference->pillars[index_of(p)]) && all;
  all = check(outcome.stage2, reference->stage2) && all;

  const double first = outcome.stage2.variance_shares.empty() ? 0.0 : outcome.stage2.variance_shares.front();
  const bool first_ok = std::abs(first - reference->stage2_first_share) <= reference->first_share_tolerance;
  cmp["stage2_first_share"] = {{"expected", reference->stage2_first_share},
                               {"computed", first},
                               {"in_band", first_ok}};
  if (!first_ok) {
    deviations.push_back("stage2: first factor share " + fmt4(first) + "; reference " +
                         fmt4(reference->stage2_first_share));
  }
  cmp["entries"] = std::move(entries);
  cmp["all_in_band"] = all && first_ok;
  cmp["deviations"] = deviations;
  doc["reference_comparison"] = std::move(cmp);
  return doc;
}

}  // namespace indexforge
