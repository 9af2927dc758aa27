#include "doctest.h"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "generators.hpp"
#include "indexforge/aggregate.hpp"
#include "oracle.hpp"
#include "property_checks.hpp"
#include "support.hpp"

using namespace indexforge;
using support::kind_of;
using support::near;

namespace {

// Reference values from an independent spreadsheet-style pass over the fixture,
// in fixture region order.
const std::array<std::array<double, 9>, 4> kPillarMeans{{
    {0.341027, 0.028990, 0.352032, 0.062722, 0.268092, 0.120916, 0.594561, 0.854117, 0.844881},
    {0.370938, 0.443450, 0.762976, 0.406851, 0.151132, 0.347413, 0.616335, 0.419855, 0.429390},
    {0.182814, 0.282953, 0.691316, 0.188566, 0.708035, 0.244567, 0.328979, 0.510381, 0.285513},
    {0.426129, 0.490690, 0.242203, 0.503267, 0.395730, 0.441231, 0.575900, 0.215462, 0.771920},
}};
const std::array<double, 9> kAbreuRaw{0.315072, 0.205543, 0.460508, 0.221835, 0.326417,
                                      0.259477, 0.513313, 0.445626, 0.531755};
const std::array<double, 9> kAbreuRescaled{0.335761, 0.0, 0.781594, 0.049943, 0.370540,
                                           0.165335, 0.943466, 0.735974, 1.0};
const std::array<double, 9> kDelphiRaw{0.324288, 0.321683, 0.530411, 0.295285, 0.393527,
                                       0.292939, 0.520064, 0.487978, 0.558506};
const std::array<double, 9> kDelphiRescaled{0.118047, 0.108236, 0.894207, 0.008832, 0.378768,
                                            0.0, 0.855245, 0.734425, 1.0};

}  // namespace

TEST_SUITE("aggregate") {

TEST_CASE("pillar means on the fixture")
{
  auto manifest = support::fixture_manifest();
  auto raw = support::fixture_raw();
  auto norm = support::fixture_normalized();
  auto ps = pillar_arithmetic_means(norm.matrix, manifest);
  CHECK(ps.method == Method::Abreu);
  REQUIRE(ps.scores.size() == 9);
  for (auto p : kPillars) {
    for (std::size_t r = 0; r < 9; ++r) CHECK(near(ps.score(r, p), kPillarMeans[index_of(p)][r], 5e-7));
  }
  CHECK(near(ps.score(8, Pillar::Population), 0.8448814178245152, 1e-14));

  // Same numbers straight from the raw columns.
  for (auto p : kPillars) {
    std::vector<double> sum(9, 0.0);
    auto ids = manifest.ids_in(p);
    for (const auto& id : ids) {
      auto n = oracle::minmax(raw.column(id), manifest.at(id).direction == Direction::Cost);
      for (std::size_t r = 0; r < 9; ++r) sum[r] += n[r];
    }
    for (std::size_t r = 0; r < 9; ++r) CHECK(near(ps.score(r, p), sum[r] / ids.size(), 1e-14));
  }
}

TEST_CASE("pillar mean of a small matrix")
{
  auto manifest = support::small_manifest({3, 1, 1, 1});
  IndicatorMatrix m({"a", "b"}, support::ids_of(manifest), {0.2, 0.4, 0.6, 1, 1, 1, 1, 1, 1, 0, 0, 0},
                    Stage::Normalized);
  auto ps = pillar_arithmetic_means(m, manifest);
  CHECK(near(ps.score(0, Pillar::Population), 0.4, 1e-15));
  CHECK(ps.score(1, Pillar::Population) == 1.0);
  CHECK(kind_of([&] { pillar_arithmetic_means(IndicatorMatrix({"a"}, {"p0_0", "p0_1", "p0_2", "p1_0", "p2_0", "p3_0"},
                                                              {1, 2, 3, 4, 5, 6}, Stage::Raw),
                                              manifest); }) == ErrorKind::InvalidMatrix);
}

TEST_CASE("geometric mean")
{
  std::vector<double> even{0.25, 0.25, 0.25, 0.25};
  CHECK(near(geometric_mean(even), 0.25, 1e-15));
  std::vector<double> zero{0.9, 0.9, 0.9, 0.0};
  CHECK(geometric_mean(zero) == 0.0);
  std::vector<double> spread{0.1, 0.2, 0.4, 0.8};
  CHECK(near(geometric_mean(spread), std::pow(0.0064, 0.25), 1e-15));
  CHECK(near(geometric_mean(spread), 0.28284, 5e-6));
  std::vector<double> negative{0.1, -0.2, 0.4, 0.8};
  CHECK(kind_of([&] { geometric_mean(negative); }) == ErrorKind::NegativeInput);
}

TEST_CASE("Abreu index on the fixture")
{
  auto manifest = support::fixture_manifest();
  auto norm = support::fixture_normalized();
  auto r = compute_abreu(norm.matrix, manifest);
  CHECK(r.method == Method::Abreu);
  for (std::size_t i = 0; i < 9; ++i) {
    CHECK(near(r.raw[i], kAbreuRaw[i], 5e-7));
    CHECK(near(r.rescaled[i], kAbreuRescaled[i], 5e-7));
  }
  CHECK(r.rescaled_of("Região Autónoma da Madeira") == 1.0);
  CHECK(r.rescaled_of("Terras de Trás-os-Montes") == 0.0);
  CHECK(near(r.rescaled_of("Algarve"), 0.94, 0.03));
  CHECK(near(r.rescaled_of("Região de Coimbra"), 0.78, 0.03));
  CHECK(r.ranking.front() == "Região Autónoma da Madeira");
  CHECK(r.ranking.back() == "Terras de Trás-os-Montes");
  CHECK(r.rank_of("Algarve") == 2);
}

TEST_CASE("Abreu on two regions spans exactly 0 and 1")
{
  auto manifest = support::small_manifest({1, 1, 1, 1});
  IndicatorMatrix raw({"a", "b"}, support::ids_of(manifest), {5, 2, 9, 3, 4, 1, 7, 1}, Stage::Raw);
  auto r = compute_abreu(normalize_matrix(raw, manifest).matrix, manifest);
  CHECK(r.rescaled == std::vector<double>{1.0, 0.0});
}

TEST_CASE("a dominating region ranks higher")
{
  auto manifest = support::small_manifest({2, 1, 1, 2}, {"p0_1"});
  // a beats b everywhere once direction is applied (p0_1 is a cost).
  IndicatorMatrix raw({"a", "b", "c"}, support::ids_of(manifest),
                      {9, 1, 9, 9, 9, 9, 5, 5, 5, 5, 5, 5, 1, 3, 6, 2, 1, 7}, Stage::Raw);
  auto norm = normalize_matrix(raw, manifest).matrix;
  auto abreu = compute_abreu(norm, manifest);
  CHECK(abreu.rank_of("a") < abreu.rank_of("b"));
  auto delphi = compute_delphi(norm, manifest, build_weight_scheme(manifest, published_delphi_pillar_inputs()));
  CHECK(delphi.rank_of("a") < delphi.rank_of("b"));
}

TEST_CASE("Delphi on the fixture with published pillar weights")
{
  auto manifest = support::fixture_manifest();
  auto norm = support::fixture_normalized();
  auto w = build_weight_scheme(manifest, published_delphi_pillar_inputs());
  auto r = compute_delphi(norm.matrix, manifest, w);
  CHECK(r.method == Method::Delphi);
  for (std::size_t i = 0; i < 9; ++i) {
    CHECK(near(r.raw[i], kDelphiRaw[i], 5e-7));
    CHECK(near(r.rescaled[i], kDelphiRescaled[i], 5e-7));
  }
  auto pub = support::published_table();
  CHECK(oracle::pearson(r.rescaled, support::published(pub, Method::Delphi).rescaled) >= 0.9);
}

TEST_CASE("Delphi weight collapse cases")
{
  auto manifest = support::small_manifest({2, 2, 2, 2});
  gen::Rng rng(4);
  std::vector<double> v(5 * 8);
  for (double& x : v) x = gen::uniform(rng, 0, 10);
  auto norm = normalize_matrix(IndicatorMatrix(support::region_labels(5), support::ids_of(manifest), v, Stage::Raw),
                               manifest)
                  .matrix;

  PillarWeightInputs equal;
  for (auto p : kPillars) equal[p] = 1.0;
  auto flat = compute_delphi(norm, manifest, build_weight_scheme(manifest, equal));
  for (std::size_t r = 0; r < 5; ++r) {
    auto row = norm.row(r);
    double mean = std::accumulate(row.begin(), row.end(), 0.0) / row.size();
    CHECK(near(flat.raw[r], mean, 1e-12));
  }

  PillarWeightInputs only_economy{{Pillar::Economy, 1.0}};
  auto one = compute_delphi(norm, manifest, build_weight_scheme(manifest, only_economy));
  auto means = pillar_arithmetic_means(norm, manifest);
  for (std::size_t r = 0; r < 5; ++r) CHECK(near(one.raw[r], means.score(r, Pillar::Economy), 1e-15));
}

TEST_CASE("Delphi rejects weights for unknown indicators")
{
  auto manifest = support::fixture_manifest();
  auto norm = support::fixture_normalized();
  auto good = build_weight_scheme(manifest, published_delphi_pillar_inputs());
  auto ind = good.indicator_weights();
  ind["Ghost"] = 0.5;
  WeightScheme bad(good.pillar_weights(), ind);
  CHECK(kind_of([&] { compute_delphi(norm.matrix, manifest, bad); }) == ErrorKind::WeightManifestMismatch);
}

TEST_CASE("aggregation config dispatch")
{
  auto manifest = support::fixture_manifest();
  auto norm = support::fixture_normalized();
  AggregationConfig abreu{Method::Abreu, build_weight_scheme(manifest, {{Pillar::Economy, 1.0}})};
  auto a = aggregate(norm.matrix, manifest, abreu);
  auto plain = compute_abreu(norm.matrix, manifest);
  CHECK(a.raw == plain.raw);  // weights have no say in Abreu

  AggregationConfig delphi{Method::Delphi, std::nullopt};
  CHECK(kind_of([&] { aggregate(norm.matrix, manifest, delphi); }).has_value());
  AggregationConfig pca{Method::Pca, std::nullopt};
  CHECK(kind_of([&] { aggregate(norm.matrix, manifest, pca); }) == ErrorKind::Usage);
}

TEST_CASE("final rescale")
{
  std::vector<double> flat{5, 5, 5};
  auto r = rescale_final(flat);
  CHECK(r.values == std::vector<double>{0.5, 0.5, 0.5});
  CHECK(r.degenerate);
  auto result = make_index_result(Method::Abreu, {"a", "b", "c"}, flat);
  CHECK_FALSE(result.warnings.empty());

  std::vector<double> inc{-3, -1, 0, 2, 10};
  auto s = rescale_final(inc);
  CHECK(s.values.front() == 0.0);
  CHECK(s.values.back() == 1.0);
  for (std::size_t i = 1; i < s.values.size(); ++i) CHECK(s.values[i] > s.values[i - 1]);
}

TEST_CASE("ranking ties fall back to region label")
{
  std::vector<std::string> regions{"beta", "alpha", "gamma"};
  std::vector<double> v{0.5, 0.5, 0.9};
  CHECK(rank_regions(regions, v) == std::vector<std::string>{"gamma", "alpha", "beta"});
}

TEST_CASE("aggregation properties on random data")
{
  gen::Rng rng(77);
  for (int t = 0; t < 150; ++t) {
    auto ds = gen::dataset(rng);
    CHECK_MESSAGE(checks::am_gm(ds).empty(), "trial ", t);
    CHECK_MESSAGE(checks::zero_pillar(ds, rng).empty(), "trial ", t);
    CHECK_MESSAGE(checks::rescale_rank_invariance(ds, rng).empty(), "trial ", t);
    CHECK_MESSAGE(checks::delphi_scaling(ds, rng).empty(), "trial ", t);

    auto norm = normalize_matrix(ds.raw, ds.manifest).matrix;
    auto ps = pillar_arithmetic_means(norm, ds.manifest);
    for (const auto& row : ps.scores) {
      for (double v : row) CHECK((v >= 0.0 && v <= 1.0));
    }
  }
}

}
