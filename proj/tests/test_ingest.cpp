#include "doctest.h"

#include <algorithm>
#include <fstream>
#include <numeric>
#include <random>
#include <sstream>

#include "indexforge/csv.hpp"
#include "indexforge/error.hpp"
#include "indexforge/ingest.hpp"
#include "support.hpp"

using namespace indexforge;
using support::kind_of;
using support::near;

namespace {

std::vector<std::string> fixture_lines()
{
  std::ifstream in(support::fixture("nuts3.csv"));
  std::vector<std::string> lines;
  for (std::string line; std::getline(in, line);) lines.push_back(line);
  return lines;
}

std::string join(const std::vector<std::string>& lines)
{
  std::string out;
  for (const auto& l : lines) out += l + "\n";
  return out;
}

std::vector<std::string> fields(const std::string& line)
{
  std::vector<std::string> out;
  std::stringstream ss(line);
  for (std::string f; std::getline(ss, f, ',');) out.push_back(f);
  if (!line.empty() && line.back() == ',') out.emplace_back();
  return out;
}

std::string unfields(const std::vector<std::string>& f)
{
  std::string out;
  for (std::size_t i = 0; i < f.size(); ++i) out += (i ? "," : "") + f[i];
  return out;
}

// Replaces the cell for (region, indicator) in the fixture text.
std::string with_cell(const std::string& region, const std::string& indicator, const std::string& text)
{
  auto lines = fixture_lines();
  auto header = fields(lines[0]);
  auto col = std::find(header.begin(), header.end(), indicator) - header.begin();
  for (auto& l : lines) {
    auto f = fields(l);
    if (f[0] == region) {
      f[col] = text;
      l = unfields(f);
    }
  }
  return join(lines);
}

IndicatorMatrix parse_text(const std::string& text)
{
  std::istringstream in(text);
  return parse_dataset_csv(in, support::fixture_manifest());
}

}  // namespace

TEST_SUITE("ingest") {

TEST_CASE("fixture loads as a dense 9 x 25 raw matrix")
{
  auto m = support::fixture_raw();
  CHECK(m.stage() == Stage::Raw);
  CHECK(m.region_count() == 9);
  CHECK(m.indicator_count() == 25);
  CHECK(m.regions() == support::fixture_regions());
  CHECK(m.value("Alto Minho", "PopDens") == doctest::Approx(103.80).epsilon(1e-15));
  CHECK(m.value("Região Autónoma da Madeira", "PopDens") == doctest::Approx(317.20).epsilon(1e-15));
  CHECK(m.value("Algarve", "Unemp") == doctest::Approx(15.74).epsilon(1e-15));
}

TEST_CASE("blank cell is reported as missing")
{
  try {
    parse_text(with_cell("Algarve", "R&D", ""));
    FAIL("expected MissingCell");
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::MissingCell);
    std::string msg = e.what();
    CHECK(msg.find("Algarve") != std::string::npos);
    CHECK(msg.find("R&D") != std::string::npos);
  }
}

TEST_CASE("non-numeric cell names region and indicator")
{
  try {
    parse_text(with_cell("Alto Alentejo", "Lit", "n/a"));
    FAIL("expected NonNumericCell");
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::NonNumericCell);
    auto ctx = e.context();
    CHECK(std::find(ctx.begin(), ctx.end(), std::pair<std::string, std::string>{"region", "Alto Alentejo"}) != ctx.end());
    CHECK(std::find(ctx.begin(), ctx.end(), std::pair<std::string, std::string>{"indicator", "Lit"}) != ctx.end());
  }
  CHECK(kind_of([] { parse_text(with_cell("Algarve", "Lit", "12,5")); }).has_value());
  CHECK(kind_of([] { parse_text(with_cell("Algarve", "Lit", "1e999")); }) == ErrorKind::NonNumericCell);
}

TEST_CASE("duplicate region")
{
  auto lines = fixture_lines();
  for (const auto& l : lines) {
    if (l.rfind("Algarve,", 0) == 0) {
      lines.push_back(l);
      break;
    }
  }
  CHECK(kind_of([&] { parse_text(join(lines)); }) == ErrorKind::DuplicateRegion);
}

TEST_CASE("header problems")
{
  auto lines = fixture_lines();
  SUBCASE("unknown indicator")
  {
    auto l = lines;
    l[0].replace(l[0].find("PopDens"), 7, "PopDenz");
    CHECK(kind_of([&] { parse_text(join(l)); }) == ErrorKind::UnknownIndicator);
  }
  SUBCASE("manifest indicator absent")
  {
    auto l = lines;
    for (auto& line : l) {
      auto f = fields(line);
      f.pop_back();
      line = unfields(f);
    }
    CHECK(kind_of([&] { parse_text(join(l)); }) == ErrorKind::MissingIndicator);
  }
  SUBCASE("first column must be region")
  {
    auto l = lines;
    l[0].replace(0, 6, "nuts3");
    CHECK(kind_of([&] { parse_text(join(l)); }) == ErrorKind::MalformedData);
  }
  SUBCASE("extra cell")
  {
    auto l = lines;
    l[3] += ",1.0";
    CHECK(kind_of([&] { parse_text(join(l)); }) == ErrorKind::MalformedData);
  }
}

TEST_CASE("column order in the data file does not matter")
{
  auto lines = fixture_lines();
  std::vector<std::vector<std::string>> table;
  for (const auto& l : lines) table.push_back(fields(l));
  std::vector<std::size_t> order(table[0].size() - 1);
  std::iota(order.begin(), order.end(), 1);
  std::mt19937_64 rng(5);
  std::shuffle(order.begin(), order.end(), rng);
  std::vector<std::string> shuffled;
  for (const auto& row : table) {
    std::vector<std::string> f{row[0]};
    for (auto c : order) f.push_back(row[c]);
    shuffled.push_back(unfields(f));
  }
  auto a = support::fixture_raw();
  auto b = parse_text(join(shuffled));
  CHECK(a.indicators() == b.indicators());
  CHECK(a.values() == b.values());
}

TEST_CASE("CSV and JSON round trips preserve the matrix")
{
  auto manifest = support::fixture_manifest();
  auto original = support::fixture_raw();

  std::stringstream csv;
  write_dataset_csv(csv, original);
  auto from_csv = parse_dataset_csv(csv, manifest);
  CHECK(from_csv.regions() == original.regions());
  CHECK(from_csv.indicators() == original.indicators());
  for (std::size_t i = 0; i < original.values().size(); ++i) {
    CHECK(near(from_csv.values()[i], original.values()[i], 1e-12));
  }

  std::stringstream json;
  write_dataset_json(json, original);
  auto from_json = parse_dataset_json(json, manifest);
  CHECK(from_json.regions() == original.regions());
  CHECK(from_json.values() == original.values());
}

TEST_CASE("JSON dataset errors")
{
  auto manifest = support::small_manifest({1, 1, 1, 1});
  std::istringstream bad_cell(R"({"regions":["a"],"indicators":["p0_0","p1_0","p2_0","p3_0"],"values":[[1,"x",3,4]]})");
  CHECK(kind_of([&] { parse_dataset_json(bad_cell, manifest); }) == ErrorKind::NonNumericCell);
  std::istringstream short_row(R"({"regions":["a"],"indicators":["p0_0","p1_0","p2_0","p3_0"],"values":[[1,2,3]]})");
  CHECK(kind_of([&] { parse_dataset_json(short_row, manifest); }) == ErrorKind::MissingCell);
  std::istringstream garbage("{not json");
  CHECK(kind_of([&] { parse_dataset_json(garbage, manifest); }) == ErrorKind::MalformedData);
}

TEST_CASE("missing files are I/O errors")
{
  auto manifest = support::fixture_manifest();
  CHECK(kind_of([&] { parse_dataset({"m.csv", "/no/such/file.csv"}, manifest); }) == ErrorKind::Io);
  CHECK(kind_of([] { load_manifest("/no/such/manifest.csv"); }) == ErrorKind::Io);
  CHECK(detect_format("x.JSON") == DataFormat::Json);
  CHECK(detect_format("x.csv") == DataFormat::Csv);
}

TEST_CASE("manifest parsing")
{
  auto m = support::fixture_manifest();
  std::stringstream out;
  write_manifest_csv(out, m);
  auto again = parse_manifest(out);
  REQUIRE(again.size() == m.size());
  for (std::size_t i = 0; i < m.size(); ++i) {
    CHECK(again.specs()[i].id == m.specs()[i].id);
    CHECK(again.specs()[i].label == m.specs()[i].label);
    CHECK(again.specs()[i].unit == m.specs()[i].unit);
  }

  std::istringstream bad_dir("id,label,pillar,direction,weight,unit\nx,X,Population,sideways,,\n");
  CHECK(kind_of([&] { parse_manifest(bad_dir); }) == ErrorKind::MalformedManifest);
  std::istringstream bad_header("id,label,pillar\n");
  CHECK(kind_of([&] { parse_manifest(bad_header); }) == ErrorKind::MalformedManifest);
  std::istringstream dup(
      "id,label,pillar,direction,weight,unit\nLit,a,Population,benefit,,\nLit,b,SocialWelfare,benefit,,\n");
  CHECK(kind_of([&] { parse_manifest(dup); }) == ErrorKind::DuplicateIndicatorId);
}

TEST_CASE("composite indicator")
{
  SUBCASE("hand computed example")
  {
    std::vector<NamedColumn> c{{"doctors", {10, 20, 30}}, {"beds", {5, 15, 10}}};
    auto out = composite_indicator(c);
    REQUIRE(out.size() == 3);
    CHECK(near(out[0], 0.0, 1e-15));
    CHECK(near(out[1], 0.75, 1e-15));
    CHECK(near(out[2], 0.75, 1e-15));
  }
  SUBCASE("region at the top of every component gets 1")
  {
    std::vector<NamedColumn> c{{"a", {1, 9, 4}}, {"b", {0, 7, 2}}};
    CHECK(composite_indicator(c)[1] == 1.0);
  }
  SUBCASE("constant component")
  {
    std::vector<NamedColumn> c{{"doctors", {1, 3}}, {"beds", {2, 2}}};
    try {
      composite_indicator(c);
      FAIL("expected ConstantComponent");
    } catch (const Error& e) {
      CHECK(e.kind() == ErrorKind::ConstantComponent);
      CHECK(std::string(e.what()).find("beds") != std::string::npos);
    }
  }
  SUBCASE("shape errors")
  {
    std::vector<NamedColumn> one{{"a", {1, 2}}};
    CHECK(kind_of([&] { composite_indicator(one); }) == ErrorKind::TooShort);
    std::vector<NamedColumn> ragged{{"a", {1, 2}}, {"b", {1, 2, 3}}};
    CHECK(kind_of([&] { composite_indicator(ragged); }) == ErrorKind::LengthMismatch);
  }
  SUBCASE("permutation equivariant in regions and symmetric in components")
  {
    std::mt19937_64 rng(3);
    std::uniform_real_distribution<double> u(0, 100);
    for (int t = 0; t < 100; ++t) {
      std::size_t n = 3 + t % 8;
      std::vector<NamedColumn> cols(2 + t % 3);
      for (std::size_t k = 0; k < cols.size(); ++k) {
        cols[k].name = "c" + std::to_string(k);
        for (std::size_t i = 0; i < n; ++i) cols[k].values.push_back(u(rng));
      }
      auto base = composite_indicator(cols);

      std::vector<std::size_t> perm(n);
      std::iota(perm.begin(), perm.end(), 0);
      std::shuffle(perm.begin(), perm.end(), rng);
      auto permuted = cols;
      for (std::size_t k = 0; k < cols.size(); ++k) {
        for (std::size_t i = 0; i < n; ++i) permuted[k].values[i] = cols[k].values[perm[i]];
      }
      auto moved = composite_indicator(permuted);
      for (std::size_t i = 0; i < n; ++i) CHECK(near(moved[i], base[perm[i]], 1e-12));

      auto reversed = cols;
      std::reverse(reversed.begin(), reversed.end());
      auto swapped = composite_indicator(reversed);
      for (std::size_t i = 0; i < n; ++i) CHECK(near(swapped[i], base[i], 1e-12));
    }
  }
}

TEST_CASE("CSV field splitting")
{
  CHECK(csv::split_line(R"(a,"b,c","d""e")") == csv::Row{"a", "b,c", "d\"e"});
  CHECK(kind_of([] { csv::split_line(R"(a,"open)"); }) == ErrorKind::MalformedData);
  CHECK(csv::format_fixed(-0.0) == "0.000000");
  CHECK(csv::format_fixed(-1e-9) == "0.000000");
  CHECK(csv::format_fixed(0.25) == "0.250000");
  CHECK(csv::format_fixed(2.0 / 3.0) == "0.666667");
}

}
