#include "indexforge/stats.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <set>
#include <sstream>

#include "json.hpp"

#include "indexforge/aggregate.hpp"
#include "indexforge/csv.hpp"
#include "indexforge/error.hpp"

namespace indexforge {

double pearson(std::span<const double> x, std::span<const double> y)
{
  if (x.size() != y.size()) throw Error(ErrorKind::LengthMismatch, "pearson needs equal-length vectors");
  if (x.size() < 2) throw Error(ErrorKind::TooShort, "pearson needs at least two observations");
  auto constant = [](std::span<const double> v) {
    auto [lo, hi] = std::minmax_element(v.begin(), v.end());
    return !(*hi > *lo);
  };
  if (constant(x) || constant(y)) throw Error(ErrorKind::ConstantVector, "pearson of a constant vector");
  const double n = static_cast<double>(x.size());
  const double mx = std::accumulate(x.begin(), x.end(), 0.0) / n;
  const double my = std::accumulate(y.begin(), y.end(), 0.0) / n;
  double sxy = 0.0, sxx = 0.0, syy = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    const double dx = x[i] - mx;
    const double dy = y[i] - my;
    sxy += dx * dy;
    sxx += dx * dx;
    syy += dy * dy;
  }
  return std::clamp(sxy / std::sqrt(sxx * syy), -1.0, 1.0);
}

namespace {

double median_of_sorted(std::span<const double> v)
{
  const std::size_t n = v.size();
  return n % 2 ? v[n / 2] : 0.5 * (v[n / 2 - 1] + v[n / 2]);
}

}  // namespace

DescriptiveStats describe(std::span<const double> x)
{
  if (x.size() < 2) throw Error(ErrorKind::TooShort, "describe needs at least two values");
  std::vector<double> v(x.begin(), x.end());
  std::sort(v.begin(), v.end());
  const std::size_t n = v.size();
  const std::size_t half = (n + 1) / 2;  // median shared by both halves when n is odd
  std::span<const double> all(v);

  DescriptiveStats s;
  s.min = v.front();
  s.max = v.back();
  s.median = median_of_sorted(all);
  s.q1 = median_of_sorted(all.first(half));
  s.q3 = median_of_sorted(all.last(half));
  s.iqr = s.q3 - s.q1;
  s.mean = std::accumulate(v.begin(), v.end(), 0.0) / static_cast<double>(n);
  double ss = 0.0;
  for (double d : v) ss += (d - s.mean) * (d - s.mean);
  s.sd = std::sqrt(ss / static_cast<double>(n - 1));
  s.whisker_low = s.q1 - 1.5 * s.iqr;
  s.whisker_high = s.q3 + 1.5 * s.iqr;
  return s;
}

namespace {

void require_same_regions(std::span<const std::string> a, std::span<const std::string> b)
{
  std::set<std::string_view> sa(a.begin(), a.end());
  std::set<std::string_view> sb(b.begin(), b.end());
  if (a.size() != b.size() || sa != sb || sa.size() != a.size()) {
    throw Error(ErrorKind::RegionSetMismatch, "inputs cover different region sets");
  }
}

// Values of `r` reordered to follow `regions`.
std::vector<double> aligned(const IndexResult& r, std::span<const std::string> regions)
{
  std::vector<double> out;
  out.reserve(regions.size());
  for (const auto& region : regions) out.push_back(r.rescaled_of(region));
  return out;
}

std::size_t count_inversions(std::vector<std::size_t>& v, std::vector<std::size_t>& scratch,
                             std::size_t lo, std::size_t hi)
{
  if (hi - lo < 2) return 0;
  const std::size_t mid = lo + (hi - lo) / 2;
  std::size_t count = count_inversions(v, scratch, lo, mid) + count_inversions(v, scratch, mid, hi);
  std::size_t i = lo, j = mid, k = lo;
  while (i < mid && j < hi) {
    if (v[j] < v[i]) {
      count += mid - i;
      scratch[k++] = v[j++];
    } else {
      scratch[k++] = v[i++];
    }
  }
  while (i < mid) scratch[k++] = v[i++];
  while (j < hi) scratch[k++] = v[j++];
  std::copy(scratch.begin() + static_cast<std::ptrdiff_t>(lo), scratch.begin() + static_cast<std::ptrdiff_t>(hi),
            v.begin() + static_cast<std::ptrdiff_t>(lo));
  return count;
}

}  // namespace

Rankings rank_table(std::span<const IndexResult> results)
{
  Rankings out;
  if (results.empty()) return out;
  for (const auto& r : results) {
    require_same_regions(results.front().regions, r.regions);
    out[r.method] = rank_regions(r.regions, r.rescaled);
  }
  return out;
}

std::size_t crossings(std::span<const std::string> rank_a, std::span<const std::string> rank_b)
{
  require_same_regions(rank_a, rank_b);
  std::vector<std::size_t> positions;
  positions.reserve(rank_a.size());
  for (const auto& region : rank_a) {
    positions.push_back(static_cast<std::size_t>(std::find(rank_b.begin(), rank_b.end(), region) -
                                                 rank_b.begin()));
  }
  std::vector<std::size_t> scratch(positions.size());
  return count_inversions(positions, scratch, 0, positions.size());
}

ComparisonReport compare_methods(std::span<const IndexResult> results)
{
  std::set<Method> distinct;
  for (const auto& r : results) {
    if (!distinct.insert(r.method).second) {
      throw Error(ErrorKind::Usage, "method " + std::string(to_string(r.method)) + " given twice");
    }
  }
  if (distinct.size() < 2) {
    throw Error(ErrorKind::FewerThanTwoMethods, "comparison needs at least two methods");
  }
  ComparisonReport report;
  report.rankings = rank_table(results);
  const auto& regions = results.front().regions;
  for (const auto& r : results) {
    report.methods.push_back(r.method);
    report.per_method_stats[r.method] = describe(r.rescaled);
  }
  for (const auto& a : results) {
    auto xa = aligned(a, regions);
    for (const auto& b : results) {
      std::pair key{a.method, b.method};
      if (a.method == b.method) {
        report.pairwise_r[key] = 1.0;
        report.crossings[key] = 0;
        continue;
      }
      if (report.pairwise_r.contains({b.method, a.method})) {
        report.pairwise_r[key] = report.pairwise_r.at({b.method, a.method});
        report.crossings[key] = report.crossings.at({b.method, a.method});
        continue;
      }
      report.pairwise_r[key] = pearson(xa, aligned(b, regions));
      report.crossings[key] = crossings(report.rankings.at(a.method), report.rankings.at(b.method));
    }
  }
  return report;
}

// ------------------------------------------------------------ exports

ParallelCoordinates parallel_coordinates_export(std::span<const IndexResult> results)
{
  if (results.size() < 2) throw Error(ErrorKind::FewerThanTwoMethods, "parallel coordinates need two axes");
  ParallelCoordinates pc;
  const auto& regions = results.front().regions;
  for (const auto& r : results) {
    require_same_regions(regions, r.regions);
    pc.axes.push_back(r.method);
  }
  for (const auto& region : regions) {
    Polyline line{region, {}};
    for (const auto& r : results) line.values.push_back(r.rescaled_of(region));
    pc.lines.push_back(std::move(line));
  }
  return pc;
}

void write_parallel_csv(std::ostream& out, const ParallelCoordinates& pc)
{
  csv::Row header{"region"};
  for (Method m : pc.axes) header.emplace_back(to_string(m));
  csv::write_row(out, header);
  for (const auto& line : pc.lines) {
    csv::Row row{line.region};
    for (double v : line.values) row.push_back(csv::format_fixed(v));
    csv::write_row(out, row);
  }
}

namespace {

std::vector<Method> parse_axes(const csv::Row& header)
{
  if (header.empty() || csv::trim(header.front()) != "region") {
    throw Error(ErrorKind::MalformedData, "first column must be 'region'");
  }
  std::vector<Method> axes;
  for (std::size_t c = 1; c < header.size(); ++c) {
    auto m = parse_method(csv::trim(header[c]));
    if (!m) {
      throw Error(ErrorKind::MalformedData, "unknown method column '" + header[c] + "'",
                  {{"column", header[c]}});
    }
    axes.push_back(*m);
  }
  return axes;
}

std::vector<std::pair<std::string, std::vector<double>>> parse_method_table(std::istream& in,
                                                                           std::vector<Method>& axes)
{
  auto rows = csv::read_rows(in);
  if (rows.empty()) throw Error(ErrorKind::MalformedData, "table is empty");
  axes = parse_axes(rows.front());
  std::vector<std::pair<std::string, std::vector<double>>> out;
  for (std::size_t i = 1; i < rows.size(); ++i) {
    const auto& row = rows[i];
    std::string region(csv::trim(row.front()));
    std::vector<double> values;
    for (std::size_t c = 0; c < axes.size(); ++c) {
      std::string method(to_string(axes[c]));
      ErrorContext where{{"region", region}, {"indicator", method}};
      if (c + 1 >= row.size() || csv::trim(row[c + 1]).empty()) {
        throw Error(ErrorKind::MissingCell, "missing value for " + region + "/" + method, where);
      }
      std::string cell(csv::trim(row[c + 1]));
      std::size_t used = 0;
      double v = 0.0;
      try {
        v = std::stod(cell, &used);
      } catch (const std::exception&) {
        used = 0;
      }
      if (used != cell.size() || !std::isfinite(v)) {
        throw Error(ErrorKind::NonNumericCell, "non-numeric value '" + cell + "'", where);
      }
      values.push_back(v);
    }
    out.emplace_back(std::move(region), std::move(values));
  }
  return out;
}

std::string xml_escape(std::string_view s)
{
  std::string out;
  for (char c : s) {
    switch (c) {
      case '&': out += "&amp;"; break;
      case '<': out += "&lt;"; break;
      case '>': out += "&gt;"; break;
      case '"': out += "&quot;"; break;
      default: out += c;
    }
  }
  return out;
}

std::string fmt2(double v)
{
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.2f", v);
  return buf;
}

}  // namespace

ParallelCoordinates parse_parallel_csv(std::istream& in)
{
  ParallelCoordinates pc;
  for (auto& [region, values] : parse_method_table(in, pc.axes)) {
    pc.lines.push_back({std::move(region), std::move(values)});
  }
  return pc;
}

std::string parallel_json(const ParallelCoordinates& pc)
{
  nlohmann::ordered_json doc;
  auto axes = nlohmann::ordered_json::array();
  for (Method m : pc.axes) axes.push_back(std::string(to_string(m)));
  doc["axes"] = std::move(axes);
  auto lines = nlohmann::ordered_json::array();
  for (const auto& l : pc.lines) lines.push_back({{"region", l.region}, {"values", l.values}});
  doc["lines"] = std::move(lines);
  return doc.dump(2) + "\n";
}

ParallelCoordinates parse_parallel_json(std::istream& in)
{
  ParallelCoordinates pc;
  try {
    auto doc = nlohmann::json::parse(in);
    for (const auto& a : doc.at("axes")) {
      auto m = parse_method(a.get<std::string>());
      if (!m) throw Error(ErrorKind::MalformedData, "unknown axis '" + a.get<std::string>() + "'");
      pc.axes.push_back(*m);
    }
    for (const auto& l : doc.at("lines")) {
      pc.lines.push_back({l.at("region").get<std::string>(), l.at("values").get<std::vector<double>>()});
    }
  } catch (const nlohmann::json::exception& e) {
    throw Error(ErrorKind::MalformedData, std::string("invalid parallel-coordinates JSON: ") + e.what());
  }
  return pc;
}

std::string parallel_svg(const ParallelCoordinates& pc)
{
  constexpr double width = 760.0, height = 420.0;
  constexpr double left = 60.0, right = 230.0, top = 30.0, bottom = 50.0;
  constexpr std::array<const char*, 10> palette{"#1f77b4", "#ff7f0e", "#2ca02c", "#d62728", "#9467bd",
                                                "#8c564b", "#e377c2", "#7f7f7f", "#bcbd22", "#17becf"};
  const double plot_w = width - left - right;
  const double plot_h = height - top - bottom;
  const std::size_t axes = pc.axes.size();
  auto x_of = [&](std::size_t i) {
    return axes < 2 ? left : left + plot_w * static_cast<double>(i) / static_cast<double>(axes - 1);
  };
  auto y_of = [&](double v) { return top + (1.0 - std::clamp(v, 0.0, 1.0)) * plot_h; };

  std::ostringstream svg;
  svg << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << fmt2(width) << "\" height=\""
      << fmt2(height) << "\" font-family=\"sans-serif\" font-size=\"11\">\n";
  svg << "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";
  for (std::size_t i = 0; i < axes; ++i) {
    svg << "<line x1=\"" << fmt2(x_of(i)) << "\" y1=\"" << fmt2(top) << "\" x2=\"" << fmt2(x_of(i))
        << "\" y2=\"" << fmt2(top + plot_h) << "\" stroke=\"black\"/>\n";
    svg << "<text x=\"" << fmt2(x_of(i)) << "\" y=\"" << fmt2(height - bottom + 20)
        << "\" text-anchor=\"middle\">" << xml_escape(display_name(pc.axes[i])) << "</text>\n";
  }
  svg << "<text x=\"" << fmt2(left - 8) << "\" y=\"" << fmt2(top + 4) << "\" text-anchor=\"end\">1.00</text>\n";
  svg << "<text x=\"" << fmt2(left - 8) << "\" y=\"" << fmt2(top + plot_h + 4)
      << "\" text-anchor=\"end\">0.00</text>\n";
  for (std::size_t l = 0; l < pc.lines.size(); ++l) {
    const auto& line = pc.lines[l];
    const char* colour = palette[l % palette.size()];
    svg << "<polyline fill=\"none\" stroke=\"" << colour << "\" stroke-width=\"1.5\" points=\"";
    for (std::size_t i = 0; i < line.values.size(); ++i) {
      if (i) svg << ' ';
      svg << fmt2(x_of(i)) << ',' << fmt2(y_of(line.values[i]));
    }
    svg << "\"/>\n";
    if (!line.values.empty()) {
      svg << "<text x=\"" << fmt2(x_of(line.values.size() - 1) + 6) << "\" y=\""
          << fmt2(y_of(line.values.back()) + 4) << "\" fill=\"" << colour << "\">" << xml_escape(line.region)
          << "</text>\n";
    }
  }
  svg << "</svg>\n";
  return svg.str();
}

void write_scatter_csv(std::ostream& out, std::span<const IndexResult> results)
{
  csv::write_row(out, {"method_x", "method_y", "region", "x", "y"});
  if (results.empty()) return;
  const auto& regions = results.front().regions;
  for (std::size_t a = 0; a < results.size(); ++a) {
    for (std::size_t b = a + 1; b < results.size(); ++b) {
      require_same_regions(regions, results[b].regions);
      for (const auto& region : regions) {
        csv::write_row(out, {std::string(to_string(results[a].method)), std::string(to_string(results[b].method)),
                             region, csv::format_fixed(results[a].rescaled_of(region)),
                             csv::format_fixed(results[b].rescaled_of(region))});
      }
    }
  }
}

IndexResult published_result(Method method, std::vector<std::string> regions, std::vector<double> values)
{
  if (regions.size() != values.size()) throw Error(ErrorKind::LengthMismatch, "one value per region required");
  IndexResult r;
  r.method = method;
  r.ranking = rank_regions(regions, values);
  r.regions = std::move(regions);
  r.raw = values;
  r.rescaled = std::move(values);
  return r;
}

std::vector<IndexResult> parse_published_table(std::istream& in)
{
  std::vector<Method> axes;
  auto rows = parse_method_table(in, axes);
  std::set<std::string> seen;
  std::vector<std::string> regions;
  for (const auto& [region, values] : rows) {
    if (!seen.insert(region).second) {
      throw Error(ErrorKind::DuplicateRegion, "region '" + region + "' appears twice", {{"region", region}});
    }
    regions.push_back(region);
  }
  std::vector<IndexResult> out;
  for (std::size_t c = 0; c < axes.size(); ++c) {
    std::vector<double> column;
    for (const auto& row : rows) column.push_back(row.second[c]);
    out.push_back(published_result(axes[c], regions, std::move(column)));
  }
  return out;
}

}  // namespace indexforge
