#include "indexforge/cli.hpp"

#include <algorithm>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <optional>
#include <sstream>

#include "CLI11.hpp"
#include "json.hpp"

#include "indexforge/aggregate.hpp"
#include "indexforge/csv.hpp"
#include "indexforge/error.hpp"
#include "indexforge/ingest.hpp"
#include "indexforge/normalize.hpp"
#include "indexforge/pca.hpp"
#include "indexforge/report.hpp"
#include "indexforge/stats.hpp"

namespace indexforge {

namespace fs = std::filesystem;
using nlohmann::ordered_json;

namespace {

struct RunConfig {
  std::string data;
  std::string manifest;
  std::vector<std::string> methods;
  std::string weights;
  std::string out = "indexforge-out";
  std::string published;
  std::string pca_reference;
  std::string stage2_basis = "covariance";
  bool json = false;
};

std::vector<Method> parse_methods(const std::vector<std::string>& args, bool default_all)
{
  std::vector<std::string> tokens;
  for (const auto& a : args) {
    std::stringstream ss(a);
    std::string t;
    while (std::getline(ss, t, ',')) {
      auto trimmed = csv::trim(t);
      if (!trimmed.empty()) tokens.emplace_back(trimmed);
    }
  }
  if (tokens.empty()) {
    if (default_all) return {kMethods.begin(), kMethods.end()};
    throw Error(ErrorKind::Usage, "--methods must name at least one method");
  }
  std::vector<bool> selected(kMethods.size(), false);
  for (const auto& t : tokens) {
    if (t == "all") {
      std::fill(selected.begin(), selected.end(), true);
      continue;
    }
    auto m = parse_method(t);
    if (!m) throw Error(ErrorKind::Usage, "unknown method '" + t + "' (use abreu, delphi, pca or all)");
    selected[static_cast<std::size_t>(*m)] = true;
  }
  std::vector<Method> out;
  for (Method m : kMethods) {
    if (selected[static_cast<std::size_t>(m)]) out.push_back(m);
  }
  return out;
}

PcaBasis parse_basis(const std::string& text)
{
  if (text == "covariance") return PcaBasis::Covariance;
  if (text == "correlation") return PcaBasis::Correlation;
  throw Error(ErrorKind::Usage, "--pca-stage2-basis must be covariance or correlation");
}

struct WeightOverrides {
  PillarWeightInputs pillars;
  std::map<std::string, double> indicators;
};

WeightOverrides load_weight_overrides(const fs::path& path)
{
  std::ifstream in(path);
  if (!in) throw Error(ErrorKind::Io, "cannot open '" + path.string() + "'", {{"path", path.string()}});
  auto rows = csv::read_rows(in);
  if (rows.empty() || rows.front().size() != 3 || csv::trim(rows.front()[0]) != "level" ||
      csv::trim(rows.front()[1]) != "key" || csv::trim(rows.front()[2]) != "weight") {
    throw Error(ErrorKind::MalformedData, "weights file header must be level,key,weight");
  }
  WeightOverrides w;
  for (std::size_t i = 1; i < rows.size(); ++i) {
    const auto& row = rows[i];
    if (row.size() != 3) throw Error(ErrorKind::MalformedData, "weights line " + std::to_string(i + 1) + " needs 3 fields");
    std::string level(csv::trim(row[0]));
    std::string key(csv::trim(row[1]));
    std::string cell(csv::trim(row[2]));
    std::size_t used = 0;
    double value = 0.0;
    try {
      value = std::stod(cell, &used);
    } catch (const std::exception&) {
      used = 0;
    }
    if (cell.empty() || used != cell.size()) {
      throw Error(ErrorKind::NonNumericCell, "weight '" + cell + "' for " + key + " is not a number",
                  {{"indicator", key}});
    }
    if (level == "pillar") {
      auto p = parse_pillar(key);
      if (!p) throw Error(ErrorKind::MalformedData, "unknown pillar '" + key + "' in weights file", {{"pillar", key}});
      w.pillars[*p] = value;
    } else if (level == "indicator") {
      w.indicators[key] = value;
    } else {
      throw Error(ErrorKind::MalformedData, "weights level must be pillar or indicator, got '" + level + "'");
    }
  }
  if (!w.pillars.empty() && w.pillars.size() != kPillarCount) {
    throw Error(ErrorKind::WeightManifestMismatch, "weights file must give all four pillars or none");
  }
  return w;
}

void write_file(const fs::path& path, const std::string& content)
{
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw Error(ErrorKind::Io, "cannot write '" + path.string() + "'", {{"path", path.string()}});
  out << content;
  out.close();
  if (!out) throw Error(ErrorKind::Io, "failed writing '" + path.string() + "'", {{"path", path.string()}});
}

fs::path prepare_out_dir(const std::string& dir)
{
  std::error_code ec;
  fs::create_directories(dir, ec);
  if (ec || !fs::is_directory(dir)) {
    throw Error(ErrorKind::Io, "cannot create output directory '" + dir + "'", {{"path", dir}});
  }
  return fs::path(dir);
}

void require_inputs(const RunConfig& cfg)
{
  if (cfg.data.empty() || cfg.manifest.empty()) {
    throw Error(ErrorKind::Usage, "--data and --manifest are required");
  }
}

struct Pipeline {
  std::optional<Manifest> manifest;
  std::optional<NormalizedMatrix> normalized;
  std::optional<WeightScheme> weights;
  std::optional<PcaOutcome> pca;
  std::vector<IndexResult> results;
  std::vector<std::string> warnings;
};

Pipeline run_pipeline(const RunConfig& cfg, const std::vector<Method>& methods)
{
  require_inputs(cfg);
  Pipeline p;
  p.manifest = load_manifest(cfg.manifest);
  DatasetFile file{cfg.manifest, cfg.data, detect_format(cfg.data)};
  auto raw = parse_dataset(file, *p.manifest);
  p.normalized = normalize_matrix(raw, *p.manifest);
  p.warnings = p.normalized->warnings;
  const auto& norm = p.normalized->matrix;
  for (Method m : methods) {
    switch (m) {
      case Method::Abreu:
        p.results.push_back(compute_abreu(norm, *p.manifest));
        break;
      case Method::Delphi: {
        WeightOverrides overrides;
        if (!cfg.weights.empty()) overrides = load_weight_overrides(cfg.weights);
        auto pillars = overrides.pillars.empty() ? published_delphi_pillar_inputs() : overrides.pillars;
        p.weights = build_weight_scheme(*p.manifest, pillars, overrides.indicators);
        p.results.push_back(compute_delphi(norm, *p.manifest, *p.weights));
        break;
      }
      case Method::Pca: {
        PcaConfig config;
        config.stage2.basis = parse_basis(cfg.stage2_basis);
        p.pca = compute_pca(norm, *p.manifest, config);
        p.results.push_back(p.pca->result);
        continue;  // warnings already folded into the result
      }
    }
  }
  for (const auto& r : p.results) p.warnings.insert(p.warnings.end(), r.warnings.begin(), r.warnings.end());
  return p;
}

void emit_warnings(const std::vector<std::string>& warnings, std::ostream& err)
{
  for (const auto& w : warnings) err << "indexforge: warning: " << w << '\n';
}

ordered_json weights_json(const WeightScheme& w)
{
  ordered_json pillars, indicators;
  for (Pillar p : kPillars) pillars[std::string(to_string(p))] = w.pillar(p);
  for (const auto& [id, v] : w.indicator_weights()) indicators[id] = v;
  return {{"pillars", std::move(pillars)}, {"indicators", std::move(indicators)}};
}

// ----------------------------------------------------------------- commands

int cmd_validate(const RunConfig& cfg, std::ostream& out, std::ostream& err)
{
  require_inputs(cfg);
  auto manifest = load_manifest(cfg.manifest);
  DatasetFile file{cfg.manifest, cfg.data, detect_format(cfg.data)};
  auto raw = parse_dataset(file, manifest);
  auto norm = normalize_matrix(raw, manifest);
  if (cfg.json) {
    ordered_json doc{{"ok", true}, {"regions", raw.region_count()}, {"indicators", raw.indicator_count()}};
    ordered_json pillars;
    for (Pillar p : kPillars) pillars[std::string(to_string(p))] = manifest.count_in(p);
    doc["pillars"] = std::move(pillars);
    doc["warnings"] = norm.warnings;
    out << doc.dump(2) << '\n';
  } else {
    out << raw.region_count() << " regions, " << raw.indicator_count() << " indicators\n";
    for (Pillar p : kPillars) out << "  " << to_string(p) << ": " << manifest.count_in(p) << '\n';
    emit_warnings(norm.warnings, err);
  }
  return 0;
}

int cmd_compute(const RunConfig& cfg, std::ostream& out, std::ostream& err)
{
  auto methods = parse_methods(cfg.methods, true);
  auto p = run_pipeline(cfg, methods);
  std::optional<PcaReference> reference;
  if (!cfg.pca_reference.empty()) reference = load_pca_reference(cfg.pca_reference);
  auto dir = prepare_out_dir(cfg.out);

  std::vector<fs::path> written;
  auto put = [&](const std::string& name, const std::string& content) {
    write_file(dir / name, content);
    written.push_back(dir / name);
  };
  for (const auto& r : p.results) {
    std::ostringstream csv_out;
    write_index_csv(csv_out, r);
    put("index_" + std::string(to_string(r.method)) + ".csv", csv_out.str());
    put("index_" + std::string(to_string(r.method)) + ".json", to_json(r).dump(2) + "\n");
  }
  std::ostringstream norm_out;
  write_normalization_csv(norm_out, p.normalized->records);
  put("normalization.csv", norm_out.str());
  if (p.weights) put("weights.json", weights_json(*p.weights).dump(2) + "\n");
  if (p.pca) put("pca_audit.json", pca_audit_json(*p.pca, reference ? &*reference : nullptr).dump(2) + "\n");

  emit_warnings(p.warnings, err);
  if (cfg.json) {
    ordered_json doc{{"ok", true}, {"files", ordered_json::array()}};
    for (const auto& f : written) doc["files"].push_back(f.generic_string());
    out << doc.dump(2) << '\n';
  } else {
    for (const auto& f : written) out << "wrote " << f.generic_string() << '\n';
  }
  return 0;
}

std::vector<IndexResult> comparison_inputs(const RunConfig& cfg, std::ostream& err)
{
  if (!cfg.published.empty()) {
    std::ifstream in(cfg.published);
    if (!in) throw Error(ErrorKind::Io, "cannot open '" + cfg.published + "'", {{"path", cfg.published}});
    auto all = parse_published_table(in);
    if (cfg.methods.empty()) return all;
    auto wanted = parse_methods(cfg.methods, false);
    std::vector<IndexResult> chosen;
    for (Method m : wanted) {
      auto it = std::find_if(all.begin(), all.end(), [m](const auto& r) { return r.method == m; });
      if (it == all.end()) {
        throw Error(ErrorKind::Usage, "published table has no '" + std::string(to_string(m)) + "' column");
      }
      chosen.push_back(*it);
    }
    return chosen;
  }
  auto methods = parse_methods(cfg.methods, true);
  if (methods.size() < 2) throw Error(ErrorKind::FewerThanTwoMethods, "comparison needs at least two methods");
  auto p = run_pipeline(cfg, methods);
  emit_warnings(p.warnings, err);
  return std::move(p.results);
}

void print_correlations(const ComparisonReport& report, std::ostream& out)
{
  out << "pearson";
  for (Method m : report.methods) out << ',' << to_string(m);
  out << '\n';
  for (Method a : report.methods) {
    out << to_string(a);
    for (Method b : report.methods) out << ',' << csv::format_fixed(report.pairwise_r.at({a, b}));
    out << '\n';
  }
}

int cmd_compare(const RunConfig& cfg, std::ostream& out, std::ostream& err)
{
  auto results = comparison_inputs(cfg, err);
  auto report = compare_methods(results);
  auto pc = parallel_coordinates_export(results);
  auto dir = prepare_out_dir(cfg.out);
  write_file(dir / "report.json", to_json(report).dump(2) + "\n");
  std::ostringstream report_csv, parallel_csv, scatter_csv;
  write_report_csv(report_csv, report);
  write_file(dir / "report.csv", report_csv.str());
  write_parallel_csv(parallel_csv, pc);
  write_file(dir / "parallel.csv", parallel_csv.str());
  write_file(dir / "parallel.json", parallel_json(pc));
  write_file(dir / "parallel.svg", parallel_svg(pc));
  write_scatter_csv(scatter_csv, results);
  write_file(dir / "scatter.csv", scatter_csv.str());
  if (cfg.json) {
    out << to_json(report).dump(2) << '\n';
  } else {
    print_correlations(report, out);
  }
  return 0;
}

// Counts code points so accented region names line up.
std::size_t display_width(const std::string& text)
{
  std::size_t shown = 0;
  for (unsigned char c : text) shown += (c & 0xC0) != 0x80;
  return shown;
}

std::string pad(const std::string& text, std::size_t width)
{
  auto shown = display_width(text);
  return shown >= width ? text : text + std::string(width - shown, ' ');
}

int cmd_report(const RunConfig& cfg, std::ostream& out, std::ostream& err)
{
  auto methods = parse_methods(cfg.methods, true);
  auto p = run_pipeline(cfg, methods);
  emit_warnings(p.warnings, err);
  std::optional<ComparisonReport> report;
  if (p.results.size() >= 2) report = compare_methods(p.results);

  if (cfg.json) {
    ordered_json doc;
    doc["indexes"] = ordered_json::array();
    for (const auto& r : p.results) doc["indexes"].push_back(to_json(r));
    if (report) doc["comparison"] = to_json(*report);
    out << doc.dump(2) << '\n';
    return 0;
  }
  const bool color = std::getenv("INDEXFORGE_NO_COLOR") == nullptr;
  const char* bold = color ? "\x1b[1m" : "";
  const char* reset = color ? "\x1b[0m" : "";
  const auto& regions = p.results.front().regions;
  std::size_t width = 6;
  for (const auto& r : regions) width = std::max(width, display_width(r));

  out << bold << pad("region", width);
  for (const auto& r : p.results) out << "  " << pad(std::string(display_name(r.method)), 16);
  out << reset << '\n';
  for (const auto& region : regions) {
    out << pad(region, width);
    for (const auto& r : p.results) {
      std::ostringstream cell;
      cell << csv::format_fixed(r.rescaled_of(region)).substr(0, 4) << " (#" << r.rank_of(region) << ")";
      out << "  " << pad(cell.str(), 16);
    }
    out << '\n';
  }
  if (report) {
    out << '\n' << bold << "Pearson correlations" << reset << '\n';
    print_correlations(*report, out);
  }
  return 0;
}

void print_error(const Error& e, bool json, std::ostream& out, std::ostream& err)
{
  if (json) {
    ordered_json ctx = ordered_json::object();
    for (const auto& [k, v] : e.context()) ctx[k] = v;
    ordered_json doc{{"ok", false},
                     {"exit_code", exit_code(e.category())},
                     {"error", {{"kind", std::string(to_string(e.kind()))}, {"message", e.what()}, {"context", ctx}}}};
    out << doc.dump(2) << '\n';
  } else {
    err << "indexforge: error: " << e.what() << '\n';
  }
}

}  // namespace

int run_cli(std::span<const std::string> args, std::ostream& out, std::ostream& err)
{
  RunConfig cfg;
  CLI::App app{"Composite rural development index engine", "indexforge"};
  app.require_subcommand(1);

  auto add_inputs = [&cfg](CLI::App* sub) {
    sub->add_option("--data", cfg.data, "Dataset file (CSV or .json)");
    sub->add_option("--manifest", cfg.manifest, "Indicator manifest CSV");
    sub->add_flag("--json", cfg.json, "Machine-readable output and diagnostics");
  };
  auto add_methods = [&cfg](CLI::App* sub) {
    sub->add_option("--methods", cfg.methods, "abreu, delphi, pca or all (comma separated)");
    sub->add_option("--weights", cfg.weights, "Weight override CSV (level,key,weight)");
    sub->add_option("--pca-stage2-basis", cfg.stage2_basis, "covariance (default) or correlation");
  };

  auto* validate = app.add_subcommand("validate", "Check manifest and dataset");
  add_inputs(validate);
  auto* compute = app.add_subcommand("compute", "Compute index files and audits");
  add_inputs(compute);
  add_methods(compute);
  compute->add_option("--out", cfg.out, "Output directory");
  compute->add_option("--pca-reference", cfg.pca_reference, "Reference variance fingerprint JSON for the PCA audit");
  auto* compare = app.add_subcommand("compare", "Compare methods: correlations, statistics, plots");
  add_inputs(compare);
  add_methods(compare);
  compare->add_option("--out", cfg.out, "Output directory");
  compare->add_option("--published", cfg.published, "Compare a published index table instead of computing");
  auto* report = app.add_subcommand("report", "Print a summary table");
  add_inputs(report);
  add_methods(report);

  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(reversed);
  } catch (const CLI::CallForHelp& e) {
    app.exit(e, out, err);
    return 0;
  } catch (const CLI::ParseError& e) {
    app.exit(e, out, err);
    return exit_code(ErrorCategory::Validation);
  }

  try {
    if (*validate) return cmd_validate(cfg, out, err);
    if (*compute) return cmd_compute(cfg, out, err);
    if (*compare) return cmd_compare(cfg, out, err);
    return cmd_report(cfg, out, err);
  } catch (const Error& e) {
    print_error(e, cfg.json, out, err);
    return exit_code(e.category());
  } catch (const std::exception& e) {
    err << "indexforge: error: " << e.what() << '\n';
    return 1;
  }
}

}  // namespace indexforge
