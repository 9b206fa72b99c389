// Copyright (C) 2026 the rankdrift authors
// SPDX-License-Identifier: MIT
//
// Command-line surface: season ns rows, grouped summaries, the standard
// statistical test battery and cross-sport comparisons, all emitted as
// versioned JSON (or CSV/TSV where noted).
//
// Exit status: 0 on a clean report, 2 when the report carries error records,
// 1 on hard failures (bad flags, unreadable required inputs).

#include <algorithm>
#include <iostream>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "CLI11.hpp"

#include "rankdrift/rankdrift.hpp"

namespace {

using namespace rankdrift;

int run_ns(const std::vector<std::string>& manifests,
           const std::string& entity, const std::string& method_name,
           std::optional<double> penalty_flag, const std::string& format,
           const std::string& reference_path) {
  const double penalty =
      penalty_flag ? *penalty_flag : default_penalty();
  const PenaltyConfig cfg{penalty};

  SeriesMethod method = SeriesMethod::Drivers;
  if (entity == "constructors") {
    method = method_name == "m2" ? SeriesMethod::ConstructorsM2
                                 : SeriesMethod::ConstructorsM1;
  }

  std::optional<NsTable> reference;
  if (!reference_path.empty()) reference = load_ns_table(reference_path);

  std::vector<SeasonReport> rows;
  std::vector<ReportError> errors;
  for (const auto& path : manifests) {
    try {
      const SeasonDataset season = load_season_manifest(path);
      std::optional<double> reference_ns;
      if (reference) {
        reference_ns =
            reference->lookup(season.year, to_string(method));
      }
      rows.push_back(build_season_report(season, method, cfg, reference_ns));
    } catch (const Error& e) {
      errors.push_back({path, e.what()});
    }
  }
  std::sort(rows.begin(), rows.end(), season_report_less);

  if (format == "csv") {
    std::cout << ns_report_csv(rows);
  } else {
    std::cout << ns_report_json(rows, errors);
  }
  for (const auto& e : errors) {
    std::cerr << "error: " << e.source << ": " << e.message << "\n";
  }
  return errors.empty() ? 0 : 2;
}

int run_summary(const std::vector<std::string>& tables, bool plot_data) {
  std::vector<GroupSummary> groups;
  std::set<std::string> seen;
  for (const auto& path : tables) {
    const NsTable table = load_ns_table(path);
    for (auto& group : summarize_table(table)) {
      if (!seen.insert(group.group).second) {
        throw DataError("group '" + group.group +
                        "' appears in more than one table");
      }
      groups.push_back(std::move(group));
    }
  }
  std::cout << (plot_data ? plot_data_tsv(groups)
                          : summary_report_json(groups));
  return 0;
}

int run_tests(const std::string& table_path) {
  const TestsReport report = run_standard_tests(load_ns_table(table_path));
  std::cout << tests_report_json(report);
  for (const auto& e : report.entries) {
    if (!e.error.empty()) {
      std::cerr << "error: " << e.name << ": " << e.error << "\n";
    }
  }
  return report.has_errors() ? 2 : 0;
}

int run_compare(const std::string& f1_path, const std::string& football_path) {
  const auto entries =
      compare_tables(load_ns_table(f1_path), load_ns_table(football_path));
  std::cout << compare_report_json(entries);
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"competitive-balance measurements for ranking series"};
  app.require_subcommand(1);

  std::vector<std::string> manifests;
  std::string entity = "drivers";
  std::string method = "m1";
  double penalty = 0.5;
  std::string format = "json";
  std::string reference_path;
  auto* ns = app.add_subcommand(
      "ns", "normalized strength of encoded seasons");
  ns->add_option("--manifest", manifests, "season manifest (repeatable)")
      ->required()
      ->check(CLI::ExistingFile);
  ns->add_option("--entity", entity, "ranked entity")
      ->check(CLI::IsMember({"drivers", "constructors"}));
  auto* method_opt =
      ns->add_option("--method", method, "constructor ranking method")
          ->check(CLI::IsMember({"m1", "m2"}));
  auto* penalty_opt =
      ns->add_option("--penalty", penalty,
                     "tie penalty in [0, 1/2]; default RANKDRIFT_PENALTY "
                     "or 0.5")
          ->check(CLI::Range(0.0, 0.5));
  ns->add_option("--format", format, "output format")
      ->check(CLI::IsMember({"json", "csv"}));
  ns->add_option("--reference", reference_path,
                 "ns table to diff against (flags deviations > 0.05)")
      ->check(CLI::ExistingFile);

  std::vector<std::string> tables;
  bool plot_data = false;
  auto* summary = app.add_subcommand(
      "summary", "five-number summaries per series");
  summary->add_option("--table", tables, "ns table csv (repeatable)")
      ->required()
      ->check(CLI::ExistingFile);
  summary->add_flag("--plot-data", plot_data,
                    "emit box-and-whiskers TSV instead of JSON");

  std::string tests_table;
  auto* tests = app.add_subcommand(
      "tests", "normality, paired and pooled t-test battery");
  tests->add_option("--table", tests_table,
                    "F1 ns table with drivers, m1 and m2 series")
      ->required()
      ->check(CLI::ExistingFile);

  std::string f1_path;
  std::string football_path;
  auto* compare = app.add_subcommand(
      "compare", "F1-to-football mean ns ratios");
  compare->add_option("--f1", f1_path, "F1 ns table")
      ->required()
      ->check(CLI::ExistingFile);
  compare->add_option("--football", football_path, "football ns table")
      ->required()
      ->check(CLI::ExistingFile);

  CLI11_PARSE(app, argc, argv);

  try {
    if (ns->parsed()) {
      if (method_opt->count() > 0 && entity != "constructors") {
        std::cerr << "error: --method applies only to --entity constructors\n";
        return 1;
      }
      std::optional<double> penalty_flag;
      if (penalty_opt->count() > 0) penalty_flag = penalty;
      return run_ns(manifests, entity, method, penalty_flag, format,
                    reference_path);
    }
    if (summary->parsed()) return run_summary(tables, plot_data);
    if (tests->parsed()) return run_tests(tests_table);
    if (compare->parsed()) return run_compare(f1_path, football_path);
  } catch (const rankdrift::Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 1;
}
