// Copyright (C) 2026 the rankdrift authors
// SPDX-License-Identifier: MIT
#pragma once

#include <array>
#include <charconv>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <optional>
#include <set>
#include <sstream>
#include <string>
#include <string_view>
#include <vector>

#include <nlohmann/json.hpp>

#include "rankdrift/errors.hpp"
#include "rankdrift/f1.hpp"
#include "rankdrift/ingest.hpp"
#include "rankdrift/kendall.hpp"
#include "rankdrift/ranking.hpp"
#include "rankdrift/stats.hpp"

namespace rankdrift {

inline constexpr int schema_version = 1;

/// A season whose ns deviates from its reference value by more than this is
/// flagged (never failed) in reports.
inline constexpr double reference_flag_threshold = 0.05;

/// One output row of the `ns` command: a season boiled down to its evolutive
/// coefficient and normalized strength, optionally compared against a
/// reference table.
struct SeasonReport {
  int year = 0;
  Entity entity = Entity::Drivers;
  SeriesMethod method = SeriesMethod::Drivers;
  double penalty = 0.5;
  int m = 0;  ///< rankings in the series
  int n = 0;  ///< universe size
  double tau_ev = 0.0;
  double ns = 0.0;
  std::size_t skipped_pairs = 0;
  std::optional<double> reference_ns;
  std::optional<double> deviation;
  bool flagged = false;
};

/// Deterministic report ordering: year, then entity, then method.
inline bool season_report_less(const SeasonReport& a, const SeasonReport& b) {
  if (a.year != b.year) return a.year < b.year;
  if (a.entity != b.entity) return to_string(a.entity) < to_string(b.entity);
  return to_string(a.method) < to_string(b.method);
}

inline SeasonReport build_season_report(
    const SeasonDataset& season, SeriesMethod method,
    const PenaltyConfig& cfg = {}, std::optional<double> reference_ns = {}) {
  const RankingSeries series = season_series(season, method);
  const NsResult res = tau_evolutive(series, cfg);

  SeasonReport report;
  report.year = season.year;
  report.entity =
      method == SeriesMethod::Drivers ? Entity::Drivers : Entity::Constructors;
  report.method = method;
  report.penalty = cfg.p;
  report.m = static_cast<int>(series.count());
  report.n = static_cast<int>(series.universe_size());
  report.tau_ev = res.tau_ev;
  report.ns = res.ns;
  report.skipped_pairs = res.skipped_pairs;
  if (reference_ns) {
    report.reference_ns = *reference_ns;
    report.deviation = std::fabs(report.ns - *reference_ns);
    report.flagged = *report.deviation > reference_flag_threshold;
  }
  return report;
}

// ---------------------------------------------------------------------------
// NS tables: wide CSV with a year column followed by one column per series.
// Both the reference values and the statistics fixtures travel in this shape.

struct NsTable {
  std::vector<std::string> series;           ///< column names after "year"
  std::vector<int> years;                    ///< one entry per row
  std::vector<std::vector<double>> values;   ///< [row][series]

  std::size_t rows() const noexcept { return years.size(); }

  bool has_series(std::string_view name) const {
    for (const auto& s : series)
      if (s == name) return true;
    return false;
  }

  /// All values of one named column, in row order.
  std::vector<double> column(std::string_view name) const {
    for (std::size_t c = 0; c < series.size(); ++c) {
      if (series[c] != name) continue;
      std::vector<double> out;
      out.reserve(values.size());
      for (const auto& row : values) out.push_back(row[c]);
      return out;
    }
    throw DataError("ns table has no series '" + std::string(name) + "'");
  }

  /// Value for (year, series), if that row exists.
  std::optional<double> lookup(int year, std::string_view name) const {
    for (std::size_t c = 0; c < series.size(); ++c) {
      if (series[c] != name) continue;
      for (std::size_t r = 0; r < years.size(); ++r)
        if (years[r] == year) return values[r][c];
      return std::nullopt;
    }
    return std::nullopt;
  }
};

namespace detail {

inline std::optional<double> parse_unit_interval(std::string_view text) {
  double value = 0.0;
  const char* end = text.data() + text.size();
  const auto [ptr, ec] = std::from_chars(text.data(), end, value);
  if (ec != std::errc() || ptr != end) return std::nullopt;
  if (!(value >= 0.0 && value <= 1.0)) return std::nullopt;
  return value;
}

}  // namespace detail

inline NsTable parse_ns_table(std::string_view bytes) {
  const auto lines = detail::split_lines(bytes);
  if (lines.empty()) throw ParseError("empty ns table");
  const auto header = detail::split_fields(lines.front().text);
  if (header.empty() || header[0] != "year") {
    throw ParseError("first column must be 'year'", lines.front().number);
  }
  if (header.size() < 2) {
    throw ParseError("ns table needs at least one series column",
                     lines.front().number);
  }

  NsTable table;
  std::set<std::string_view> seen_series;
  for (std::size_t c = 1; c < header.size(); ++c) {
    if (header[c].empty()) {
      throw ParseError("empty series name in header", lines.front().number);
    }
    if (!seen_series.insert(header[c]).second) {
      throw ParseError("duplicate series '" + std::string(header[c]) + "'",
                       lines.front().number);
    }
    table.series.emplace_back(header[c]);
  }

  std::set<int> seen_years;
  for (std::size_t i = 1; i < lines.size(); ++i) {
    const auto [line_no, text] = lines[i];
    if (text.empty()) throw ParseError("blank row", line_no);
    const auto fields = detail::split_fields(text);
    if (fields.size() != header.size()) {
      throw ParseError("expected " + std::to_string(header.size()) +
                           " fields, got " + std::to_string(fields.size()),
                       line_no);
    }
    const auto year = detail::parse_positive_int(fields[0]);
    if (!year) {
      throw ParseError("bad year '" + std::string(fields[0]) + "'", line_no);
    }
    if (!seen_years.insert(*year).second) {
      throw ParseError("duplicate year " + std::to_string(*year), line_no);
    }
    std::vector<double> row;
    row.reserve(table.series.size());
    for (std::size_t c = 1; c < fields.size(); ++c) {
      const auto value = detail::parse_unit_interval(fields[c]);
      if (!value) {
        throw ParseError("series '" + table.series[c - 1] +
                             "' holds a non-[0,1] cell '" +
                             std::string(fields[c]) + "'",
                         line_no);
      }
      row.push_back(*value);
    }
    table.years.push_back(*year);
    table.values.push_back(std::move(row));
  }
  if (table.rows() == 0) throw ParseError("ns table has no data rows");
  return table;
}

inline NsTable load_ns_table(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw DataError("cannot open ns table: " + path.string());
  std::ostringstream buffer;
  buffer << in.rdbuf();
  try {
    return parse_ns_table(buffer.str());
  } catch (const ParseError& e) {
    throw ParseError(path.string() + ": " + e.what(), 0);
  }
}

// ---------------------------------------------------------------------------
// Structured test battery: the fixed sequence of checks run by `tests`.

struct TestReportEntry {
  std::string name;
  std::string method_tag;
  std::optional<double> statistic;
  std::optional<double> p_value;
  std::optional<double> df;
  std::string error;  ///< nonempty when the check could not run
  std::string note;   ///< advisory text, e.g. a suggested fallback
};

struct TestsReport {
  std::vector<TestReportEntry> entries;

  bool has_errors() const {
    for (const auto& e : entries)
      if (!e.error.empty()) return true;
    return false;
  }
};

/// Shapiro-Wilk per F1 series, paired t-test m1 vs m2, then the variance-
/// ratio gate deciding whether a pooled two-sample t-test m1 vs drivers is
/// sound. Individual failures are captured per entry, never thrown.
inline TestsReport run_standard_tests(const NsTable& f1) {
  for (const char* required : {"drivers", "m1", "m2"}) {
    if (!f1.has_series(required)) {
      throw DataError("tests need the F1 series 'drivers', 'm1' and 'm2'; "
                      "missing '" + std::string(required) + "'");
    }
  }
  const std::vector<double> drivers = f1.column("drivers");
  const std::vector<double> m1 = f1.column("m1");
  const std::vector<double> m2 = f1.column("m2");

  TestsReport report;
  const auto run = [&](std::string name, auto&& body) -> TestReportEntry& {
    TestReportEntry entry;
    entry.name = std::move(name);
    try {
      const TestResult r = body();
      entry.method_tag = r.method_tag;
      entry.statistic = r.statistic;
      entry.p_value = r.p_value;
      entry.df = r.df;
    } catch (const Error& e) {
      entry.error = e.what();
    }
    report.entries.push_back(std::move(entry));
    return report.entries.back();
  };

  run("shapiro drivers", [&] { return shapiro_wilk(drivers); });
  run("shapiro m1", [&] { return shapiro_wilk(m1); });
  run("shapiro m2", [&] { return shapiro_wilk(m2); });
  run("paired m1 vs m2", [&] { return t_test_paired(m1, m2); });

  std::optional<double> ratio;
  auto& gate = run("variance ratio m1 vs drivers", [&]() -> TestResult {
    TestResult r;
    r.statistic = variance_ratio(m1, drivers);
    r.method_tag = "variance_ratio";
    return r;
  });
  gate.p_value.reset();
  if (gate.error.empty()) ratio = gate.statistic;

  TestReportEntry pooled;
  pooled.name = "pooled m1 vs drivers";
  if (!ratio) {
    pooled.error = "skipped: variance-ratio gate could not run";
  } else if (*ratio > 4.0) {
    pooled.error = "refused: variance ratio " + std::to_string(*ratio) +
                   " exceeds 4";
    pooled.note = "consider Welch's unequal-variance t-test instead";
  } else {
    try {
      const TestResult r = t_test_two_sample_pooled(m1, drivers);
      pooled.method_tag = r.method_tag;
      pooled.statistic = r.statistic;
      pooled.p_value = r.p_value;
      pooled.df = r.df;
    } catch (const Error& e) {
      pooled.error = e.what();
    }
  }
  report.entries.push_back(std::move(pooled));
  return report;
}

// ---------------------------------------------------------------------------
// Grouped five-number summaries for `summary` / `--plot-data`.

struct GroupSummary {
  std::string group;
  StatSummary stats;
};

/// One summary per table column, in column order.
inline std::vector<GroupSummary> summarize_table(const NsTable& table) {
  std::vector<GroupSummary> groups;
  groups.reserve(table.series.size());
  for (const auto& name : table.series) {
    groups.push_back({name, summarize(table.column(name))});
  }
  return groups;
}

// ---------------------------------------------------------------------------
// Cross-sport mean ratios for `compare`.

struct CompareEntry {
  std::string f1_series;
  std::string football_series;
  double f1_mean = 0.0;
  double football_mean = 0.0;
  double ratio = 0.0;
};

/// mean(F1 ns) / mean(football ns) for every column pairing.
inline std::vector<CompareEntry> compare_tables(const NsTable& f1,
                                                const NsTable& football) {
  if (f1.series.empty() || f1.rows() == 0) {
    throw DomainError("compare needs a nonempty F1 table");
  }
  if (football.series.empty() || football.rows() == 0) {
    throw DomainError("compare needs a nonempty football table");
  }
  std::vector<CompareEntry> entries;
  for (const auto& fa : f1.series) {
    const auto f1_col = f1.column(fa);
    const double f1_mean = detail::sample_mean(f1_col);
    for (const auto& fb : football.series) {
      const auto fb_col = football.column(fb);
      const double fb_mean = detail::sample_mean(fb_col);
      if (fb_mean == 0.0) {
        throw DomainError("football series '" + fb +
                          "' has zero mean; ratio undefined");
      }
      entries.push_back({fa, fb, f1_mean, fb_mean, f1_mean / fb_mean});
    }
  }
  return entries;
}

// ---------------------------------------------------------------------------
// Emitters. All doubles are printed with std::to_chars shortest round-trip
// form so identical inputs give byte-identical outputs.

namespace detail {

inline std::string format_double(double value) {
  std::array<char, 32> buf;
  const auto [ptr, ec] =
      std::to_chars(buf.data(), buf.data() + buf.size(), value);
  return std::string(buf.data(), ptr);
}

}  // namespace detail

struct ReportError {
  std::string source;
  std::string message;
};

inline nlohmann::ordered_json to_json(const SeasonReport& row) {
  nlohmann::ordered_json j;
  j["year"] = row.year;
  j["entity"] = to_string(row.entity);
  j["method"] = to_string(row.method);
  j["penalty"] = row.penalty;
  j["m"] = row.m;
  j["n"] = row.n;
  j["tau_ev"] = row.tau_ev;
  j["ns"] = row.ns;
  j["skipped_pairs"] = row.skipped_pairs;
  if (row.reference_ns) {
    j["reference_ns"] = *row.reference_ns;
    j["deviation"] = *row.deviation;
    j["flagged"] = row.flagged;
  }
  return j;
}

inline std::string ns_report_json(const std::vector<SeasonReport>& rows,
                                  const std::vector<ReportError>& errors) {
  nlohmann::ordered_json j;
  j["schema_version"] = schema_version;
  j["command"] = "ns";
  j["rows"] = nlohmann::ordered_json::array();
  for (const auto& row : rows) j["rows"].push_back(to_json(row));
  j["errors"] = nlohmann::ordered_json::array();
  for (const auto& e : errors) {
    j["errors"].push_back({{"source", e.source}, {"message", e.message}});
  }
  return j.dump(2) + "\n";
}

inline constexpr std::string_view ns_csv_header =
    "year,entity,method,penalty,m,n,tau_ev,ns,skipped_pairs,"
    "reference_ns,deviation,flagged";

inline std::string ns_report_csv(const std::vector<SeasonReport>& rows) {
  std::string out{ns_csv_header};
  out += '\n';
  for (const auto& row : rows) {
    out += std::to_string(row.year);
    out += ',';
    out += to_string(row.entity);
    out += ',';
    out += to_string(row.method);
    out += ',';
    out += detail::format_double(row.penalty);
    out += ',';
    out += std::to_string(row.m);
    out += ',';
    out += std::to_string(row.n);
    out += ',';
    out += detail::format_double(row.tau_ev);
    out += ',';
    out += detail::format_double(row.ns);
    out += ',';
    out += std::to_string(row.skipped_pairs);
    out += ',';
    if (row.reference_ns) {
      out += detail::format_double(*row.reference_ns);
      out += ',';
      out += detail::format_double(*row.deviation);
      out += row.flagged ? ",true" : ",false";
    } else {
      out += ",,";
    }
    out += '\n';
  }
  return out;
}

inline std::string summary_report_json(const std::vector<GroupSummary>& groups) {
  nlohmann::ordered_json j;
  j["schema_version"] = schema_version;
  j["command"] = "summary";
  j["groups"] = nlohmann::ordered_json::array();
  for (const auto& g : groups) {
    nlohmann::ordered_json row;
    row["group"] = g.group;
    row["n"] = g.stats.n;
    row["mean"] = g.stats.mean;
    row["sample_std"] = g.stats.sample_std;
    row["min"] = g.stats.min;
    row["q1"] = g.stats.q1;
    row["median"] = g.stats.median;
    row["q3"] = g.stats.q3;
    row["max"] = g.stats.max;
    j["groups"].push_back(std::move(row));
  }
  return j.dump(2) + "\n";
}

/// Five-number-summary TSV for box-and-whiskers plotting.
inline std::string plot_data_tsv(const std::vector<GroupSummary>& groups) {
  std::string out = "group\tmin\tq1\tmedian\tq3\tmax\n";
  for (const auto& g : groups) {
    out += g.group;
    out += '\t';
    out += detail::format_double(g.stats.min);
    out += '\t';
    out += detail::format_double(g.stats.q1);
    out += '\t';
    out += detail::format_double(g.stats.median);
    out += '\t';
    out += detail::format_double(g.stats.q3);
    out += '\t';
    out += detail::format_double(g.stats.max);
    out += '\n';
  }
  return out;
}

inline std::string tests_report_json(const TestsReport& report) {
  nlohmann::ordered_json j;
  j["schema_version"] = schema_version;
  j["command"] = "tests";
  j["entries"] = nlohmann::ordered_json::array();
  for (const auto& e : report.entries) {
    nlohmann::ordered_json row;
    row["name"] = e.name;
    if (!e.method_tag.empty()) row["method_tag"] = e.method_tag;
    if (e.statistic) row["statistic"] = *e.statistic;
    if (e.p_value) row["p_value"] = *e.p_value;
    if (e.df) row["df"] = *e.df;
    row["error"] = e.error;
    row["note"] = e.note;
    j["entries"].push_back(std::move(row));
  }
  return j.dump(2) + "\n";
}

inline std::string compare_report_json(
    const std::vector<CompareEntry>& entries) {
  nlohmann::ordered_json j;
  j["schema_version"] = schema_version;
  j["command"] = "compare";
  j["pairings"] = nlohmann::ordered_json::array();
  for (const auto& e : entries) {
    nlohmann::ordered_json row;
    row["f1_series"] = e.f1_series;
    row["football_series"] = e.football_series;
    row["f1_mean"] = e.f1_mean;
    row["football_mean"] = e.football_mean;
    row["ratio"] = e.ratio;
    j["pairings"].push_back(std::move(row));
  }
  return j.dump(2) + "\n";
}

/// Default penalty parameter: RANKDRIFT_PENALTY when set, else 1/2.
inline double default_penalty() {
  const char* env = std::getenv("RANKDRIFT_PENALTY");
  if (env == nullptr || *env == '\0') return 0.5;
  const std::string_view text{env};
  double value = 0.0;
  const char* end = text.data() + text.size();
  const auto [ptr, ec] = std::from_chars(text.data(), end, value);
  if (ec != std::errc() || ptr != end || !(value >= 0.0 && value <= 0.5)) {
    throw DomainError("RANKDRIFT_PENALTY must be a number in [0, 1/2], got '" +
                      std::string(text) + "'");
  }
  return value;
}

}  // namespace rankdrift
