// Copyright (C) 2026 the rankdrift authors
// SPDX-License-Identifier: MIT
#pragma once

#include <algorithm>
#include <cstddef>
#include <filesystem>
#include <fstream>
#include <map>
#include <optional>
#include <set>
#include <sstream>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include <nlohmann/json.hpp>

#include "rankdrift/errors.hpp"
#include "rankdrift/f1.hpp"
#include "rankdrift/ranking.hpp"

namespace rankdrift {

namespace detail {

// Lines of a text blob, 1-based, LF or CRLF terminated. A trailing newline
// does not produce an extra empty line.
struct CsvLine {
  long number = 0;
  std::string_view text;
};

inline std::vector<CsvLine> split_lines(std::string_view bytes) {
  std::vector<CsvLine> lines;
  long number = 0;
  std::size_t start = 0;
  while (start <= bytes.size()) {
    if (start == bytes.size()) {
      break;
    }
    std::size_t end = bytes.find('\n', start);
    std::string_view line;
    if (end == std::string_view::npos) {
      line = bytes.substr(start);
      start = bytes.size() + 1;
    } else {
      line = bytes.substr(start, end - start);
      start = end + 1;
    }
    if (!line.empty() && line.back() == '\r') line.remove_suffix(1);
    lines.push_back({++number, line});
  }
  return lines;
}

// Comma-split without quoting; fields are taken verbatim, no trimming.
inline std::vector<std::string_view> split_fields(std::string_view line) {
  std::vector<std::string_view> fields;
  std::size_t start = 0;
  while (true) {
    const std::size_t comma = line.find(',', start);
    if (comma == std::string_view::npos) {
      fields.push_back(line.substr(start));
      break;
    }
    fields.push_back(line.substr(start, comma - start));
    start = comma + 1;
  }
  return fields;
}

// Strict positive-integer parse: digits only, no sign, no spaces.
inline std::optional<int> parse_positive_int(std::string_view text) {
  if (text.empty() || text.size() > 9) return std::nullopt;
  long value = 0;
  for (char c : text) {
    if (c < '0' || c > '9') return std::nullopt;
    value = value * 10 + (c - '0');
  }
  if (value < 1) return std::nullopt;
  return static_cast<int>(value);
}

}  // namespace detail

inline constexpr std::string_view gp_csv_header =
    "entrant_id,name,status,position,fastest_lap";

/// Parses one race classification CSV. The format is strict: the exact
/// header, status one of FIN/DNF/DNS/DSQ, a position exactly on FIN rows,
/// fastest_lap 0 or 1, and the finishing positions contiguous from 1.
inline GpClassification parse_gp_csv(std::string_view bytes,
                                     std::string label = {}) {
  const auto lines = detail::split_lines(bytes);
  if (lines.empty()) throw ParseError("empty race file");
  if (lines.front().text != gp_csv_header) {
    throw ParseError("expected header '" + std::string(gp_csv_header) +
                         "', got '" + std::string(lines.front().text) + "'",
                     lines.front().number);
  }

  GpClassification gp;
  gp.label = std::move(label);
  std::map<std::string, long> seen;  // entrant -> line
  struct FinRow {
    int position;
    long line;
  };
  std::vector<FinRow> finishers;

  for (std::size_t i = 1; i < lines.size(); ++i) {
    const auto [line_no, text] = lines[i];
    if (text.empty()) {
      throw ParseError("blank row", line_no);
    }
    const auto fields = detail::split_fields(text);
    if (fields.size() != 5) {
      throw ParseError("expected 5 fields, got " +
                           std::to_string(fields.size()),
                       line_no);
    }
    RaceEntry entry;
    entry.entrant_id = std::string(fields[0]);
    entry.name = std::string(fields[1]);
    if (entry.entrant_id.empty()) {
      throw ParseError("empty entrant_id", line_no);
    }
    const auto status = race_status_from(fields[2]);
    if (!status) {
      throw ParseError("unknown status '" + std::string(fields[2]) +
                           "' (expected FIN, DNF, DNS or DSQ)",
                       line_no);
    }
    entry.status = *status;
    if (entry.status == RaceStatus::Fin) {
      const auto position = detail::parse_positive_int(fields[3]);
      if (!position) {
        throw ParseError("FIN row needs a positive integer position, got '" +
                             std::string(fields[3]) + "'",
                         line_no);
      }
      entry.position = *position;
      finishers.push_back({*position, line_no});
    } else if (!fields[3].empty()) {
      throw ParseError("position given on a non-FIN row", line_no);
    }
    if (fields[4] == "1") {
      entry.fastest_lap = true;
    } else if (fields[4] != "0") {
      throw ParseError("fastest_lap must be 0 or 1, got '" +
                           std::string(fields[4]) + "'",
                       line_no);
    }
    const auto [it, inserted] = seen.emplace(entry.entrant_id, line_no);
    if (!inserted) {
      throw ParseError("duplicate entrant '" + entry.entrant_id +
                           "' (first seen on line " +
                           std::to_string(it->second) + ")",
                       line_no);
    }
    gp.entries.push_back(std::move(entry));
  }

  if (finishers.empty()) {
    throw ParseError("classification contains no finisher");
  }
  std::sort(finishers.begin(), finishers.end(),
            [](const FinRow& a, const FinRow& b) {
              return a.position != b.position ? a.position < b.position
                                              : a.line < b.line;
            });
  int expected = 1;
  for (std::size_t i = 0; i < finishers.size(); ++i, ++expected) {
    if (finishers[i].position == expected) continue;
    if (i > 0 && finishers[i].position == finishers[i - 1].position) {
      throw ParseError("duplicate finishing position " +
                           std::to_string(finishers[i].position),
                       finishers[i].line);
    }
    throw ParseError("non-contiguous finishing positions: expected " +
                         std::to_string(expected) + ", found " +
                         std::to_string(finishers[i].position),
                     finishers[i].line);
  }
  return gp;
}

/// Serializes a classification back to the CSV format parse_gp_csv accepts;
/// parse(write(gp)) reproduces gp exactly.
inline std::string write_gp_csv(const GpClassification& gp) {
  std::string out(gp_csv_header);
  out += '\n';
  for (const RaceEntry& entry : gp.entries) {
    out += entry.entrant_id;
    out += ',';
    out += entry.name;
    out += ',';
    out += to_string(entry.status);
    out += ',';
    if (entry.position) out += std::to_string(*entry.position);
    out += ',';
    out += entry.fastest_lap ? '1' : '0';
    out += '\n';
  }
  return out;
}

/// Parses a season manifest (JSON) and loads every race file it references,
/// resolving relative paths against base_dir.
inline SeasonDataset parse_season_manifest(
    std::string_view bytes, const std::filesystem::path& base_dir) {
  nlohmann::json doc;
  try {
    doc = nlohmann::json::parse(bytes);
  } catch (const nlohmann::json::parse_error& e) {
    throw ParseError(std::string("manifest is not valid JSON: ") + e.what());
  }

  SeasonDataset season;
  try {
    season.year = doc.at("year").get<int>();
    const std::string entity = doc.at("entity").get<std::string>();
    if (entity == "drivers") {
      season.entity = Entity::Drivers;
    } else if (entity == "constructors") {
      season.entity = Entity::Constructors;
    } else {
      throw DataError("manifest entity must be 'drivers' or 'constructors', got '" +
                      entity + "'");
    }
    for (const auto& member : doc.at("roster")) {
      RosterEntry entry;
      entry.id = member.at("id").get<std::string>();
      entry.name = member.at("name").get<std::string>();
      if (member.contains("team")) entry.team = member.at("team").get<std::string>();
      season.roster.push_back(std::move(entry));
    }
    season.scheme = PointsScheme::for_year(season.year);
    if (doc.contains("fastest_lap_bonus")) {
      season.scheme.fastest_lap_bonus = doc.at("fastest_lap_bonus").get<bool>();
    }

    const auto& races = doc.at("races");
    if (!races.is_array() || races.size() < 2) {
      throw StructuralError("manifest must list at least 2 race files");
    }
    std::size_t race_index = 0;
    for (const auto& race_path_json : races) {
      ++race_index;
      const std::filesystem::path race_path =
          base_dir / race_path_json.get<std::string>();
      std::ifstream in(race_path, std::ios::binary);
      if (!in) {
        throw DataError("missing race file: " + race_path.string());
      }
      std::ostringstream buffer;
      buffer << in.rdbuf();
      try {
        season.races.push_back(
            parse_gp_csv(buffer.str(), "GP" + std::to_string(race_index)));
      } catch (const ParseError& e) {
        throw ParseError(race_path.string() + ": " + e.what(), 0);
      }
    }
  } catch (const nlohmann::json::exception& e) {
    throw ParseError(std::string("manifest field error: ") + e.what());
  }

  std::set<std::string> ids;
  for (const RosterEntry& entry : season.roster) {
    if (!ids.insert(entry.id).second) {
      throw DataError("duplicate roster id '" + entry.id + "'");
    }
    if (season.entity == Entity::Constructors && entry.team.empty()) {
      throw DataError("constructors season but driver '" + entry.id +
                      "' has no team");
    }
  }
  for (const GpClassification& gp : season.races) {
    for (const RaceEntry& entry : gp.entries) {
      if (!ids.count(entry.entrant_id)) {
        throw DataError("race " + gp.label + " lists entrant '" +
                        entry.entrant_id + "' missing from the roster");
      }
    }
  }
  return season;
}

/// Reads a manifest file from disk; relative race paths resolve against the
/// manifest's own directory.
inline SeasonDataset load_season_manifest(
    const std::filesystem::path& manifest_path) {
  std::ifstream in(manifest_path, std::ios::binary);
  if (!in) {
    throw DataError("cannot open manifest: " + manifest_path.string());
  }
  std::ostringstream buffer;
  buffer << in.rdbuf();
  return parse_season_manifest(buffer.str(), manifest_path.parent_path());
}

/// Parses a standings matrix CSV (entrant rows, one column per round; every
/// column a permutation of 1..n) into a series of complete untied rankings.
inline RankingSeries parse_standings_matrix(std::string_view bytes) {
  const auto lines = detail::split_lines(bytes);
  if (lines.empty()) throw ParseError("empty standings file");
  const auto header = detail::split_fields(lines.front().text);
  if (header.empty() || header[0] != "entrant_id") {
    throw ParseError("first column must be 'entrant_id'",
                     lines.front().number);
  }
  const std::size_t rounds = header.size() - 1;
  if (rounds < 2) {
    throw StructuralError("a standings series needs at least 2 rounds, got " +
                          std::to_string(rounds));
  }
  std::vector<std::string> round_labels(header.begin() + 1, header.end());

  std::vector<std::string> entrants;
  std::vector<std::vector<int>> cells;  // per row
  std::vector<long> row_lines;
  std::set<std::string> seen;
  for (std::size_t i = 1; i < lines.size(); ++i) {
    const auto [line_no, text] = lines[i];
    if (text.empty()) throw ParseError("blank row", line_no);
    const auto fields = detail::split_fields(text);
    if (fields.size() != header.size()) {
      throw ParseError("expected " + std::to_string(header.size()) +
                           " fields, got " + std::to_string(fields.size()),
                       line_no);
    }
    if (fields[0].empty()) throw ParseError("empty entrant_id", line_no);
    if (!seen.insert(std::string(fields[0])).second) {
      throw ParseError("duplicate entrant '" + std::string(fields[0]) + "'",
                       line_no);
    }
    std::vector<int> row;
    row.reserve(rounds);
    for (std::size_t c = 1; c < fields.size(); ++c) {
      const auto value = detail::parse_positive_int(fields[c]);
      if (!value) {
        throw ParseError("round '" + round_labels[c - 1] +
                             "' holds a non-positive-integer cell '" +
                             std::string(fields[c]) + "'",
                         line_no);
      }
      row.push_back(*value);
    }
    entrants.push_back(std::string(fields[0]));
    cells.push_back(std::move(row));
    row_lines.push_back(line_no);
  }

  const std::size_t n = entrants.size();
  if (n < 2) {
    throw StructuralError("a standings matrix needs at least 2 entrants, got " +
                          std::to_string(n));
  }
  // every column must be a permutation of 1..n
  for (std::size_t c = 0; c < rounds; ++c) {
    std::vector<long> first_line(n + 1, 0);
    for (std::size_t r = 0; r < n; ++r) {
      const int value = cells[r][c];
      if (static_cast<std::size_t>(value) > n) {
        throw ParseError("round '" + round_labels[c] + "' holds position " +
                             std::to_string(value) + " but only " +
                             std::to_string(n) + " entrants",
                         row_lines[r]);
      }
      if (first_line[static_cast<std::size_t>(value)] != 0) {
        throw ParseError("round '" + round_labels[c] +
                             "' holds position " + std::to_string(value) +
                             " twice",
                         row_lines[r]);
      }
      first_line[static_cast<std::size_t>(value)] = row_lines[r];
    }
  }

  std::vector<Ranking> rankings;
  rankings.reserve(rounds);
  for (std::size_t c = 0; c < rounds; ++c) {
    std::vector<int> positions;
    positions.reserve(n);
    for (std::size_t r = 0; r < n; ++r) positions.push_back(cells[r][c]);
    rankings.push_back(Ranking::from_positions(positions));
  }
  return RankingSeries(std::move(rankings), std::move(round_labels));
}

}  // namespace rankdrift
