// Copyright (C) 2026 the rankdrift authors
// SPDX-License-Identifier: MIT
#pragma once

#include <algorithm>
#include <cstddef>
#include <functional>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "rankdrift/errors.hpp"
#include "rankdrift/kendall.hpp"
#include "rankdrift/ranking.hpp"

namespace rankdrift {

enum class RaceStatus { Fin, Dnf, Dns, Dsq };

inline std::string_view to_string(RaceStatus status) {
  switch (status) {
    case RaceStatus::Fin: return "FIN";
    case RaceStatus::Dnf: return "DNF";
    case RaceStatus::Dns: return "DNS";
    case RaceStatus::Dsq: return "DSQ";
  }
  return "?";
}

/// Exact-match parse; anything but FIN/DNF/DNS/DSQ is rejected.
inline std::optional<RaceStatus> race_status_from(std::string_view text) {
  if (text == "FIN") return RaceStatus::Fin;
  if (text == "DNF") return RaceStatus::Dnf;
  if (text == "DNS") return RaceStatus::Dns;
  if (text == "DSQ") return RaceStatus::Dsq;
  return std::nullopt;
}

/// Points per finishing position plus the fastest-lap bonus rule. The default
/// table awards 25,18,15,12,10,8,6,4,2,1 to positions 1-10 and nothing below.
struct PointsScheme {
  std::vector<double> position_points = {25, 18, 15, 12, 10, 8, 6, 4, 2, 1};
  bool fastest_lap_bonus = false;
  static constexpr bool fastest_lap_requires_top10 = true;

  double points_for_position(int position) const {
    if (position < 1) throw DomainError("finishing position must be >= 1");
    const auto idx = static_cast<std::size_t>(position - 1);
    return idx < position_points.size() ? position_points[idx] : 0.0;
  }

  /// Default scheme for a season year; the extra fastest-lap point exists
  /// from 2019 on.
  static PointsScheme for_year(int year) {
    PointsScheme scheme;
    scheme.fastest_lap_bonus = year >= 2019;
    return scheme;
  }
};

/// One entrant's outcome in one race. position is set exactly when the
/// entrant finished.
struct RaceEntry {
  std::string entrant_id;
  std::string name;
  RaceStatus status = RaceStatus::Fin;
  std::optional<int> position;
  bool fastest_lap = false;

  bool operator==(const RaceEntry&) const = default;
};

/// One race's classification.
struct GpClassification {
  std::string label;
  std::vector<RaceEntry> entries;

  bool operator==(const GpClassification&) const = default;
};

struct RosterEntry {
  std::string id;
  std::string name;
  std::string team;  ///< empty when the dataset carries no team mapping
};

enum class Entity { Drivers, Constructors };

inline std::string_view to_string(Entity entity) {
  return entity == Entity::Drivers ? "drivers" : "constructors";
}

/// A season: ordered races plus the roster they draw from.
struct SeasonDataset {
  int year = 0;
  Entity entity = Entity::Drivers;
  std::vector<GpClassification> races;
  std::vector<RosterEntry> roster;
  PointsScheme scheme;

  const RosterEntry* find_entrant(std::string_view id) const {
    for (const RosterEntry& e : roster) {
      if (e.id == id) return &e;
    }
    return nullptr;
  }

  /// driver id -> constructor id, for roster entries that carry a team.
  std::map<std::string, std::string> team_of() const {
    std::map<std::string, std::string> mapping;
    for (const RosterEntry& e : roster) {
      if (!e.team.empty()) mapping.emplace(e.id, e.team);
    }
    return mapping;
  }

  /// Distinct constructor ids in roster first-appearance order.
  std::vector<std::string> teams() const {
    std::vector<std::string> out;
    for (const RosterEntry& e : roster) {
      if (!e.team.empty() &&
          std::find(out.begin(), out.end(), e.team) == out.end()) {
        out.push_back(e.team);
      }
    }
    return out;
  }
};

enum class SeriesMethod { Drivers, ConstructorsM1, ConstructorsM2 };

inline std::string_view to_string(SeriesMethod method) {
  switch (method) {
    case SeriesMethod::Drivers: return "drivers";
    case SeriesMethod::ConstructorsM1: return "m1";
    case SeriesMethod::ConstructorsM2: return "m2";
  }
  return "?";
}

/// Points earned by one race entry: zero unless the entrant finished, the
/// positional points otherwise, plus one for the fastest lap when the scheme
/// awards it and the entrant finished in the top ten.
inline double points_for_entry(const RaceEntry& entry,
                               const PointsScheme& scheme) {
  if (entry.status != RaceStatus::Fin) return 0.0;
  if (!entry.position) {
    throw DataError("finished entry '" + entry.entrant_id +
                    "' carries no position");
  }
  double points = scheme.points_for_position(*entry.position);
  if (scheme.fastest_lap_bonus && entry.fastest_lap && *entry.position <= 10) {
    points += 1.0;
  }
  return points;
}

/// Ranking over the roster universe: finishers hold their finishing position,
/// everyone else (DNF/DNS/DSQ or not entered) is absent. Never contains ties.
inline Ranking drivers_ranking(const GpClassification& gp,
                               const std::vector<RosterEntry>& roster) {
  std::map<std::string, const RaceEntry*> by_id;
  for (const RaceEntry& entry : gp.entries) {
    if (!by_id.emplace(entry.entrant_id, &entry).second) {
      throw DataError("race " + gp.label + " lists entrant '" +
                      entry.entrant_id + "' twice");
    }
  }
  for (const auto& [id, entry] : by_id) {
    bool found = false;
    for (const RosterEntry& r : roster) {
      if (r.id == id) { found = true; break; }
    }
    if (!found) {
      throw DataError("race " + gp.label + " lists entrant '" + id +
                      "' missing from the roster");
    }
  }
  std::vector<Slot> slots;
  slots.reserve(roster.size());
  for (const RosterEntry& r : roster) {
    const auto it = by_id.find(r.id);
    if (it != by_id.end() && it->second->status == RaceStatus::Fin) {
      slots.push_back(*it->second->position);
    } else {
      slots.push_back(absent);
    }
  }
  return Ranking(std::move(slots));
}

/// Per-constructor points of one race: the sum of that team's drivers'
/// points. Every team in the mapping appears, scoring 0 when none of its
/// drivers scored.
inline std::map<std::string, double> constructor_scores(
    const GpClassification& gp,
    const std::map<std::string, std::string>& team_of,
    const PointsScheme& scheme) {
  std::map<std::string, double> scores;
  for (const auto& [driver, team] : team_of) scores.emplace(team, 0.0);
  for (const RaceEntry& entry : gp.entries) {
    const auto it = team_of.find(entry.entrant_id);
    if (it == team_of.end()) {
      throw DataError("race " + gp.label + ": driver '" + entry.entrant_id +
                      "' has no constructor mapping");
    }
    scores[it->second] += points_for_entry(entry, scheme);
  }
  return scores;
}

namespace detail {

// Dense ranks of the positive scores: equal scores share a rank, the next
// distinct score takes the next integer. Returns (rank per team in universe
// order, or 0 for zero scorers; count of distinct positive scores).
inline std::pair<std::vector<int>, int> dense_positive_ranks(
    const std::map<std::string, double>& scores,
    const std::vector<std::string>& team_universe) {
  std::vector<double> distinct;
  for (const std::string& team : team_universe) {
    const auto it = scores.find(team);
    if (it == scores.end()) {
      throw DataError("no score for constructor '" + team + "'");
    }
    if (it->second > 0.0) distinct.push_back(it->second);
  }
  std::sort(distinct.begin(), distinct.end(), std::greater<>());
  distinct.erase(std::unique(distinct.begin(), distinct.end()),
                 distinct.end());

  std::vector<int> ranks;
  ranks.reserve(team_universe.size());
  for (const std::string& team : team_universe) {
    const double score = scores.at(team);
    if (score > 0.0) {
      const auto pos = std::find(distinct.begin(), distinct.end(), score);
      ranks.push_back(static_cast<int>(pos - distinct.begin()) + 1);
    } else {
      ranks.push_back(0);
    }
  }
  return {std::move(ranks), static_cast<int>(distinct.size())};
}

}  // namespace detail

/// Method 1 constructor ranking: positive scorers get dense ranks by score,
/// all zero scorers are tied in the position right after them.
inline Ranking constructors_ranking_m1(
    const std::map<std::string, double>& scores,
    const std::vector<std::string>& team_universe) {
  auto [ranks, distinct] = detail::dense_positive_ranks(scores, team_universe);
  std::vector<Slot> slots;
  slots.reserve(ranks.size());
  for (int r : ranks) slots.push_back(r > 0 ? r : distinct + 1);
  return Ranking(std::move(slots));
}

/// Method 2 constructor ranking: positive scorers as in Method 1, zero
/// scorers become absent elements.
inline Ranking constructors_ranking_m2(
    const std::map<std::string, double>& scores,
    const std::vector<std::string>& team_universe) {
  auto [ranks, distinct] = detail::dense_positive_ranks(scores, team_universe);
  (void)distinct;
  std::vector<Slot> slots;
  slots.reserve(ranks.size());
  for (int r : ranks) slots.push_back(r > 0 ? Slot(r) : absent);
  return Ranking(std::move(slots));
}

/// The season's collection of rankings, one per race, built by the selected
/// method over the roster (drivers) or team (constructors) universe.
inline RankingSeries season_series(const SeasonDataset& season,
                                   SeriesMethod method) {
  if (season.races.size() < 2) {
    throw StructuralError("a season series needs at least 2 races, got " +
                          std::to_string(season.races.size()));
  }
  std::vector<Ranking> rankings;
  std::vector<std::string> labels;
  rankings.reserve(season.races.size());
  const auto team_of = season.team_of();
  const auto teams = season.teams();
  for (const GpClassification& gp : season.races) {
    switch (method) {
      case SeriesMethod::Drivers:
        rankings.push_back(drivers_ranking(gp, season.roster));
        break;
      case SeriesMethod::ConstructorsM1:
        rankings.push_back(constructors_ranking_m1(
            constructor_scores(gp, team_of, season.scheme), teams));
        break;
      case SeriesMethod::ConstructorsM2:
        rankings.push_back(constructors_ranking_m2(
            constructor_scores(gp, team_of, season.scheme), teams));
        break;
    }
    labels.push_back(gp.label);
  }
  return RankingSeries(std::move(rankings), std::move(labels));
}

/// Accumulated season totals in classification order. Equal totals are
/// broken by countback (more firsts, then more seconds, ...), then by roster
/// order; used for report row ordering only.
inline std::vector<std::pair<std::string, double>> accumulate_standings(
    const SeasonDataset& season) {
  struct Row {
    std::string id;
    double total = 0.0;
    std::vector<int> place_counts;  // place_counts[p-1] = finishes at place p
    std::size_t roster_order = 0;
  };

  std::map<std::string, std::size_t> index;
  std::vector<Row> rows;
  const auto add_entity = [&](const std::string& id) {
    if (index.count(id)) return;
    index.emplace(id, rows.size());
    rows.push_back(Row{id, 0.0, {}, rows.size()});
  };
  const auto record_place = [&](Row& row, int place) {
    if (static_cast<std::size_t>(place) > row.place_counts.size()) {
      row.place_counts.resize(static_cast<std::size_t>(place), 0);
    }
    ++row.place_counts[static_cast<std::size_t>(place) - 1];
  };

  if (season.entity == Entity::Drivers) {
    for (const RosterEntry& r : season.roster) add_entity(r.id);
    for (const GpClassification& gp : season.races) {
      for (const RaceEntry& entry : gp.entries) {
        const auto it = index.find(entry.entrant_id);
        if (it == index.end()) {
          throw DataError("race " + gp.label + " lists entrant '" +
                          entry.entrant_id + "' missing from the roster");
        }
        Row& row = rows[it->second];
        row.total += points_for_entry(entry, season.scheme);
        if (entry.status == RaceStatus::Fin) {
          record_place(row, *entry.position);
        }
      }
    }
  } else {
    const auto team_of = season.team_of();
    const auto teams = season.teams();
    for (const std::string& team : teams) add_entity(team);
    for (const GpClassification& gp : season.races) {
      const auto scores = constructor_scores(gp, team_of, season.scheme);
      const Ranking ranks = constructors_ranking_m1(scores, teams);
      for (std::size_t i = 0; i < teams.size(); ++i) {
        Row& row = rows[index.at(teams[i])];
        row.total += scores.at(teams[i]);
        record_place(row, *ranks[i]);
      }
    }
  }

  std::stable_sort(rows.begin(), rows.end(), [](const Row& a, const Row& b) {
    if (a.total != b.total) return a.total > b.total;
    const std::size_t depth =
        std::max(a.place_counts.size(), b.place_counts.size());
    for (std::size_t p = 0; p < depth; ++p) {
      const int ca = p < a.place_counts.size() ? a.place_counts[p] : 0;
      const int cb = p < b.place_counts.size() ? b.place_counts[p] : 0;
      if (ca != cb) return ca > cb;
    }
    return a.roster_order < b.roster_order;
  });

  std::vector<std::pair<std::string, double>> out;
  out.reserve(rows.size());
  for (const Row& row : rows) out.emplace_back(row.id, row.total);
  return out;
}

}  // namespace rankdrift
