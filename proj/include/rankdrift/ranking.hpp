// Copyright (C) 2026 the rankdrift authors
// SPDX-License-Identifier: MIT
#pragma once

#include <algorithm>
#include <cstddef>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "rankdrift/errors.hpp"

namespace rankdrift {

/// One slot of a ranking: the 1-based position of an entrant, or nothing at
/// all when the entrant is absent from this ranking.
using Slot = std::optional<int>;

/// Marker for an entrant that holds no position (did not start, did not
/// finish, scored zero under Method 2, ...).
inline constexpr Slot absent = std::nullopt;

/// Positions of n entrants. Equal positions are ties. Slots may be absent;
/// whether enough entrants are present to compare is checked at comparison
/// time, not here.
class Ranking {
 public:
  explicit Ranking(std::vector<Slot> slots) : slots_(std::move(slots)) {
    if (slots_.size() < 2) {
      throw StructuralError("ranking needs more than one entrant, got " +
                            std::to_string(slots_.size()));
    }
    for (const Slot& s : slots_) {
      if (s && *s < 1) {
        throw StructuralError("ranking positions must be >= 1, got " +
                              std::to_string(*s));
      }
    }
  }

  /// Builds a ranking with every entrant present.
  static Ranking from_positions(const std::vector<int>& positions) {
    std::vector<Slot> slots(positions.begin(), positions.end());
    return Ranking(std::move(slots));
  }

  std::size_t size() const noexcept { return slots_.size(); }
  const Slot& operator[](std::size_t i) const { return slots_[i]; }
  bool present(std::size_t i) const { return slots_[i].has_value(); }

  std::size_t present_count() const noexcept {
    std::size_t k = 0;
    for (const Slot& s : slots_) k += s.has_value();
    return k;
  }

  bool complete() const noexcept { return present_count() == slots_.size(); }

  /// True when two present entrants share a position.
  bool has_ties() const {
    std::vector<int> pos;
    pos.reserve(slots_.size());
    for (const Slot& s : slots_) {
      if (s) pos.push_back(*s);
    }
    std::sort(pos.begin(), pos.end());
    return std::adjacent_find(pos.begin(), pos.end()) != pos.end();
  }

  const std::vector<Slot>& slots() const noexcept { return slots_; }

  bool operator==(const Ranking&) const = default;

 private:
  std::vector<Slot> slots_;
};

/// An ordered series of m >= 2 rankings over one shared entrant universe.
class RankingSeries {
 public:
  explicit RankingSeries(std::vector<Ranking> rankings,
                         std::vector<std::string> labels = {})
      : rankings_(std::move(rankings)), labels_(std::move(labels)) {
    if (rankings_.size() < 2) {
      throw StructuralError("a ranking series needs at least 2 rankings, got " +
                            std::to_string(rankings_.size()));
    }
    const std::size_t n = rankings_.front().size();
    for (const Ranking& r : rankings_) {
      if (r.size() != n) {
        throw StructuralError(
            "all rankings of a series must share one universe size (" +
            std::to_string(n) + " vs " + std::to_string(r.size()) + ")");
      }
    }
    if (!labels_.empty() && labels_.size() != rankings_.size()) {
      throw StructuralError("label count must match ranking count");
    }
  }

  std::size_t count() const noexcept { return rankings_.size(); }
  std::size_t universe_size() const noexcept { return rankings_.front().size(); }
  const Ranking& operator[](std::size_t i) const { return rankings_[i]; }
  const std::vector<Ranking>& rankings() const noexcept { return rankings_; }

  /// Label of ranking i, or "#i" when no labels were supplied.
  std::string label(std::size_t i) const {
    return labels_.empty() ? "#" + std::to_string(i + 1) : labels_[i];
  }

  const std::vector<std::string>& labels() const noexcept { return labels_; }

 private:
  std::vector<Ranking> rankings_;
  std::vector<std::string> labels_;
};

/// Cost in [0, 1/2] charged to an entrant pair that is tied in exactly one of
/// the two rankings under comparison.
struct PenaltyConfig {
  double p = 0.5;

  PenaltyConfig() = default;
  explicit PenaltyConfig(double penalty) : p(penalty) {
    if (!(p >= 0.0 && p <= 0.5)) {
      throw DomainError("penalty parameter must lie in [0, 1/2], got " +
                        std::to_string(penalty));
    }
  }
};

}  // namespace rankdrift
