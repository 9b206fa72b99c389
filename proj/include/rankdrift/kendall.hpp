// Copyright (C) 2026 the rankdrift authors
// SPDX-License-Identifier: MIT
#pragma once

#include <algorithm>
#include <cstddef>
#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include "rankdrift/errors.hpp"
#include "rankdrift/ranking.hpp"

namespace rankdrift {

/// Classification of the comparable entrant pairs of two rankings. A pair is
/// comparable iff both entrants are present in both rankings.
struct PairTally {
  std::int64_t concordant = 0;     ///< same strict order in both rankings
  std::int64_t discordant = 0;     ///< opposite strict orders
  std::int64_t tie_penalized = 0;  ///< tied in exactly one ranking
  std::int64_t tied_both = 0;      ///< tied in both rankings
  std::int64_t comparable = 0;

  bool operator==(const PairTally&) const = default;
};

/// Per-consecutive-pair diagnostics of an evolutive coefficient run.
struct PairDetail {
  double tau = 0.0;
  std::int64_t comparable = 0;
  bool skipped = false;  ///< true when the pair had no comparable entrants
};

/// Evolutive coefficient of a ranking series together with its normalized
/// strength and the per-step breakdown.
struct NsResult {
  double tau_ev = 0.0;
  double ns = 0.0;
  std::vector<PairDetail> pair_details;
  std::size_t skipped_pairs = 0;
};

namespace detail {

// Strict inversions (v[i] > v[j] with i < j) counted by merge sort; v ends up
// sorted ascending.
inline std::int64_t merge_count_inversions(std::vector<int>& v,
                                           std::vector<int>& scratch,
                                           std::size_t lo, std::size_t hi) {
  if (hi - lo < 2) return 0;
  const std::size_t mid = lo + (hi - lo) / 2;
  std::int64_t inversions = merge_count_inversions(v, scratch, lo, mid) +
                            merge_count_inversions(v, scratch, mid, hi);
  std::size_t i = lo, j = mid, k = lo;
  while (i < mid && j < hi) {
    if (v[i] <= v[j]) {
      scratch[k++] = v[i++];
    } else {
      // every remaining left element exceeds v[j]
      inversions += static_cast<std::int64_t>(mid - i);
      scratch[k++] = v[j++];
    }
  }
  while (i < mid) scratch[k++] = v[i++];
  while (j < hi) scratch[k++] = v[j++];
  std::copy(scratch.begin() + static_cast<std::ptrdiff_t>(lo),
            scratch.begin() + static_cast<std::ptrdiff_t>(hi),
            v.begin() + static_cast<std::ptrdiff_t>(lo));
  return inversions;
}

// Sum over equal-value runs of C(run, 2), i.e. the number of tied pairs.
template <typename It, typename Eq>
std::int64_t tied_pair_count(It first, It last, Eq eq) {
  std::int64_t pairs = 0;
  It run = first;
  for (It it = first; it != last; ++it) {
    if (it != run && !eq(*run, *it)) run = it;
    pairs += it - run;
  }
  return pairs;
}

}  // namespace detail

/// Classifies every unordered entrant pair of two rankings over the same
/// universe. Runs in O(k log k) on the k entrants present in both rankings;
/// pairs involving an absent entrant contribute nothing.
inline PairTally tally_pairs(const Ranking& a, const Ranking& b) {
  if (a.size() != b.size()) {
    throw StructuralError("rankings differ in universe size (" +
                          std::to_string(a.size()) + " vs " +
                          std::to_string(b.size()) + ")");
  }

  std::vector<std::pair<int, int>> xy;
  xy.reserve(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) {
    if (a[i] && b[i]) xy.emplace_back(*a[i], *b[i]);
  }

  PairTally tally;
  const std::int64_t k = static_cast<std::int64_t>(xy.size());
  tally.comparable = k * (k - 1) / 2;
  if (k < 2) return tally;

  std::sort(xy.begin(), xy.end());
  const std::int64_t ties_a = detail::tied_pair_count(
      xy.begin(), xy.end(),
      [](const auto& l, const auto& r) { return l.first == r.first; });
  tally.tied_both = detail::tied_pair_count(
      xy.begin(), xy.end(),
      [](const auto& l, const auto& r) { return l == r; });

  // After sorting by (a, b), discordant pairs are exactly the strict
  // inversions of the b column.
  std::vector<int> ys(xy.size());
  for (std::size_t i = 0; i < xy.size(); ++i) ys[i] = xy[i].second;
  std::vector<int> scratch(ys.size());
  tally.discordant = detail::merge_count_inversions(ys, scratch, 0, ys.size());

  // ys is now sorted, so b-ties fall into runs.
  const std::int64_t ties_b = detail::tied_pair_count(
      ys.begin(), ys.end(), [](int l, int r) { return l == r; });

  tally.tie_penalized = ties_a + ties_b - 2 * tally.tied_both;
  tally.concordant = tally.comparable - ties_a - ties_b + tally.tied_both -
                     tally.discordant;
  return tally;
}

/// Classical Kendall coefficient 2(P - Q) / (n(n - 1)) for two complete,
/// untied rankings.
inline double kendall_tau_classic(const Ranking& a, const Ranking& b) {
  if (a.size() != b.size()) {
    throw StructuralError("rankings differ in universe size (" +
                          std::to_string(a.size()) + " vs " +
                          std::to_string(b.size()) + ")");
  }
  if (!a.complete() || !b.complete() || a.has_ties() || b.has_ties()) {
    throw DomainError(
        "kendall_tau_classic requires complete rankings without ties; "
        "use tau_corrected_pair for tied or incomplete rankings");
  }
  const PairTally tally = tally_pairs(a, b);
  const double n = static_cast<double>(a.size());
  return 2.0 * static_cast<double>(tally.concordant - tally.discordant) /
         (n * (n - 1.0));
}

/// Normalized Kendall distance with tie penalty p, restricted to comparable
/// pairs: (Q + p * tied-in-one) / comparable, in [0, 1].
inline double kendall_dist_p(const Ranking& a, const Ranking& b,
                             const PenaltyConfig& cfg = {}) {
  const PairTally tally = tally_pairs(a, b);
  if (tally.comparable == 0) {
    throw NoComparablePairsError(
        "no entrant pair is present in both rankings");
  }
  return (static_cast<double>(tally.discordant) +
          cfg.p * static_cast<double>(tally.tie_penalized)) /
         static_cast<double>(tally.comparable);
}

/// Correlation-style coefficient 1 - 2 * kendall_dist_p, in [-1, 1]. Equals
/// kendall_tau_classic whenever both rankings are complete and untied.
inline double tau_corrected_pair(const Ranking& a, const Ranking& b,
                                 const PenaltyConfig& cfg = {}) {
  return 1.0 - 2.0 * kendall_dist_p(a, b, cfg);
}

/// Evolutive coefficient of a series: the mean of tau_corrected_pair over the
/// m - 1 consecutive pairs. Pairs without any comparable entrants are skipped
/// and reported in the result rather than voiding the series.
inline NsResult tau_evolutive(const RankingSeries& series,
                              const PenaltyConfig& cfg = {}) {
  NsResult result;
  result.pair_details.reserve(series.count() - 1);
  double sum = 0.0;
  std::size_t used = 0;
  for (std::size_t i = 0; i + 1 < series.count(); ++i) {
    const PairTally tally = tally_pairs(series[i], series[i + 1]);
    PairDetail detail;
    detail.comparable = tally.comparable;
    if (tally.comparable == 0) {
      detail.skipped = true;
      ++result.skipped_pairs;
    } else {
      detail.tau = 1.0 - 2.0 *
                             (static_cast<double>(tally.discordant) +
                              cfg.p * static_cast<double>(tally.tie_penalized)) /
                             static_cast<double>(tally.comparable);
      sum += detail.tau;
      ++used;
    }
    result.pair_details.push_back(detail);
  }
  if (used == 0) {
    throw AllPairsIncomparableError(
        "every consecutive pair of the series has zero comparable pairs");
  }
  result.tau_ev =
      std::clamp(sum / static_cast<double>(used), -1.0, 1.0);
  result.ns = (1.0 - result.tau_ev) / 2.0;
  return result;
}

/// Normalized strength (1 - tau) / 2, mapping [-1, 1] onto [0, 1].
inline double normalized_strength(double tau_ev) {
  if (!(tau_ev >= -1.0 && tau_ev <= 1.0)) {
    throw DomainError("evolutive coefficient must lie in [-1, 1], got " +
                      std::to_string(tau_ev));
  }
  return (1.0 - tau_ev) / 2.0;
}

}  // namespace rankdrift
