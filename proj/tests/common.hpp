// Shared test oracles and generators. Everything here is deliberately
// independent of the library's algorithms: the tally oracle enumerates pairs
// naively, the integrals are done by quadrature, and the summaries use
// compensated summation.
#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <numbers>
#include <random>
#include <span>
#include <string>
#include <vector>

#include "rankdrift/f1.hpp"
#include "rankdrift/ranking.hpp"

namespace testutil {

// --- O(n^2) pair-classification oracle --------------------------------------

struct NaiveTally {
  std::int64_t concordant = 0;
  std::int64_t discordant = 0;
  std::int64_t tie_penalized = 0;
  std::int64_t tied_both = 0;
  std::int64_t comparable = 0;
};

inline NaiveTally naive_tally(const rankdrift::Ranking& a,
                              const rankdrift::Ranking& b) {
  NaiveTally t;
  for (std::size_t i = 0; i < a.size(); ++i) {
    for (std::size_t j = i + 1; j < a.size(); ++j) {
      if (!a.present(i) || !a.present(j) || !b.present(i) || !b.present(j)) {
        continue;
      }
      ++t.comparable;
      const bool tie_a = *a[i] == *a[j];
      const bool tie_b = *b[i] == *b[j];
      if (tie_a && tie_b) {
        ++t.tied_both;
      } else if (tie_a || tie_b) {
        ++t.tie_penalized;
      } else if ((*a[i] < *a[j]) == (*b[i] < *b[j])) {
        ++t.concordant;
      } else {
        ++t.discordant;
      }
    }
  }
  return t;
}

inline double naive_dist(const NaiveTally& t, double p) {
  return (static_cast<double>(t.discordant) +
          p * static_cast<double>(t.tie_penalized)) /
         static_cast<double>(t.comparable);
}

// --- compensated-summation descriptive oracle --------------------------------

inline double kahan_sum(std::span<const double> xs) {
  double sum = 0.0, c = 0.0;
  for (double x : xs) {
    const double y = x - c;
    const double t = sum + y;
    c = (t - sum) - y;
    sum = t;
  }
  return sum;
}

inline double kahan_mean(std::span<const double> xs) {
  return kahan_sum(xs) / static_cast<double>(xs.size());
}

inline double kahan_sample_std(std::span<const double> xs) {
  const double mean = kahan_mean(xs);
  std::vector<double> sq(xs.size());
  for (std::size_t i = 0; i < xs.size(); ++i) {
    sq[i] = (xs[i] - mean) * (xs[i] - mean);
  }
  return std::sqrt(kahan_sum(sq) / static_cast<double>(xs.size() - 1));
}

// --- quadrature oracle for the Student t CDF ---------------------------------

inline double t_pdf(double x, double df) {
  const double log_c = std::lgamma((df + 1.0) / 2.0) - std::lgamma(df / 2.0) -
                       0.5 * std::log(df * std::numbers::pi);
  return std::exp(log_c - (df + 1.0) / 2.0 * std::log1p(x * x / df));
}

namespace detail {

inline double simpson(double a, double b, double fa, double fm, double fb) {
  return (b - a) / 6.0 * (fa + 4.0 * fm + fb);
}

inline double adaptive(double a, double b, double fa, double fm, double fb,
                       double whole, double tol, double df, int depth) {
  const double m = (a + b) / 2.0;
  const double lm = (a + m) / 2.0;
  const double rm = (m + b) / 2.0;
  const double flm = t_pdf(lm, df);
  const double frm = t_pdf(rm, df);
  const double left = simpson(a, m, fa, flm, fm);
  const double right = simpson(m, b, fm, frm, fb);
  if (depth <= 0 || std::fabs(left + right - whole) < 15.0 * tol) {
    return left + right + (left + right - whole) / 15.0;
  }
  return adaptive(a, m, fa, flm, fm, left, tol / 2.0, df, depth - 1) +
         adaptive(m, b, fm, frm, fb, right, tol / 2.0, df, depth - 1);
}

}  // namespace detail

/// CDF(t) = 1/2 + integral of the t density over [0, t], integrated by
/// adaptive Simpson quadrature.
inline double t_cdf_quadrature(double t, double df) {
  if (t == 0.0) return 0.5;
  const double a = std::min(0.0, t);
  const double b = std::max(0.0, t);
  const double fa = t_pdf(a, df);
  const double fb = t_pdf(b, df);
  const double fm = t_pdf((a + b) / 2.0, df);
  const double whole = detail::simpson(a, b, fa, fm, fb);
  const double integral =
      detail::adaptive(a, b, fa, fm, fb, whole, 1e-13, df, 40);
  // Over [0, t] the integral is CDF(t) - 1/2; over [t, 0] it is 1/2 - CDF(t).
  return t > 0.0 ? 0.5 + integral : 0.5 - integral;
}

// --- randomized input generators ---------------------------------------------

inline std::vector<int> random_permutation(std::size_t n,
                                           std::mt19937_64& rng) {
  std::vector<int> v(n);
  for (std::size_t i = 0; i < n; ++i) v[i] = static_cast<int>(i + 1);
  std::shuffle(v.begin(), v.end(), rng);
  return v;
}

inline rankdrift::Ranking random_complete_untied(std::size_t n,
                                                 std::mt19937_64& rng) {
  return rankdrift::Ranking::from_positions(random_permutation(n, rng));
}

/// Ranking with ties and absences: each slot is absent with probability 1/4,
/// otherwise uniform in 1..n (collisions are the ties).
inline rankdrift::Ranking random_messy_ranking(std::size_t n,
                                               std::mt19937_64& rng) {
  std::uniform_int_distribution<int> d4(0, 3);
  std::uniform_int_distribution<int> pos(1, static_cast<int>(n));
  std::vector<rankdrift::Slot> slots(n);
  for (auto& s : slots) {
    if (d4(rng) != 0) s = pos(rng);
  }
  return rankdrift::Ranking(std::move(slots));
}

inline std::vector<double> random_sample(std::size_t n, std::mt19937_64& rng,
                                         double mean = 0.0,
                                         double sigma = 1.0) {
  std::normal_distribution<double> d(mean, sigma);
  std::vector<double> xs(n);
  for (auto& x : xs) x = d(rng);
  return xs;
}

/// Synthetic season: `teams` teams of two drivers each. Every driver starts
/// every race; the first `finishers` of a random grid order are classified.
/// With complete = true all drivers finish, so with at most 5 teams every
/// team scores in every race.
inline rankdrift::SeasonDataset random_season(int year, int teams, int races,
                                              bool complete,
                                              std::mt19937_64& rng) {
  rankdrift::SeasonDataset season;
  season.year = year;
  season.entity = rankdrift::Entity::Constructors;
  season.scheme = rankdrift::PointsScheme::for_year(year);
  const int drivers = teams * 2;
  for (int d = 0; d < drivers; ++d) {
    rankdrift::RosterEntry entry;
    entry.id = "d" + std::to_string(d + 1);
    entry.name = "Driver " + std::to_string(d + 1);
    entry.team = "t" + std::to_string(d / 2 + 1);
    season.roster.push_back(std::move(entry));
  }
  std::uniform_int_distribution<int> n_fin(2, drivers);
  for (int r = 0; r < races; ++r) {
    rankdrift::GpClassification gp;
    gp.label = "GP" + std::to_string(r + 1);
    const auto order = random_permutation(static_cast<std::size_t>(drivers), rng);
    const int finishers = complete ? drivers : n_fin(rng);
    for (int d = 0; d < drivers; ++d) {
      rankdrift::RaceEntry entry;
      entry.entrant_id = season.roster[static_cast<std::size_t>(d)].id;
      entry.name = season.roster[static_cast<std::size_t>(d)].name;
      if (order[static_cast<std::size_t>(d)] <= finishers) {
        entry.status = rankdrift::RaceStatus::Fin;
        entry.position = order[static_cast<std::size_t>(d)];
      } else {
        entry.status = rankdrift::RaceStatus::Dnf;
      }
      gp.entries.push_back(std::move(entry));
    }
    season.races.push_back(std::move(gp));
  }
  return season;
}

inline std::string data_dir() { return RANKDRIFT_DATA_DIR; }

}  // namespace testutil
