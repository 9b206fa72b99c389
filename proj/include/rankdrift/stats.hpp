// Copyright (C) 2026 the rankdrift authors
// SPDX-License-Identifier: MIT
#pragma once

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <numbers>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "rankdrift/errors.hpp"
#include "rankdrift/math.hpp"

namespace rankdrift {

/// Descriptive summary: mean, sample standard deviation (divisor n - 1) and
/// the five-number summary with linearly interpolated quartiles.
struct StatSummary {
  std::size_t n = 0;
  double mean = 0.0;
  double sample_std = 0.0;
  double min = 0.0;
  double q1 = 0.0;
  double median = 0.0;
  double q3 = 0.0;
  double max = 0.0;
};

/// Outcome of a statistical test. df is empty for tests without a degrees-of-
/// freedom notion (Shapiro-Wilk, whose statistic is W).
struct TestResult {
  double statistic = 0.0;
  double p_value = 0.0;
  std::optional<double> df;
  std::string method_tag;
};

namespace detail {

inline double sample_mean(std::span<const double> xs) {
  double sum = 0.0;
  for (double x : xs) sum += x;
  return sum / static_cast<double>(xs.size());
}

inline double sample_variance(std::span<const double> xs, double mean) {
  double sum = 0.0;
  for (double x : xs) sum += (x - mean) * (x - mean);
  return sum / static_cast<double>(xs.size() - 1);
}

// Quantile at probability p of sorted data, by linear interpolation between
// the order statistics at (n - 1) * p.
inline double interpolated_quantile(const std::vector<double>& sorted,
                                    double p) {
  const double h = static_cast<double>(sorted.size() - 1) * p;
  const auto lo = static_cast<std::size_t>(h);
  if (lo + 1 >= sorted.size()) return sorted.back();
  return sorted[lo] + (h - static_cast<double>(lo)) * (sorted[lo + 1] - sorted[lo]);
}

inline double polynomial(std::span<const double> coeffs, double x) {
  double value = 0.0;
  for (std::size_t i = coeffs.size(); i-- > 0;) value = value * x + coeffs[i];
  return value;
}

}  // namespace detail

inline StatSummary summarize(std::span<const double> xs) {
  if (xs.size() < 2) {
    throw DomainError("summary needs at least 2 values, got " +
                      std::to_string(xs.size()));
  }
  std::vector<double> sorted(xs.begin(), xs.end());
  std::sort(sorted.begin(), sorted.end());

  StatSummary s;
  s.n = xs.size();
  s.mean = detail::sample_mean(xs);
  s.sample_std = std::sqrt(detail::sample_variance(xs, s.mean));
  s.min = sorted.front();
  s.q1 = detail::interpolated_quantile(sorted, 0.25);
  s.median = detail::interpolated_quantile(sorted, 0.50);
  s.q3 = detail::interpolated_quantile(sorted, 0.75);
  s.max = sorted.back();
  return s;
}

/// Shapiro-Wilk normality test for 3 <= n <= 5000 complete samples:
/// Royston's 1995 approximation (normal scores at (i - 3/8)/(n + 1/4),
/// polynomial-corrected weights, log-normal p-value transform). Returns W as
/// the statistic; df is empty.
inline TestResult shapiro_wilk(std::span<const double> xs) {
  const std::size_t n = xs.size();
  if (n < 3 || n > 5000) {
    throw DomainError("Shapiro-Wilk supports 3 <= n <= 5000, got " +
                      std::to_string(n));
  }
  std::vector<double> x(xs.begin(), xs.end());
  std::sort(x.begin(), x.end());
  const double range = x.back() - x.front();
  if (!(range > 0.0) || range < 1e-19) {
    throw DomainError("Shapiro-Wilk is undefined for a degenerate sample "
                      "(all values identical)");
  }

  const double an = static_cast<double>(n);
  const std::size_t half = n / 2;

  // Weight vector: negated normal scores, rescaled so the squared weights
  // sum to one, with the two largest weights replaced by polynomial fits.
  std::vector<double> a(half, 0.0);
  if (n == 3) {
    a[0] = std::sqrt(0.5);
  } else {
    static constexpr double c1[6] = {0.0,       0.221157,  -0.147981,
                                     -2.071190, 4.434685,  -2.706056};
    static constexpr double c2[6] = {0.0,       0.042981,  -0.293762,
                                     -1.752461, 5.682633,  -3.582633};
    const double an25 = an + 0.25;
    double sum_sq = 0.0;
    for (std::size_t i = 0; i < half; ++i) {
      a[i] = math::inverse_normal_cdf((static_cast<double>(i + 1) - 0.375) /
                                      an25);
      sum_sq += a[i] * a[i];
    }
    sum_sq *= 2.0;
    const double norm = std::sqrt(sum_sq);
    const double rsn = 1.0 / std::sqrt(an);
    const double a1 = detail::polynomial(c1, rsn) - a[0] / norm;
    std::size_t fitted = 1;
    double fac;
    if (n > 5) {
      fitted = 2;
      const double a2 = -a[1] / norm + detail::polynomial(c2, rsn);
      fac = std::sqrt((sum_sq - 2.0 * a[0] * a[0] - 2.0 * a[1] * a[1]) /
                      (1.0 - 2.0 * a1 * a1 - 2.0 * a2 * a2));
      a[0] = a1;
      a[1] = a2;
    } else {
      fac = std::sqrt((sum_sq - 2.0 * a[0] * a[0]) / (1.0 - 2.0 * a1 * a1));
      a[0] = a1;
    }
    for (std::size_t i = fitted; i < half; ++i) a[i] = -a[i] / fac;
  }

  // W as the squared correlation between the range-scaled sample and the
  // full (antisymmetric) weight vector; 1 - W is formed directly to keep
  // precision near W = 1.
  const auto weight = [&](std::size_t i) -> double {
    const std::size_t j = n - 1 - i;
    if (i == j) return 0.0;
    return i < j ? -a[i] : a[j];
  };
  double weight_mean = 0.0;
  double x_mean = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    weight_mean += weight(i);
    x_mean += x[i] / range;
  }
  weight_mean /= an;
  x_mean /= an;
  double ssa = 0.0, ssx = 0.0, sax = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    const double da = weight(i) - weight_mean;
    const double dx = x[i] / range - x_mean;
    ssa += da * da;
    ssx += dx * dx;
    sax += da * dx;
  }
  const double ssassx = std::sqrt(ssa * ssx);
  double w1 = (ssassx - sax) * (ssassx + sax) / (ssa * ssx);
  w1 = std::clamp(w1, 0.0, 1.0);
  const double w = 1.0 - w1;

  TestResult result;
  result.statistic = w;
  result.method_tag = "shapiro_wilk";

  if (n == 3) {
    const double pi6 = 6.0 / std::numbers::pi;
    const double stqr = std::asin(std::sqrt(0.75));
    result.p_value =
        std::clamp(pi6 * (std::asin(std::sqrt(w)) - stqr), 0.0, 1.0);
    return result;
  }

  static constexpr double c3[4] = {0.5440, -0.39978, 0.025054, -6.714e-4};
  static constexpr double c4[4] = {1.3822, -0.77857, 0.062767, -0.0020322};
  static constexpr double c5[4] = {-1.5861, -0.31082, -0.083751, 0.0038915};
  static constexpr double c6[3] = {-0.4803, -0.082676, 0.0030302};
  static constexpr double g[2] = {-2.273, 0.459};

  double y = std::log(w1);
  double m, s;
  if (n <= 11) {
    const double gamma = detail::polynomial(g, an);
    if (y >= gamma) {
      result.p_value = 1e-19;
      return result;
    }
    y = -std::log(gamma - y);
    m = detail::polynomial(c3, an);
    s = std::exp(detail::polynomial(c4, an));
  } else {
    const double log_n = std::log(an);
    m = detail::polynomial(c5, log_n);
    s = std::exp(detail::polynomial(c6, log_n));
  }
  result.p_value = std::clamp(math::normal_cdf_upper((y - m) / s), 0.0, 1.0);
  return result;
}

/// Two-sided paired t-test on the per-index differences xs - ys.
inline TestResult t_test_paired(std::span<const double> xs,
                                std::span<const double> ys) {
  if (xs.size() != ys.size()) {
    throw StructuralError("paired samples differ in length (" +
                          std::to_string(xs.size()) + " vs " +
                          std::to_string(ys.size()) + ")");
  }
  if (xs.size() < 2) {
    throw DomainError("paired t-test needs at least 2 pairs");
  }
  std::vector<double> diff(xs.size());
  for (std::size_t i = 0; i < xs.size(); ++i) diff[i] = xs[i] - ys[i];
  const double mean = detail::sample_mean(diff);
  const double variance = detail::sample_variance(diff, mean);
  if (!(variance > 0.0)) {
    throw DomainError("paired t-test is undefined for zero-variance "
                      "differences");
  }
  const double n = static_cast<double>(diff.size());
  TestResult result;
  result.statistic = mean / std::sqrt(variance / n);
  result.df = n - 1.0;
  result.p_value =
      2.0 * math::student_t_cdf(-std::fabs(result.statistic), *result.df);
  result.method_tag = "t_paired";
  return result;
}

/// Two-sided two-sample t-test with pooled variance, df = n1 + n2 - 2. The
/// caller is expected to gate on variance_ratio <= 4 first.
inline TestResult t_test_two_sample_pooled(std::span<const double> xs,
                                           std::span<const double> ys) {
  if (xs.size() < 2 || ys.size() < 2) {
    throw DomainError("pooled t-test needs at least 2 values per sample");
  }
  const double mean_x = detail::sample_mean(xs);
  const double mean_y = detail::sample_mean(ys);
  const double n1 = static_cast<double>(xs.size());
  const double n2 = static_cast<double>(ys.size());
  const double pooled = ((n1 - 1.0) * detail::sample_variance(xs, mean_x) +
                         (n2 - 1.0) * detail::sample_variance(ys, mean_y)) /
                        (n1 + n2 - 2.0);
  if (!(pooled > 0.0)) {
    throw DomainError("pooled t-test is undefined for zero pooled variance");
  }
  TestResult result;
  result.statistic =
      (mean_x - mean_y) / std::sqrt(pooled * (1.0 / n1 + 1.0 / n2));
  result.df = n1 + n2 - 2.0;
  result.p_value =
      2.0 * math::student_t_cdf(-std::fabs(result.statistic), *result.df);
  result.method_tag = "t_pooled";
  return result;
}

/// Larger sample variance over smaller. Infinite when exactly one sample is
/// constant; an error when both are.
inline double variance_ratio(std::span<const double> xs,
                             std::span<const double> ys) {
  if (xs.size() < 2 || ys.size() < 2) {
    throw DomainError("variance ratio needs at least 2 values per sample");
  }
  const double vx = detail::sample_variance(xs, detail::sample_mean(xs));
  const double vy = detail::sample_variance(ys, detail::sample_mean(ys));
  if (vx == 0.0 && vy == 0.0) {
    throw DomainError("variance ratio is undefined when both samples are "
                      "constant");
  }
  return std::max(vx, vy) / std::min(vx, vy);
}

}  // namespace rankdrift
