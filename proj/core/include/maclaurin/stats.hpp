#pragma once

#include <functional>
#include <span>
#include <vector>

namespace maclaurin {

/// Expected Kolmogorov-Smirnov distance of N exact draws is about this / sqrt(N).
inline constexpr double kKsNoiseConstant = 0.8687;

double normal_cdf(double x, double mean = 0.0, double sd = 1.0);

/// Exact KS statistic sup_x |F_N(x) - F(x)| of sorted samples against a
/// continuous CDF. Throws on empty or unsorted input.
double ks_distance(std::span<const double> sorted, const std::function<double(double)>& cdf);

/// Two-sample KS statistic of two sorted samples.
double ks_two_sample(std::span<const double> a_sorted, std::span<const double> b_sorted);

double ks_noise_floor(std::size_t samples);

struct SampleSummary {
  double mean = 0.0;
  double variance = 0.0;  ///< unbiased
  double q05 = 0.0;
  double q50 = 0.0;
  double q95 = 0.0;
};
/// Moments and quantiles of a sorted sample.
SampleSummary summarize_sorted(std::span<const double> sorted);

/// Linear interpolation quantile of a sorted sample.
double quantile_sorted(std::span<const double> sorted, double q);

struct LinearFit {
  double slope = 0.0;
  double intercept = 0.0;
  double slope_se = 0.0;
};
/// Ordinary least squares y = intercept + slope x.
LinearFit linear_fit(std::span<const double> x, std::span<const double> y);

}  // namespace maclaurin
