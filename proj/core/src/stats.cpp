#include "maclaurin/stats.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "maclaurin/summation.hpp"

namespace maclaurin {

double normal_cdf(double x, double mean, double sd) {
  return 0.5 * std::erfc(-(x - mean) / (sd * std::sqrt(2.0)));
}

double ks_distance(std::span<const double> sorted, const std::function<double(double)>& cdf) {
  if (sorted.empty()) throw std::invalid_argument("ks_distance: empty sample");
  if (!std::is_sorted(sorted.begin(), sorted.end())) throw std::invalid_argument("ks_distance: samples must be sorted");
  const double n = static_cast<double>(sorted.size());
  double d = 0.0;
  for (std::size_t i = 0; i < sorted.size(); ++i) {
    const double f = cdf(sorted[i]);
    d = std::max({d, std::abs(static_cast<double>(i) / n - f), std::abs(static_cast<double>(i + 1) / n - f)});
  }
  return std::min(d, 1.0);
}

double ks_two_sample(std::span<const double> a, std::span<const double> b) {
  if (a.empty() || b.empty()) throw std::invalid_argument("ks_two_sample: empty sample");
  if (!std::is_sorted(a.begin(), a.end()) || !std::is_sorted(b.begin(), b.end())) {
    throw std::invalid_argument("ks_two_sample: samples must be sorted");
  }
  const double na = static_cast<double>(a.size());
  const double nb = static_cast<double>(b.size());
  std::size_t i = 0, j = 0;
  double d = 0.0;
  while (i < a.size() && j < b.size()) {
    const double x = std::min(a[i], b[j]);
    while (i < a.size() && a[i] == x) ++i;
    while (j < b.size() && b[j] == x) ++j;
    d = std::max(d, std::abs(static_cast<double>(i) / na - static_cast<double>(j) / nb));
  }
  return d;
}

double ks_noise_floor(std::size_t samples) {
  return kKsNoiseConstant / std::sqrt(static_cast<double>(samples));
}

double quantile_sorted(std::span<const double> s, double q) {
  if (s.empty()) throw std::invalid_argument("quantile of empty sample");
  const double pos = q * static_cast<double>(s.size() - 1);
  const auto lo = static_cast<std::size_t>(std::floor(pos));
  const std::size_t hi = std::min(lo + 1, s.size() - 1);
  const double w = pos - static_cast<double>(lo);
  return s[lo] * (1.0 - w) + s[hi] * w;
}

SampleSummary summarize_sorted(std::span<const double> s) {
  SampleSummary r;
  if (s.empty()) return r;
  const double n = static_cast<double>(s.size());
  r.mean = compensated_sum(s) / n;
  CompensatedSum v;
  for (double x : s) v.add((x - r.mean) * (x - r.mean));
  r.variance = s.size() > 1 ? v.value() / (n - 1.0) : 0.0;
  r.q05 = quantile_sorted(s, 0.05);
  r.q50 = quantile_sorted(s, 0.5);
  r.q95 = quantile_sorted(s, 0.95);
  return r;
}

LinearFit linear_fit(std::span<const double> x, std::span<const double> y) {
  if (x.size() != y.size() || x.size() < 2) throw std::invalid_argument("linear_fit needs >= 2 paired points");
  const double n = static_cast<double>(x.size());
  const double mx = compensated_sum(x) / n;
  const double my = compensated_sum(y) / n;
  CompensatedSum sxx, sxy;
  for (std::size_t i = 0; i < x.size(); ++i) {
    sxx.add((x[i] - mx) * (x[i] - mx));
    sxy.add((x[i] - mx) * (y[i] - my));
  }
  LinearFit f;
  f.slope = sxy.value() / sxx.value();
  f.intercept = my - f.slope * mx;
  if (x.size() > 2) {
    CompensatedSum rss;
    for (std::size_t i = 0; i < x.size(); ++i) {
      const double e = y[i] - f.intercept - f.slope * x[i];
      rss.add(e * e);
    }
    f.slope_se = std::sqrt(rss.value() / (n - 2.0) / sxx.value());
  }
  return f;
}

}  // namespace maclaurin
