#pragma once

#include <cstddef>
#include <functional>
#include <span>
#include <vector>

#include "maclaurin/rng.hpp"

namespace maclaurin {

/// Largest n accepted by the enumeration routines.
inline constexpr std::size_t kUstatEnumerationGuard = 20;
/// Largest n accepted by the tuple scan in bsum_check.
inline constexpr std::size_t kBsumGuard = 12;

using Kernel = std::function<double(std::span<const double>)>;

/// C(n,k)^{-1} * sum of kernel over all k-subsets, by enumeration (n <= 20).
double ustat_brute(std::span<const double> values, std::size_t k, const Kernel& kernel);

/// Calls visit(indices) for every increasing k-tuple of {0..n-1}.
void for_each_subset(std::size_t n, std::size_t k,
                     const std::function<void(std::span<const std::size_t>)>& visit);

/// e_k(values) / C(n,k).
double product_ustat(std::span<const double> values, std::size_t k);
double product_ustat_log(std::span<const double> values, std::size_t k);

/// U_n(psi_h) for psi_h(y_1..y_h) = prod (y_j - m), h = 0..k.
struct HoeffdingComponents {
  std::size_t n = 0;
  std::size_t k = 0;
  double m = 0.0;
  std::vector<double> components;

  /// sum_h C(k,h) m^{k-h} components[h]; equals product_ustat(values, k).
  double reconstruct() const;
};

/// Orders h <= 3 use power sums of y_i = values_i - m; higher orders enumerate.
HoeffdingComponents hoeffding_components(std::span<const double> values, std::size_t k, double m);

/// U_n(psi_h) of the centered values y (no shift applied).
double centered_component(std::span<const double> y, std::size_t h);

struct HoeffdingVarianceReport {
  std::size_t h = 0;
  std::size_t n = 0;
  std::size_t replications = 0;
  double empirical_variance = 0.0;
  double predicted_variance = 0.0;  ///< Var[Y]^h / C(n,h)
  double bootstrap_se = 0.0;
  double z = 0.0;
  double cov_12 = 0.0;  ///< empirical Cov[U_n(psi_1), U_n(psi_2)]
  double cov_12_se = 0.0;
  bool variance_ok = false;
  bool uncorrelated = false;
};

/// Replicates U_n(psi_h) with y = draw() - mean and compares its variance
/// with var_y^h / C(n,h). Needs at least 1000 replications.
HoeffdingVarianceReport hoeffding_variance_check(const std::function<double(RngStream&)>& draw,
                                                 double mean, double var_y, std::size_t h,
                                                 std::size_t n, std::size_t replications,
                                                 const RngStream& rng);

struct BsumResult {
  double lhs = 0.0;  ///< sum over k-tuples with a repeated index
  double rhs = 0.0;  ///< C(k,2) sum v^2 (sum v)^{k-2}
  bool holds = false;
  bool equality = false;
};

/// Tuple scan over {1..n}^k (2 <= k <= n <= 12).
BsumResult bsum_check(std::span<const double> values, std::size_t k);

/// Joint CLT of (mean log|X_i|, product U-statistic of |X_i|^p of order k)
/// for i.i.d. p-Gaussian X.
struct UstatCovarianceReport {
  std::size_t n = 0;
  std::size_t replications = 0;
  double empirical[3] = {0.0, 0.0, 0.0};  ///< (11, 12, 22) of the sqrt(n)-scaled pair
  double predicted[3] = {0.0, 0.0, 0.0};
  double max_relative_error = 0.0;
};

UstatCovarianceReport ustat_clt_covariance_check(double p, std::size_t k, std::size_t n,
                                                 std::size_t replications, const RngStream& rng,
                                                 unsigned threads = 0);

}  // namespace maclaurin
