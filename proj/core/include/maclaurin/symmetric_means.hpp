#pragma once

#include <cstddef>
#include <span>
#include <vector>

#include "maclaurin/constants.hpp"
#include "maclaurin/sampling.hpp"

namespace maclaurin {

/// log e_k(values), where e_k is the k-th elementary symmetric polynomial.
/// Returns -inf when e_k = 0. Throws on negative input or k > n.
double elem_sym_log(std::span<const double> values, std::size_t k);

/// log e_0 .. log e_kmax from a single pass of the recurrence.
std::vector<double> elem_sym_log_all(std::span<const double> values, std::size_t kmax);

/// Same recurrence fed with log-values; log_values[i] = -inf encodes a zero.
std::vector<double> elem_sym_log_all_from_logs(std::span<const double> log_values, std::size_t kmax);

/// log C(n, k).
double log_binomial(std::size_t n, std::size_t k);

/// log S_{k,p}(x) with p taken from x. k = n uses the mean of log|x_i|.
double symmetric_mean_log(const SampleVector& x, std::size_t k);

/// log S_1 .. log S_n of one point.
struct SymMeanProfile {
  std::size_t n = 0;
  double p = 2.0;
  std::vector<double> log_S;  ///< index k = 1..n; log_S[0] = 0 is the empty mean

  bool monotone(double tolerance = 1e-10) const;
};

SymMeanProfile symmetric_mean_profile(const SampleVector& x);

/// log(S_{k2} / S_{k1}); -inf if S_{k2} = 0.
double maclaurin_ratio_log(const SampleVector& x, std::size_t k1, std::size_t k2);

/// S_{k2} / S_{k1} in [0, 1].
double maclaurin_ratio(const SampleVector& x, std::size_t k1, std::size_t k2);

struct StatValue {
  double value = 0.0;
  bool degenerate = false;  ///< ratio was 0 (a zero coordinate)
};

/// sqrt(n) (e^{-m_p} R_{k,n,p} - 1).
StatValue clt_a_statistic(const SampleVector& x, std::size_t k, const PGaussConstants& consts);

/// sqrt(n) ((n p / (k2 - k1)) (R_{k1,k2,p} - 1) + p / 2).
StatValue clt_c_statistic(const SampleVector& x, std::size_t k1, std::size_t k2);

/// clt_a_statistic = linear + remainder, with linear = sqrt(n) (log R - m_p)
/// and remainder = sqrt(n) (e^{log R - m_p} - 1 - (log R - m_p)).
struct CltASplit {
  double linear = 0.0;
  double remainder = 0.0;
  bool degenerate = false;
};
CltASplit clt_a_split(const SampleVector& x, std::size_t k, const PGaussConstants& consts);

}  // namespace maclaurin
