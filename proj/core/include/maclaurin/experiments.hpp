#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "maclaurin/constants.hpp"
#include "maclaurin/report.hpp"
#include "maclaurin/rng.hpp"
#include "maclaurin/sampling.hpp"
#include "maclaurin/stats.hpp"

namespace maclaurin {

/// Experiment kinds understood by run_experiment.
enum class ExperimentKind { clt_a, berry_esseen, clt_c, mdp, tv, polar, perturbation };

std::string to_string(ExperimentKind k);
ExperimentKind experiment_from_string(const std::string& name);

struct ExperimentConfig {
  ExperimentKind experiment = ExperimentKind::clt_a;
  Measure measure = Measure::cone;
  double p = 2.0;
  std::size_t k = 1;
  std::size_t k1 = 1;
  std::size_t k2 = 2;
  std::vector<std::size_t> n_grid{1024};
  std::size_t N = 100000;
  std::uint64_t seed = 1;
  double beta = 0.25;
  std::vector<double> t_grid{-1.5, -1.0, -0.5, 0.5, 1.0, 1.5};
  double c = 0.9;                     ///< factor in P[S_{k2} >= c S_{k1}]
  double ks_tolerance = 0.03;         ///< KS threshold checked at the largest n
  double frequency_tolerance = 0.01;  ///< reversal frequency band around 1/2
  double variance_tolerance = 0.15;   ///< relative band on the limit variance
  double event_floor = 0.995;         ///< lower bound on P[S_{k2} >= c S_{k1}]
  double epsilon = 0.1;               ///< perturbation split threshold
  bool importance_sampling = true;    ///< tilted estimator for tail probabilities
  std::size_t importance_samples = 0; ///< tilted draws per (n, t); 0 means min(N, 100000)
  bool non_theorem = false;           ///< allow clt-c on measures other than cone
  unsigned threads = 0;
  std::string output;

  /// Throws std::invalid_argument naming the offending field.
  void validate() const;
};

/// Sampler spec for a measure kind; custom-radial uses R = exp(Z), Z standard normal.
MeasureSpec make_measure(Measure kind, double p);

struct EcdfReport {
  std::size_t n = 0;
  std::string statistic;
  std::vector<double> samples;  ///< sorted
  double reference_mean = 0.0;
  double reference_variance = 1.0;
  double ks_distance = 0.0;
  double noise_floor = 0.0;
  SampleSummary summary;
  std::size_t degenerate = 0;
  std::string event;  ///< name of the tracked event
  double event_frequency = 0.0;
  double runtime_seconds = 0.0;
};

/// Centred ratio statistic sqrt(n)(R e^{-m_p} - 1) under config.measure for each n; the tracked event is
/// the reversal R >= e^{m_p}.
std::vector<EcdfReport> run_clt_a(const ExperimentConfig& config);

struct RateRow {
  std::size_t n = 0;
  double ks = 0.0;
  double noise_floor = 0.0;
  bool noise_dominated = false;  ///< ks below two noise floors
};

struct RateTable {
  std::vector<RateRow> rows;
  LinearFit fit;  ///< log d_K against log n
  bool monotone = false;
  double log_constant = 0.0;  ///< max_n d_K sqrt(n / log n)
};

RateTable run_berry_esseen(const ExperimentConfig& config);

/// Ratio statistic for k1 < k2 fixed on the cone; the tracked event is S_{k2} >= c S_{k1}.
std::vector<EcdfReport> run_clt_c(const ExperimentConfig& config);

struct MdpRow {
  std::size_t n = 0;
  double t = 0.0;
  double b_n = 0.0;
  std::size_t naive_hits = 0;
  double naive_probability = 0.0;
  double naive_rate = 0.0;  ///< a lower bound on the probability scale when naive_hits = 0
  bool naive_bound = false;
  bool tilted = false;
  double theta = 0.0;
  std::size_t is_samples = 0;
  double is_probability = 0.0;
  double is_stderr = 0.0;
  double is_rate = 0.0;
  double target_rate = 0.0;  ///< t^2 / (2 s_p^2)

  double rate() const noexcept { return tilted ? is_rate : naive_rate; }
};

std::vector<MdpRow> run_mdp(const ExperimentConfig& config);

/// Cumulant generating function of g(y) = log|y| - |y|^p / p under the p-Gaussian.
double tilt_cgf(double theta, double p);
/// Tilt theta at which the tilted mean of log|Y| - (1/p) log E|Y|^p equals target.
double tilt_for_target(double target, double p);

struct TvEstimate {
  double tv = 0.0;
  double stderr_value = 0.0;
};

/// 1/2 E_cone |w / E w - 1| with w the surface weight; exactly 0 for p in {1, 2}.
TvEstimate estimate_tv_cone_surface(std::size_t n, double p, std::size_t N, const RngStream& rng,
                                    unsigned threads = 0);

struct PolarReport {
  std::size_t n = 0;
  double ks_two_sample = 0.0;
  double mean_ball = 0.0;
  double mean_bgmn = 0.0;
  double mean_expected = 0.0;  ///< n / (n + p)
  IndependenceReport independence_ball;
  IndependenceReport independence_bgmn;
};

/// Compares ||X||_p^p under uniform-ball and BGMN-exponential sampling.
PolarReport run_polar(std::size_t n, double p, std::size_t N, const RngStream& rng);

struct PerturbationReport {
  double lhs = 0.0;           ///< sup_t |P[Y1 + Y2 >= t] - P[Z >= t]|
  double ks_y1 = 0.0;         ///< sup_t |P[Y1 >= t] - P[Z >= t]|
  double tail_y2 = 0.0;       ///< P[|Y2| > epsilon]
  double epsilon_term = 0.0;  ///< epsilon / sqrt(2 pi sigma^2)
  double slack = 0.0;         ///< three KS noise floors
  double rhs = 0.0;
  bool holds = false;
};

PerturbationReport perturbation_bound_check(std::span<const double> y1, std::span<const double> y2,
                                            double sigma, double epsilon);

/// Linear term and Taylor remainder of the centred ratio statistic on cone draws.
PerturbationReport perturbation_clt_a(std::size_t n, double p, std::size_t k, std::size_t N,
                                      double epsilon, const RngStream& rng, unsigned threads = 0);

/// Runs one configured experiment and converts it to report rows and checks.
Report run_experiment(const ExperimentConfig& config);

}  // namespace maclaurin
