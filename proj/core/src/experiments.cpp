#include "maclaurin/experiments.hpp"

#include <algorithm>
#include <boost/math/special_functions/digamma.hpp>
#include <chrono>
#include <cmath>
#include <limits>
#include <numbers>
#include <stdexcept>
#include <string>

#include "maclaurin/parallel.hpp"
#include "maclaurin/summation.hpp"
#include "maclaurin/symmetric_means.hpp"

namespace maclaurin {
namespace {

constexpr double kNegInf = -std::numeric_limits<double>::infinity();

struct Obs {
  double value = 0.0;
  bool degenerate = false;
  bool event = false;
};

// Draws N points of the measure in fixed-size chunks; chunk c uses base.split(c).
template <class F>
std::vector<Obs> simulate(const MeasureSpec& measure, std::size_t n, double p, std::size_t N,
                          const RngStream& base, unsigned threads, F&& f) {
  auto parts = parallel_chunks(chunk_count(N), threads, [&](std::size_t c) {
    RngStream stream = base.split(c);
    const std::size_t lo = c * kChunkSize;
    const std::size_t hi = std::min(N, lo + kChunkSize);
    std::vector<Obs> out;
    out.reserve(hi - lo);
    SampleVector x;
    for (std::size_t i = lo; i < hi; ++i) {
      sample_measure_into(stream, n, p, measure, x);
      out.push_back(f(x));
    }
    return out;
  });
  std::vector<Obs> all;
  all.reserve(N);
  for (auto& part : parts) all.insert(all.end(), part.begin(), part.end());
  return all;
}

RngStream stream_for(const ExperimentConfig& cfg, std::size_t n) {
  return RngStream(cfg.seed)
      .split(static_cast<std::uint64_t>(cfg.experiment) + 1)
      .split(static_cast<std::uint64_t>(cfg.measure) + 1)
      .split(n);
}

double seconds_since(std::chrono::steady_clock::time_point t0) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

EcdfReport make_ecdf(std::size_t n, std::string statistic, const std::vector<Obs>& obs, double ref_var,
                     std::string event) {
  EcdfReport r;
  r.n = n;
  r.statistic = std::move(statistic);
  r.reference_variance = ref_var;
  r.event = std::move(event);
  r.samples.reserve(obs.size());
  std::size_t hits = 0;
  for (const auto& o : obs) {
    r.samples.push_back(o.value);
    if (o.degenerate) ++r.degenerate;
    if (o.event) ++hits;
  }
  std::sort(r.samples.begin(), r.samples.end());
  const double sd = std::sqrt(ref_var);
  r.ks_distance = ks_distance(r.samples, [sd](double x) { return normal_cdf(x, 0.0, sd); });
  r.noise_floor = ks_noise_floor(obs.size());
  r.summary = summarize_sorted(r.samples);
  r.event_frequency = static_cast<double>(hits) / static_cast<double>(obs.size());
  return r;
}

void require(bool ok, const std::string& msg) {
  if (!ok) throw std::invalid_argument(msg);
}

std::string k_label(const ExperimentConfig& c) {
  if (c.experiment == ExperimentKind::clt_c) return std::to_string(c.k1) + "/" + std::to_string(c.k2);
  return std::to_string(c.k);
}

double binomial_se(double f, std::size_t N) { return std::sqrt(f * (1.0 - f) / static_cast<double>(N)); }

}  // namespace

std::string to_string(ExperimentKind k) {
  switch (k) {
    case ExperimentKind::clt_a:
      return "clt-a";
    case ExperimentKind::berry_esseen:
      return "berry-esseen";
    case ExperimentKind::clt_c:
      return "clt-c";
    case ExperimentKind::mdp:
      return "mdp";
    case ExperimentKind::tv:
      return "tv";
    case ExperimentKind::polar:
      return "polar";
    case ExperimentKind::perturbation:
      return "perturbation";
  }
  return "unknown";
}

ExperimentKind experiment_from_string(const std::string& name) {
  for (auto k : {ExperimentKind::clt_a, ExperimentKind::berry_esseen, ExperimentKind::clt_c, ExperimentKind::mdp,
                 ExperimentKind::tv, ExperimentKind::polar, ExperimentKind::perturbation}) {
    if (to_string(k) == name) return k;
  }
  throw std::invalid_argument("experiment: unknown kind '" + name +
                              "' (expected clt-a, berry-esseen, clt-c, mdp, tv, polar, perturbation)");
}

void ExperimentConfig::validate() const {
  require(p >= 1.0 && std::isfinite(p), "p: p must be >= 1 (got " + std::to_string(p) + ")");
  require(N >= 1000, "N: at least 1000 samples per n are required (got " + std::to_string(N) + ")");
  require(!n_grid.empty(), "n_grid: must not be empty");
  for (std::size_t i = 0; i < n_grid.size(); ++i) {
    require(n_grid[i] >= 2, "n_grid: every n must be >= 2");
    require(i == 0 || n_grid[i] > n_grid[i - 1], "n_grid: must be strictly increasing");
  }
  require(beta > 0.0 && beta < 0.5, "beta: must lie in (0, 1/2) (got " + std::to_string(beta) + ")");
  require(k1 < k2, "k1: k1 must be < k2 (got k1 = " + std::to_string(k1) + ", k2 = " + std::to_string(k2) + ")");
  require(k1 >= 1, "k1: must be >= 1");
  require(k >= 1, "k: must be >= 1");
  require(c > 0.0, "c: must be positive");
  require(epsilon > 0.0, "epsilon: must be positive");
  for (std::size_t n : n_grid) {
    if (experiment == ExperimentKind::clt_a || experiment == ExperimentKind::berry_esseen ||
        experiment == ExperimentKind::mdp || experiment == ExperimentKind::perturbation) {
      require(k < n, "k: must be < n for every n in n_grid");
    }
    if (experiment == ExperimentKind::clt_c) require(k2 <= n, "k2: must be <= n for every n in n_grid");
  }
  if (experiment == ExperimentKind::clt_c) {
    require(measure == Measure::cone || non_theorem,
            "measure: clt-c is stated for the cone measure; set non_theorem: true for exploratory runs");
  }
}

MeasureSpec make_measure(Measure kind, double p) {
  switch (kind) {
    case Measure::cone:
      return MeasureSpec::cone();
    case Measure::surface:
      return MeasureSpec::surface();
    case Measure::uniform_ball:
      return MeasureSpec::uniform_ball();
    case Measure::bgmn_w:
      return MeasureSpec::bgmn_exponential(p);
    case Measure::custom_radial:
      return MeasureSpec::custom(
          RadialSpec{RadialSpec::Custom{"lognormal(0,1)", [](RngStream& r) { return std::exp(r.normal()); }}});
  }
  return MeasureSpec::cone();
}

std::vector<EcdfReport> run_clt_a(const ExperimentConfig& cfg) {
  cfg.validate();
  const PGaussConstants consts = compute_constants(cfg.p);
  const MeasureSpec measure = make_measure(cfg.measure, cfg.p);
  std::vector<EcdfReport> out;
  for (std::size_t n : cfg.n_grid) {
    const auto t0 = std::chrono::steady_clock::now();
    auto obs = simulate(measure, n, cfg.p, cfg.N, stream_for(cfg, n), cfg.threads, [&](const SampleVector& x) {
      const StatValue s = clt_a_statistic(x, cfg.k, consts);
      return Obs{s.value, s.degenerate, !s.degenerate && s.value >= 0.0};
    });
    EcdfReport r = make_ecdf(n, "clt-a", obs, consts.s2(), "reversal");
    r.runtime_seconds = seconds_since(t0);
    out.push_back(std::move(r));
  }
  return out;
}

RateTable run_berry_esseen(const ExperimentConfig& cfg) {
  ExperimentConfig c = cfg;
  c.experiment = ExperimentKind::berry_esseen;
  const auto reports = run_clt_a(c);
  RateTable t;
  std::vector<double> lx, ly;
  for (const auto& r : reports) {
    RateRow row{r.n, r.ks_distance, r.noise_floor, r.ks_distance < 2.0 * r.noise_floor};
    t.rows.push_back(row);
    lx.push_back(std::log(static_cast<double>(r.n)));
    ly.push_back(std::log(r.ks_distance));
    t.log_constant = std::max(t.log_constant,
                              r.ks_distance * std::sqrt(static_cast<double>(r.n) / std::log(static_cast<double>(r.n))));
  }
  if (lx.size() >= 2) t.fit = linear_fit(lx, ly);
  t.monotone = true;
  for (std::size_t i = 1; i < t.rows.size(); ++i) {
    if (t.rows[i].ks > t.rows[i - 1].ks + 2.0 * t.rows[i].noise_floor) t.monotone = false;
  }
  return t;
}

std::vector<EcdfReport> run_clt_c(const ExperimentConfig& cfg) {
  cfg.validate();
  const PGaussConstants consts = compute_constants(cfg.p);
  const MeasureSpec measure = make_measure(cfg.measure, cfg.p);
  const double log_c = std::log(cfg.c);
  std::vector<EcdfReport> out;
  for (std::size_t n : cfg.n_grid) {
    const auto t0 = std::chrono::steady_clock::now();
    auto obs = simulate(measure, n, cfg.p, cfg.N, stream_for(cfg, n), cfg.threads, [&](const SampleVector& x) {
      const double lr = maclaurin_ratio_log(x, cfg.k1, cfg.k2);
      const StatValue s = clt_c_statistic(x, cfg.k1, cfg.k2);
      return Obs{s.value, s.degenerate, lr >= log_c};
    });
    EcdfReport r = make_ecdf(n, "clt-c", obs, consts.rho2(), "S_k2 >= c S_k1");
    r.runtime_seconds = seconds_since(t0);
    out.push_back(std::move(r));
  }
  return out;
}

double tilt_cgf(double theta, double p) {
  require(theta > -1.0, "tilt parameter must exceed -1");
  const double a = (1.0 + theta) / p;
  return std::lgamma(a) - std::lgamma(1.0 / p) + a * std::log(p / (1.0 + theta)) - std::log(p) / p;
}

namespace {

double tilted_log_ratio_mean(double theta, double p) {
  const double a = (1.0 + theta) / p;
  return (boost::math::digamma(a) + std::log(p / (1.0 + theta))) / p;
}

}  // namespace

double tilt_for_target(double target, double p) {
  require(target < 0.0, "tilt target must be negative");
  double lo = -1.0 + 1e-12;
  double hi = 1.0;
  while (tilted_log_ratio_mean(hi, p) < target) {
    hi *= 2.0;
    require(hi < 1e12, "tilt target out of reach");
  }
  if (tilted_log_ratio_mean(lo, p) > target) return lo;
  for (int it = 0; it < 200 && hi - lo > 1e-14 * (1.0 + std::abs(hi)); ++it) {
    const double mid = 0.5 * (lo + hi);
    (tilted_log_ratio_mean(mid, p) < target ? lo : hi) = mid;
  }
  return 0.5 * (lo + hi);
}

std::vector<MdpRow> run_mdp(const ExperimentConfig& cfg) {
  cfg.validate();
  const PGaussConstants consts = compute_constants(cfg.p);
  const MeasureSpec measure = make_measure(cfg.measure, cfg.p);
  const double p = cfg.p;
  std::vector<MdpRow> rows;
  for (std::size_t n : cfg.n_grid) {
    const double nd = static_cast<double>(n);
    const double sn = std::sqrt(nd);
    const double b = std::pow(nd, cfg.beta);
    const RngStream base = stream_for(cfg, n);

    auto obs = simulate(measure, n, p, cfg.N, base.split(0), cfg.threads, [&](const SampleVector& x) {
      const StatValue s = clt_a_statistic(x, cfg.k, consts);
      return Obs{s.value / b, s.degenerate, false};
    });

    for (std::size_t ti = 0; ti < cfg.t_grid.size(); ++ti) {
      const double t = cfg.t_grid[ti];
      MdpRow row;
      row.n = n;
      row.t = t;
      row.b_n = b;
      row.target_rate = t * t / (2.0 * consts.s2());
      for (const auto& o : obs) {
        if (t < 0.0 ? o.value <= t : o.value >= t) ++row.naive_hits;
      }
      row.naive_probability = static_cast<double>(row.naive_hits) / static_cast<double>(cfg.N);
      if (row.naive_hits == 0) {
        row.naive_bound = true;
        row.naive_rate = std::log(static_cast<double>(cfg.N)) / (b * b);
      } else {
        row.naive_rate = -std::log(row.naive_probability) / (b * b);
      }

      const double shift = t * b / sn;
      const bool can_tilt = cfg.importance_sampling && t != 0.0 && cfg.measure != Measure::surface && 1.0 + shift > 0.0 &&
                            consts.m() + std::log1p(shift) < 0.0;
      if (can_tilt) {
        // Scale invariance: the ratio only sees the direction of an i.i.d. p-Gaussian vector,
        // so the tail is estimated under an exponentially tilted i.i.d. law.
        const double boundary = std::log1p(shift);
        const double theta = tilt_for_target(consts.m() + boundary, p);
        const double a = (1.0 + theta) / p;
        const double log_w0 = nd * tilt_cgf(theta, p);
        const RngStream tilt_base = base.split(1 + ti);
        struct Acc {
          double sum = 0.0;
          double sum_sq = 0.0;
        };
        const std::size_t M =
            cfg.importance_samples > 0 ? cfg.importance_samples : std::min<std::size_t>(cfg.N, 100000);
        auto parts = parallel_chunks(chunk_count(M), cfg.threads, [&](std::size_t c) {
          RngStream s = tilt_base.split(c);
          const std::size_t lo = c * kChunkSize;
          const std::size_t hi = std::min(M, lo + kChunkSize);
          const double log_scale = std::log(p / (1.0 + theta));
          std::vector<double> coords(cfg.k == 1 ? 0 : n);
          CompensatedSum sum, sum_sq;
          for (std::size_t i = lo; i < hi; ++i) {
            // Tilted coordinate: |Y|^p = p G / (1 + theta) with G ~ Gamma((1 + theta) / p).
            CompensatedSum log_abs, pow_sum;
            for (std::size_t j = 0; j < n; ++j) {
              const double lv = sample_log_gamma(s, a) + log_scale;
              const double v = std::exp(lv);
              log_abs.add(lv / p);
              pow_sum.add(v);
              if (!coords.empty()) coords[j] = std::exp(lv / p);
            }
            double lr;
            if (coords.empty()) {
              lr = log_abs.value() / nd - (std::log(pow_sum.value()) - std::log(nd)) / p;
            } else {
              lr = maclaurin_ratio_log(SampleVector::from_coords(coords, p), cfg.k, n);
            }
            const double d = lr == kNegInf ? kNegInf : lr - consts.m();
            const bool hit = t < 0.0 ? d <= boundary : d >= boundary;
            if (hit) {
              const double g = log_abs.value() - pow_sum.value() / p;
              const double w = std::exp(-theta * g + log_w0);
              sum.add(w);
              sum_sq.add(w * w);
            }
          }
          return Acc{sum.value(), sum_sq.value()};
        });
        CompensatedSum sum, sum_sq;
        for (const auto& part : parts) {
          sum.add(part.sum);
          sum_sq.add(part.sum_sq);
        }
        const double Nd = static_cast<double>(M);
        row.tilted = true;
        row.is_samples = M;
        row.theta = theta;
        row.is_probability = sum.value() / Nd;
        const double var = std::max(0.0, sum_sq.value() / Nd - row.is_probability * row.is_probability);
        row.is_stderr = std::sqrt(var / Nd);
        row.is_rate = row.is_probability > 0.0 ? -std::log(row.is_probability) / (b * b)
                                               : std::numeric_limits<double>::infinity();
      }
      rows.push_back(row);
    }
  }
  return rows;
}

TvEstimate estimate_tv_cone_surface(std::size_t n, double p, std::size_t N, const RngStream& rng, unsigned threads) {
  require(p >= 1.0, "p must be >= 1");
  require(N >= 2, "estimate_tv_cone_surface needs N >= 2");
  if (p == 1.0 || p == 2.0) return {0.0, 0.0};
  auto parts = parallel_chunks(chunk_count(N), threads, [&](std::size_t c) {
    RngStream s = rng.split(c);
    const std::size_t lo = c * kChunkSize;
    const std::size_t hi = std::min(N, lo + kChunkSize);
    std::vector<double> w;
    w.reserve(hi - lo);
    SampleVector x;
    for (std::size_t i = lo; i < hi; ++i) {
      sample_cone_into(s, n, p, x);
      w.push_back(surface_weight(x));
    }
    return w;
  });
  std::vector<double> w;
  w.reserve(N);
  for (auto& part : parts) w.insert(w.end(), part.begin(), part.end());

  auto tv_of = [](const std::vector<double>& ws) {
    const double mean = compensated_sum(ws) / static_cast<double>(ws.size());
    CompensatedSum acc;
    for (double v : ws) acc.add(std::abs(v / mean - 1.0));
    return 0.5 * acc.value() / static_cast<double>(ws.size());
  };
  TvEstimate est;
  est.tv = tv_of(w);

  constexpr std::size_t kBoot = 100;
  RngStream boot = rng.split(std::numeric_limits<std::uint64_t>::max());
  std::vector<double> resample(N), reps(kBoot);
  for (std::size_t b = 0; b < kBoot; ++b) {
    for (auto& v : resample) v = w[static_cast<std::size_t>(boot.uniform() * static_cast<double>(N))];
    reps[b] = tv_of(resample);
  }
  std::sort(reps.begin(), reps.end());
  est.stderr_value = std::sqrt(summarize_sorted(reps).variance);
  return est;
}

PolarReport run_polar(std::size_t n, double p, std::size_t N, const RngStream& rng) {
  PolarReport r;
  r.n = n;
  r.mean_expected = static_cast<double>(n) / (static_cast<double>(n) + p);
  const RadialSpec ball{RadialSpec::UniformBallPower{n}};
  const MeasureSpec bgmn = MeasureSpec::bgmn_exponential(p);
  std::vector<SampleVector> xs(N), ys(N);
  RngStream s1 = rng.split(1);
  RngStream s2 = rng.split(2);
  std::vector<double> a(N), b(N);
  for (std::size_t i = 0; i < N; ++i) {
    sample_radial_into(s1, n, p, ball, xs[i]);
    sample_radial_into(s2, n, p, bgmn.radial, ys[i]);
    a[i] = compensated_sum(xs[i].abs_pow());
    b[i] = compensated_sum(ys[i].abs_pow());
  }
  r.mean_ball = compensated_sum(a) / static_cast<double>(N);
  r.mean_bgmn = compensated_sum(b) / static_cast<double>(N);
  std::sort(a.begin(), a.end());
  std::sort(b.begin(), b.end());
  r.ks_two_sample = ks_two_sample(a, b);
  r.independence_ball = independence_check(xs);
  r.independence_bgmn = independence_check(ys);
  return r;
}

PerturbationReport perturbation_bound_check(std::span<const double> y1, std::span<const double> y2, double sigma,
                                            double epsilon) {
  require(y1.size() == y2.size(), "perturbation_bound_check: sample lengths differ");
  require(!y1.empty(), "perturbation_bound_check: empty samples");
  require(sigma > 0.0 && epsilon > 0.0, "perturbation_bound_check: sigma and epsilon must be positive");
  const std::size_t N = y1.size();
  std::vector<double> s1(y1.begin(), y1.end()), s12(N);
  std::size_t tail = 0;
  for (std::size_t i = 0; i < N; ++i) {
    s12[i] = y1[i] + y2[i];
    if (std::abs(y2[i]) > epsilon) ++tail;
  }
  std::sort(s1.begin(), s1.end());
  std::sort(s12.begin(), s12.end());
  auto cdf = [sigma](double x) { return normal_cdf(x, 0.0, sigma); };
  PerturbationReport r;
  r.lhs = ks_distance(s12, cdf);
  r.ks_y1 = ks_distance(s1, cdf);
  r.tail_y2 = static_cast<double>(tail) / static_cast<double>(N);
  r.epsilon_term = epsilon / std::sqrt(2.0 * std::numbers::pi * sigma * sigma);
  r.slack = 3.0 * ks_noise_floor(N);
  r.rhs = r.ks_y1 + r.tail_y2 + r.epsilon_term + r.slack;
  r.holds = r.lhs <= r.rhs;
  return r;
}

PerturbationReport perturbation_clt_a(std::size_t n, double p, std::size_t k, std::size_t N, double epsilon,
                                      const RngStream& rng, unsigned threads) {
  const PGaussConstants consts = compute_constants(p);
  auto parts = parallel_chunks(chunk_count(N), threads, [&](std::size_t c) {
    RngStream s = rng.split(c);
    const std::size_t lo = c * kChunkSize;
    const std::size_t hi = std::min(N, lo + kChunkSize);
    std::vector<std::pair<double, double>> out;
    SampleVector x;
    for (std::size_t i = lo; i < hi; ++i) {
      sample_cone_into(s, n, p, x);
      const CltASplit sp = clt_a_split(x, k, consts);
      out.emplace_back(sp.linear, sp.remainder);
    }
    return out;
  });
  std::vector<double> y1, y2;
  for (const auto& part : parts) {
    for (const auto& [l, r] : part) {
      y1.push_back(l);
      y2.push_back(r);
    }
  }
  return perturbation_bound_check(y1, y2, std::sqrt(consts.s2()), epsilon);
}

Report run_experiment(const ExperimentConfig& cfg) {
  cfg.validate();
  Report rep;
  const std::string exp_name = (cfg.experiment == ExperimentKind::clt_c && cfg.measure != Measure::cone)
                                   ? "clt-c-non-theorem"
                                   : to_string(cfg.experiment);
  const std::string measure = to_string(cfg.measure);
  const std::string k = k_label(cfg);
  auto row = [&](std::size_t n, const std::string& stat, double value, double se) {
    rep.add(CsvRow{exp_name, measure, cfg.p, k, n, cfg.N, cfg.seed, stat, value, se});
  };
  rep.echo("experiment", exp_name);
  rep.echo("measure", measure);
  rep.echo("p", format_double(cfg.p));
  rep.echo("k", k);
  rep.echo("N", std::to_string(cfg.N));
  rep.echo("seed", std::to_string(cfg.seed));
  std::string grid;
  for (std::size_t n : cfg.n_grid) grid += (grid.empty() ? "" : " ") + std::to_string(n);
  rep.echo("n_grid", grid);

  auto ecdf_rows = [&](const EcdfReport& r, const std::string& event_stat) {
    const double Nd = static_cast<double>(cfg.N);
    row(r.n, "ks_distance", r.ks_distance, r.noise_floor);
    row(r.n, "mean", r.summary.mean, std::sqrt(r.summary.variance / Nd));
    row(r.n, "variance", r.summary.variance, r.summary.variance * std::sqrt(2.0 / (Nd - 1.0)));
    row(r.n, "reference_variance", r.reference_variance, 0.0);
    row(r.n, "q05", r.summary.q05, 0.0);
    row(r.n, "q50", r.summary.q50, 0.0);
    row(r.n, "q95", r.summary.q95, 0.0);
    row(r.n, event_stat, r.event_frequency, binomial_se(r.event_frequency, cfg.N));
    row(r.n, "degenerate_count", static_cast<double>(r.degenerate), 0.0);
  };

  switch (cfg.experiment) {
    case ExperimentKind::clt_a: {
      const auto reports = run_clt_a(cfg);
      for (const auto& r : reports) ecdf_rows(r, "reversal_frequency");
      const auto& last = reports.back();
      rep.add_check({"ks_distance < " + format_short(cfg.ks_tolerance), last.ks_distance < cfg.ks_tolerance,
                     "n=" + std::to_string(last.n) + " ks=" + format_short(last.ks_distance)});
      rep.add_check({"reversal frequency within 1/2 +- " + format_short(cfg.frequency_tolerance),
                     std::abs(last.event_frequency - 0.5) <= cfg.frequency_tolerance,
                     "freq=" + format_short(last.event_frequency)});
      rep.add_check({"no degenerate samples", last.degenerate == 0, std::to_string(last.degenerate)});
      break;
    }
    case ExperimentKind::berry_esseen: {
      const RateTable t = run_berry_esseen(cfg);
      for (const auto& r : t.rows) {
        row(r.n, "ks_distance", r.ks, r.noise_floor);
        row(r.n, "noise_dominated", r.noise_dominated ? 1.0 : 0.0, 0.0);
      }
      row(0, "loglog_slope", t.fit.slope, t.fit.slope_se);
      row(0, "loglog_intercept", t.fit.intercept, 0.0);
      row(0, "sqrt_log_constant", t.log_constant, 0.0);
      rep.add_check({"log-log slope in [-0.65, -0.35]", t.fit.slope >= -0.65 && t.fit.slope <= -0.35,
                     "slope=" + format_short(t.fit.slope)});
      rep.add_check({"d_K decreasing within 2 noise floors", t.monotone, ""});
      break;
    }
    case ExperimentKind::clt_c: {
      const auto reports = run_clt_c(cfg);
      for (const auto& r : reports) ecdf_rows(r, "event_frequency");
      const auto& last = reports.back();
      const double rel = std::abs(last.summary.variance / last.reference_variance - 1.0);
      rep.add_check({"ks_distance < " + format_short(cfg.ks_tolerance), last.ks_distance < cfg.ks_tolerance,
                     "ks=" + format_short(last.ks_distance)});
      rep.add_check({"variance within limit +- " + format_short(cfg.variance_tolerance),
                     rel <= cfg.variance_tolerance, "var=" + format_short(last.summary.variance)});
      rep.add_check({"P[S_k2 >= c S_k1] >= " + format_short(cfg.event_floor), last.event_frequency >= cfg.event_floor,
                     "freq=" + format_short(last.event_frequency)});
      break;
    }
    case ExperimentKind::mdp: {
      const auto rows = run_mdp(cfg);
      for (const auto& r : rows) {
        const std::string tag = "t=" + format_short(r.t) + ":";
        row(r.n, tag + "b_n", r.b_n, 0.0);
        row(r.n, tag + "naive_probability", r.naive_probability, binomial_se(r.naive_probability, cfg.N));
        row(r.n, tag + (r.naive_bound ? "naive_rate_lower_bound" : "naive_rate"), r.naive_rate, 0.0);
        if (r.tilted) {
          row(r.n, tag + "theta", r.theta, 0.0);
          row(r.n, tag + "is_samples", static_cast<double>(r.is_samples), 0.0);
          row(r.n, tag + "is_probability", r.is_probability, r.is_stderr);
          row(r.n, tag + "is_rate", r.is_rate,
              r.is_probability > 0 ? r.is_stderr / r.is_probability / (r.b_n * r.b_n) : 0.0);
        }
        row(r.n, tag + "target_rate", r.target_rate, 0.0);
        if (r.t != 0.0 && (r.tilted || !r.naive_bound)) {
          const double ratio = r.rate() / r.target_rate;
          rep.add_check({"rate within factor 2 (n=" + std::to_string(r.n) + ", t=" + format_short(r.t) + ")",
                         ratio >= 0.5 && ratio <= 2.0, "rate=" + format_short(r.rate())});
        } else if (r.t != 0.0) {
          rep.add_check({"tail observed (n=" + std::to_string(r.n) + ", t=" + format_short(r.t) + ")", false,
                         "no hits; rate lower bound " + format_short(r.naive_rate)});
        }
      }
      for (const auto& up : rows) {
        if (up.t <= 0.0) continue;
        for (const auto& down : rows) {
          if (down.n != up.n || down.t != -up.t) continue;
          const double ratio = up.rate() / down.rate();
          rep.add_check({"even rate (n=" + std::to_string(up.n) + ", |t|=" + format_short(up.t) + ")",
                         ratio >= 1.0 / 1.5 && ratio <= 1.5, "ratio=" + format_short(ratio)});
        }
      }
      break;
    }
    case ExperimentKind::tv: {
      std::vector<double> lx, ly;
      bool zero = true;
      for (std::size_t n : cfg.n_grid) {
        const TvEstimate e = estimate_tv_cone_surface(n, cfg.p, cfg.N, stream_for(cfg, n), cfg.threads);
        row(n, "tv_cone_surface", e.tv, e.stderr_value);
        zero = zero && e.tv == 0.0;
        if (e.tv > 0.0) {
          lx.push_back(std::log(static_cast<double>(n)));
          ly.push_back(std::log(e.tv));
        }
      }
      if (cfg.p == 1.0 || cfg.p == 2.0) {
        rep.add_check({"tv exactly zero", zero, ""});
      } else if (lx.size() >= 2) {
        const LinearFit f = linear_fit(lx, ly);
        row(0, "loglog_slope", f.slope, f.slope_se);
        rep.add_check({"tv slope within -0.5 +- 0.15", std::abs(f.slope + 0.5) <= 0.15, "slope=" + format_short(f.slope)});
      }
      break;
    }
    case ExperimentKind::polar: {
      for (std::size_t n : cfg.n_grid) {
        const PolarReport r = run_polar(n, cfg.p, cfg.N, stream_for(cfg, n));
        const double se = 1.0 / std::sqrt(static_cast<double>(cfg.N));
        row(n, "ks_two_sample", r.ks_two_sample, ks_noise_floor(cfg.N) * std::sqrt(2.0));
        row(n, "mean_norm_pow_ball", r.mean_ball, 0.0);
        row(n, "mean_norm_pow_bgmn", r.mean_bgmn, 0.0);
        row(n, "mean_norm_pow_expected", r.mean_expected, 0.0);
        row(n, "corr_ball", r.independence_ball.correlation, se);
        row(n, "corr_bgmn", r.independence_bgmn.correlation, se);
        rep.add_check({"two-sample ks < " + format_short(cfg.ks_tolerance) + " (n=" + std::to_string(n) + ")",
                       r.ks_two_sample < cfg.ks_tolerance, "ks=" + format_short(r.ks_two_sample)});
        rep.add_check({"radius independent of direction (n=" + std::to_string(n) + ")",
                       r.independence_ball.independent && r.independence_bgmn.independent,
                       "z_ball=" + format_short(r.independence_ball.z) +
                           " z_bgmn=" + format_short(r.independence_bgmn.z)});
      }
      break;
    }
    case ExperimentKind::perturbation: {
      for (std::size_t n : cfg.n_grid) {
        const PerturbationReport r = perturbation_clt_a(n, cfg.p, cfg.k, cfg.N, cfg.epsilon, stream_for(cfg, n), cfg.threads);
        row(n, "lhs", r.lhs, 0.0);
        row(n, "ks_linear", r.ks_y1, 0.0);
        row(n, "remainder_tail", r.tail_y2, 0.0);
        row(n, "rhs", r.rhs, 0.0);
        rep.add_check({"perturbation bound (n=" + std::to_string(n) + ")", r.holds,
                       "lhs=" + format_short(r.lhs) + " rhs=" + format_short(r.rhs)});
      }
      break;
    }
  }
  return rep;
}

}  // namespace maclaurin
