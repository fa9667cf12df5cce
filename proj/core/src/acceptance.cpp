#include "maclaurin/acceptance.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <sstream>

#include "maclaurin/constants.hpp"
#include "maclaurin/experiments.hpp"
#include "maclaurin/rng.hpp"
#include "maclaurin/sampling.hpp"
#include "maclaurin/summation.hpp"
#include "maclaurin/symmetric_means.hpp"
#include "maclaurin/ustat.hpp"

namespace maclaurin {
namespace {

struct Outcome {
  bool passed = false;
  std::string detail;
};

std::string fmt(double v, int digits = 4) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.*g", digits, v);
  return buf;
}

std::size_t scaled(std::size_t N, double scale) {
  return std::max<std::size_t>(1000, static_cast<std::size_t>(std::llround(static_cast<double>(N) * scale)));
}

double product_of(std::span<const double> v, std::span<const std::size_t> idx) {
  double prod = 1.0;
  for (std::size_t i : idx) prod *= v[i];
  return prod;
}

Outcome crit_elem_sym(const RngStream& rng) {
  RngStream s = rng.split(1);
  double worst = 0.0;
  std::size_t cases = 0;
  for (std::size_t n = 1; n <= 12; ++n) {
    for (int rep = 0; rep < 200; ++rep) {
      std::vector<double> v(n);
      for (auto& x : v) x = s.uniform() * std::exp(2.0 * s.normal());
      for (std::size_t k = 0; k <= n; ++k) {
        CompensatedSum brute;
        for_each_subset(n, k, [&](std::span<const std::size_t> idx) { brute.add(product_of(v, idx)); });
        const double got = std::exp(elem_sym_log(v, k));
        worst = std::max(worst, std::abs(got - brute.value()) / brute.value());
        ++cases;
      }
    }
  }
  return {worst <= 1e-12, std::to_string(cases) + " cases, max rel err " + fmt(worst)};
}

Outcome crit_hoeffding(const RngStream& rng) {
  RngStream s = rng.split(2);
  double worst = 0.0;
  for (int rep = 0; rep < 200; ++rep) {
    const std::size_t n = 1 + static_cast<std::size_t>(s.uniform() * 12.0);
    std::vector<double> v(n);
    for (auto& x : v) x = 2.0 * s.uniform();
    const double mean = compensated_sum(v) / static_cast<double>(n);
    for (std::size_t k = 0; k <= std::min<std::size_t>(4, n); ++k) {
      const double direct = product_ustat(v, k);
      for (double m : {0.0, 1.0, mean}) {
        const double recon = hoeffding_components(v, k, m).reconstruct();
        worst = std::max(worst, std::abs(recon - direct) / std::abs(direct));
      }
    }
  }
  return {worst <= 1e-10, "200 inputs, max rel residual " + fmt(worst)};
}

Outcome crit_power_sums(const RngStream& rng) {
  RngStream s = rng.split(3);
  double worst = 0.0;
  for (std::size_t n = 1; n <= 12; ++n) {
    for (int rep = 0; rep < 50; ++rep) {
      std::vector<double> y(n);
      for (auto& x : y) x = s.normal();
      for (std::size_t h = 1; h <= std::min<std::size_t>(3, n); ++h) {
        const double fast = centered_component(y, h);
        CompensatedSum brute, scale;
        std::size_t count = 0;
        for_each_subset(n, h, [&](std::span<const std::size_t> idx) {
          const double prod = product_of(y, idx);
          brute.add(prod);
          scale.add(std::abs(prod));
          ++count;
        });
        const double exact = brute.value() / static_cast<double>(count);
        const double mag = scale.value() / static_cast<double>(count);
        worst = std::max(worst, std::abs(fast - exact) / mag);
      }
    }
  }
  return {worst <= 1e-12, "max err relative to mean |kernel| " + fmt(worst)};
}

Outcome crit_bsum(const RngStream& rng) {
  RngStream s = rng.split(4);
  std::size_t violations = 0, equality_mismatch = 0;
  for (int rep = 0; rep < 10000; ++rep) {
    const std::size_t n = 2 + static_cast<std::size_t>(s.uniform() * 9.0);
    const std::size_t kmax = std::min<std::size_t>(5, n);
    const std::size_t k = 2 + static_cast<std::size_t>(s.uniform() * static_cast<double>(kmax - 1));
    std::vector<double> v(n);
    for (auto& x : v) x = s.exponential();
    const BsumResult r = bsum_check(v, k);
    if (!r.holds) ++violations;
    if (r.equality != (k == 2)) ++equality_mismatch;
  }
  return {violations == 0 && equality_mismatch == 0,
          "violations " + std::to_string(violations) + ", equality mismatches " + std::to_string(equality_mismatch)};
}

Outcome crit_monotone(const RngStream& rng) {
  RngStream s = rng.split(5);
  const Measure measures[] = {Measure::cone, Measure::surface, Measure::uniform_ball, Measure::bgmn_w,
                              Measure::custom_radial};
  const double ps[] = {1.0, 2.0, 3.5};
  std::size_t failures = 0, points = 0;
  SampleVector x;
  for (int rep = 0; rep < 10000; ++rep) {
    const double p = ps[rep % 3];
    const std::size_t n = 2 + static_cast<std::size_t>(s.uniform() * 39.0);
    const int kind = (rep / 3) % 6;
    if (kind < 5) {
      sample_measure_into(s, n, p, make_measure(measures[kind], p), x);
    } else {
      // Adversarial: coordinates with tiny, zero, and widely spread magnitudes.
      std::vector<double> c(n);
      for (auto& v : c) {
        const double u = s.uniform();
        v = u < 0.1 ? 0.0 : (u < 0.4 ? 1e-150 * s.normal() : std::exp(300.0 * (2.0 * s.uniform() - 1.0)));
      }
      x = SampleVector::from_coords(std::move(c), p);
    }
    ++points;
    if (!symmetric_mean_profile(x).monotone(1e-10)) ++failures;
  }
  return {failures == 0, std::to_string(points) + " points, failures " + std::to_string(failures)};
}

Outcome crit_constants() {
  double worst = 0.0;
  bool bracket = true;
  for (double p : {1.0, 1.5, 2.0, 3.0, 5.0}) {
    const PGaussConstants c = compute_constants(p);
    worst = std::max({worst, c.m_p.abs_diff(), c.s_p2.abs_diff(), c.rho_p2.abs_diff()});
    bracket = bracket && c.m() >= -1.0 && c.m() <= -0.5;
  }
  const double rho2 = compute_constants(2.0).rho2();
  const bool six = std::abs(rho2 - 6.0) <= 1e-8;
  return {worst <= 1e-8 && bracket && six,
          "max |quad - closed| " + fmt(worst) + ", bracket " + (bracket ? "ok" : "violated") + ", rho_2^2 " + fmt(rho2, 12)};
}

ExperimentConfig base_config(ExperimentKind kind, const AcceptanceOptions& o) {
  ExperimentConfig c;
  c.experiment = kind;
  c.seed = o.seed;
  c.threads = o.threads;
  return c;
}

Outcome crit_clt_a(const AcceptanceOptions& o, Report& out) {
  bool ok = true;
  std::string detail;
  for (Measure m : {Measure::cone, Measure::uniform_ball, Measure::surface}) {
    ExperimentConfig c = base_config(ExperimentKind::clt_a, o);
    c.measure = m;
    c.n_grid = {4096};
    c.N = scaled(200000, o.sample_scale);
    const Report r = run_experiment(c);
    out.append(r);
    for (const auto& chk : r.checks()) ok = ok && chk.passed;
    std::string ks, freq;
    for (const auto& row : r.rows()) {
      if (row.statistic == "ks_distance") ks = fmt(row.value, 3);
      if (row.statistic == "reversal_frequency") freq = fmt(row.value, 4);
    }
    detail += to_string(m) + " ks=" + ks + " freq=" + freq + "; ";
  }
  return {ok, detail};
}

Outcome checks_outcome(const Report& r) {
  bool ok = true;
  std::string detail;
  for (const auto& chk : r.checks()) {
    ok = ok && chk.passed;
    if (!chk.detail.empty()) detail += chk.detail + "; ";
  }
  return {ok, detail};
}

}  // namespace

bool AcceptanceResult::all_passed() const noexcept {
  return std::all_of(criteria.begin(), criteria.end(), [](const CriterionResult& c) { return c.passed; });
}

std::string format_criterion(const CriterionResult& r) {
  char head[32];
  std::snprintf(head, sizeof head, "[%s] %02d ", r.passed ? "PASS" : "FAIL", r.id);
  return std::string(head) + r.name + ": " + r.detail + " (" + fmt(r.seconds, 3) + " s)";
}

AcceptanceResult run_acceptance(const AcceptanceOptions& o) {
  AcceptanceResult result;
  const RngStream rng(o.seed);
  Report& out = result.report;

  auto experiment = [&](ExperimentConfig c) {
    const Report r = run_experiment(c);
    out.append(r);
    return checks_outcome(r);
  };

  const std::vector<std::pair<std::string, std::function<Outcome()>>> criteria = {
      {"elementary symmetric DP vs subset enumeration", [&] { return crit_elem_sym(rng); }},
      {"Hoeffding reconstruction identity", [&] { return crit_hoeffding(rng); }},
      {"power-sum U-statistic formulas vs enumeration", [&] { return crit_power_sums(rng); }},
      {"repeated-index sum bound", [&] { return crit_bsum(rng); }},
      {"Maclaurin monotonicity across measures", [&] { return crit_monotone(rng); }},
      {"constants: quadrature vs closed form", [&] { return crit_constants(); }},
      {"ratio CLT and reversal frequency (cone, ball, surface)", [&] { return crit_clt_a(o, out); }},
      {"Kolmogorov rate over n = 64..16384",
       [&] {
         ExperimentConfig c = base_config(ExperimentKind::berry_esseen, o);
         c.n_grid = {64, 256, 1024, 4096, 16384};
         c.N = scaled(200000, o.sample_scale);
         return experiment(c);
       }},
      {"cone CLT for R_{1,2} and constant-factor reversal",
       [&] {
         ExperimentConfig c = base_config(ExperimentKind::clt_c, o);
         c.k1 = 1;
         c.k2 = 2;
         c.n_grid = {4096};
         c.N = scaled(200000, o.sample_scale);
         c.ks_tolerance = 0.05;
         c.variance_tolerance = 0.15;
         c.c = 0.9;
         c.event_floor = 0.995;
         return experiment(c);
       }},
      {"moderate deviations rate (beta = 0.25, t = +-1)",
       [&] {
         ExperimentConfig c = base_config(ExperimentKind::mdp, o);
         c.n_grid = {1024, 4096};
         c.N = scaled(1000000, o.sample_scale);
         c.beta = 0.25;
         c.t_grid = {-1.0, 1.0};
         return experiment(c);
       }},
      {"cone/surface total variation decay",
       [&] {
         ExperimentConfig c = base_config(ExperimentKind::tv, o);
         c.p = 4.0;
         c.n_grid = {16, 64, 256, 1024};
         c.N = scaled(100000, o.sample_scale);
         Outcome a = experiment(c);
         for (double p : {1.0, 2.0}) {
           c.p = p;
           const Outcome z = experiment(c);
           a.passed = a.passed && z.passed;
           a.detail += "p=" + fmt(p) + " exact zero " + (z.passed ? "ok" : "violated") + "; ";
         }
         return a;
       }},
      {"uniform ball vs BGMN radius law and independence",
       [&] {
         ExperimentConfig c = base_config(ExperimentKind::polar, o);
         c.n_grid = {8};
         c.N = scaled(100000, o.sample_scale);
         c.ks_tolerance = 0.01;
         return experiment(c);
       }},
      {"byte-identical CSV across thread counts",
       [&]() -> Outcome {
         std::vector<ExperimentConfig> cfgs;
         ExperimentConfig a = base_config(ExperimentKind::clt_a, o);
         a.n_grid = {256, 1024};
         a.N = 20000;
         a.measure = Measure::uniform_ball;
         cfgs.push_back(a);
         ExperimentConfig m = base_config(ExperimentKind::mdp, o);
         m.n_grid = {256};
         m.N = 5000;
         m.t_grid = {-1.0, 1.0};
         cfgs.push_back(m);
         ExperimentConfig t = base_config(ExperimentKind::tv, o);
         t.p = 3.0;
         t.n_grid = {64};
         t.N = 10000;
         cfgs.push_back(t);
         std::string first, second;
         for (auto cfg : cfgs) {
           cfg.threads = 1;
           first += run_experiment(cfg).to_csv();
           cfg.threads = 4;
           second += run_experiment(cfg).to_csv();
         }
         return {first == second, std::to_string(first.size()) + " bytes compared with 1 and 4 workers"};
       }},
  };

  for (std::size_t i = 0; i < criteria.size(); ++i) {
    const int id = static_cast<int>(i) + 1;
    if (!o.only.empty() && std::find(o.only.begin(), o.only.end(), id) == o.only.end()) continue;
    const auto t0 = std::chrono::steady_clock::now();
    CriterionResult cr;
    cr.id = id;
    cr.name = criteria[i].first;
    try {
      const Outcome oc = criteria[i].second();
      cr.passed = oc.passed;
      cr.detail = oc.detail;
      while (!cr.detail.empty() && (cr.detail.back() == ' ' || cr.detail.back() == ';')) cr.detail.pop_back();
    } catch (const std::exception& e) {
      cr.passed = false;
      cr.detail = std::string("exception: ") + e.what();
    }
    cr.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    if (o.log) *o.log << format_criterion(cr) << std::endl;
    out.add_check({"criterion " + std::to_string(id) + ": " + cr.name, cr.passed, cr.detail});
    result.criteria.push_back(std::move(cr));
  }
  return result;
}

}  // namespace maclaurin
