#include <cmath>
#include <limits>
#include <stdexcept>
#include <vector>

#include "doctest.h"
#include "maclaurin/constants.hpp"
#include "maclaurin/sampling.hpp"
#include "maclaurin/symmetric_means.hpp"
#include "oracles.hpp"

using namespace maclaurin;

namespace {

SampleVector vec(std::vector<double> v, double p) { return SampleVector::from_coords(std::move(v), p); }

// log S_k from the bitmask oracle: S_k = (e_k(|x|^p) / C(n,k))^{1/(kp)}.
double oracle_log_sym_mean(const std::vector<double>& x, double p, std::size_t k) {
  std::vector<double> y;
  for (double v : x) y.push_back(std::pow(std::abs(v), p));
  return std::log(oracle::elem_sym(y, k) / oracle::binomial(x.size(), k)) / (k * p);
}

}  // namespace

TEST_SUITE("symmetric_means") {
  TEST_CASE("small worked example") {
    const std::vector<double> v{1.0, 2.0, 3.0};
    CHECK(elem_sym_log(v, 0) == 0.0);
    CHECK(elem_sym_log(v, 1) == doctest::Approx(std::log(6.0)).epsilon(1e-15));
    CHECK(elem_sym_log(v, 2) == doctest::Approx(std::log(11.0)).epsilon(1e-15));
    CHECK(elem_sym_log(v, 3) == doctest::Approx(std::log(6.0)).epsilon(1e-15));
    CHECK(symmetric_mean_log(vec(v, 1.0), 2) == doctest::Approx(0.5 * std::log(11.0 / 3.0)).epsilon(1e-14));
    CHECK_THROWS(elem_sym_log(v, 4));
    CHECK_THROWS(elem_sym_log(std::vector<double>{1.0, -2.0}, 1));
  }

  TEST_CASE("all coordinates equal give that value for every k") {
    const SampleVector x = vec(std::vector<double>(9, 0.37), 2.5);
    const SymMeanProfile prof = symmetric_mean_profile(x);
    for (std::size_t k = 1; k <= 9; ++k) CHECK(prof.log_S[k] == doctest::Approx(std::log(0.37)).epsilon(1e-13));
    CHECK(maclaurin_ratio(x, 2, 5) == doctest::Approx(1.0).epsilon(1e-13));
  }

  TEST_CASE("DP agrees with subset enumeration") {
    RngStream rng(31);
    for (int trial = 0; trial < 40; ++trial) {
      const std::size_t n = 1 + trial % 12;
      const std::vector<double> v = oracle::positive_values(rng, n);
      const std::vector<double> all = elem_sym_log_all(v, n);
      for (std::size_t k = 0; k <= n; ++k) {
        const double ref = std::log(oracle::elem_sym(v, k));
        CAPTURE(n);
        CAPTURE(k);
        CHECK(std::exp(all[k] - ref) == doctest::Approx(1.0).epsilon(1e-12));
        CHECK(elem_sym_log(v, k) == doctest::Approx(all[k]).epsilon(1e-14));
      }
      std::vector<double> logs;
      for (double y : v) logs.push_back(std::log(y));
      const std::vector<double> from_logs = elem_sym_log_all_from_logs(logs, n);
      for (std::size_t k = 0; k <= n; ++k) CHECK(std::exp(from_logs[k] - all[k]) == doctest::Approx(1.0).epsilon(1e-12));
    }
  }

  TEST_CASE("symmetric means match the oracle for several p") {
    RngStream rng(32);
    for (double p : {1.0, 1.5, 2.0, 4.0}) {
      for (int trial = 0; trial < 10; ++trial) {
        const std::size_t n = 2 + trial;
        std::vector<double> x(n);
        for (auto& v : x) v = rng.normal();
        const SampleVector sx = vec(x, p);
        for (std::size_t k = 1; k <= n; ++k) {
          CHECK(symmetric_mean_log(sx, k) == doctest::Approx(oracle_log_sym_mean(x, p, k)).epsilon(1e-12));
        }
      }
    }
  }

  TEST_CASE("k = n is the geometric mean and k = 1 the power mean") {
    RngStream rng(33);
    std::vector<double> x(50);
    for (auto& v : x) v = rng.normal();
    double mean_log = 0.0, mean_pow = 0.0;
    for (double v : x) {
      mean_log += std::log(std::abs(v)) / 50.0;
      mean_pow += v * v * v * v / 50.0;
    }
    const SampleVector sx = vec(x, 4.0);
    CHECK(symmetric_mean_log(sx, 50) == doctest::Approx(mean_log).epsilon(1e-13));
    CHECK(symmetric_mean_log(sx, 1) == doctest::Approx(std::log(mean_pow) / 4.0).epsilon(1e-13));
  }

  TEST_CASE("binomial logs") {
    CHECK(log_binomial(5, 0) == 0.0);
    CHECK(log_binomial(10, 3) == doctest::Approx(std::log(120.0)).epsilon(1e-15));
    for (std::size_t n : {100u, 1000u, 5000u}) {
      for (std::size_t k : {1u, 2u, 63u, 64u, 65u, 70u}) {
        const double ref = std::lgamma(n + 1.0) - std::lgamma(k + 1.0) - std::lgamma(n - k + 1.0);
        CHECK(log_binomial(n, k) == doctest::Approx(ref).epsilon(1e-11));
        CHECK(log_binomial(n, k) == doctest::Approx(log_binomial(n, n - k)).epsilon(1e-13));
      }
    }
  }

  TEST_CASE("monotone profile property") {
    RngStream rng(34);
    for (int trial = 0; trial < 300; ++trial) {
      const std::size_t n = 2 + trial % 60;
      const double p = 1.0 + (trial % 7) * 0.5;
      std::vector<double> x(n);
      for (auto& v : x) v = rng.normal() * std::exp(3.0 * rng.normal());
      if (trial % 5 == 0) x[0] = 1e-200;
      const SampleVector sx = vec(x, p);
      const SymMeanProfile prof = symmetric_mean_profile(sx);
      CHECK(prof.monotone());
      CHECK(maclaurin_ratio(sx, 1, n) <= 1.0 + 1e-12);
    }
  }

  TEST_CASE("homogeneity and permutation invariance") {
    RngStream rng(35);
    std::vector<double> x(30);
    for (auto& v : x) v = rng.normal();
    const SampleVector sx = vec(x, 3.0);
    const SymMeanProfile a = symmetric_mean_profile(sx);
    const SymMeanProfile b = symmetric_mean_profile(sx.scaled(7.5));
    std::vector<double> rev(x.rbegin(), x.rend());
    const SymMeanProfile c = symmetric_mean_profile(vec(rev, 3.0));
    for (std::size_t k = 1; k <= 30; ++k) {
      CHECK(b.log_S[k] - a.log_S[k] == doctest::Approx(std::log(7.5)).epsilon(1e-12));
      CHECK(c.log_S[k] == doctest::Approx(a.log_S[k]).epsilon(1e-13));
    }
    CHECK(maclaurin_ratio(sx.scaled(7.5), 2, 9) == doctest::Approx(maclaurin_ratio(sx, 2, 9)).epsilon(1e-12));
  }

  TEST_CASE("wide dynamic range stays finite") {
    std::vector<double> x;
    for (int i = 0; i < 200; ++i) x.push_back(std::exp(-300.0 + 3.0 * i));
    const SampleVector sx = vec(x, 2.0);
    const SymMeanProfile prof = symmetric_mean_profile(sx);
    for (std::size_t k = 1; k <= 200; ++k) REQUIRE(std::isfinite(prof.log_S[k]));
    CHECK(prof.monotone());
    double mean_log = 0.0;
    for (int i = 0; i < 200; ++i) mean_log += (-300.0 + 3.0 * i) / 200.0;
    CHECK(prof.log_S[200] == doctest::Approx(mean_log).epsilon(1e-12));
  }

  TEST_CASE("zero coordinates") {
    const SampleVector x = vec({0.0, 1.0, 2.0}, 2.0);
    CHECK(symmetric_mean_log(x, 3) == -std::numeric_limits<double>::infinity());
    CHECK(std::isfinite(symmetric_mean_log(x, 2)));
    CHECK(maclaurin_ratio(x, 1, 3) == 0.0);
    const StatValue s = clt_c_statistic(x, 1, 3);
    CHECK(s.degenerate);
  }

  TEST_CASE("argument checks") {
    const SampleVector x = vec({1.0, 2.0, 3.0}, 2.0);
    CHECK_THROWS(symmetric_mean_log(x, 0));
    CHECK_THROWS(symmetric_mean_log(x, 4));
    CHECK_THROWS(maclaurin_ratio(x, 2, 2));
    CHECK_THROWS(maclaurin_ratio(x, 3, 2));
  }

  TEST_CASE("statistics at the all-equal point") {
    const std::size_t n = 64;
    for (double p : {1.0, 2.0, 3.0}) {
      const PGaussConstants c = compute_constants(p);
      const SampleVector x = vec(std::vector<double>(n, 1.3), p);
      CHECK(clt_a_statistic(x, 5, c).value == doctest::Approx(std::sqrt(n) * std::expm1(-c.m())).epsilon(1e-12));
      CHECK(clt_c_statistic(x, 1, 2).value == doctest::Approx(std::sqrt(n) * p / 2.0).epsilon(1e-12));
      const CltASplit s = clt_a_split(x, 5, c);
      CHECK(s.linear + s.remainder == doctest::Approx(clt_a_statistic(x, 5, c).value).epsilon(1e-12));
    }
  }

  TEST_CASE("clt-a statistic is centred with variance s_p^2 on the cone") {
    // Independent draws of the statistic at n = 4096; mean and variance checked against the limit.
    const std::size_t n = 4096, reps = 4000;
    const double p = 2.0;
    const PGaussConstants c = compute_constants(p);
    RngStream rng(36);
    std::vector<double> s(reps);
    SampleVector x;
    for (auto& v : s) {
      sample_cone_into(rng, n, p, x);
      v = clt_a_statistic(x, 1, c).value;
    }
    const auto m = oracle::moments(s);
    CHECK(std::abs(m.mean) < 0.06);
    CHECK(m.variance == doctest::Approx(c.s2()).epsilon(0.1));
  }
}
