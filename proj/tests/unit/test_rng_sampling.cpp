#include <boost/math/special_functions/beta.hpp>

#include <algorithm>
#include <cmath>
#include <filesystem>
#include <stdexcept>
#include <vector>

#include "doctest.h"
#include "maclaurin/rng.hpp"
#include "maclaurin/sampling.hpp"
#include "maclaurin/stats.hpp"
#include "oracles.hpp"

using namespace maclaurin;

namespace {

double sum_abs_pow(const SampleVector& x) {
  double s = 0.0;
  for (double v : x.coords()) s += std::pow(std::abs(v), x.p());
  return s;
}

// Point on the unit l_p sphere with all |x_i| equal.
SampleVector equal_point(std::size_t n, double p) {
  return SampleVector::from_coords(std::vector<double>(n, std::pow(static_cast<double>(n), -1.0 / p)), p);
}

}  // namespace

TEST_SUITE("sampling") {
  TEST_CASE("streams are reproducible and splits are distinct") {
    RngStream a(42), b(42);
    for (int i = 0; i < 100; ++i) CHECK(a() == b());
    RngStream c = RngStream(42).split(1);
    RngStream d = RngStream(42).split(2);
    RngStream e = RngStream(42).split(1);
    CHECK(c.split_depth() == 1);
    CHECK(c.path_key() == e.path_key());
    CHECK(c.path_key() != d.path_key());
    bool differ = false;
    for (int i = 0; i < 10; ++i) {
      const auto vc = c(), vd = d(), ve = e();
      CHECK(vc == ve);
      differ = differ || vc != vd;
    }
    CHECK(differ);
    CHECK(RngStream(1).split(3).split(4).path_key() != RngStream(1).split(4).split(3).path_key());
  }

  TEST_CASE("uniform stays in the open unit interval") {
    RngStream r(3);
    for (int i = 0; i < 100000; ++i) {
      const double u = r.uniform();
      REQUIRE(u > 0.0);
      REQUIRE(u < 1.0);
    }
  }

  TEST_CASE("gamma sampler moments") {
    RngStream rng(11);
    for (double shape : {0.3, 0.5, 1.0, 2.5, 7.0}) {
      std::vector<double> g(200000);
      for (auto& v : g) v = sample_gamma(rng, shape);
      const auto m = oracle::moments(g);
      CAPTURE(shape);
      CHECK(std::abs(m.mean - shape) < 4.0 * std::sqrt(shape / g.size()));
      // Var of the sample variance of Gamma(a): (6a + 2a^2) / N roughly; use a 5 percent band.
      CHECK(m.variance == doctest::Approx(shape).epsilon(0.05));
    }
  }

  TEST_CASE("log gamma sampler matches log of gamma sampler in law") {
    RngStream r1(5), r2(6);
    for (double shape : {0.2, 0.5, 3.0}) {
      std::vector<double> a(20000), b(20000);
      for (auto& v : a) v = std::log(sample_gamma(r1, shape));
      for (auto& v : b) v = sample_log_gamma(r2, shape);
      std::sort(a.begin(), a.end());
      std::sort(b.begin(), b.end());
      CAPTURE(shape);
      CHECK(ks_two_sample(a, b) < 1.95 * std::sqrt(2.0 / 20000.0));
    }
  }

  TEST_CASE("p-Gaussian draws: E|X|^p = 1 with Var|X|^p = p") {
    RngStream rng(21);
    for (double p : {1.0, 1.5, 2.0, 3.0, 6.0}) {
      std::vector<double> y(100000);
      std::size_t positive = 0;
      for (auto& v : y) {
        const double x = sample_pgauss(rng, p);
        positive += x > 0.0;
        v = std::pow(std::abs(x), p);
      }
      const auto m = oracle::moments(y);
      CAPTURE(p);
      CHECK(std::abs(m.mean - 1.0) < 4.0 * std::sqrt(p / y.size()));
      CHECK(std::abs(static_cast<double>(positive) / y.size() - 0.5) < 4.0 * 0.5 / std::sqrt(y.size()));
    }
  }

  TEST_CASE("p = 2 draws are standard normal") {
    RngStream rng(8);
    std::vector<double> x(100000);
    for (auto& v : x) v = sample_pgauss(rng, 2.0);
    std::sort(x.begin(), x.end());
    CHECK(ks_distance(x, [](double t) { return normal_cdf(t); }) < 1.95 / std::sqrt(x.size()));
  }

  TEST_CASE("cone draws lie on the unit sphere") {
    RngStream rng(9);
    for (double p : {1.0, 1.7, 2.0, 5.0}) {
      for (std::size_t n : {1u, 2u, 17u, 300u}) {
        const SampleVector x = sample_cone(rng, n, p);
        REQUIRE(x.size() == n);
        CHECK(x.norm_p() == doctest::Approx(1.0).epsilon(1e-12));
        CHECK(sum_abs_pow(x) == doctest::Approx(1.0).epsilon(1e-12));
      }
    }
  }

  TEST_CASE("cone coordinate moments and the p = 2 Beta law") {
    RngStream rng(10);
    const std::size_t n = 5;
    std::vector<double> first(40000), power(40000);
    for (std::size_t i = 0; i < first.size(); ++i) {
      const SampleVector x = sample_cone(rng, n, 2.0);
      first[i] = x[0] * x[0];
      power[i] = x.abs_pow()[0];
    }
    const auto m = oracle::moments(power);
    CHECK(std::abs(m.mean - 1.0 / n) < 4.0 * m.se());
    // x_1^2 ~ Beta(1/2, (n - 1)/2) for the uniform law on the Euclidean sphere.
    std::sort(first.begin(), first.end());
    const double ks = ks_distance(first, [](double t) { return boost::math::ibeta(0.5, 2.0, t); });
    CHECK(ks < 1.95 / std::sqrt(first.size()));
  }

  TEST_CASE("surface weight special cases and input checks") {
    RngStream rng(12);
    const SampleVector x2 = sample_cone(rng, 10, 2.0);
    CHECK(surface_weight(x2) == doctest::Approx(1.0).epsilon(1e-12));
    const SampleVector x1 = sample_cone(rng, 10, 1.0);
    CHECK(surface_weight(x1) == doctest::Approx(std::sqrt(10.0)).epsilon(1e-12));
    CHECK_THROWS(surface_weight(x2.scaled(1.5)));
  }

  TEST_CASE("surface envelope dominates the weight and is attained") {
    RngStream rng(13);
    for (double p : {1.0, 1.3, 2.0, 3.0, 6.0}) {
      for (std::size_t n : {2u, 7u, 40u}) {
        const double env = surface_envelope(n, p);
        for (int i = 0; i < 300; ++i) CHECK(surface_weight(sample_cone(rng, n, p)) <= env * (1.0 + 1e-9));
        std::vector<double> e1(n, 0.0);
        e1[0] = 1.0;
        const double at_equal = surface_weight(equal_point(n, p));
        const double at_axis = surface_weight(SampleVector::from_coords(e1, p));
        CAPTURE(p);
        CAPTURE(n);
        CHECK(std::max(at_equal, at_axis) == doctest::Approx(env).epsilon(1e-9));
      }
    }
  }

  TEST_CASE("normalized surface density stays within the two-sided bound") {
    RngStream rng(14);
    for (double p : {1.0, 1.5, 3.0, 8.0}) {
      const std::size_t n = 12;
      std::vector<double> w(20000);
      for (auto& v : w) v = surface_weight(sample_cone(rng, n, p));
      const double mean = oracle::moments(w).mean;
      const double bound = std::pow(static_cast<double>(n), std::abs(1.0 / p - 0.5));
      CAPTURE(p);
      for (double v : w) {
        CHECK(v / mean <= bound * 1.05);
        CHECK(v / mean >= 1.0 / bound / 1.05);
      }
      // Extremes from the deterministic points are exact.
      std::vector<double> e1(n, 0.0);
      e1[0] = 1.0;
      const double lo = std::min(surface_weight(equal_point(n, p)), surface_weight(SampleVector::from_coords(e1, p)));
      const double hi = std::max(surface_weight(equal_point(n, p)), surface_weight(SampleVector::from_coords(e1, p)));
      CHECK(hi / lo <= bound * (1.0 + 1e-9));
      // The weight is constant at p = 1, otherwise the extremes are attained.
      if (p > 1.0) CHECK(hi / lo == doctest::Approx(bound).epsilon(1e-9));
    }
  }

  TEST_CASE("rejection always accepts for p in {1, 2}") {
    RngStream rng(15);
    for (double p : {1.0, 2.0}) {
      RejectionStats st;
      for (int i = 0; i < 500; ++i) sample_surface(rng, 9, p, &st);
      CHECK(st.accepted == 500);
      CHECK(st.proposals == 500);
    }
  }

  TEST_CASE("rejection and importance sampling agree on the surface") {
    RngStream rng(16);
    const std::size_t n = 16;
    const double p = 4.0;
    auto f = [p](const SampleVector& x) {
      double s = 0.0;
      for (double v : x.coords()) s += std::pow(std::abs(v), 2.0 * p - 2.0);
      return s;
    };
    RejectionStats st;
    std::vector<double> direct(20000);
    for (auto& v : direct) v = f(sample_surface(rng, n, p, &st));
    CHECK(st.max_weight_ratio <= 1.0);
    std::vector<double> vals(20000), ws(20000);
    for (std::size_t i = 0; i < vals.size(); ++i) {
      const WeightedSample s = sample_surface_weighted(rng, n, p);
      vals[i] = f(s.x);
      ws[i] = s.weight;
    }
    const WeightedMean is = self_normalized_mean(vals, ws);
    const auto d = oracle::moments(direct);
    CHECK(std::abs(d.mean - is.mean) < 4.0 * std::hypot(d.se(), is.std_error));
  }

  TEST_CASE("radial laws") {
    RngStream rng(17);
    RadialSpec one;
    const SampleVector x = sample_radial(rng, 6, 3.0, one);
    CHECK(x.norm_p() == doctest::Approx(1.0).epsilon(1e-12));

    RadialSpec zero;
    zero.law = RadialSpec::Constant{0.0};
    CHECK_THROWS(zero.validate(6));

    RadialSpec wrong_dim;
    wrong_dim.law = RadialSpec::UniformBallPower{5};
    CHECK_THROWS(wrong_dim.validate(6));

    RadialSpec bad;
    bad.law = RadialSpec::Custom{"negative", [](RngStream&) { return -1.0; }};
    CHECK_THROWS(sample_radial(rng, 6, 3.0, bad));
  }

  TEST_CASE("uniform ball radius: E||X||^p = n / (n + p)") {
    RngStream rng(18);
    for (double p : {1.0, 2.5}) {
      const std::size_t n = 8;
      const MeasureSpec ball = MeasureSpec::uniform_ball();
      const MeasureSpec bgmn = MeasureSpec::bgmn_exponential(p);
      std::vector<double> a(40000), b(40000);
      SampleVector x;
      for (auto& v : a) {
        sample_measure_into(rng, n, p, ball, x);
        v = std::pow(x.norm_p(), p);
      }
      for (auto& v : b) {
        sample_measure_into(rng, n, p, bgmn, x);
        v = std::pow(x.norm_p(), p);
      }
      const double expected = n / (n + p);
      const auto ma = oracle::moments(a), mb = oracle::moments(b);
      CAPTURE(p);
      CHECK(std::abs(ma.mean - expected) < 4.0 * ma.se());
      CHECK(std::abs(mb.mean - expected) < 4.0 * mb.se());
    }
  }

  TEST_CASE("polar factorization of a radial expectation") {
    RngStream rng(19);
    const std::size_t n = 6;
    const double p = 1.5;
    std::vector<double> direct(40000), radius(40000), angular(40000);
    SampleVector x;
    for (std::size_t i = 0; i < direct.size(); ++i) {
      sample_measure_into(rng, n, p, MeasureSpec::uniform_ball(), x);
      direct[i] = x.abs_pow()[0];
    }
    for (std::size_t i = 0; i < radius.size(); ++i) {
      sample_measure_into(rng, n, p, MeasureSpec::uniform_ball(), x);
      radius[i] = std::pow(x.norm_p(), p);
      angular[i] = sample_cone(rng, n, p).abs_pow()[0];
    }
    const auto d = oracle::moments(direct), r = oracle::moments(radius), a = oracle::moments(angular);
    const double product = r.mean * a.mean;
    const double se = std::hypot(d.se(), std::hypot(r.se() * a.mean, a.se() * r.mean));
    CHECK(std::abs(d.mean - product) < 4.0 * se);
    CHECK(std::abs(d.mean - (n / (n + p)) / n) < 4.0 * d.se());
  }

  TEST_CASE("radius-direction independence check") {
    RngStream rng(20);
    const std::size_t n = 8;
    const double p = 2.0;
    std::vector<SampleVector> ball(20000), cone(2000), coupled(20000);
    for (auto& x : ball) sample_measure_into(rng, n, p, MeasureSpec::uniform_ball(), x);
    for (auto& x : cone) x = sample_cone(rng, n, p);
    for (auto& x : coupled) {
      const SampleVector t = sample_cone(rng, n, p);
      x = t.scaled(1.0 + t.abs_pow()[0]);
    }
    const IndependenceReport rb = independence_check(ball);
    CHECK(rb.independent);
    CHECK(std::abs(rb.z) <= 3.0);
    const IndependenceReport rc = independence_check(cone);
    CHECK(rc.degenerate);
    CHECK(rc.independent);
    CHECK_FALSE(independence_check(coupled).independent);
    CHECK_THROWS(independence_check(std::span<const SampleVector>(ball.data(), 999)));
  }

  TEST_CASE("measure names round trip") {
    for (Measure m : {Measure::cone, Measure::surface, Measure::uniform_ball, Measure::bgmn_w, Measure::custom_radial}) {
      CHECK(measure_from_string(to_string(m)) == m);
    }
    CHECK(to_string(Measure::uniform_ball) == "uniform-ball");
    CHECK_THROWS_AS(measure_from_string("sphere"), std::invalid_argument);
  }

  TEST_CASE("binary sample matrix round trip") {
    RngStream rng(22);
    std::vector<SampleVector> rows;
    for (int i = 0; i < 5; ++i) rows.push_back(sample_cone(rng, 7, 3.0));
    const auto path = std::filesystem::temp_directory_path() / "maclaurin_unit_samples.bin";
    write_sample_matrix(path, rows);
    CHECK(std::filesystem::file_size(path) == 16 + 5 * 7 * 8);
    const SampleMatrix m = read_sample_matrix(path);
    CHECK(m.n == 7);
    CHECK(m.rows == 5);
    CHECK(m.p == 3.0f);
    for (std::size_t r = 0; r < 5; ++r) {
      for (std::size_t i = 0; i < 7; ++i) CHECK(m.values[r * 7 + i] == rows[r][i]);
    }
    std::filesystem::remove(path);
  }
}
