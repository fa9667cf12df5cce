#include <boost/math/distributions/normal.hpp>

#include <algorithm>
#include <cmath>
#include <vector>

#include "doctest.h"
#include "maclaurin/parallel.hpp"
#include "maclaurin/rng.hpp"
#include "maclaurin/stats.hpp"
#include "maclaurin/summation.hpp"

using namespace maclaurin;

TEST_SUITE("stats") {
  TEST_CASE("normal cdf values") {
    CHECK(normal_cdf(0.0) == 0.5);
    CHECK(normal_cdf(1.0) == doctest::Approx(0.8413447460685429).epsilon(1e-15));
    CHECK(normal_cdf(-8.0) == doctest::Approx(6.22096057427178e-16).epsilon(1e-12));
    CHECK(normal_cdf(3.0, 1.0, 2.0) == doctest::Approx(0.8413447460685429).epsilon(1e-15));
  }

  TEST_CASE("ks distance of quantile stairs is 1/(2N)") {
    for (std::size_t N : {1u, 10u, 1000u}) {
      std::vector<double> u(N), z(N);
      const boost::math::normal_distribution<> nd;
      for (std::size_t i = 0; i < N; ++i) {
        u[i] = (i + 0.5) / N;
        z[i] = boost::math::quantile(nd, u[i]);
      }
      CHECK(ks_distance(u, [](double t) { return t; }) == doctest::Approx(0.5 / N).epsilon(1e-12));
      CHECK(ks_distance(z, [](double t) { return normal_cdf(t); }) == doctest::Approx(0.5 / N).epsilon(1e-9));
    }
  }

  TEST_CASE("ks distance edge cases") {
    const std::vector<double> one{0.0};
    CHECK(ks_distance(one, [](double t) { return normal_cdf(t); }) == doctest::Approx(0.5));
    CHECK_THROWS(ks_distance(std::vector<double>{}, [](double t) { return t; }));
    CHECK_THROWS(ks_distance(std::vector<double>{0.5, 0.1}, [](double t) { return t; }));
    const std::vector<double> far{100.0, 200.0};
    CHECK(ks_distance(far, [](double t) { return normal_cdf(t); }) <= 1.0);
  }

  TEST_CASE("ks distance of a shifted normal") {
    RngStream rng(51);
    std::vector<double> x(10000);
    for (auto& v : x) v = rng.normal() + 1.0;
    std::sort(x.begin(), x.end());
    // sup |Phi(t - 1) - Phi(t)| = 2 Phi(1/2) - 1.
    const double exact = 2.0 * normal_cdf(0.5) - 1.0;
    CHECK(exact == doctest::Approx(0.383).epsilon(1e-3));
    CHECK(ks_distance(x, [](double t) { return normal_cdf(t); }) == doctest::Approx(exact).epsilon(0.05));
  }

  TEST_CASE("two-sample ks") {
    const std::vector<double> a{1.0, 2.0, 3.0};
    CHECK(ks_two_sample(a, a) == 0.0);
    const std::vector<double> b{4.0, 5.0};
    CHECK(ks_two_sample(a, b) == 1.0);
    const std::vector<double> c{1.5, 2.5, 3.5};
    CHECK(ks_two_sample(a, c) == doctest::Approx(1.0 / 3.0));
  }

  TEST_CASE("noise floor") { CHECK(ks_noise_floor(10000) == doctest::Approx(kKsNoiseConstant / 100.0)); }

  TEST_CASE("summary and quantiles") {
    std::vector<double> v;
    for (int i = 0; i <= 100; ++i) v.push_back(i);
    const SampleSummary s = summarize_sorted(v);
    CHECK(s.mean == doctest::Approx(50.0));
    CHECK(s.variance == doctest::Approx((101.0 * 101.0 - 1.0) / 12.0 * 101.0 / 100.0).epsilon(1e-12));
    CHECK(s.q50 == doctest::Approx(50.0));
    CHECK(quantile_sorted(v, 0.0) == 0.0);
    CHECK(quantile_sorted(v, 1.0) == 100.0);
  }

  TEST_CASE("linear fit") {
    const std::vector<double> x{1.0, 2.0, 3.0, 4.0};
    const std::vector<double> y{1.5, 3.5, 5.5, 7.5};
    const LinearFit f = linear_fit(x, y);
    CHECK(f.slope == doctest::Approx(2.0));
    CHECK(f.intercept == doctest::Approx(-0.5));
    CHECK(f.slope_se == doctest::Approx(0.0).epsilon(1e-12));
  }

  TEST_CASE("compensated sum recovers cancelled terms") {
    const std::vector<double> v{1e16, 1.0, -1e16, 1.0};
    CHECK(compensated_sum(v) == 2.0);
  }

  TEST_CASE("parallel chunks keep order and propagate errors") {
    const auto out = parallel_chunks(37, 4, [](std::size_t c) { return c * c; });
    for (std::size_t c = 0; c < 37; ++c) CHECK(out[c] == c * c);
    CHECK_THROWS_AS(parallel_chunks(10, 3,
                                    [](std::size_t c) -> int {
                                      if (c == 6) throw std::runtime_error("boom");
                                      return 0;
                                    }),
                    std::runtime_error);
    CHECK(chunk_count(kChunkSize + 1) == 2);
    CHECK(resolve_threads(0) >= 1);
  }
}
