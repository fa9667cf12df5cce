#include <cmath>
#include <numbers>
#include <stdexcept>

#include "doctest.h"
#include "maclaurin/constants.hpp"
#include "oracles.hpp"

using namespace maclaurin;

namespace {
const double kGrid[] = {1.0, 1.25, 1.5, 2.0, 2.5, 3.0, 4.0, 6.0, 8.0};

// E T^j for T = X^2/2 with X standard normal: (2j-1)!! / 2^j.
double half_chi2_moment(int j) {
  double r = 1.0;
  for (int i = 1; i <= j; ++i) r *= (2.0 * i - 1.0) / 2.0;
  return r;
}
}  // namespace

TEST_SUITE("constants") {
  TEST_CASE("density at known points") {
    CHECK(pgauss_pdf(0.0, 2.0) == doctest::Approx(1.0 / std::sqrt(2.0 * std::numbers::pi)).epsilon(1e-15));
    CHECK(pgauss_pdf(1.0, 1.0) == doctest::Approx(std::exp(-1.0) / 2.0).epsilon(1e-15));
    CHECK_THROWS_AS(pgauss_pdf(0.0, 0.5), std::invalid_argument);
  }

  TEST_CASE("density is even and integrates to one") {
    for (double p : kGrid) {
      for (double x : {0.1, 0.7, 1.3, 3.0}) CHECK(pgauss_pdf(x, p) == pgauss_pdf(-x, p));
      CHECK(pgauss_moment(p, 0.0) == doctest::Approx(1.0).epsilon(1e-10));
      CHECK(oracle::pgauss_expect([](double) { return 1.0; }, p) == doctest::Approx(1.0).epsilon(1e-9));
    }
  }

  TEST_CASE("E|X|^p = 1 and Gaussian moments") {
    for (double p : kGrid) {
      CHECK(pgauss_moment(p, p) == doctest::Approx(1.0).epsilon(1e-9));
      CHECK(pgauss_moment_closed(p, p) == doctest::Approx(1.0).epsilon(1e-13));
    }
    CHECK(pgauss_moment(2.0, 2.0) == doctest::Approx(1.0).epsilon(1e-12));
    CHECK(pgauss_moment(2.0, 4.0) == doctest::Approx(3.0).epsilon(1e-12));
    CHECK(pgauss_moment(1.0, 3.0) == doctest::Approx(6.0).epsilon(1e-12));
  }

  TEST_CASE("divergent moment orders are rejected") {
    CHECK_THROWS_AS(pgauss_moment(2.0, -1.0), std::invalid_argument);
    CHECK_THROWS_AS(pgauss_moment_closed(2.0, -1.5), std::invalid_argument);
    CHECK_NOTHROW(pgauss_moment(2.0, -0.5));
  }

  TEST_CASE("m_p at p = 1 and p = 2") {
    const double g = std::numbers::egamma;
    CHECK(compute_constants(1.0).m() == doctest::Approx(-g).epsilon(1e-13));
    CHECK(compute_constants(2.0).m() == doctest::Approx(-(g + std::log(2.0)) / 2.0).epsilon(1e-13));
  }

  TEST_CASE("p = 2 variance constants from chi-square moments") {
    // rho^2 = Var[(X^2 - 3)^2] / 4 with X^2 = 2T.
    const double e[] = {1.0, 2 * half_chi2_moment(1), 4 * half_chi2_moment(2), 8 * half_chi2_moment(3),
                        16 * half_chi2_moment(4)};
    const double c2 = e[2] - 6 * e[1] + 9;
    const double c4 = e[4] - 12 * e[3] + 54 * e[2] - 108 * e[1] + 81;
    const double rho2 = (c4 - c2 * c2) / 4.0;
    CHECK(rho2 == doctest::Approx(6.0).epsilon(1e-15));
    const PGaussConstants c = compute_constants(2.0);
    CHECK(c.rho2() == doctest::Approx(rho2).epsilon(1e-12));
    CHECK(c.s2() == doctest::Approx(std::numbers::pi * std::numbers::pi / 8.0 - 0.5).epsilon(1e-12));
  }

  TEST_CASE("m_p and s_p^2 against an independent Simpson integral") {
    for (double p : {1.5, 3.0, 5.0}) {
      const double m = oracle::pgauss_expect([](double x) { return std::log(x); }, p);
      auto g = [p](double x) { return std::log(x) - std::pow(x, p) / p; };
      const double mg = oracle::pgauss_expect(g, p);
      const double vg = oracle::pgauss_expect([&](double x) { return (g(x) - mg) * (g(x) - mg); }, p);
      const PGaussConstants c = compute_constants(p);
      CHECK(c.m() == doctest::Approx(m).epsilon(1e-7));
      CHECK(c.s2() == doctest::Approx(vg).epsilon(1e-7));
    }
  }

  TEST_CASE("quadrature agrees with closed form on the grid") {
    for (double p : kGrid) {
      const PGaussConstants c = compute_constants(p);
      CAPTURE(p);
      CHECK(c.m_p.abs_diff() < 1e-8);
      CHECK(c.s_p2.abs_diff() < 1e-8);
      CHECK(c.rho_p2.abs_diff() < 1e-8);
    }
  }

  TEST_CASE("constants are in range") {
    for (double p : kGrid) {
      const PGaussConstants c = compute_constants(p);
      CAPTURE(p);
      CHECK(c.m() >= -1.0);
      CHECK(c.m() <= -0.5 + 1e-12);
      CHECK(c.s2() > 0.0);
      CHECK(c.rho2() > 0.0);
    }
  }

  TEST_CASE("rho^2 decomposition identity") {
    for (double p : kGrid) {
      const RhoIdentity r = rho_identity_terms(p);
      CAPTURE(p);
      CHECK(r.var_y == doctest::Approx(p).epsilon(1e-9));
      CHECK(r.rho_p2() == doctest::Approx(compute_constants(p).rho2()).epsilon(1e-8));
    }
  }

  TEST_CASE("json carries both evaluations") {
    const std::string j = compute_constants(3.0).to_json();
    CHECK(j.find("quadrature") != std::string::npos);
    CHECK(j.find("closed") != std::string::npos);
  }
}
