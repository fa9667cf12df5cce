#include "maclaurin/constants.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <functional>
#include <limits>
#include <sstream>

#include <boost/math/quadrature/gauss_kronrod.hpp>
#include <boost/math/quadrature/tanh_sinh.hpp>
#include <boost/math/special_functions/digamma.hpp>
#include <boost/math/special_functions/trigamma.hpp>
#include <json.hpp>

namespace maclaurin {
namespace {

void require_p(double p) {
  if (!(p >= 1.0) || !std::isfinite(p)) {
    throw std::invalid_argument("p must be >= 1 (got " + std::to_string(p) + ")");
  }
}

double log_normalizer(double p) {
  // log(2 p^{1/p} Gamma(1 + 1/p))
  return std::log(2.0) + std::log(p) / p + std::lgamma(1.0 + 1.0 / p);
}

// 2 * integral over (0, inf) of f(x) * density(x), i.e. E f(|X|).
// [0, 1] goes through tanh-sinh so log and x^r (r > -1) endpoint
// singularities are absorbed by the double-exponential substitution;
// [1, cutoff] is adaptive Gauss-Kronrod on a smooth integrand.
double expect_abs(const std::function<double(double)>& f, double p, double degree,
                  const QuadratureSettings& q, double* error_out = nullptr) {
  const double lognorm = log_normalizer(p);
  auto integrand = [&](double x) {
    const double w = std::exp(-std::pow(x, p) / p - lognorm);
    return 2.0 * f(x) * w;
  };

  boost::math::quadrature::tanh_sinh<double> inner;
  double err_lo = 0.0;
  double l1_lo = 0.0;
  std::size_t levels = 0;
  const double lo = inner.integrate(integrand, 0.0, 1.0, 1e-14, &err_lo, &l1_lo, &levels);

  const double cutoff = std::max(quadrature_cutoff(p, degree, q), 1.5);
  double err_hi = 0.0;
  const double hi = boost::math::quadrature::gauss_kronrod<double, 61>::integrate(
      integrand, 1.0, cutoff, q.max_subdivisions, 1e-14, &err_hi);

  // tanh-sinh reports a relative estimate; scale it back.
  const double err = err_lo * std::max(1.0, std::abs(l1_lo)) + err_hi;
  if (!(err <= q.abs_tolerance) || !std::isfinite(lo + hi)) {
    std::ostringstream msg;
    msg << "quadrature did not reach tolerance " << q.abs_tolerance << " for p=" << p
        << " (achieved " << err << ")";
    throw QuadratureError(msg.str(), err);
  }
  if (error_out) *error_out = err;
  return lo + hi;
}

// Raw moments E V^j of V = |X|^p, j = 0..4: prod_{i<j} (1 + i p).
std::array<double, 5> power_moments(double p) {
  std::array<double, 5> m{};
  m[0] = 1.0;
  for (int j = 1; j < 5; ++j) m[j] = m[j - 1] * (1.0 + (j - 1) * p);
  return m;
}

// E (V - c)^order from raw moments.
double shifted_moment(const std::array<double, 5>& raw, double c, int order) {
  double acc = 0.0;
  double binom = 1.0;
  for (int j = 0; j <= order; ++j) {
    acc += binom * raw[j] * std::pow(-c, order - j);
    binom = binom * (order - j) / (j + 1);
  }
  return acc;
}

}  // namespace

double DualValue::abs_diff() const noexcept { return std::abs(quadrature - closed_form); }

double RhoIdentity::rho_p2() const noexcept { return p * p * p + v2 / 4.0 - p * c12; }

double pgauss_pdf(double x, double p) {
  require_p(p);
  return std::exp(-std::pow(std::abs(x), p) / p - log_normalizer(p));
}

double quadrature_cutoff(double p, double degree, const QuadratureSettings& q) {
  require_p(p);
  const double target = -std::log(q.tail_level);
  double c = std::pow(p * target, 1.0 / p);
  for (int it = 0; it < 60; ++it) {
    const double growth = degree > 0.0 ? degree * std::log(std::max(c, 1.0)) : 0.0;
    c = std::pow(p * (target + growth), 1.0 / p);
  }
  return c;
}

double pgauss_moment(double p, double r, const QuadratureSettings& q) {
  require_p(p);
  if (!(r > -1.0)) throw std::invalid_argument("moment order r must be > -1 (divergent)");
  return expect_abs([r](double x) { return std::pow(x, r); }, p, std::max(r, 0.0), q);
}

double pgauss_moment_closed(double p, double r) {
  require_p(p);
  if (!(r > -1.0)) throw std::invalid_argument("moment order r must be > -1 (divergent)");
  const double a = 1.0 / p;
  return std::exp(r / p * std::log(p) + std::lgamma(a + r / p) - std::lgamma(a));
}

PGaussConstants compute_constants(double p, const QuadratureSettings& q) {
  require_p(p);
  namespace bm = boost::math;
  PGaussConstants c;
  c.p = p;
  const double a = 1.0 / p;

  // Closed forms through T = |X|^p / p ~ Gamma(1/p, 1).
  c.m_p.closed_form = (std::log(p) + bm::digamma(a)) / p;
  c.s_p2.closed_form = bm::trigamma(a) / (p * p) - 1.0 / p;
  {
    const auto raw = power_moments(p);
    const double shift = 1.0 + p;
    const double w2 = shifted_moment(raw, shift, 2);
    const double w4 = shifted_moment(raw, shift, 4);
    c.rho_p2.closed_form = 0.25 * (w4 - w2 * w2);
  }

  // Quadrature route, two-pass variances.
  double err = 0.0;
  c.m_p.quadrature = expect_abs([](double x) { return std::log(x); }, p, 0.0, q, &err);
  c.m_p.quadrature_error = err;

  auto g = [p](double x) { return std::log(x) - std::pow(x, p) / p; };
  const double g_mean = expect_abs(g, p, p, q);
  c.s_p2.quadrature = expect_abs(
      [&](double x) {
        const double d = g(x) - g_mean;
        return d * d;
      },
      p, 2.0 * p, q, &err);
  c.s_p2.quadrature_error = err;

  auto u = [p](double x) {
    const double w = std::pow(x, p) - 1.0 - p;
    return w * w;
  };
  const double u_mean = expect_abs(u, p, 2.0 * p, q);
  c.rho_p2.quadrature = 0.25 * expect_abs(
                                   [&](double x) {
                                     const double d = u(x) - u_mean;
                                     return d * d;
                                   },
                                   p, 4.0 * p, q, &err);
  c.rho_p2.quadrature_error = 0.25 * err;

  for (double r : {1.0, 2.0, p, 2.0 * p, 3.0 * p}) c.moment_cache[r] = pgauss_moment_closed(p, r);
  return c;
}

RhoIdentity rho_identity_terms(double p, const QuadratureSettings& q) {
  require_p(p);
  auto y = [p](double x) { return std::pow(x, p) - 1.0; };
  RhoIdentity t;
  t.p = p;
  const double ey = expect_abs(y, p, p, q);
  t.var_y = expect_abs([&](double x) { return (y(x) - ey) * (y(x) - ey); }, p, 2.0 * p, q);
  const double ey2 = expect_abs([&](double x) { return y(x) * y(x); }, p, 2.0 * p, q);
  t.v2 = expect_abs(
      [&](double x) {
        const double d = y(x) * y(x) - ey2;
        return d * d;
      },
      p, 4.0 * p, q);
  t.c12 = expect_abs([&](double x) { return (y(x) - ey) * (y(x) * y(x) - ey2); }, p, 3.0 * p, q);
  return t;
}

std::string PGaussConstants::to_json() const {
  auto dual = [](const DualValue& d) {
    return nlohmann::ordered_json{{"value", d.value()},
                                  {"quadrature", d.quadrature},
                                  {"closed-form", d.closed_form},
                                  {"abs_diff", d.abs_diff()},
                                  {"quadrature_error", d.quadrature_error}};
  };
  nlohmann::ordered_json j;
  j["p"] = p;
  j["m_p"] = dual(m_p);
  j["s_p2"] = dual(s_p2);
  j["rho_p2"] = dual(rho_p2);
  auto& moments = j["moments"] = nlohmann::ordered_json::array();
  for (const auto& [r, v] : moment_cache) moments.push_back({{"r", r}, {"value", v}});
  return j.dump(2);
}

}  // namespace maclaurin
