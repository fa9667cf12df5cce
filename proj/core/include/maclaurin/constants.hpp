#pragma once

#include <map>
#include <stdexcept>
#include <string>

namespace maclaurin {

/// Raised when an adaptive integral misses its tolerance. Carries the
/// error estimate the integrator achieved.
class QuadratureError : public std::runtime_error {
 public:
  QuadratureError(const std::string& what, double achieved_error)
      : std::runtime_error(what), achieved_error_(achieved_error) {}
  double achieved_error() const noexcept { return achieved_error_; }

 private:
  double achieved_error_;
};

struct QuadratureSettings {
  double abs_tolerance = 1e-10;
  /// Density tail level that fixes the upper integration limit; the cutoff c
  /// solves c^d exp(-c^p/p) = tail_level where d is the integrand's growth.
  double tail_level = 1e-18;
  /// Bisection depth of the adaptive Gauss-Kronrod pass.
  unsigned max_subdivisions = 25;
};

/// Lebesgue density of the p-generalized Gaussian, exp(-|x|^p/p) / (2 p^{1/p} Gamma(1+1/p)).
double pgauss_pdf(double x, double p);

/// E|X|^r for X p-Gaussian, by quadrature.
double pgauss_moment(double p, double r, const QuadratureSettings& q = {});

/// E|X|^r from the gamma representation |X|^p / p ~ Gamma(1/p, 1).
double pgauss_moment_closed(double p, double r);

/// Upper limit of the integration domain for an integrand growing like x^degree.
double quadrature_cutoff(double p, double degree, const QuadratureSettings& q = {});

/// One constant evaluated along two independent routes.
struct DualValue {
  double quadrature = 0.0;
  double closed_form = 0.0;
  double quadrature_error = 0.0;  ///< integrator error estimate

  double value() const noexcept { return closed_form; }
  double abs_diff() const noexcept;
};

struct PGaussConstants {
  double p = 2.0;
  DualValue m_p;     ///< E log|X|
  DualValue s_p2;    ///< Var[log|X| - |X|^p / p]
  DualValue rho_p2;  ///< Var[(|X|^p - 1 - p)^2] / 4
  std::map<double, double> moment_cache;  ///< r -> E|X|^r (closed form)

  double m() const noexcept { return m_p.value(); }
  double s2() const noexcept { return s_p2.value(); }
  double rho2() const noexcept { return rho_p2.value(); }

  /// JSON record with per-constant provenance ("quadrature", "closed-form", "abs_diff").
  std::string to_json() const;
};

PGaussConstants compute_constants(double p, const QuadratureSettings& q = {});

/// Terms of rho_p^2 = p^3 + v2/4 - p c12 with Y = |X|^p - 1, v2 = Var[Y^2] and
/// c12 = Cov[Y, Y^2]; every term comes from its own integral.
struct RhoIdentity {
  double p = 2.0;
  double var_y = 0.0;  ///< Var[Y], equal to p
  double v2 = 0.0;
  double c12 = 0.0;
  double rho_p2() const noexcept;
};

RhoIdentity rho_identity_terms(double p, const QuadratureSettings& q = {});

}  // namespace maclaurin
