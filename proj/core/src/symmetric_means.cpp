#include "maclaurin/symmetric_means.hpp"

#include <cfloat>
#include <cmath>
#include <cstdint>
#include <limits>
#include <stdexcept>
#include <string>

#include "maclaurin/summation.hpp"

namespace maclaurin {
namespace {

constexpr double kNegInf = -std::numeric_limits<double>::infinity();
constexpr double kLn2 = 0.69314718055994530942;

// mantissa * 2^exponent, mantissa kept in [2^-512, 2^512] or exactly 0.
struct Scaled {
  double m = 0.0;
  std::int64_t e = 0;

  void renormalize() {
    const double a = std::abs(m);
    if (a != 0.0 && (a > 0x1p512 || a < 0x1p-512)) {
      int ex = 0;
      m = std::frexp(m, &ex);
      e += ex;
    }
  }
  double log() const { return m == 0.0 ? kNegInf : std::log(m) + static_cast<double>(e) * kLn2; }
};

// slots[j] += v * slots[j-1] for j = top..1, with v = vm * 2^ve.
void dp_step(std::vector<Scaled>& slots, std::size_t top, double vm, std::int64_t ve) {
  for (std::size_t j = top; j >= 1; --j) {
    const Scaled& prev = slots[j - 1];
    if (prev.m == 0.0) continue;
    const double tm = vm * prev.m;
    const std::int64_t te = prev.e + ve;
    Scaled& cur = slots[j];
    if (cur.m == 0.0) {
      cur.m = tm;
      cur.e = te;
    } else {
      const std::int64_t d = te - cur.e;
      if (d == 0) {
        cur.m += tm;
      } else if (d > 1100) {
        cur.m = tm;
        cur.e = te;
      } else if (d >= -1100) {
        if (d > 0) {
          cur.m = tm + std::ldexp(cur.m, static_cast<int>(-d));
          cur.e = te;
        } else {
          cur.m += std::ldexp(tm, static_cast<int>(d));
        }
      }
    }
    cur.renormalize();
  }
}

std::vector<double> finish(const std::vector<Scaled>& slots) {
  std::vector<double> out(slots.size());
  for (std::size_t j = 0; j < slots.size(); ++j) out[j] = slots[j].log();
  return out;
}

void require_k(std::size_t k, std::size_t n) {
  if (k > n) throw std::invalid_argument("k = " + std::to_string(k) + " exceeds n = " + std::to_string(n));
}

// True when every |x_i|^p is a normal double, so the value-domain path is exact enough.
bool powers_representable(const SampleVector& x) {
  for (std::size_t i = 0; i < x.size(); ++i) {
    const double a = x.abs_pow()[i];
    if (!(a >= DBL_MIN) && x[i] != 0.0) return false;
    if (std::isinf(a)) return false;
  }
  return true;
}

double mean_log_abs(const SampleVector& x) {
  CompensatedSum s;
  for (double c : x.coords()) {
    if (c == 0.0) return kNegInf;
    s.add(std::log(std::abs(c)));
  }
  return s.value() / static_cast<double>(x.size());
}

// log e_k(|x_i|^p) for 1 <= k < n.
double log_e_k(const SampleVector& x, std::size_t k) {
  if (powers_representable(x)) {
    if (k == 1) {
      const double s = compensated_sum(x.abs_pow());
      return s > 0.0 ? std::log(s) : kNegInf;
    }
    return elem_sym_log(x.abs_pow(), k);
  }
  std::vector<double> logs(x.size());
  for (std::size_t i = 0; i < x.size(); ++i) {
    logs[i] = x[i] == 0.0 ? kNegInf : x.p() * std::log(std::abs(x[i]));
  }
  return elem_sym_log_all_from_logs(logs, k)[k];
}

}  // namespace

std::vector<double> elem_sym_log_all(std::span<const double> values, std::size_t kmax) {
  require_k(kmax, values.size());
  std::vector<Scaled> slots(kmax + 1);
  slots[0].m = 1.0;
  std::size_t i = 0;
  for (double v : values) {
    if (!(v >= 0.0)) throw std::invalid_argument("elem_sym_log: values must be nonnegative");
    if (std::isinf(v)) throw std::invalid_argument("elem_sym_log: values must be finite");
    ++i;
    if (v == 0.0) continue;
    int ex = 0;
    const double vm = std::frexp(v, &ex);
    dp_step(slots, std::min(i, kmax), vm, ex);
  }
  return finish(slots);
}

std::vector<double> elem_sym_log_all_from_logs(std::span<const double> log_values, std::size_t kmax) {
  require_k(kmax, log_values.size());
  std::vector<Scaled> slots(kmax + 1);
  slots[0].m = 1.0;
  std::size_t i = 0;
  for (double lv : log_values) {
    ++i;
    if (lv == kNegInf) continue;
    if (!std::isfinite(lv)) throw std::invalid_argument("elem_sym_log: log-values must be finite or -inf");
    const double e2 = std::floor(lv / kLn2);
    const double vm = std::exp(lv - e2 * kLn2);
    dp_step(slots, std::min(i, kmax), vm, static_cast<std::int64_t>(e2));
  }
  return finish(slots);
}

double elem_sym_log(std::span<const double> values, std::size_t k) {
  return elem_sym_log_all(values, k)[k];
}

double log_binomial(std::size_t n, std::size_t k) {
  require_k(k, n);
  const std::size_t kk = std::min(k, n - k);
  if (kk <= 64) {
    CompensatedSum s;
    for (std::size_t i = 1; i <= kk; ++i) {
      s.add(std::log(static_cast<double>(n - kk + i) / static_cast<double>(i)));
    }
    return s.value();
  }
  const double nd = static_cast<double>(n);
  const double kd = static_cast<double>(k);
  return std::lgamma(nd + 1.0) - std::lgamma(kd + 1.0) - std::lgamma(nd - kd + 1.0);
}

double symmetric_mean_log(const SampleVector& x, std::size_t k) {
  const std::size_t n = x.size();
  if (k == 0 || k > n) {
    throw std::invalid_argument("symmetric mean needs 1 <= k <= n (k = " + std::to_string(k) +
                                ", n = " + std::to_string(n) + ")");
  }
  if (k == n) return mean_log_abs(x);
  const double le = log_e_k(x, k);
  if (le == kNegInf) return kNegInf;
  return (le - log_binomial(n, k)) / (static_cast<double>(k) * x.p());
}

bool SymMeanProfile::monotone(double tolerance) const {
  for (std::size_t k = 1; k + 1 < log_S.size(); ++k) {
    if (log_S[k + 1] == kNegInf) continue;
    if (log_S[k] < log_S[k + 1] - tolerance) return false;
  }
  return true;
}

SymMeanProfile symmetric_mean_profile(const SampleVector& x) {
  const std::size_t n = x.size();
  if (n == 0) throw std::invalid_argument("symmetric_mean_profile: empty point");
  SymMeanProfile prof;
  prof.n = n;
  prof.p = x.p();
  prof.log_S.assign(n + 1, 0.0);
  std::vector<double> le;
  if (powers_representable(x)) {
    le = elem_sym_log_all(x.abs_pow(), n - 1);
  } else {
    std::vector<double> logs(n);
    for (std::size_t i = 0; i < n; ++i) logs[i] = x[i] == 0.0 ? kNegInf : x.p() * std::log(std::abs(x[i]));
    le = elem_sym_log_all_from_logs(logs, n - 1);
  }
  for (std::size_t k = 1; k < n; ++k) {
    prof.log_S[k] = le[k] == kNegInf ? kNegInf : (le[k] - log_binomial(n, k)) / (static_cast<double>(k) * x.p());
  }
  if (n == 1) {
    prof.log_S[1] = mean_log_abs(x);
  } else {
    prof.log_S[1] = symmetric_mean_log(x, 1);
  }
  prof.log_S[n] = mean_log_abs(x);
  return prof;
}

double maclaurin_ratio_log(const SampleVector& x, std::size_t k1, std::size_t k2) {
  if (k1 >= k2) {
    throw std::invalid_argument("maclaurin ratio needs k1 < k2 (k1 = " + std::to_string(k1) +
                                ", k2 = " + std::to_string(k2) + ")");
  }
  const double num = symmetric_mean_log(x, k2);
  if (num == kNegInf) return kNegInf;
  return num - symmetric_mean_log(x, k1);
}

double maclaurin_ratio(const SampleVector& x, std::size_t k1, std::size_t k2) {
  return std::exp(maclaurin_ratio_log(x, k1, k2));
}

CltASplit clt_a_split(const SampleVector& x, std::size_t k, const PGaussConstants& consts) {
  const std::size_t n = x.size();
  if (k == 0 || k >= n) throw std::invalid_argument("clt_a_statistic needs 1 <= k < n");
  const double sn = std::sqrt(static_cast<double>(n));
  const double lr = maclaurin_ratio_log(x, k, n);
  CltASplit s;
  if (lr == kNegInf) {
    s.degenerate = true;
    s.linear = kNegInf;
    s.remainder = 0.0;
    return s;
  }
  const double d = lr - consts.m();
  s.linear = sn * d;
  s.remainder = sn * (std::expm1(d) - d);
  return s;
}

StatValue clt_a_statistic(const SampleVector& x, std::size_t k, const PGaussConstants& consts) {
  const std::size_t n = x.size();
  if (k == 0 || k >= n) throw std::invalid_argument("clt_a_statistic needs 1 <= k < n");
  const double sn = std::sqrt(static_cast<double>(n));
  const double lr = maclaurin_ratio_log(x, k, n);
  if (lr == kNegInf) return {-sn, true};
  return {sn * std::expm1(lr - consts.m()), false};
}

StatValue clt_c_statistic(const SampleVector& x, std::size_t k1, std::size_t k2) {
  const std::size_t n = x.size();
  if (k2 > n) throw std::invalid_argument("clt_c_statistic needs k2 <= n");
  const double nd = static_cast<double>(n);
  const double sn = std::sqrt(nd);
  const double p = x.p();
  const double scale = nd * p / static_cast<double>(k2 - k1 > 0 ? k2 - k1 : 1);
  const double lr = maclaurin_ratio_log(x, k1, k2);
  if (lr == kNegInf) return {sn * (-scale + p / 2.0), true};
  return {sn * (scale * std::expm1(lr) + p / 2.0), false};
}

}  // namespace maclaurin
