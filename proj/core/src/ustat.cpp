#include "maclaurin/ustat.hpp"

#include <boost/math/special_functions/trigamma.hpp>
#include <cmath>
#include <stdexcept>
#include <string>

#include "maclaurin/constants.hpp"
#include "maclaurin/parallel.hpp"
#include "maclaurin/sampling.hpp"
#include "maclaurin/summation.hpp"
#include "maclaurin/symmetric_means.hpp"

namespace maclaurin {
namespace {

double binomial(std::size_t n, std::size_t k) { return std::exp(log_binomial(n, k)); }

void bsum_scan(std::span<const double> v, std::size_t depth, std::size_t k, double prod, bool repeated,
               std::vector<unsigned char>& used, CompensatedSum& acc) {
  if (depth == k) {
    if (repeated) acc.add(prod);
    return;
  }
  for (std::size_t i = 0; i < v.size(); ++i) {
    const bool rep = repeated || used[i] != 0;
    ++used[i];
    bsum_scan(v, depth + 1, k, prod * v[i], rep, used, acc);
    --used[i];
  }
}

struct Moments {
  double mean = 0.0;
  double var = 0.0;
};

Moments moments(std::span<const double> x) {
  const double n = static_cast<double>(x.size());
  Moments m;
  m.mean = compensated_sum(x) / n;
  CompensatedSum s;
  for (double v : x) s.add((v - m.mean) * (v - m.mean));
  m.var = s.value() / (n - 1.0);
  return m;
}

double covariance(std::span<const double> a, std::span<const double> b) {
  const double n = static_cast<double>(a.size());
  const double ma = compensated_sum(a) / n;
  const double mb = compensated_sum(b) / n;
  CompensatedSum s;
  for (std::size_t i = 0; i < a.size(); ++i) s.add((a[i] - ma) * (b[i] - mb));
  return s.value() / (n - 1.0);
}

}  // namespace

void for_each_subset(std::size_t n, std::size_t k,
                     const std::function<void(std::span<const std::size_t>)>& visit) {
  if (k > n) return;
  std::vector<std::size_t> idx(k);
  for (std::size_t j = 0; j < k; ++j) idx[j] = j;
  for (;;) {
    visit(idx);
    std::size_t j = k;
    while (j > 0 && idx[j - 1] == n - k + j - 1) --j;
    if (j == 0) return;
    ++idx[j - 1];
    for (std::size_t t = j; t < k; ++t) idx[t] = idx[t - 1] + 1;
  }
}

double ustat_brute(std::span<const double> values, std::size_t k, const Kernel& kernel) {
  const std::size_t n = values.size();
  if (n > kUstatEnumerationGuard) {
    throw std::invalid_argument("ustat_brute: n = " + std::to_string(n) + " exceeds enumeration guard " +
                                std::to_string(kUstatEnumerationGuard));
  }
  if (k > n) throw std::invalid_argument("ustat_brute: k exceeds n");
  CompensatedSum s;
  std::vector<double> args(k);
  std::size_t count = 0;
  for_each_subset(n, k, [&](std::span<const std::size_t> idx) {
    for (std::size_t j = 0; j < k; ++j) args[j] = values[idx[j]];
    s.add(kernel(args));
    ++count;
  });
  return s.value() / static_cast<double>(count);
}

double product_ustat_log(std::span<const double> values, std::size_t k) {
  return elem_sym_log(values, k) - log_binomial(values.size(), k);
}

double product_ustat(std::span<const double> values, std::size_t k) {
  return std::exp(product_ustat_log(values, k));
}

double centered_component(std::span<const double> y, std::size_t h) {
  const std::size_t n = y.size();
  if (h > n) throw std::invalid_argument("centered_component: h exceeds n");
  if (h == 0) return 1.0;
  if (h <= 3) {
    CompensatedSum s1, s2, s3;
    for (double v : y) {
      s1.add(v);
      s2.add(v * v);
      s3.add(v * v * v);
    }
    const double S1 = s1.value();
    const double S2 = s2.value();
    const double S3 = s3.value();
    const double nd = static_cast<double>(n);
    if (h == 1) return S1 / nd;
    if (h == 2) return (S1 * S1 - S2) / (nd * (nd - 1.0));
    return (S1 * S1 * S1 - 3.0 * S1 * S2 + 2.0 * S3) / (nd * (nd - 1.0) * (nd - 2.0));
  }
  if (n > kUstatEnumerationGuard) {
    throw std::invalid_argument("hoeffding component of order " + std::to_string(h) +
                                " needs n <= " + std::to_string(kUstatEnumerationGuard));
  }
  return ustat_brute(y, h, [](std::span<const double> a) {
    double prod = 1.0;
    for (double v : a) prod *= v;
    return prod;
  });
}

HoeffdingComponents hoeffding_components(std::span<const double> values, std::size_t k, double m) {
  if (k > values.size()) throw std::invalid_argument("hoeffding_components: k exceeds n");
  std::vector<double> y(values.begin(), values.end());
  for (auto& v : y) v -= m;
  HoeffdingComponents hc;
  hc.n = values.size();
  hc.k = k;
  hc.m = m;
  hc.components.resize(k + 1);
  for (std::size_t h = 0; h <= k; ++h) hc.components[h] = centered_component(y, h);
  return hc;
}

double HoeffdingComponents::reconstruct() const {
  CompensatedSum s;
  for (std::size_t h = 0; h <= k; ++h) {
    s.add(binomial(k, h) * std::pow(m, static_cast<double>(k - h)) * components[h]);
  }
  return s.value();
}

HoeffdingVarianceReport hoeffding_variance_check(const std::function<double(RngStream&)>& draw,
                                                 double mean, double var_y, std::size_t h,
                                                 std::size_t n, std::size_t replications,
                                                 const RngStream& rng) {
  if (replications < 1000) {
    throw std::invalid_argument("hoeffding_variance_check needs at least 1000 replications");
  }
  if (h == 0 || h > n) throw std::invalid_argument("hoeffding_variance_check needs 1 <= h <= n");
  std::vector<double> uh(replications), u1(replications), u2(replications);
  std::vector<double> y(n);
  RngStream stream = rng.split(0);
  for (std::size_t r = 0; r < replications; ++r) {
    for (auto& v : y) v = draw(stream) - mean;
    uh[r] = centered_component(y, h);
    u1[r] = centered_component(y, 1);
    u2[r] = n >= 2 ? centered_component(y, 2) : 0.0;
  }

  HoeffdingVarianceReport rep;
  rep.h = h;
  rep.n = n;
  rep.replications = replications;
  rep.empirical_variance = moments(uh).var;
  rep.predicted_variance = std::pow(var_y, static_cast<double>(h)) / binomial(n, h);
  rep.cov_12 = covariance(u1, u2);

  constexpr std::size_t kBoot = 200;
  RngStream boot = rng.split(1);
  std::vector<double> bv(kBoot), bc(kBoot), rh(replications), r1(replications), r2(replications);
  for (std::size_t b = 0; b < kBoot; ++b) {
    for (std::size_t r = 0; r < replications; ++r) {
      const std::size_t j = static_cast<std::size_t>(boot.uniform() * static_cast<double>(replications));
      rh[r] = uh[j];
      r1[r] = u1[j];
      r2[r] = u2[j];
    }
    bv[b] = moments(rh).var;
    bc[b] = covariance(r1, r2);
  }
  rep.bootstrap_se = std::sqrt(moments(bv).var);
  rep.cov_12_se = std::sqrt(moments(bc).var);
  rep.z = (rep.empirical_variance - rep.predicted_variance) / rep.bootstrap_se;
  rep.variance_ok = std::abs(rep.z) <= 3.0;
  rep.uncorrelated = std::abs(rep.cov_12) <= 3.0 * rep.cov_12_se;
  return rep;
}

BsumResult bsum_check(std::span<const double> values, std::size_t k) {
  const std::size_t n = values.size();
  if (k < 2 || k > n || n > kBsumGuard) {
    throw std::invalid_argument("bsum_check needs 2 <= k <= n <= " + std::to_string(kBsumGuard) +
                                " (n = " + std::to_string(n) + ", k = " + std::to_string(k) + ")");
  }
  for (double v : values) {
    if (!(v >= 0.0)) throw std::invalid_argument("bsum_check: values must be nonnegative");
  }
  CompensatedSum acc;
  std::vector<unsigned char> used(n, 0);
  bsum_scan(values, 0, k, 1.0, false, used, acc);

  CompensatedSum sq, lin;
  for (double v : values) {
    sq.add(v * v);
    lin.add(v);
  }
  BsumResult r;
  r.lhs = acc.value();
  r.rhs = static_cast<double>(k * (k - 1) / 2) * sq.value() * std::pow(lin.value(), static_cast<double>(k - 2));
  r.holds = r.lhs <= r.rhs * (1.0 + 1e-12);
  r.equality = r.lhs == r.rhs;
  return r;
}

UstatCovarianceReport ustat_clt_covariance_check(double p, std::size_t k, std::size_t n,
                                                 std::size_t replications, const RngStream& rng,
                                                 unsigned threads) {
  if (k == 0 || k > n) throw std::invalid_argument("ustat_clt_covariance_check needs 1 <= k <= n");
  if (replications < 1000) throw std::invalid_argument("ustat_clt_covariance_check needs >= 1000 replications");
  const PGaussConstants c = compute_constants(p);
  const double sn = std::sqrt(static_cast<double>(n));

  struct Chunk {
    std::vector<double> a, b;
  };
  const std::size_t chunks = chunk_count(replications);
  auto parts = parallel_chunks(chunks, threads, [&](std::size_t ci) {
    RngStream stream = rng.split(ci);
    const std::size_t lo = ci * kChunkSize;
    const std::size_t hi = std::min(replications, lo + kChunkSize);
    Chunk out;
    SampleVector y;
    for (std::size_t r = lo; r < hi; ++r) {
      sample_pgauss_vector_into(stream, n, p, y);
      CompensatedSum logs;
      for (double v : y.coords()) logs.add(std::log(std::abs(v)));
      out.a.push_back(sn * (logs.value() / static_cast<double>(n) - c.m()));
      out.b.push_back(sn * (product_ustat(y.abs_pow(), k) - 1.0));
    }
    return out;
  });
  std::vector<double> a, b;
  for (const auto& part : parts) {
    a.insert(a.end(), part.a.begin(), part.a.end());
    b.insert(b.end(), part.b.begin(), part.b.end());
  }

  UstatCovarianceReport rep;
  rep.n = n;
  rep.replications = replications;
  rep.empirical[0] = covariance(a, a);
  rep.empirical[1] = covariance(a, b);
  rep.empirical[2] = covariance(b, b);
  const double kd = static_cast<double>(k);
  rep.predicted[0] = boost::math::trigamma(1.0 / p) / (p * p);
  rep.predicted[1] = kd;
  rep.predicted[2] = kd * kd * p;
  for (int i = 0; i < 3; ++i) {
    rep.max_relative_error =
        std::max(rep.max_relative_error, std::abs(rep.empirical[i] / rep.predicted[i] - 1.0));
  }
  return rep;
}

}  // namespace maclaurin
