#include "maclaurin/sampling.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

#include "maclaurin/summation.hpp"

namespace maclaurin {

// Grants the samplers write access to SampleVector's caches.
class SampleFiller {
 public:
  static void resize(SampleVector& v, std::size_t n, double p) {
    v.coords_.resize(n);
    v.abs_pow_.resize(n);
    v.p_ = p;
  }
  static std::vector<double>& coords(SampleVector& v) { return v.coords_; }
  static std::vector<double>& abs_pow(SampleVector& v) { return v.abs_pow_; }
  static void refresh_norm(SampleVector& v) {
    const double s = compensated_sum(v.abs_pow_);
    v.norm_p_ = v.p_ == 1.0 ? s : (v.p_ == 2.0 ? std::sqrt(s) : std::pow(s, 1.0 / v.p_));
  }
  static void scale(SampleVector& v, double c) {
    const double cp = std::pow(c, v.p_);
    for (auto& x : v.coords_) x *= c;
    for (auto& a : v.abs_pow_) a *= cp;
    v.norm_p_ *= c;
  }
};

namespace {

void require_p(double p) {
  if (!(p >= 1.0) || !std::isfinite(p)) {
    throw std::invalid_argument("p must be >= 1 (got " + std::to_string(p) + ")");
  }
}

void require_n(std::size_t n) {
  if (n == 0) throw std::invalid_argument("dimension n must be >= 1");
}

double abs_power(double x, double p) {
  const double a = std::abs(x);
  if (p == 1.0) return a;
  if (p == 2.0) return a * a;
  return std::pow(a, p);
}

double marsaglia_tsang(RngStream& rng, double shape) {
  const double d = shape - 1.0 / 3.0;
  const double c = 1.0 / std::sqrt(9.0 * d);
  for (;;) {
    double x;
    double v;
    do {
      x = rng.normal();
      v = 1.0 + c * x;
    } while (v <= 0.0);
    v = v * v * v;
    const double u = rng.uniform();
    const double x2 = x * x;
    if (u < 1.0 - 0.0331 * x2 * x2) return d * v;
    if (std::log(u) < 0.5 * x2 + d * (1.0 - v + std::log(v))) return d * v;
  }
}

// |Y| and |Y|^p for one p-Gaussian draw, plus its sign.
struct AbsDraw {
  double abs;
  double pow;
  bool negative;
};

AbsDraw draw_abs(RngStream& rng, double p) {
  if (p == 2.0) {
    const double z = rng.normal();
    return {std::abs(z), z * z, z < 0.0};
  }
  if (p == 1.0) {
    const double e = rng.exponential();
    return {e, e, rng.coin()};
  }
  const double pw = p * sample_gamma(rng, 1.0 / p);
  return {std::pow(pw, 1.0 / p), pw, rng.coin()};
}

// Fills out with i.i.d. p-Gaussian coordinates; returns sum |y_i|^p.
double fill_pgauss(RngStream& rng, std::size_t n, double p, SampleVector& out) {
  SampleFiller::resize(out, n, p);
  auto& xs = SampleFiller::coords(out);
  auto& ps = SampleFiller::abs_pow(out);
  CompensatedSum s;
  for (std::size_t i = 0; i < n; ++i) {
    const AbsDraw d = draw_abs(rng, p);
    xs[i] = d.negative ? -d.abs : d.abs;
    ps[i] = d.pow;
    s.add(d.pow);
  }
  return s.value();
}

// Divides the coordinates of out by denom_pow^{1/p}; the powers by denom_pow.
void normalize_by(SampleVector& out, double denom_pow, double p) {
  const double denom = p == 1.0 ? denom_pow : (p == 2.0 ? std::sqrt(denom_pow) : std::pow(denom_pow, 1.0 / p));
  const double inv = 1.0 / denom;
  const double inv_pow = 1.0 / denom_pow;
  for (auto& x : SampleFiller::coords(out)) x *= inv;
  for (auto& a : SampleFiller::abs_pow(out)) a *= inv_pow;
  SampleFiller::refresh_norm(out);
}

}  // namespace

SampleVector SampleVector::from_coords(std::vector<double> coords, double p) {
  require_p(p);
  SampleVector v;
  v.p_ = p;
  v.abs_pow_.resize(coords.size());
  for (std::size_t i = 0; i < coords.size(); ++i) v.abs_pow_[i] = abs_power(coords[i], p);
  v.coords_ = std::move(coords);
  SampleFiller::refresh_norm(v);
  return v;
}

SampleVector SampleVector::scaled(double c) const {
  if (!(c > 0.0)) throw std::invalid_argument("scale factor must be positive");
  SampleVector v = *this;
  SampleFiller::scale(v, c);
  return v;
}

double sample_gamma(RngStream& rng, double shape) {
  if (!(shape > 0.0)) throw std::invalid_argument("gamma shape must be positive");
  if (shape == 0.5) {
    const double z = rng.normal();
    return 0.5 * z * z;
  }
  if (shape == 1.0) return rng.exponential();
  if (shape > 1.0) return marsaglia_tsang(rng, shape);
  const double g = marsaglia_tsang(rng, shape + 1.0);
  return g * std::exp(std::log(rng.uniform()) / shape);
}

double sample_log_gamma(RngStream& rng, double shape) {
  if (!(shape > 0.0)) throw std::invalid_argument("gamma shape must be positive");
  if (shape >= 1.0) return std::log(marsaglia_tsang(rng, shape));
  return std::log(marsaglia_tsang(rng, shape + 1.0)) + std::log(rng.uniform()) / shape;
}

double sample_pgauss(RngStream& rng, double p) {
  require_p(p);
  const AbsDraw d = draw_abs(rng, p);
  return d.negative ? -d.abs : d.abs;
}

void sample_pgauss_vector_into(RngStream& rng, std::size_t n, double p, SampleVector& out) {
  require_p(p);
  require_n(n);
  fill_pgauss(rng, n, p, out);
  SampleFiller::refresh_norm(out);
}

SampleVector sample_pgauss_vector(RngStream& rng, std::size_t n, double p) {
  SampleVector v;
  sample_pgauss_vector_into(rng, n, p, v);
  return v;
}

void sample_cone_into(RngStream& rng, std::size_t n, double p, SampleVector& out) {
  require_p(p);
  require_n(n);
  double s = 0.0;
  do {
    s = fill_pgauss(rng, n, p, out);
  } while (!(s > 0.0));
  normalize_by(out, s, p);
}

SampleVector sample_cone(RngStream& rng, std::size_t n, double p) {
  SampleVector v;
  sample_cone_into(rng, n, p, v);
  return v;
}

double surface_weight(const SampleVector& x) {
  if (!(std::abs(x.norm_p() - 1.0) <= 1e-9)) {
    throw std::invalid_argument("surface_weight: point is not on the unit sphere (norm_p = " +
                                std::to_string(x.norm_p()) + ")");
  }
  const double p = x.p();
  if (p == 1.0) return std::sqrt(static_cast<double>(x.size()));
  const auto pw = x.abs_pow();
  CompensatedSum s;
  if (p == 2.0) {
    for (double a : pw) s.add(a);
  } else {
    const double e = (2.0 * p - 2.0) / p;
    for (double a : pw) s.add(std::pow(a, e));
  }
  return std::sqrt(s.value());
}

double surface_envelope(std::size_t n, double p) {
  require_p(p);
  require_n(n);
  if (p >= 2.0) return 1.0;
  return std::pow(static_cast<double>(n), (2.0 - p) / (2.0 * p));
}

void sample_surface_into(RngStream& rng, std::size_t n, double p, SampleVector& out,
                         RejectionStats* stats) {
  const double envelope = surface_envelope(n, p);
  const bool constant_weight = p == 1.0 || p == 2.0;
  for (;;) {
    sample_cone_into(rng, n, p, out);
    const double ratio = surface_weight(out) / envelope;
    if (stats) {
      ++stats->proposals;
      stats->max_weight_ratio = std::max(stats->max_weight_ratio, ratio);
    }
    if (ratio > 1.0 + 1e-9) {
      throw std::logic_error("surface sampler: weight exceeds rejection envelope (ratio " +
                             std::to_string(ratio) + ")");
    }
    if (constant_weight || rng.uniform() < ratio) {
      if (stats) ++stats->accepted;
      return;
    }
  }
}

SampleVector sample_surface(RngStream& rng, std::size_t n, double p, RejectionStats* stats) {
  SampleVector v;
  sample_surface_into(rng, n, p, v, stats);
  return v;
}

WeightedSample sample_surface_weighted(RngStream& rng, std::size_t n, double p) {
  WeightedSample s;
  sample_cone_into(rng, n, p, s.x);
  s.weight = surface_weight(s.x);
  return s;
}

WeightedMean self_normalized_mean(std::span<const double> values, std::span<const double> weights) {
  if (values.size() != weights.size() || values.empty()) {
    throw std::invalid_argument("self_normalized_mean: size mismatch or empty input");
  }
  CompensatedSum sw, swf, sw2;
  for (std::size_t i = 0; i < values.size(); ++i) {
    sw.add(weights[i]);
    swf.add(weights[i] * values[i]);
    sw2.add(weights[i] * weights[i]);
  }
  WeightedMean r;
  r.mean = swf.value() / sw.value();
  CompensatedSum var;
  for (std::size_t i = 0; i < values.size(); ++i) {
    const double d = weights[i] * (values[i] - r.mean);
    var.add(d * d);
  }
  r.std_error = std::sqrt(var.value()) / sw.value();
  r.effective_size = sw.value() * sw.value() / sw2.value();
  return r;
}

RadialSpec::BgmnW RadialSpec::BgmnW::exponential(double rate) {
  if (!(rate > 0.0)) throw std::invalid_argument("exponential rate must be positive");
  return {"exponential(rate=" + std::to_string(rate) + ")",
          [rate](RngStream& rng) { return rng.exponential() / rate; }};
}

RadialSpec::BgmnW RadialSpec::BgmnW::zero() {
  return {"zero", [](RngStream&) { return 0.0; }};
}

std::string RadialSpec::describe() const {
  struct {
    std::string operator()(const Constant& c) const { return "constant(" + std::to_string(c.value) + ")"; }
    std::string operator()(const UniformBallPower& u) const {
      return "uniform-ball-power(n=" + std::to_string(u.dimension) + ")";
    }
    std::string operator()(const BgmnW& b) const { return "bgmn-w(" + b.label + ")"; }
    std::string operator()(const Custom& c) const { return "custom(" + c.label + ")"; }
  } visitor;
  return std::visit(visitor, law);
}

void RadialSpec::validate(std::size_t n) const {
  if (const auto* c = std::get_if<Constant>(&law)) {
    if (!(c->value > 0.0) || !std::isfinite(c->value)) {
      throw std::invalid_argument("radial law must satisfy P[R = 0] = 0; constant radius must be > 0");
    }
  } else if (const auto* u = std::get_if<UniformBallPower>(&law)) {
    if (u->dimension != n) {
      throw std::invalid_argument("uniform-ball radial law built for dimension " +
                                  std::to_string(u->dimension) + ", sampled in " + std::to_string(n));
    }
  } else if (const auto* b = std::get_if<BgmnW>(&law)) {
    if (!b->draw_w) throw std::invalid_argument("bgmn-w radial law needs a W sampler");
  } else if (const auto* cu = std::get_if<Custom>(&law)) {
    if (!cu->draw_r) throw std::invalid_argument("custom radial law needs an R sampler");
  }
}

void sample_radial_into(RngStream& rng, std::size_t n, double p, const RadialSpec& spec,
                        SampleVector& out) {
  spec.validate(n);
  if (const auto* b = std::get_if<RadialSpec::BgmnW>(&spec.law)) {
    require_p(p);
    double s = 0.0;
    do {
      s = fill_pgauss(rng, n, p, out);
    } while (!(s > 0.0));
    const double w = b->draw_w(rng);
    if (!(w >= 0.0)) throw std::invalid_argument("bgmn-w: W must be nonnegative");
    normalize_by(out, s + w, p);
    return;
  }

  sample_cone_into(rng, n, p, out);
  double r = 1.0;
  if (const auto* c = std::get_if<RadialSpec::Constant>(&spec.law)) {
    r = c->value;
  } else if (std::holds_alternative<RadialSpec::UniformBallPower>(spec.law)) {
    r = std::exp(std::log(rng.uniform()) / static_cast<double>(n));
  } else if (const auto* cu = std::get_if<RadialSpec::Custom>(&spec.law)) {
    r = cu->draw_r(rng);
    if (!(r > 0.0) || !std::isfinite(r)) {
      throw std::invalid_argument("custom radial law produced R = " + std::to_string(r) +
                                  "; laws with mass at 0 are not supported");
    }
  }
  if (r != 1.0) SampleFiller::scale(out, r);
}

SampleVector sample_radial(RngStream& rng, std::size_t n, double p, const RadialSpec& spec) {
  SampleVector v;
  sample_radial_into(rng, n, p, spec, v);
  return v;
}

double first_coordinate_power(const SampleVector& direction) { return direction.abs_pow()[0]; }

IndependenceReport independence_check(std::span<const SampleVector> samples,
                                      const DirectionStatistic& statistic) {
  if (samples.size() < 1000) {
    throw std::invalid_argument("independence_check needs at least 1000 samples (got " +
                                std::to_string(samples.size()) + ")");
  }
  const std::size_t n = samples.size();
  std::vector<double> radius(n), stat(n);
  for (std::size_t i = 0; i < n; ++i) {
    const SampleVector& x = samples[i];
    radius[i] = x.norm_p();
    stat[i] = statistic(x.scaled(1.0 / x.norm_p()));
  }
  const double mr = compensated_sum(radius) / static_cast<double>(n);
  const double ms = compensated_sum(stat) / static_cast<double>(n);
  CompensatedSum srr, sss, srs;
  for (std::size_t i = 0; i < n; ++i) {
    const double dr = radius[i] - mr;
    const double ds = stat[i] - ms;
    srr.add(dr * dr);
    sss.add(ds * ds);
    srs.add(dr * ds);
  }
  IndependenceReport rep;
  rep.samples = n;
  rep.std_error = 1.0 / std::sqrt(static_cast<double>(n));
  if (srr.value() <= 1e-24 * std::max(1.0, mr * mr) * static_cast<double>(n) || sss.value() <= 0.0) {
    rep.degenerate = true;
    rep.independent = true;
    return rep;
  }
  rep.correlation = srs.value() / std::sqrt(srr.value() * sss.value());
  rep.z = rep.correlation / rep.std_error;
  rep.independent = std::abs(rep.z) <= 3.0;
  return rep;
}

std::string to_string(Measure m) {
  switch (m) {
    case Measure::cone:
      return "cone";
    case Measure::surface:
      return "surface";
    case Measure::uniform_ball:
      return "uniform-ball";
    case Measure::bgmn_w:
      return "bgmn-w";
    case Measure::custom_radial:
      return "custom-radial";
  }
  return "unknown";
}

Measure measure_from_string(const std::string& name) {
  for (Measure m : {Measure::cone, Measure::surface, Measure::uniform_ball, Measure::bgmn_w,
                    Measure::custom_radial}) {
    if (to_string(m) == name) return m;
  }
  throw std::invalid_argument("unknown measure '" + name +
                              "' (expected cone, surface, uniform-ball, bgmn-w, custom-radial)");
}

MeasureSpec MeasureSpec::bgmn_exponential(double p) {
  require_p(p);
  return {Measure::bgmn_w, RadialSpec{RadialSpec::BgmnW::exponential(1.0 / p)}};
}

void sample_measure_into(RngStream& rng, std::size_t n, double p, const MeasureSpec& measure,
                         SampleVector& out, RejectionStats* stats) {
  switch (measure.kind) {
    case Measure::cone:
      sample_cone_into(rng, n, p, out);
      return;
    case Measure::surface:
      sample_surface_into(rng, n, p, out, stats);
      return;
    case Measure::uniform_ball:
      sample_radial_into(rng, n, p, RadialSpec{RadialSpec::UniformBallPower{n}}, out);
      return;
    case Measure::bgmn_w:
      if (!std::holds_alternative<RadialSpec::BgmnW>(measure.radial.law)) {
        throw std::invalid_argument("bgmn-w measure requires a BgmnW radial spec");
      }
      sample_radial_into(rng, n, p, measure.radial, out);
      return;
    case Measure::custom_radial:
      sample_radial_into(rng, n, p, measure.radial, out);
      return;
  }
}

}  // namespace maclaurin
