#pragma once

#include <cstdint>
#include <filesystem>
#include <functional>
#include <span>
#include <string>
#include <variant>
#include <vector>

#include "maclaurin/rng.hpp"

namespace maclaurin {

/// A point of R^n together with its cached |x_i|^p values and l_p norm.
class SampleVector {
 public:
  SampleVector() = default;

  /// Computes |x_i|^p and the norm from the coordinates.
  static SampleVector from_coords(std::vector<double> coords, double p);

  std::size_t size() const noexcept { return coords_.size(); }
  double p() const noexcept { return p_; }
  double norm_p() const noexcept { return norm_p_; }
  std::span<const double> coords() const noexcept { return coords_; }
  std::span<const double> abs_pow() const noexcept { return abs_pow_; }
  double operator[](std::size_t i) const { return coords_[i]; }

  /// c * x for c > 0, with the caches scaled instead of recomputed.
  SampleVector scaled(double c) const;

 private:
  friend class SampleFiller;
  std::vector<double> coords_;
  std::vector<double> abs_pow_;
  double p_ = 2.0;
  double norm_p_ = 0.0;
};

/// Gamma(shape, 1) variate: Marsaglia-Tsang for shape >= 1, shape boosting
/// G_a = G_{a+1} U^{1/a} below 1, exact shortcuts for shapes 1/2 and 1.
double sample_gamma(RngStream& rng, double shape);

/// log of a Gamma(shape, 1) variate, computed without forming tiny values
/// when shape < 1.
double sample_log_gamma(RngStream& rng, double shape);

/// One p-Gaussian draw: |X| = (p G)^{1/p} with G ~ Gamma(1/p), uniform sign.
double sample_pgauss(RngStream& rng, double p);

/// Cone measure on the l_p sphere: Y / ||Y||_p with Y i.i.d. p-Gaussian.
SampleVector sample_cone(RngStream& rng, std::size_t n, double p);
/// Same law, reusing the storage of `out`.
void sample_cone_into(RngStream& rng, std::size_t n, double p, SampleVector& out);

/// I.i.d. p-Gaussian vector (unnormalized).
SampleVector sample_pgauss_vector(RngStream& rng, std::size_t n, double p);
void sample_pgauss_vector_into(RngStream& rng, std::size_t n, double p, SampleVector& out);

/// Unnormalized surface/cone Radon-Nikodym weight (sum |x_i|^{2p-2})^{1/2}.
/// Requires |norm_p - 1| <= 1e-9.
double surface_weight(const SampleVector& x);

/// Supremum of surface_weight over the sphere: 1 for p >= 2, n^{(2-p)/(2p)} below.
double surface_envelope(std::size_t n, double p);

struct RejectionStats {
  std::uint64_t proposals = 0;
  std::uint64_t accepted = 0;
  double max_weight_ratio = 0.0;  ///< largest weight / envelope observed

  double acceptance() const noexcept {
    return proposals == 0 ? 0.0 : static_cast<double>(accepted) / static_cast<double>(proposals);
  }
};

/// Surface measure draw by rejection from the cone measure. Throws
/// std::logic_error if a weight exceeds the envelope by more than 1e-9.
SampleVector sample_surface(RngStream& rng, std::size_t n, double p, RejectionStats* stats = nullptr);
void sample_surface_into(RngStream& rng, std::size_t n, double p, SampleVector& out,
                         RejectionStats* stats = nullptr);

/// Cone draw paired with its unnormalized surface weight, for
/// self-normalized importance estimates under the surface measure.
struct WeightedSample {
  SampleVector x;
  double weight = 1.0;
};
WeightedSample sample_surface_weighted(RngStream& rng, std::size_t n, double p);

/// Self-normalized importance estimate sum(w f) / sum(w) with its delta-method
/// standard error.
struct WeightedMean {
  double mean = 0.0;
  double std_error = 0.0;
  double effective_size = 0.0;
};
WeightedMean self_normalized_mean(std::span<const double> values, std::span<const double> weights);

/// Law of the radius R in X = R * Theta.
struct RadialSpec {
  struct Constant {
    double value;
  };
  /// R^n uniform on [0, 1], i.e. X uniform on the l_p ball.
  struct UniformBallPower {
    std::size_t dimension;
  };
  /// X = Y / (||Y||_p^p + W)^{1/p} for an independent W >= 0.
  struct BgmnW {
    std::string label;
    std::function<double(RngStream&)> draw_w;
    static BgmnW exponential(double rate);
    static BgmnW zero();
  };
  struct Custom {
    std::string label;
    std::function<double(RngStream&)> draw_r;
  };

  std::variant<Constant, UniformBallPower, BgmnW, Custom> law{Constant{1.0}};

  std::string describe() const;
  /// Throws std::invalid_argument for specs with an atom at zero or a
  /// dimension mismatch.
  void validate(std::size_t n) const;
};

SampleVector sample_radial(RngStream& rng, std::size_t n, double p, const RadialSpec& spec);
void sample_radial_into(RngStream& rng, std::size_t n, double p, const RadialSpec& spec,
                        SampleVector& out);

/// Correlation of ||X||_p with a bounded function of X / ||X||_p.
struct IndependenceReport {
  std::size_t samples = 0;
  double correlation = 0.0;
  double std_error = 0.0;
  double z = 0.0;
  bool degenerate = false;  ///< radius has zero empirical variance
  bool independent = true;  ///< |z| <= 3 or degenerate
};

using DirectionStatistic = std::function<double(const SampleVector& direction)>;

/// Default statistic |theta_1|^p.
double first_coordinate_power(const SampleVector& direction);

IndependenceReport independence_check(std::span<const SampleVector> samples,
                                      const DirectionStatistic& statistic = first_coordinate_power);

enum class Measure { cone, surface, uniform_ball, bgmn_w, custom_radial };

std::string to_string(Measure m);
Measure measure_from_string(const std::string& name);

/// A measure with the extra data its sampler needs.
struct MeasureSpec {
  Measure kind = Measure::cone;
  RadialSpec radial{};  ///< used for bgmn_w and custom_radial

  static MeasureSpec cone() { return {Measure::cone, {}}; }
  static MeasureSpec surface() { return {Measure::surface, {}}; }
  static MeasureSpec uniform_ball() { return {Measure::uniform_ball, {}}; }
  /// W exponential with rate 1/p, which yields the uniform ball law.
  static MeasureSpec bgmn_exponential(double p);
  static MeasureSpec custom(RadialSpec spec) { return {Measure::custom_radial, std::move(spec)}; }
};

void sample_measure_into(RngStream& rng, std::size_t n, double p, const MeasureSpec& measure,
                         SampleVector& out, RejectionStats* stats = nullptr);

/// Binary sample matrix: 16-byte header (magic "MCLS", uint32 n, uint32 N,
/// float32 p), then N rows of n little-endian float64, row-major.
void write_sample_matrix(const std::filesystem::path& path, std::span<const SampleVector> rows);

struct SampleMatrix {
  std::uint32_t n = 0;
  std::uint32_t rows = 0;
  float p = 0.0f;
  std::vector<double> values;
};
SampleMatrix read_sample_matrix(const std::filesystem::path& path);

}  // namespace maclaurin
