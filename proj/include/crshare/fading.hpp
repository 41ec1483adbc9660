#pragma once

#include <cstddef>
#include <cstdint>
#include <functional>
#include <memory>
#include <span>
#include <vector>

namespace crshare {

enum class GainKind { exponential, scaled_copy, synthetic_cdf };

/// Nonnegative channel power-gain law.
///
/// Every kind is sampled by inverse transform, so a scaled copy driven by
/// the same uniform stream as its base yields exactly `scale * base`
/// sample by sample.
class GainDistribution {
 public:
  using Function = std::function<double(double)>;

  static GainDistribution exponential(double mean);

  /// A law given by its quantile function on [0, 1). The CDF is optional;
  /// cdf() throws when it was not supplied.
  static GainDistribution synthetic(Function quantile, Function cdf,
                                    double mean);

  /// Scaled copy with factor kappa > 0. Copies of copies collapse onto the
  /// root law with the factors multiplied.
  static GainDistribution scaled(const GainDistribution& base, double kappa);

  GainKind kind() const noexcept { return kind_; }
  double mean() const noexcept;
  double cdf(double x) const;
  double quantile(double u) const;

  /// Scale factor relative to the root law (1 unless kind is scaled_copy).
  double scale() const noexcept { return scale_; }
  const GainDistribution* base() const noexcept { return base_.get(); }

 private:
  GainDistribution() = default;

  GainKind kind_ = GainKind::exponential;
  double mean_ = 1.0;
  double scale_ = 1.0;
  Function quantile_;
  Function cdf_;
  std::shared_ptr<const GainDistribution> base_;
};

GainDistribution make_exponential(double mean);

/// shift + Exp(excess_mean); has a finite inverse moment when shift > 0.
GainDistribution make_shifted_exponential(double shift, double excess_mean);

/// CDF (x / support)^exponent on [0, support]. Convex for exponent >= 1.
GainDistribution make_power_cdf(double exponent, double support);

/// Scaled copy with kappa = 10^(-atten_db / 10).
GainDistribution apply_attenuation(const GainDistribution& dist,
                                   double atten_db);

double db_to_linear(double db);

/// Joint i.i.d. draws of the three link power gains.
///   h: CR-Tx -> CR-Rx,  g: CR-Tx -> PR-Rx,  f: PR-Tx -> PR-Rx.
struct FadingBatch {
  std::vector<double> h;
  std::vector<double> g;
  std::vector<double> f;
  std::uint64_t seed = 0;

  std::size_t size() const noexcept { return h.size(); }
};

/// Unit-variance additive noise at both receivers.
struct NoiseModel {
  static constexpr double variance = 1.0;
};

struct SampleOptions {
  /// Worker threads; 0 picks std::thread::hardware_concurrency().
  unsigned threads = 0;
};

/// Draws n joint states. Each link uses its own counter-seeded stream, cut
/// into fixed-size chunks, so the output depends only on
/// (distributions, n, seed) and never on the thread count.
FadingBatch sample_joint(const GainDistribution& dh, const GainDistribution& dg,
                         const GainDistribution& df, std::size_t n,
                         std::uint64_t seed, SampleOptions options = {});

/// Lower empirical quantile: the smallest sample x with F_n(x) >= prob,
/// i.e. sorted[max(0, ceil(prob * n) - 1)].
double empirical_quantile(std::span<const double> values, double prob);

/// In-place variant; reorders `values`.
double empirical_quantile_inplace(std::span<double> values, double prob);

}  // namespace crshare
