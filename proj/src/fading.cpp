#include "crshare/fading.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <random>
#include <thread>

#include "crshare/error.hpp"

namespace crshare {

namespace {

constexpr std::size_t kChunk = std::size_t{1} << 16;

std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9E3779B97F4A7C15ull;
  x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ull;
  x = (x ^ (x >> 27)) * 0x94D049BB133111EBull;
  return x ^ (x >> 31);
}

std::uint64_t chunk_seed(std::uint64_t seed, std::uint64_t stream,
                         std::uint64_t chunk) {
  return splitmix64(splitmix64(splitmix64(seed) ^ (stream + 1)) + chunk);
}

// 53-bit uniform on [0, 1).
double uniform01(std::mt19937_64& engine) {
  return static_cast<double>(engine() >> 11) * 0x1.0p-53;
}

void fill_chunk(const GainDistribution& dist, std::vector<double>& out,
                std::uint64_t seed, std::uint64_t stream, std::size_t chunk,
                bool strictly_positive) {
  std::mt19937_64 engine(chunk_seed(seed, stream, chunk));
  const std::size_t begin = chunk * kChunk;
  const std::size_t end = std::min(out.size(), begin + kChunk);
  for (std::size_t i = begin; i < end; ++i) {
    double x = dist.quantile(uniform01(engine));
    while (strictly_positive && !(x > 0.0))
      x = dist.quantile(uniform01(engine));
    out[i] = x;
  }
}

}  // namespace

GainDistribution GainDistribution::exponential(double mean) {
  require(mean > 0.0 && std::isfinite(mean),
          "exponential gain: mean must be positive");
  GainDistribution d;
  d.kind_ = GainKind::exponential;
  d.mean_ = mean;
  return d;
}

GainDistribution GainDistribution::synthetic(Function quantile, Function cdf,
                                             double mean) {
  require(static_cast<bool>(quantile), "synthetic gain: quantile required");
  require(mean > 0.0 && std::isfinite(mean),
          "synthetic gain: mean must be positive");
  GainDistribution d;
  d.kind_ = GainKind::synthetic_cdf;
  d.mean_ = mean;
  d.quantile_ = std::move(quantile);
  d.cdf_ = std::move(cdf);
  return d;
}

GainDistribution GainDistribution::scaled(const GainDistribution& base,
                                          double kappa) {
  require(kappa > 0.0 && std::isfinite(kappa),
          "scaled gain: kappa must be positive");
  GainDistribution d;
  d.kind_ = GainKind::scaled_copy;
  if (base.kind_ == GainKind::scaled_copy) {
    d.base_ = base.base_;
    d.scale_ = base.scale_ * kappa;
  } else {
    d.base_ = std::make_shared<const GainDistribution>(base);
    d.scale_ = kappa;
  }
  d.mean_ = d.scale_ * d.base_->mean();
  return d;
}

double GainDistribution::mean() const noexcept { return mean_; }

double GainDistribution::cdf(double x) const {
  switch (kind_) {
    case GainKind::exponential:
      if (x <= 0.0) return 0.0;
      if (std::isinf(x)) return 1.0;
      return -std::expm1(-x / mean_);
    case GainKind::scaled_copy:
      return base_->cdf(x / scale_);
    case GainKind::synthetic_cdf:
      require(static_cast<bool>(cdf_), "synthetic gain: no closed-form CDF");
      return cdf_(x);
  }
  return 0.0;
}

double GainDistribution::quantile(double u) const {
  switch (kind_) {
    case GainKind::exponential:
      if (u >= 1.0) return std::numeric_limits<double>::infinity();
      return -mean_ * std::log1p(-u);
    case GainKind::scaled_copy:
      return scale_ * base_->quantile(u);
    case GainKind::synthetic_cdf:
      return quantile_(u);
  }
  return 0.0;
}

GainDistribution make_exponential(double mean) {
  return GainDistribution::exponential(mean);
}

GainDistribution make_shifted_exponential(double shift, double excess_mean) {
  require(shift >= 0.0, "shifted exponential: shift must be nonnegative");
  require(excess_mean > 0.0, "shifted exponential: mean must be positive");
  return GainDistribution::synthetic(
      [=](double u) {
        if (u >= 1.0) return std::numeric_limits<double>::infinity();
        return shift - excess_mean * std::log1p(-u);
      },
      [=](double x) {
        return x <= shift ? 0.0 : -std::expm1(-(x - shift) / excess_mean);
      },
      shift + excess_mean);
}

GainDistribution make_power_cdf(double exponent, double support) {
  require(exponent > 0.0, "power CDF: exponent must be positive");
  require(support > 0.0, "power CDF: support must be positive");
  return GainDistribution::synthetic(
      [=](double u) {
        return support * std::pow(std::clamp(u, 0.0, 1.0), 1.0 / exponent);
      },
      [=](double x) {
        if (x <= 0.0) return 0.0;
        if (x >= support) return 1.0;
        return std::pow(x / support, exponent);
      },
      support * exponent / (exponent + 1.0));
}

double db_to_linear(double db) { return std::pow(10.0, db / 10.0); }

GainDistribution apply_attenuation(const GainDistribution& dist,
                                   double atten_db) {
  return GainDistribution::scaled(dist, db_to_linear(-atten_db));
}

FadingBatch sample_joint(const GainDistribution& dh, const GainDistribution& dg,
                         const GainDistribution& df, std::size_t n,
                         std::uint64_t seed, SampleOptions options) {
  require(n >= 1, "sample_joint: n must be at least 1");
  FadingBatch batch;
  batch.seed = seed;
  batch.h.resize(n);
  batch.g.resize(n);
  batch.f.resize(n);

  const std::size_t chunks = (n + kChunk - 1) / kChunk;
  unsigned threads = options.threads;
  if (threads == 0) threads = std::max(1u, std::thread::hardware_concurrency());
  threads = static_cast<unsigned>(std::min<std::size_t>(threads, chunks));

  auto work = [&](unsigned worker) {
    for (std::size_t c = worker; c < chunks; c += threads) {
      fill_chunk(dh, batch.h, seed, 0, c, false);
      fill_chunk(dg, batch.g, seed, 1, c, true);
      fill_chunk(df, batch.f, seed, 2, c, false);
    }
  };

  if (threads <= 1) {
    work(0);
  } else {
    std::vector<std::jthread> pool;
    pool.reserve(threads);
    for (unsigned t = 0; t < threads; ++t) pool.emplace_back(work, t);
  }
  return batch;
}

double empirical_quantile_inplace(std::span<double> values, double prob) {
  require(!values.empty(), "empirical_quantile: empty sample");
  require(prob >= 0.0 && prob <= 1.0,
          "empirical_quantile: probability outside [0, 1]");
  const double rank = std::ceil(prob * static_cast<double>(values.size()));
  const auto k = static_cast<std::size_t>(std::max(0.0, rank - 1.0));
  std::nth_element(values.begin(), values.begin() + static_cast<long>(k),
                   values.end());
  return values[k];
}

double empirical_quantile(std::span<const double> values, double prob) {
  std::vector<double> copy(values.begin(), values.end());
  return empirical_quantile_inplace(copy, prob);
}

}  // namespace crshare
