#pragma once

#include <cmath>
#include <cstddef>
#include <functional>
#include <span>
#include <vector>

namespace crshare {

/// Scalar equation objective(x) = target with objective monotone on the
/// bracket. The bracket is expanded geometrically when it does not
/// straddle the target.
struct RootProblem {
  std::function<double(double)> objective;
  double target = 0.0;
  double lo = 0.0;
  double hi = 1.0;
  double tol = 1e-6;
  int max_iter = 200;
};

inline constexpr int kMaxBracketDoublings = 64;

double bisect_monotone(const RootProblem& problem);

struct MeanEstimate {
  double mean = 0.0;
  double std_error = 0.0;
  std::size_t n = 0;
};

MeanEstimate mc_mean(std::span<const double> values);

/// Mean of a[i] - b[i]; the standard error comes from the difference
/// stream, which is what a paired comparison needs.
MeanEstimate paired_difference(std::span<const double> a,
                               std::span<const double> b);

/// Neumaier-compensated running sum. Order of add() calls is the order of
/// accumulation, so results are reproducible.
class CompensatedSum {
 public:
  void add(double x) noexcept {
    const double t = sum_ + x;
    if (std::abs(sum_) >= std::abs(x))
      comp_ += (sum_ - t) + x;
    else
      comp_ += (x - t) + sum_;
    sum_ = t;
  }
  double value() const noexcept { return sum_ + comp_; }

 private:
  double sum_ = 0.0;
  double comp_ = 0.0;
};

double compensated_sum(std::span<const double> values);

/// Mean of fn(i) for i in [0, n), compensated, fixed order.
template <typename Fn>
double indexed_mean(std::size_t n, Fn&& fn) {
  CompensatedSum s;
  for (std::size_t i = 0; i < n; ++i) s.add(fn(i));
  return s.value() / static_cast<double>(n);
}

inline constexpr std::size_t kDefaultSections = 20;

/// Batch-means estimate: `estimator(begin, end)` is evaluated on
/// `sections` contiguous slices of [0, n) and the spread of those values
/// gives the standard error of the full-sample statistic. Used for
/// quantile-defined quantities that are not plain sample means.
double sectioned_std_error(
    std::size_t n, const std::function<double(std::size_t, std::size_t)>& estimator,
    std::size_t sections = kDefaultSections);

}  // namespace crshare
