#include "crshare/numerics.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "crshare/error.hpp"

namespace crshare {

namespace {

int sign_of(double x) { return (x > 0.0) - (x < 0.0); }

double expand_lower(double lo) {
  if (lo > 0.0) return lo / 2.0;
  if (lo < 0.0) return lo * 2.0;
  return lo;
}

double expand_upper(double hi) {
  if (hi > 0.0) return hi * 2.0;
  if (hi < 0.0) return hi / 2.0;
  return 1.0;
}

}  // namespace

double bisect_monotone(const RootProblem& problem) {
  require(static_cast<bool>(problem.objective), "bisect: objective missing");
  require(problem.lo < problem.hi, "bisect: empty bracket");
  require(problem.tol > 0.0, "bisect: tolerance must be positive");
  require(problem.max_iter >= 1, "bisect: max_iter must be at least 1");

  auto residual = [&](double x) { return problem.objective(x) - problem.target; };

  double lo = problem.lo;
  double hi = problem.hi;
  double r_lo = residual(lo);
  double r_hi = residual(hi);
  for (int k = 0; k < kMaxBracketDoublings && sign_of(r_lo) == sign_of(r_hi) &&
                  r_lo != 0.0;
       ++k) {
    lo = expand_lower(lo);
    hi = expand_upper(hi);
    r_lo = residual(lo);
    r_hi = residual(hi);
  }
  if (r_lo == 0.0) return lo;
  if (r_hi == 0.0) return hi;
  if (std::isnan(r_lo) || std::isnan(r_hi) || sign_of(r_lo) == sign_of(r_hi))
    throw Error(ErrorKind::no_root,
                "bisect: no sign change on [" + std::to_string(lo) + ", " +
                    std::to_string(hi) + "]");

  const double f_tol = problem.tol * std::max(1.0, std::abs(problem.target));
  for (int iter = 0; iter < problem.max_iter; ++iter) {
    const double mid = lo + (hi - lo) / 2.0;
    const double r_mid = residual(mid);
    if (std::abs(r_mid) <= f_tol) return mid;
    if (sign_of(r_mid) == sign_of(r_lo)) {
      lo = mid;
      r_lo = r_mid;
    } else {
      hi = mid;
    }
    if (hi - lo < problem.tol * std::max(1.0, std::abs(mid)))
      return lo + (hi - lo) / 2.0;
  }
  throw Error(ErrorKind::non_convergence,
              "bisect: no convergence after " +
                  std::to_string(problem.max_iter) + " iterations");
}

double compensated_sum(std::span<const double> values) {
  CompensatedSum s;
  for (double v : values) s.add(v);
  return s.value();
}

MeanEstimate mc_mean(std::span<const double> values) {
  require(!values.empty(), "mc_mean: empty sample");
  const std::size_t n = values.size();
  const double mean = compensated_sum(values) / static_cast<double>(n);
  MeanEstimate out{mean, 0.0, n};
  if (n >= 2) {
    CompensatedSum ss;
    for (double v : values) ss.add((v - mean) * (v - mean));
    const double var = ss.value() / static_cast<double>(n - 1);
    out.std_error = std::sqrt(var / static_cast<double>(n));
  }
  return out;
}

MeanEstimate paired_difference(std::span<const double> a,
                               std::span<const double> b) {
  require(a.size() == b.size(), "paired_difference: length mismatch");
  std::vector<double> d(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) d[i] = a[i] - b[i];
  return mc_mean(d);
}

double sectioned_std_error(
    std::size_t n,
    const std::function<double(std::size_t, std::size_t)>& estimator,
    std::size_t sections) {
  sections = std::min(sections, n);
  if (sections < 2) return 0.0;
  std::vector<double> values(sections);
  for (std::size_t k = 0; k < sections; ++k) {
    const std::size_t begin = k * n / sections;
    const std::size_t end = (k + 1) * n / sections;
    values[k] = estimator(begin, end);
  }
  // Each section holds n/K states; the full-sample statistic is roughly
  // their average.
  return mc_mean(values).std_error;
}

}  // namespace crshare
