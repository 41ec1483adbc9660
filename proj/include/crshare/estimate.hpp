#pragma once

#include <cstddef>
#include <optional>
#include <string>

namespace crshare {

enum class CapacityKind { ergodic, outage, delay_limited };

/// Monte Carlo capacity in bits per complex dimension.
struct CapacityEstimate {
  double bits = 0.0;
  double std_error = 0.0;
  std::size_t n = 0;
  CapacityKind kind = CapacityKind::ergodic;
  double eps0 = 0.0;  // outage target; 0 for ergodic and delay-limited
  // Delay-limited only: set when the inverse moment behind the estimate was
  // diagnosed as divergent. `bits` is then 0 and `plug_in_bits` keeps the
  // finite-sample value, which decays toward 0 as n grows.
  bool divergent = false;
  std::optional<double> plug_in_bits;
};

std::string label(const CapacityEstimate& c);

}  // namespace crshare
