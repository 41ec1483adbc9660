#pragma once

#include <span>
#include <vector>

#include "crshare/estimate.hpp"
#include "crshare/fading.hpp"
#include "crshare/numerics.hpp"
#include "crshare/pr_policy.hpp"

namespace crshare {

struct OutageResult {
  double epsilon = 0.0;
  double gamma0 = 0.0;
  double bits = 0.0;  // log2(1 + gamma0)
  double std_error = 0.0;
  std::size_t n = 0;
};

enum class OutageFamily { cp, tci };

/// Per-state log2(1 + f q / (1 + I)).
std::vector<double> pr_rate_series(const FadingBatch& batch,
                                   std::span<const double> interference,
                                   const PrPolicy& policy);

CapacityEstimate pr_ergodic_capacity(const FadingBatch& batch,
                                     std::span<const double> interference,
                                     const PrPolicy& policy);

/// Per-state indicator 1(f q / (1 + I) < gamma0).
std::vector<double> outage_indicators(const FadingBatch& batch,
                                      std::span<const double> interference,
                                      const PrPolicy& policy, double gamma0);

OutageResult outage_probability(const FadingBatch& batch,
                                std::span<const double> interference,
                                const PrPolicy& policy, double gamma0);

/// Receive SNR the family sustains at outage eps0 on states [begin, end).
/// CP: eps0-quantile of f Q / (1 + I). TCI: the calibrated gamma.
double pr_outage_snr(const FadingBatch& batch,
                     std::span<const double> interference, OutageFamily family,
                     double q_budget, double eps0, std::size_t begin,
                     std::size_t end);

CapacityEstimate pr_outage_capacity(const FadingBatch& batch,
                                    std::span<const double> interference,
                                    OutageFamily family, double q_budget,
                                    double eps0);

/// log2(1 + gamma) with gamma from channel inversion. A divergent inverse
/// moment reports 0 bits and keeps the finite-sample value in plug_in_bits.
CapacityEstimate pr_delay_limited_capacity(const FadingBatch& batch,
                                           std::span<const double> interference,
                                           double q_budget);

// Paired AIP-vs-PIP comparisons on common randomness. Each returns
// (AIP - PIP) with a standard error computed from paired data.

/// Mean over the disjoint blocks of `block` consecutive states of the
/// plug-in delay-limited capacity log2(1 + gamma) computed per block.
/// Trailing states that do not fill a block are ignored.
MeanEstimate blocked_delay_limited_bits(const FadingBatch& batch,
                                        std::span<const double> interference,
                                        double q_budget, std::size_t block);

MeanEstimate ergodic_capacity_gap(const FadingBatch& batch,
                                  std::span<const double> interference_aip,
                                  const PrPolicy& policy_aip,
                                  std::span<const double> interference_pip,
                                  const PrPolicy& policy_pip);

/// Batch-means standard error over sections recalibrated independently.
MeanEstimate outage_capacity_gap(const FadingBatch& batch,
                                 std::span<const double> interference_aip,
                                 std::span<const double> interference_pip,
                                 OutageFamily family, double q_budget,
                                 double eps0);

MeanEstimate outage_probability_gap(const FadingBatch& batch,
                                    std::span<const double> interference_aip,
                                    const PrPolicy& policy_aip,
                                    std::span<const double> interference_pip,
                                    const PrPolicy& policy_pip, double gamma0);

/// gamma_a - gamma_p under channel inversion; delta-method standard error
/// on the per-state difference of (1 + I)/f.
MeanEstimate ci_snr_gap(const FadingBatch& batch,
                        std::span<const double> interference_aip,
                        std::span<const double> interference_pip,
                        double q_budget);

}  // namespace crshare
