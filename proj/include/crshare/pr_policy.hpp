#pragma once

#include <cstddef>
#include <span>
#include <variant>
#include <vector>

#include "crshare/numerics.hpp"

namespace crshare {

/// PR-side view of the fading states: the direct gain f and the
/// interference I seen at PR-Rx. Non-owning; the arrays must outlive it.
class EffectiveStates {
 public:
  EffectiveStates(std::span<const double> f, std::span<const double> interference);

  std::size_t size() const noexcept { return f_.size(); }
  double f(std::size_t i) const noexcept { return f_[i]; }
  double interference(std::size_t i) const noexcept { return i_[i]; }
  /// f / (1 + I)
  double gain(std::size_t i) const noexcept { return f_[i] / (1.0 + i_[i]); }

  EffectiveStates slice(std::size_t begin, std::size_t end) const;

 private:
  std::span<const double> f_;
  std::span<const double> i_;
};

struct Cp {
  double q = 0.0;
};

/// q = (1/mu - (1+I)/f)^+
struct Wf {
  double mu = 0.0;
};

/// q = gamma (1+I)/f. `divergent` marks an inverse moment E[(1+I)/f] that
/// the tail diagnostic found to be infinite in the population.
struct Ci {
  double gamma = 0.0;
  double inverse_moment = 0.0;
  double inverse_moment_std_error = 0.0;
  double tail_index = 0.0;
  bool divergent = false;
};

/// q = gamma (1+I)/f when f/(1+I) >= theta, else 0.
struct Tci {
  double theta = 0.0;
  double gamma = 0.0;
};

using PrPolicy = std::variant<Cp, Wf, Ci, Tci>;

/// Inverse moments above this are treated as numerically infinite.
inline constexpr double kDivergenceCeiling = 1e12;
/// A Hill tail index at or below this for 1/gain flags divergence.
inline constexpr double kDivergentTailIndex = 1.5;
/// Smallest sample for which the tail diagnostic is attempted.
inline constexpr std::size_t kMinTailSample = 1000;
inline constexpr double kSnrSlack = 1e-12;

double power_cp(double q_budget);

Wf calibrate_wf(const EffectiveStates& states, double q_budget);

double power_wf(double f, double interference, double mu);

Ci ci_snr(const EffectiveStates& states, double q_budget);

Tci calibrate_tci(const EffectiveStates& states, double q_budget, double eps0);

/// Minimum-outage TCI for a fixed receive SNR gamma0: theta solves
/// E[gamma0 (1+I)/f 1(f/(1+I) >= theta)] = Q.
Tci calibrate_tci_for_snr(const EffectiveStates& states, double q_budget,
                          double gamma0);

double pr_power(const PrPolicy& policy, double f, double interference);

/// Receive SNR f q / (1 + I). Constant-SNR rules (CI, TCI) return their
/// gamma exactly on served states rather than the rounded product.
double achieved_snr(const PrPolicy& policy, double f, double interference);

std::vector<double> pr_powers(const PrPolicy& policy,
                              const EffectiveStates& states);

/// Hill estimate of the tail index of 1/gain from the k smallest gains.
double inverse_gain_tail_index(const EffectiveStates& states);

// Lagrangian views of the ergodic (water-filling) and outage (truncated
// inversion) problems. Ergodic quantities are in bits, with the multiplier
// mu taken from the power rule q = (1/mu - 1/gain)^+.

/// E[log2(1 + gain q)] - (mu / ln 2) (E[q] - Q)
MeanEstimate wf_lagrangian(const EffectiveStates& states,
                           std::span<const double> powers, double mu,
                           double q_budget);

/// max over q >= 0 of the Lagrangian:
/// (E[(ln(gain/mu))^+] - E[(1 - mu/gain)^+] + mu Q) / ln 2
MeanEstimate wf_dual(const EffectiveStates& states, double mu, double q_budget);

/// Pr{gain q < gamma0} + mu (E[q] - Q). SNRs within kSnrSlack (relative)
/// of gamma0 count as meeting it.
MeanEstimate tci_lagrangian(const EffectiveStates& states,
                            std::span<const double> powers, double mu,
                            double gamma0, double q_budget);

/// min over q >= 0 of the Lagrangian: E[min(1, mu gamma0 / gain)] - mu Q
MeanEstimate tci_dual(const EffectiveStates& states, double mu, double gamma0,
                      double q_budget);

}  // namespace crshare
