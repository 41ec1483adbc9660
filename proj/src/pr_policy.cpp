#include "crshare/pr_policy.hpp"

#include <algorithm>
#include <cmath>
#include <iostream>
#include <limits>
#include <numbers>

#include "crshare/error.hpp"
#include "crshare/fading.hpp"

namespace crshare {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

// (1 + I) / f, or 0 for f = 0: such states cannot be inverted and are left
// out of every inversion mean.
std::vector<double> inverse_gains(const EffectiveStates& states,
                                  std::size_t* zero_states = nullptr) {
  std::vector<double> inv(states.size());
  std::size_t zeros = 0;
  for (std::size_t i = 0; i < states.size(); ++i) {
    if (states.f(i) > 0.0) {
      inv[i] = (1.0 + states.interference(i)) / states.f(i);
    } else {
      inv[i] = 0.0;
      ++zeros;
    }
  }
  if (zero_states) *zero_states = zeros;
  return inv;
}

void warn_zero_gain(std::size_t zeros, const char* where) {
  if (zeros > 0)
    std::clog << "warning: " << where << ": " << zeros
              << " state(s) with f = 0 left unserved\n";
}

void require_budget(double q_budget, const char* where) {
  require(q_budget > 0.0 && std::isfinite(q_budget),
          std::string(where) + ": power budget Q must be positive");
}

}  // namespace

EffectiveStates::EffectiveStates(std::span<const double> f,
                                 std::span<const double> interference)
    : f_(f), i_(interference) {
  require(f.size() == interference.size(),
          "EffectiveStates: f and interference lengths differ");
}

EffectiveStates EffectiveStates::slice(std::size_t begin, std::size_t end) const {
  require(begin <= end && end <= size(), "EffectiveStates: bad slice");
  return EffectiveStates(f_.subspan(begin, end - begin),
                         i_.subspan(begin, end - begin));
}

double power_cp(double q_budget) {
  require(q_budget >= 0.0, "power_cp: Q must be nonnegative");
  return q_budget;
}

double power_wf(double f, double interference, double mu) {
  require(mu > 0.0, "power_wf: mu must be positive");
  if (!(f > 0.0)) return 0.0;
  return std::max(0.0, 1.0 / mu - (1.0 + interference) / f);
}

Wf calibrate_wf(const EffectiveStates& states, double q_budget) {
  require_budget(q_budget, "calibrate_wf");
  require(states.size() > 0, "calibrate_wf: no states");
  const std::size_t n = states.size();
  std::vector<double> inv(n);
  bool any_gain = false;
  for (std::size_t i = 0; i < n; ++i) {
    if (states.f(i) > 0.0) {
      inv[i] = (1.0 + states.interference(i)) / states.f(i);
      any_gain = true;
    } else {
      inv[i] = kInf;
    }
  }
  if (!any_gain)
    throw Error(ErrorKind::no_root, "calibrate_wf: every state has f = 0");

  // Solve on the water level 1/mu; the mean power is increasing in it and
  // never exceeds the level itself, so [Q, 2Q] brackets from below.
  RootProblem problem;
  problem.objective = [&](double level) {
    return indexed_mean(n, [&](std::size_t i) {
      return std::max(0.0, level - inv[i]);
    });
  };
  problem.target = q_budget;
  problem.lo = q_budget;
  problem.hi = 2.0 * q_budget;
  return Wf{1.0 / bisect_monotone(problem)};
}

double inverse_gain_tail_index(const EffectiveStates& states) {
  std::vector<double> gains;
  gains.reserve(states.size());
  for (std::size_t i = 0; i < states.size(); ++i)
    if (states.f(i) > 0.0) gains.push_back(states.gain(i));
  if (gains.size() < kMinTailSample) return kInf;
  const auto k = static_cast<std::size_t>(
      std::sqrt(static_cast<double>(gains.size())));
  std::nth_element(gains.begin(), gains.begin() + static_cast<long>(k),
                   gains.end());
  const double pivot = gains[k];
  CompensatedSum s;
  for (std::size_t i = 0; i < k; ++i) s.add(std::log(pivot / gains[i]));
  const double xi = s.value() / static_cast<double>(k);
  return xi > 0.0 ? 1.0 / xi : kInf;
}

Ci ci_snr(const EffectiveStates& states, double q_budget) {
  require_budget(q_budget, "ci_snr");
  require(states.size() > 0, "ci_snr: no states");
  std::size_t zeros = 0;
  const std::vector<double> inv = inverse_gains(states, &zeros);
  warn_zero_gain(zeros, "ci_snr");
  const MeanEstimate m = mc_mean(inv);
  if (!(m.mean > 0.0) || !std::isfinite(m.mean) || m.mean > kDivergenceCeiling)
    throw Error(ErrorKind::divergent_inverse_moment,
                "ci_snr: inverse moment E[(1+I)/f] is numerically infinite");
  Ci out;
  out.inverse_moment = m.mean;
  out.inverse_moment_std_error = m.std_error;
  out.gamma = q_budget / m.mean;
  out.tail_index = inverse_gain_tail_index(states);
  out.divergent = out.tail_index <= kDivergentTailIndex;
  return out;
}

Tci calibrate_tci(const EffectiveStates& states, double q_budget, double eps0) {
  require_budget(q_budget, "calibrate_tci");
  require(states.size() > 0, "calibrate_tci: no states");
  require(eps0 >= 0.0 && eps0 < 1.0,
          "calibrate_tci: outage target must lie in [0, 1)");
  if (eps0 == 0.0) return Tci{0.0, ci_snr(states, q_budget).gamma};

  const std::size_t n = states.size();
  std::vector<double> gains(n);
  for (std::size_t i = 0; i < n; ++i) gains[i] = states.gain(i);
  const double theta = empirical_quantile_inplace(gains, eps0);

  std::size_t zeros = 0;
  const std::vector<double> inv = inverse_gains(states, &zeros);
  const double served = indexed_mean(n, [&](std::size_t i) {
    return states.gain(i) >= theta ? inv[i] : 0.0;
  });
  if (!(served > 0.0))
    throw Error(ErrorKind::no_root, "calibrate_tci: no state can be served");
  return Tci{theta, q_budget / served};
}

Tci calibrate_tci_for_snr(const EffectiveStates& states, double q_budget,
                          double gamma0) {
  require_budget(q_budget, "calibrate_tci_for_snr");
  require(states.size() > 0, "calibrate_tci_for_snr: no states");
  require(gamma0 > 0.0, "calibrate_tci_for_snr: target SNR must be positive");
  const std::size_t n = states.size();
  const std::vector<double> inv = inverse_gains(states);
  std::vector<double> gains(n);
  double max_gain = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    gains[i] = states.gain(i);
    max_gain = std::max(max_gain, gains[i]);
  }
  if (!(max_gain > 0.0))
    throw Error(ErrorKind::no_root, "calibrate_tci_for_snr: every state has f = 0");

  auto budget_used = [&](double theta) {
    return gamma0 * indexed_mean(n, [&](std::size_t i) {
             return gains[i] >= theta ? inv[i] : 0.0;
           });
  };
  // Serving every state already fits the budget: no outage needed.
  if (budget_used(0.0) <= q_budget) return Tci{0.0, gamma0};

  RootProblem problem;
  problem.objective = budget_used;
  problem.target = q_budget;
  problem.lo = 0.0;
  problem.hi = max_gain;
  return Tci{bisect_monotone(problem), gamma0};
}

double pr_power(const PrPolicy& policy, double f, double interference) {
  return std::visit(
      [&](const auto& p) -> double {
        using T = std::decay_t<decltype(p)>;
        if constexpr (std::is_same_v<T, Cp>) {
          return p.q;
        } else if constexpr (std::is_same_v<T, Wf>) {
          return power_wf(f, interference, p.mu);
        } else if constexpr (std::is_same_v<T, Ci>) {
          return f > 0.0 ? p.gamma * (1.0 + interference) / f : 0.0;
        } else {
          if (!(f > 0.0) || f / (1.0 + interference) < p.theta) return 0.0;
          return p.gamma * (1.0 + interference) / f;
        }
      },
      policy);
}

double achieved_snr(const PrPolicy& policy, double f, double interference) {
  if (const auto* p = std::get_if<Ci>(&policy)) return f > 0.0 ? p->gamma : 0.0;
  if (const auto* p = std::get_if<Tci>(&policy)) {
    if (!(f > 0.0) || f / (1.0 + interference) < p->theta) return 0.0;
    return p->gamma;
  }
  return f * pr_power(policy, f, interference) / (1.0 + interference);
}

std::vector<double> pr_powers(const PrPolicy& policy,
                              const EffectiveStates& states) {
  std::vector<double> q(states.size());
  for (std::size_t i = 0; i < states.size(); ++i)
    q[i] = pr_power(policy, states.f(i), states.interference(i));
  return q;
}

MeanEstimate wf_lagrangian(const EffectiveStates& states,
                           std::span<const double> powers, double mu,
                           double q_budget) {
  require(powers.size() == states.size(), "wf_lagrangian: length mismatch");
  const double price = mu / std::numbers::ln2;
  std::vector<double> terms(states.size());
  for (std::size_t i = 0; i < states.size(); ++i)
    terms[i] = std::log2(1.0 + states.gain(i) * powers[i]) -
               price * (powers[i] - q_budget);
  return mc_mean(terms);
}

MeanEstimate wf_dual(const EffectiveStates& states, double mu, double q_budget) {
  require(mu > 0.0, "wf_dual: mu must be positive");
  std::vector<double> terms(states.size());
  for (std::size_t i = 0; i < states.size(); ++i) {
    const double gain = states.gain(i);
    double t = mu * q_budget;
    if (gain > mu) t += std::log(gain / mu) - (1.0 - mu / gain);
    terms[i] = t / std::numbers::ln2;
  }
  return mc_mean(terms);
}

MeanEstimate tci_lagrangian(const EffectiveStates& states,
                            std::span<const double> powers, double mu,
                            double gamma0, double q_budget) {
  require(powers.size() == states.size(), "tci_lagrangian: length mismatch");
  const double floor = gamma0 * (1.0 - kSnrSlack);
  std::vector<double> terms(states.size());
  for (std::size_t i = 0; i < states.size(); ++i) {
    const double outage = states.gain(i) * powers[i] < floor ? 1.0 : 0.0;
    terms[i] = outage + mu * (powers[i] - q_budget);
  }
  return mc_mean(terms);
}

MeanEstimate tci_dual(const EffectiveStates& states, double mu, double gamma0,
                      double q_budget) {
  require(mu >= 0.0, "tci_dual: mu must be nonnegative");
  std::vector<double> terms(states.size());
  for (std::size_t i = 0; i < states.size(); ++i) {
    const double gain = states.gain(i);
    const double invert = gain > 0.0 ? mu * gamma0 / gain : kInf;
    terms[i] = std::min(1.0, invert) - mu * q_budget;
  }
  return mc_mean(terms);
}

}  // namespace crshare
