#include "crshare/capacity.hpp"

#include <cmath>
#include <numbers>
#include <sstream>

#include "crshare/error.hpp"

namespace crshare {

namespace {

EffectiveStates states_of(const FadingBatch& batch,
                          std::span<const double> interference,
                          const char* where) {
  require(interference.size() == batch.size(),
          std::string(where) + ": interference length differs from batch");
  require(batch.size() > 0, std::string(where) + ": empty batch");
  return EffectiveStates(batch.f, interference);
}

void require_open_outage(double eps0, const char* where) {
  require(eps0 > 0.0 && eps0 < 1.0,
          std::string(where) + ": outage target must lie in (0, 1)");
}

}  // namespace

std::string label(const CapacityEstimate& c) {
  switch (c.kind) {
    case CapacityKind::ergodic: return "ergodic";
    case CapacityKind::delay_limited: return "delay-limited";
    case CapacityKind::outage: {
      std::ostringstream os;
      os << "outage(" << c.eps0 << ")";
      return os.str();
    }
  }
  return "unknown";
}

std::vector<double> pr_rate_series(const FadingBatch& batch,
                                   std::span<const double> interference,
                                   const PrPolicy& policy) {
  const EffectiveStates states = states_of(batch, interference, "pr_rate_series");
  std::vector<double> rate(states.size());
  for (std::size_t i = 0; i < states.size(); ++i)
    rate[i] = std::log2(
        1.0 + achieved_snr(policy, states.f(i), states.interference(i)));
  return rate;
}

CapacityEstimate pr_ergodic_capacity(const FadingBatch& batch,
                                     std::span<const double> interference,
                                     const PrPolicy& policy) {
  const MeanEstimate m = mc_mean(pr_rate_series(batch, interference, policy));
  CapacityEstimate c;
  c.bits = m.mean;
  c.std_error = m.std_error;
  c.n = m.n;
  c.kind = CapacityKind::ergodic;
  return c;
}

std::vector<double> outage_indicators(const FadingBatch& batch,
                                      std::span<const double> interference,
                                      const PrPolicy& policy, double gamma0) {
  require(gamma0 >= 0.0, "outage_indicators: target SNR must be nonnegative");
  const EffectiveStates states =
      states_of(batch, interference, "outage_indicators");
  std::vector<double> out(states.size());
  for (std::size_t i = 0; i < states.size(); ++i)
    out[i] = achieved_snr(policy, states.f(i), states.interference(i)) < gamma0
                 ? 1.0
                 : 0.0;
  return out;
}

OutageResult outage_probability(const FadingBatch& batch,
                                std::span<const double> interference,
                                const PrPolicy& policy, double gamma0) {
  const MeanEstimate m =
      mc_mean(outage_indicators(batch, interference, policy, gamma0));
  return OutageResult{m.mean, gamma0, std::log2(1.0 + gamma0), m.std_error, m.n};
}

double pr_outage_snr(const FadingBatch& batch,
                     std::span<const double> interference, OutageFamily family,
                     double q_budget, double eps0, std::size_t begin,
                     std::size_t end) {
  require_open_outage(eps0, "pr_outage_snr");
  require(q_budget > 0.0, "pr_outage_snr: Q must be positive");
  const EffectiveStates all = states_of(batch, interference, "pr_outage_snr");
  const EffectiveStates states = all.slice(begin, end);
  require(states.size() > 0, "pr_outage_snr: empty range");
  if (family == OutageFamily::tci)
    return calibrate_tci(states, q_budget, eps0).gamma;
  std::vector<double> snr(states.size());
  for (std::size_t i = 0; i < states.size(); ++i)
    snr[i] = states.gain(i) * q_budget;
  return empirical_quantile_inplace(snr, eps0);
}

CapacityEstimate pr_outage_capacity(const FadingBatch& batch,
                                    std::span<const double> interference,
                                    OutageFamily family, double q_budget,
                                    double eps0) {
  const std::size_t n = batch.size();
  auto bits_on = [&](std::size_t b, std::size_t e) {
    return std::log2(
        1.0 + pr_outage_snr(batch, interference, family, q_budget, eps0, b, e));
  };
  CapacityEstimate c;
  c.bits = bits_on(0, n);
  c.std_error = sectioned_std_error(n, bits_on);
  c.n = n;
  c.kind = CapacityKind::outage;
  c.eps0 = eps0;
  return c;
}

CapacityEstimate pr_delay_limited_capacity(const FadingBatch& batch,
                                           std::span<const double> interference,
                                           double q_budget) {
  const EffectiveStates states =
      states_of(batch, interference, "pr_delay_limited_capacity");
  const Ci ci = ci_snr(states, q_budget);
  const double plug_in = std::log2(1.0 + ci.gamma);
  const double gamma_se = q_budget * ci.inverse_moment_std_error /
                          (ci.inverse_moment * ci.inverse_moment);
  CapacityEstimate c;
  c.kind = CapacityKind::delay_limited;
  c.n = states.size();
  c.std_error = gamma_se / ((1.0 + ci.gamma) * std::numbers::ln2);
  c.divergent = ci.divergent;
  c.plug_in_bits = plug_in;
  c.bits = ci.divergent ? 0.0 : plug_in;
  return c;
}

MeanEstimate blocked_delay_limited_bits(const FadingBatch& batch,
                                        std::span<const double> interference,
                                        double q_budget, std::size_t block) {
  const EffectiveStates states =
      states_of(batch, interference, "blocked_delay_limited_bits");
  require(block >= 1 && block <= states.size(),
          "blocked_delay_limited_bits: block must be in [1, n]");
  const std::size_t blocks = states.size() / block;
  std::vector<double> bits(blocks);
  for (std::size_t k = 0; k < blocks; ++k) {
    const EffectiveStates part = states.slice(k * block, (k + 1) * block);
    double inverse = 0.0;
    {
      CompensatedSum s;
      for (std::size_t i = 0; i < part.size(); ++i)
        if (part.f(i) > 0.0) s.add((1.0 + part.interference(i)) / part.f(i));
      inverse = s.value() / static_cast<double>(part.size());
    }
    bits[k] = inverse > 0.0 ? std::log2(1.0 + q_budget / inverse) : 0.0;
  }
  return mc_mean(bits);
}

MeanEstimate ergodic_capacity_gap(const FadingBatch& batch,
                                  std::span<const double> interference_aip,
                                  const PrPolicy& policy_aip,
                                  std::span<const double> interference_pip,
                                  const PrPolicy& policy_pip) {
  return paired_difference(pr_rate_series(batch, interference_aip, policy_aip),
                           pr_rate_series(batch, interference_pip, policy_pip));
}

MeanEstimate outage_capacity_gap(const FadingBatch& batch,
                                 std::span<const double> interference_aip,
                                 std::span<const double> interference_pip,
                                 OutageFamily family, double q_budget,
                                 double eps0) {
  const std::size_t n = batch.size();
  auto gap_on = [&](std::size_t b, std::size_t e) {
    const double a =
        pr_outage_snr(batch, interference_aip, family, q_budget, eps0, b, e);
    const double p =
        pr_outage_snr(batch, interference_pip, family, q_budget, eps0, b, e);
    return std::log2(1.0 + a) - std::log2(1.0 + p);
  };
  return MeanEstimate{gap_on(0, n), sectioned_std_error(n, gap_on), n};
}

MeanEstimate outage_probability_gap(const FadingBatch& batch,
                                    std::span<const double> interference_aip,
                                    const PrPolicy& policy_aip,
                                    std::span<const double> interference_pip,
                                    const PrPolicy& policy_pip, double gamma0) {
  return paired_difference(
      outage_indicators(batch, interference_aip, policy_aip, gamma0),
      outage_indicators(batch, interference_pip, policy_pip, gamma0));
}

MeanEstimate ci_snr_gap(const FadingBatch& batch,
                        std::span<const double> interference_aip,
                        std::span<const double> interference_pip,
                        double q_budget) {
  require(q_budget > 0.0, "ci_snr_gap: Q must be positive");
  const EffectiveStates sa = states_of(batch, interference_aip, "ci_snr_gap");
  const EffectiveStates sp = states_of(batch, interference_pip, "ci_snr_gap");
  const std::size_t n = batch.size();
  std::vector<double> inv_a(n), inv_p(n);
  for (std::size_t i = 0; i < n; ++i) {
    const double f = batch.f[i];
    inv_a[i] = f > 0.0 ? (1.0 + sa.interference(i)) / f : 0.0;
    inv_p[i] = f > 0.0 ? (1.0 + sp.interference(i)) / f : 0.0;
  }
  const double m_a = compensated_sum(inv_a) / static_cast<double>(n);
  const double m_p = compensated_sum(inv_p) / static_cast<double>(n);
  require(m_a > 0.0 && m_p > 0.0, "ci_snr_gap: no invertible state");
  const MeanEstimate d = paired_difference(inv_a, inv_p);
  // gamma_a - gamma_p = Q (m_p - m_a) / (m_a m_p)
  return MeanEstimate{q_budget / m_a - q_budget / m_p,
                      q_budget * d.std_error / (m_a * m_p), n};
}

}  // namespace crshare
