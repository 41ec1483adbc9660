#include "crshare/cr_policy.hpp"

#include <cmath>
#include <limits>
#include <string>

#include "crshare/error.hpp"
#include "crshare/numerics.hpp"

namespace crshare {

namespace {

void require_gain(double x, const char* what) {
  require(x > 0.0 && std::isfinite(x),
          std::string(what) + ": channel gains must be positive");
}

void require_outage_target(double eps0, const char* what) {
  require(eps0 >= 0.0 && eps0 < 1.0,
          std::string(what) + ": outage target must lie in [0, 1)");
}

// Zero h states would need infinite inversion power; they never transmit.
double inverse_ratio_if_served(double h, double g, double lambda) {
  if (!(h > 0.0)) return 0.0;
  return h / g >= lambda ? g / h : 0.0;
}

OutageAip calibrate_out_aip_range(const FadingBatch& batch, double gamma_a,
                                  double eps0, std::size_t begin,
                                  std::size_t end) {
  const std::size_t n = end - begin;
  OutageAip policy;
  policy.gamma_a = gamma_a;
  policy.eps0 = eps0;
  if (eps0 > 0.0) {
    std::vector<double> ratio(n);
    for (std::size_t i = 0; i < n; ++i)
      ratio[i] = batch.h[begin + i] / batch.g[begin + i];
    policy.lambda = empirical_quantile_inplace(ratio, eps0);
  }
  const double served = indexed_mean(n, [&](std::size_t i) {
    return inverse_ratio_if_served(batch.h[begin + i], batch.g[begin + i],
                                   policy.lambda);
  });
  require(served > 0.0, "calibrate_out_aip: no state is served");
  policy.zeta_a = gamma_a / served;
  return policy;
}

}  // namespace

double power_er_aip(double h, double g, double nu) {
  require_gain(h, "power_er_aip");
  require_gain(g, "power_er_aip");
  require(nu > 0.0, "power_er_aip: nu must be positive");
  return std::max(0.0, 1.0 / (nu * g) - 1.0 / h);
}

ErgodicAip calibrate_er_aip(const FadingBatch& batch, double gamma_a) {
  require(gamma_a > 0.0, "calibrate_er_aip: Gamma_a must be positive");
  require(batch.size() > 0, "calibrate_er_aip: empty batch");
  const std::size_t n = batch.size();
  // In terms of the water level w = 1/nu the interference g p equals
  // (w - g/h)^+, which is increasing in w.
  std::vector<double> ratio(n);
  for (std::size_t i = 0; i < n; ++i)
    ratio[i] = batch.h[i] > 0.0 ? batch.g[i] / batch.h[i]
                                : std::numeric_limits<double>::infinity();
  RootProblem problem;
  problem.objective = [&](double w) {
    return indexed_mean(n, [&](std::size_t i) {
      return std::max(0.0, w - ratio[i]);
    });
  };
  problem.target = gamma_a;
  problem.lo = gamma_a;
  problem.hi = 2.0 * gamma_a;
  const double level = bisect_monotone(problem);
  return ErgodicAip{1.0 / level, gamma_a};
}

OutageAip calibrate_out_aip(const FadingBatch& batch, double gamma_a,
                            double eps0) {
  require(gamma_a > 0.0, "calibrate_out_aip: Gamma_a must be positive");
  require(batch.size() > 0, "calibrate_out_aip: empty batch");
  require_outage_target(eps0, "calibrate_out_aip");
  return calibrate_out_aip_range(batch, gamma_a, eps0, 0, batch.size());
}

double power_out_aip(double h, double g, const OutageAip& policy) {
  require_gain(h, "power_out_aip");
  require_gain(g, "power_out_aip");
  return h / g >= policy.lambda ? policy.zeta_a / h : 0.0;
}

double power_pip(double g, double gamma_p) {
  require_gain(g, "power_pip");
  require(gamma_p >= 0.0, "power_pip: Gamma_p must be nonnegative");
  return gamma_p / g;
}

CrPolicy calibrate_cr(const FadingBatch& batch, const CrConstraintSpec& spec) {
  require(spec.threshold > 0.0, "calibrate_cr: threshold must be positive");
  if (spec.kind == ConstraintKind::pip) return Pip{spec.threshold};
  if (spec.outage_target)
    return calibrate_out_aip(batch, spec.threshold, *spec.outage_target);
  return calibrate_er_aip(batch, spec.threshold);
}

double cr_power(const CrPolicy& policy, double h, double g) {
  if (const auto* p = std::get_if<ErgodicAip>(&policy)) {
    if (!(h > 0.0)) return 0.0;
    return power_er_aip(h, g, p->nu);
  }
  if (const auto* p = std::get_if<OutageAip>(&policy)) {
    if (!(h > 0.0)) return 0.0;
    return power_out_aip(h, g, *p);
  }
  return power_pip(g, std::get<Pip>(policy).gamma_p);
}

std::vector<double> interference_series(const FadingBatch& batch,
                                        const CrPolicy& policy) {
  const std::size_t n = batch.size();
  if (const auto* p = std::get_if<Pip>(&policy))
    return std::vector<double>(n, p->gamma_p);
  std::vector<double> out(n);
  for (std::size_t i = 0; i < n; ++i)
    out[i] = batch.g[i] * cr_power(policy, batch.h[i], batch.g[i]);
  return out;
}

CapacityEstimate cr_ergodic_capacity(const FadingBatch& batch,
                                     const CrPolicy& policy) {
  require(batch.size() > 0, "cr_ergodic_capacity: empty batch");
  std::vector<double> rate(batch.size());
  for (std::size_t i = 0; i < batch.size(); ++i)
    rate[i] = std::log2(1.0 + batch.h[i] * cr_power(policy, batch.h[i], batch.g[i]));
  const MeanEstimate m = mc_mean(rate);
  CapacityEstimate c;
  c.bits = m.mean;
  c.std_error = m.std_error;
  c.n = m.n;
  c.kind = CapacityKind::ergodic;
  return c;
}

double pip_outage_snr(const FadingBatch& batch, double gamma_p, double eps0,
                      std::size_t begin, std::size_t end) {
  require_outage_target(eps0, "pip_outage_snr");
  require(begin < end && end <= batch.size(), "pip_outage_snr: bad range");
  // A constant-power-per-g rule cannot guarantee any positive SNR in every
  // state: the infimum of h Gamma_p / g is 0 for gains with continuous
  // densities.
  if (eps0 == 0.0) return 0.0;
  std::vector<double> snr(end - begin);
  for (std::size_t i = begin; i < end; ++i)
    snr[i - begin] = batch.h[i] * gamma_p / batch.g[i];
  return empirical_quantile_inplace(snr, eps0);
}

CapacityEstimate cr_outage_capacity(const CrPolicy& policy,
                                    const FadingBatch& batch, double eps0) {
  require_outage_target(eps0, "cr_outage_capacity");
  require(batch.size() > 0, "cr_outage_capacity: empty batch");
  const std::size_t n = batch.size();
  CapacityEstimate c;
  c.n = n;
  c.eps0 = eps0;
  c.kind = eps0 == 0.0 ? CapacityKind::delay_limited : CapacityKind::outage;

  if (const auto* p = std::get_if<OutageAip>(&policy)) {
    require(std::abs(p->eps0 - eps0) <= 1e-12,
            "cr_outage_capacity: policy was calibrated for a different outage target");
    c.bits = std::log2(1.0 + p->zeta_a);
    c.std_error = sectioned_std_error(n, [&](std::size_t b, std::size_t e) {
      return std::log2(
          1.0 + calibrate_out_aip_range(batch, p->gamma_a, eps0, b, e).zeta_a);
    });
    return c;
  }
  if (const auto* p = std::get_if<Pip>(&policy)) {
    c.bits = std::log2(1.0 + pip_outage_snr(batch, p->gamma_p, eps0, 0, n));
    c.std_error = sectioned_std_error(n, [&](std::size_t b, std::size_t e) {
      return std::log2(1.0 + pip_outage_snr(batch, p->gamma_p, eps0, b, e));
    });
    return c;
  }
  throw Error(ErrorKind::invalid_parameter,
              "cr_outage_capacity: the ergodic AIP policy has no outage capacity");
}

}  // namespace crshare
