#pragma once

#include <optional>
#include <span>
#include <variant>
#include <vector>

#include "crshare/estimate.hpp"
#include "crshare/fading.hpp"

namespace crshare {

/// Water-filling-like rule p = (1/(nu g) - 1/h)^+ meeting E[g p] = Gamma_a.
struct ErgodicAip {
  double nu = 0.0;
  double gamma_a = 0.0;
};

/// Truncated inversion on h/g: p = zeta_a / h when h/g >= lambda, else 0.
struct OutageAip {
  double lambda = 0.0;
  double zeta_a = 0.0;
  double gamma_a = 0.0;
  double eps0 = 0.0;
};

/// Peak-limited rule p = Gamma_p / g.
struct Pip {
  double gamma_p = 0.0;
};

using CrPolicy = std::variant<ErgodicAip, OutageAip, Pip>;

enum class ConstraintKind { aip, pip };

/// Interference-power constraint at PR-Rx. Regimes are compared at a
/// common threshold Gamma_a = Gamma_p.
struct CrConstraintSpec {
  ConstraintKind kind = ConstraintKind::aip;
  double threshold = 1.0;
  std::optional<double> outage_target;
};

/// Calibrates the policy the constraint calls for: ergodic AIP, outage AIP
/// (when an outage target is given) or PIP.
CrPolicy calibrate_cr(const FadingBatch& batch, const CrConstraintSpec& spec);

double power_er_aip(double h, double g, double nu);

ErgodicAip calibrate_er_aip(const FadingBatch& batch, double gamma_a);

OutageAip calibrate_out_aip(const FadingBatch& batch, double gamma_a,
                            double eps0);

double power_out_aip(double h, double g, const OutageAip& policy);

double power_pip(double g, double gamma_p);

double cr_power(const CrPolicy& policy, double h, double g);

/// I[i] = g[i] p[i]. PIP yields the constant Gamma_p exactly.
std::vector<double> interference_series(const FadingBatch& batch,
                                        const CrPolicy& policy);

/// E[log2(1 + h p)] over the batch.
CapacityEstimate cr_ergodic_capacity(const FadingBatch& batch,
                                     const CrPolicy& policy);

/// log2(1 + zeta). Outage AIP uses its calibrated zeta_a; PIP takes zeta_p
/// as the eps0-quantile of h Gamma_p / g. eps0 = 0 gives the delay-limited
/// capacity.
CapacityEstimate cr_outage_capacity(const CrPolicy& policy,
                                    const FadingBatch& batch, double eps0);

/// zeta_p for the PIP policy on states [begin, end).
double pip_outage_snr(const FadingBatch& batch, double gamma_p, double eps0,
                      std::size_t begin, std::size_t end);

}  // namespace crshare
