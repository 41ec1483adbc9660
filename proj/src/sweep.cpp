#include <cstdio>
#include <fstream>
#include <ostream>

#include "crshare/capacity.hpp"
#include "crshare/cr_policy.hpp"
#include "crshare/error.hpp"
#include "crshare/experiments.hpp"

namespace crshare {

namespace {

bool cr_uses_outage(Scenario s) {
  return s == Scenario::out_er || s == Scenario::out_out;
}

bool pr_uses_outage(Scenario s) {
  return s == Scenario::er_out || s == Scenario::out_out;
}

void put(double& value, double& stderr_slot, const CapacityEstimate& c) {
  value = c.bits;
  stderr_slot = c.std_error;
}

}  // namespace

const std::vector<std::string>& sweep_columns() {
  static const std::vector<std::string> columns = {
      "atten_db",
      "cr_capacity_aip",
      "cr_capacity_pip",
      "pr_cp_aip",
      "pr_cp_pip",
      "pr_adapt_aip",
      "pr_adapt_pip",
      "cr_capacity_aip_stderr",
      "cr_capacity_pip_stderr",
      "pr_cp_aip_stderr",
      "pr_cp_pip_stderr",
      "pr_adapt_aip_stderr",
      "pr_adapt_pip_stderr",
  };
  return columns;
}

SweepRow run_sweep_point(const ExperimentConfig& config, double atten_db) {
  const Scenario scenario = config.scenario;
  if (scenario == Scenario::theorems)
    throw Error(ErrorKind::config_error,
                "config: scenario 'theorems' is not a sweep scenario");

  // Every grid point reuses the same seed: h and f are identical across
  // rows and g is the same draw scaled by the attenuation.
  const FadingBatch batch = sample_joint(
      make_exponential(config.mean_h),
      apply_attenuation(make_exponential(config.mean_g), atten_db),
      make_exponential(config.mean_f), config.n, config.seed);

  SweepRow row;
  row.atten_db = atten_db;

  const CrPolicy aip = cr_uses_outage(scenario)
                           ? CrPolicy{calibrate_out_aip(batch, config.gamma,
                                                        config.eps0_cr)}
                           : CrPolicy{calibrate_er_aip(batch, config.gamma)};
  const CrPolicy pip = Pip{config.gamma};

  if (cr_uses_outage(scenario)) {
    put(row.cr_capacity_aip, row.cr_capacity_aip_stderr,
        cr_outage_capacity(aip, batch, config.eps0_cr));
    put(row.cr_capacity_pip, row.cr_capacity_pip_stderr,
        cr_outage_capacity(pip, batch, config.eps0_cr));
  } else {
    put(row.cr_capacity_aip, row.cr_capacity_aip_stderr,
        cr_ergodic_capacity(batch, aip));
    put(row.cr_capacity_pip, row.cr_capacity_pip_stderr,
        cr_ergodic_capacity(batch, pip));
  }

  const std::vector<double> i_aip = interference_series(batch, aip);
  const std::vector<double> i_pip = interference_series(batch, pip);
  const double q = config.q_budget;

  if (pr_uses_outage(scenario)) {
    const double eps0 = config.eps0_pr;
    put(row.pr_cp_aip, row.pr_cp_aip_stderr,
        pr_outage_capacity(batch, i_aip, OutageFamily::cp, q, eps0));
    put(row.pr_cp_pip, row.pr_cp_pip_stderr,
        pr_outage_capacity(batch, i_pip, OutageFamily::cp, q, eps0));
    put(row.pr_adapt_aip, row.pr_adapt_aip_stderr,
        pr_outage_capacity(batch, i_aip, OutageFamily::tci, q, eps0));
    put(row.pr_adapt_pip, row.pr_adapt_pip_stderr,
        pr_outage_capacity(batch, i_pip, OutageFamily::tci, q, eps0));
  } else {
    const Wf wf_aip = calibrate_wf(EffectiveStates(batch.f, i_aip), q);
    const Wf wf_pip = calibrate_wf(EffectiveStates(batch.f, i_pip), q);
    put(row.pr_cp_aip, row.pr_cp_aip_stderr,
        pr_ergodic_capacity(batch, i_aip, Cp{q}));
    put(row.pr_cp_pip, row.pr_cp_pip_stderr,
        pr_ergodic_capacity(batch, i_pip, Cp{q}));
    put(row.pr_adapt_aip, row.pr_adapt_aip_stderr,
        pr_ergodic_capacity(batch, i_aip, wf_aip));
    put(row.pr_adapt_pip, row.pr_adapt_pip_stderr,
        pr_ergodic_capacity(batch, i_pip, wf_pip));
  }
  return row;
}

std::vector<SweepRow> run_sweep(const ExperimentConfig& config) {
  config.validate();
  std::vector<SweepRow> rows;
  rows.reserve(config.atten_grid_db.size());
  for (double atten : config.atten_grid_db) {
    try {
      rows.push_back(run_sweep_point(config, atten));
    } catch (const Error& e) {
      if (e.kind() == ErrorKind::config_error) throw;
      throw Error(e.kind(), "at attenuation " + std::to_string(atten) +
                                " dB: " + e.what());
    }
  }
  return rows;
}

void emit_csv(const std::vector<SweepRow>& rows, std::ostream& out) {
  require(!rows.empty(), "emit_csv: no rows");
  const auto& columns = sweep_columns();
  for (std::size_t c = 0; c < columns.size(); ++c)
    out << (c ? "," : "") << columns[c];
  out << '\n';
  char buf[32];
  for (const SweepRow& r : rows) {
    const double values[] = {
        r.atten_db,        r.cr_capacity_aip,        r.cr_capacity_pip,
        r.pr_cp_aip,       r.pr_cp_pip,              r.pr_adapt_aip,
        r.pr_adapt_pip,    r.cr_capacity_aip_stderr, r.cr_capacity_pip_stderr,
        r.pr_cp_aip_stderr, r.pr_cp_pip_stderr,      r.pr_adapt_aip_stderr,
        r.pr_adapt_pip_stderr};
    for (std::size_t c = 0; c < std::size(values); ++c) {
      std::snprintf(buf, sizeof buf, "%.17g", values[c]);
      out << (c ? "," : "") << buf;
    }
    out << '\n';
  }
  if (!out) throw std::runtime_error("emit_csv: write failed");
}

void emit_csv(const std::vector<SweepRow>& rows,
              const std::filesystem::path& destination) {
  std::ofstream out(destination, std::ios::binary);
  if (!out)
    throw std::runtime_error("emit_csv: cannot open '" + destination.string() + "'");
  emit_csv(rows, out);
}

}  // namespace crshare
