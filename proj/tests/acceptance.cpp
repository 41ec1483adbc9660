// Acceptance suite. Usage: acceptance [criterion...]; no argument runs all.
// Prints one PASS/FAIL line per criterion and exits nonzero if any fails.

#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <functional>
#include <iterator>
#include <sstream>
#include <string>
#include <vector>

#include "crshare/capacity.hpp"
#include "crshare/cr_policy.hpp"
#include "crshare/experiments.hpp"
#include "crshare/fading.hpp"
#include "crshare/pr_policy.hpp"
#include "oracles.hpp"

using namespace crshare;

namespace {

constexpr double kSigmas = 3.0;
constexpr double kBisectionTol = 1e-6;

const ExperimentConfig kDefaults{};

struct Verdict {
  bool passed = true;
  std::ostringstream detail;

  void expect(bool ok, const std::string& what) {
    if (!ok) {
      passed = false;
      detail << " [violated: " << what << "] ";
    }
  }
};

struct Setting {
  FadingBatch batch;
  std::vector<double> i_aip;
  std::vector<double> i_pip;
};

enum class CrAip { ergodic, outage };

Setting make_setting(double atten_db, const GainDistribution& df, CrAip cr,
                     std::size_t n = kDefaults.n) {
  Setting s;
  s.batch = sample_joint(make_exponential(kDefaults.mean_h),
                         apply_attenuation(make_exponential(kDefaults.mean_g), atten_db),
                         df, n, kDefaults.seed);
  const CrPolicy aip = cr == CrAip::ergodic
                           ? CrPolicy{calibrate_er_aip(s.batch, kDefaults.gamma)}
                           : CrPolicy{calibrate_out_aip(s.batch, kDefaults.gamma,
                                                        kDefaults.eps0_cr)};
  s.i_aip = interference_series(s.batch, aip);
  s.i_pip = interference_series(s.batch, Pip{kDefaults.gamma});
  return s;
}

std::string num(double x) {
  std::ostringstream os;
  os << x;
  return os.str();
}

GainDistribution rayleigh_f() { return make_exponential(kDefaults.mean_f); }

// 1. Asymptotic CR outage gap.
Verdict asymptotic_outage_gap() {
  Verdict v;
  const double eps = kDefaults.eps0_cr, gamma = kDefaults.gamma;
  const double target = 2.6791;
  const double asymptote = std::log2(
      oracle::zeta_a(kDefaults.mean_h, kDefaults.mean_g,
                     oracle::ratio_quantile(kDefaults.mean_h, kDefaults.mean_g, eps), gamma) /
      (gamma * oracle::ratio_quantile(kDefaults.mean_h, kDefaults.mean_g, eps)));
  v.detail << "asymptotic oracle " << asymptote;
  for (double db : {50.0, 60.0}) {
    const Setting s = make_setting(db, rayleigh_f(), CrAip::outage);
    const OutageAip aip = calibrate_out_aip(s.batch, gamma, eps);
    const double measured = cr_outage_capacity(aip, s.batch, eps).bits -
                            cr_outage_capacity(Pip{gamma}, s.batch, eps).bits;
    const double mg = kDefaults.mean_g * db_to_linear(-db);
    const double lambda = oracle::ratio_quantile(kDefaults.mean_h, mg, eps);
    const double zeta_a = oracle::zeta_a(kDefaults.mean_h, mg, lambda, gamma);
    const double zeta_p = gamma * lambda;
    const double expected = std::log2((1.0 + zeta_a) / (1.0 + zeta_p));
    v.detail << "; " << db << " dB: MC " << measured << " oracle " << expected;
    v.expect(std::abs(measured - target) <= 0.05, "|MC - 2.6791| <= 0.05");
    v.expect(std::abs(measured - expected) <= 0.02, "|MC - oracle| <= 0.02");
  }
  return v;
}

// 2 and 3. Theorems 1 and 2 over the default grid.
Verdict ergodic_theorem(bool water_filling) {
  Verdict v;
  const double q = kDefaults.q_budget;
  double worst_margin = INFINITY;
  for (double db : kDefaults.atten_grid_db) {
    for (CrAip cr : {CrAip::ergodic, CrAip::outage}) {
      if (cr == CrAip::outage && db != kDefaults.atten_grid_db.front()) continue;
      const Setting s = make_setting(db, rayleigh_f(), cr);
      PrPolicy pa = Cp{q}, pp = Cp{q};
      if (water_filling) {
        const Wf wa = calibrate_wf(EffectiveStates(s.batch.f, s.i_aip), q);
        const Wf wp = calibrate_wf(EffectiveStates(s.batch.f, s.i_pip), q);
        v.expect(wa.mu >= wp.mu - 10.0 * kBisectionTol,
                 "mu_a >= mu_p - 10 tol at " + num(db) + " dB");
        pa = wa;
        pp = wp;
      }
      const MeanEstimate gap = ergodic_capacity_gap(s.batch, s.i_aip, pa, s.i_pip, pp);
      const std::string where = num(db) + " dB" +
                                (cr == CrAip::outage ? " (outage AIP)" : "");
      if (db == kDefaults.atten_grid_db.front()) {
        v.detail << where << ": gap " << gap.mean << " se " << gap.std_error << "; ";
        v.expect(gap.std_error > 0.0 && gap.mean >= kSigmas * gap.std_error,
                 "gap >= 3se > 0 at " + where);
      }
      v.expect(gap.mean >= -kSigmas * gap.std_error, "gap >= -3se at " + where);
      worst_margin = std::min(worst_margin, gap.mean / std::max(gap.std_error, 1e-300));
    }
  }
  v.detail << "min gap/se over grid " << worst_margin;
  return v;
}

// 4. Theorem 4.
Verdict channel_inversion_theorem() {
  Verdict v;
  const double q = kDefaults.q_budget;
  const Setting shifted = make_setting(0.0, make_shifted_exponential(0.5, 0.5), CrAip::ergodic);
  const MeanEstimate gap = ci_snr_gap(shifted.batch, shifted.i_aip, shifted.i_pip, q);
  v.detail << "shifted f: gamma_a - gamma_p " << gap.mean << " se " << gap.std_error;
  v.expect(std::abs(gap.mean) <= kSigmas * gap.std_error, "|gamma_a - gamma_p| <= 3se");

  const Setting s = make_setting(0.0, rayleigh_f(), CrAip::ergodic);
  const auto full_a = pr_delay_limited_capacity(s.batch, s.i_aip, q);
  const auto full_p = pr_delay_limited_capacity(s.batch, s.i_pip, q);
  v.expect(full_a.divergent && full_p.divergent, "exponential f flagged divergent");
  v.expect(full_a.bits == 0.0 && full_p.bits == 0.0, "reported delay-limited capacity 0");
  double prev_a = INFINITY, prev_p = INFINITY;
  v.detail << "; exponential f block-mean bits aip/pip";
  for (std::size_t m = 1000; m <= s.batch.size(); m *= 10) {
    const double a = blocked_delay_limited_bits(s.batch, s.i_aip, q, m).mean;
    const double p = blocked_delay_limited_bits(s.batch, s.i_pip, q, m).mean;
    v.detail << " n=" << m << ":" << a << "/" << p;
    v.expect(a < prev_a && p < prev_p, "strict decrease at n=" + std::to_string(m));
    prev_a = a;
    prev_p = p;
  }
  return v;
}

// 5. Theorem 5.
Verdict tci_theorem() {
  Verdict v;
  const double q = kDefaults.q_budget;
  for (CrAip cr : {CrAip::ergodic, CrAip::outage}) {
    const Setting s = make_setting(0.0, rayleigh_f(), cr);
    const std::string tag = cr == CrAip::ergodic ? "ergodic AIP" : "outage AIP";
    const EffectiveStates sa(s.batch.f, s.i_aip), sp(s.batch.f, s.i_pip);
    for (double g0 : {0.5, 1.0, 2.0}) {
      const MeanEstimate gap = outage_probability_gap(
          s.batch, s.i_aip, calibrate_tci_for_snr(sa, q, g0), s.i_pip,
          calibrate_tci_for_snr(sp, q, g0), g0);
      v.detail << tag << " gamma0=" << g0 << ": eps gap " << gap.mean << "; ";
      v.expect(gap.mean <= kSigmas * gap.std_error,
               tag + " eps_a <= eps_p + 3se at gamma0=" + num(g0));
    }
    for (double eps : {0.1, 0.2}) {
      const MeanEstimate gap =
          outage_capacity_gap(s.batch, s.i_aip, s.i_pip, OutageFamily::tci, q, eps);
      v.detail << tag << " eps0=" << eps << ": C gap " << gap.mean << "; ";
      v.expect(gap.mean >= -kSigmas * gap.std_error,
               tag + " C_a >= C_p - 3se at eps0=" + num(eps));
    }
  }
  return v;
}

// 6. Theorem 3 branches, as stated.
Verdict cp_outage_theorem() {
  Verdict v;
  const double q = kDefaults.q_budget;
  const Setting convex = make_setting(0.0, make_power_cdf(2.0, 1.0), CrAip::ergodic);
  const Setting expo = make_setting(0.0, rayleigh_f(), CrAip::ergodic);
  for (double g0 : {0.5, 1.0}) {
    const MeanEstimate vex = outage_probability_gap(convex.batch, convex.i_aip, Cp{q},
                                                    convex.i_pip, Cp{q}, g0);
    const MeanEstimate cave = outage_probability_gap(expo.batch, expo.i_aip, Cp{q},
                                                     expo.i_pip, Cp{q}, g0);
    v.detail << "gamma0=" << g0 << ": convex eps_a-eps_p " << vex.mean << " (se "
             << vex.std_error << "), exponential " << cave.mean << " (se " << cave.std_error
             << "), Rayleigh direction " << (cave.mean < 0 ? "AIP lower" : "PIP lower")
             << "; ";
    v.expect(vex.mean <= kSigmas * vex.std_error,
             "convex eps_a <= eps_p + 3se at gamma0=" + num(g0));
    v.expect(cave.mean >= -kSigmas * cave.std_error,
             "exponential eps_a >= eps_p - 3se at gamma0=" + num(g0));
  }
  return v;
}

double mean_of(const std::vector<double>& x) {
  return compensated_sum(x) / static_cast<double>(x.size());
}

// 7. Calibration accuracy.
Verdict calibration_accuracy() {
  Verdict v;
  const double gamma = kDefaults.gamma, q = kDefaults.q_budget;
  for (double db : {0.0, 10.0, 20.0}) {
    const Setting s = make_setting(db, rayleigh_f(), CrAip::ergodic);
    const std::string at = " at " + num(db) + " dB";
    const double er = mean_of(interference_series(s.batch, calibrate_er_aip(s.batch, gamma)));
    const double out = mean_of(interference_series(
        s.batch, calibrate_out_aip(s.batch, gamma, kDefaults.eps0_cr)));
    v.expect(std::abs(er - gamma) <= 1e-3 * gamma, "ergodic AIP budget" + at);
    v.expect(std::abs(out - gamma) <= 1e-3 * gamma, "outage AIP budget" + at);

    double worst_pip = 0.0;
    for (std::size_t i = 0; i < s.batch.size(); ++i)
      worst_pip = std::max(worst_pip,
                           std::abs(s.batch.g[i] * power_pip(s.batch.g[i], gamma) - gamma) / gamma);
    v.expect(worst_pip <= 1e-12, "PIP identity" + at);

    double worst_pr = 0.0;
    for (const auto* i : {&s.i_aip, &s.i_pip}) {
      const EffectiveStates st(s.batch.f, *i);
      const std::vector<PrPolicy> policies = {calibrate_wf(st, q), ci_snr(st, q),
                                              calibrate_tci(st, q, kDefaults.eps0_pr)};
      for (const PrPolicy& p : policies) {
        const double err = std::abs(mean_of(pr_powers(p, st)) - q) / q;
        worst_pr = std::max(worst_pr, err);
        v.expect(err <= 1e-3, "PR budget" + at);
      }
    }
    v.detail << db << " dB: |E[gp]-G| er " << std::abs(er - gamma) << " out "
             << std::abs(out - gamma) << ", PIP rel " << worst_pip << ", PR rel "
             << worst_pr << "; ";
  }
  return v;
}

// 8. Sweep shape.
Verdict sweep_shape() {
  Verdict v;
  for (Scenario sc : {Scenario::er_er, Scenario::er_out, Scenario::out_er, Scenario::out_out}) {
    ExperimentConfig cfg = kDefaults;
    cfg.scenario = sc;
    const auto rows = run_sweep(cfg);
    const std::string name = to_string(sc);
    const bool cr_ergodic = sc == Scenario::er_er || sc == Scenario::er_out;
    for (std::size_t k = 0; k < rows.size(); ++k) {
      const SweepRow& r = rows[k];
      const SweepRow& first = rows.front();
      v.expect(r.pr_cp_pip == first.pr_cp_pip && r.pr_adapt_pip == first.pr_adapt_pip,
               name + " PIP PR columns constant");
      if (k == 0) continue;
      const SweepRow& prev = rows[k - 1];
      v.expect(r.cr_capacity_aip >= prev.cr_capacity_aip, name + " CR AIP nondecreasing");
      v.expect(r.cr_capacity_pip >= prev.cr_capacity_pip, name + " CR PIP nondecreasing");
      if (cr_ergodic) {
        v.expect(r.pr_cp_aip <= prev.pr_cp_aip +
                                    kSigmas * std::hypot(r.pr_cp_aip_stderr, prev.pr_cp_aip_stderr),
                 name + " PR CP AIP nonincreasing");
        v.expect(r.pr_adapt_aip <= prev.pr_adapt_aip +
                                       kSigmas * std::hypot(r.pr_adapt_aip_stderr,
                                                            prev.pr_adapt_aip_stderr),
                 name + " PR adaptive AIP nonincreasing");
      } else {
        v.expect(std::abs(r.pr_cp_aip - first.pr_cp_aip) <=
                     kSigmas * std::hypot(r.pr_cp_aip_stderr, first.pr_cp_aip_stderr),
                 name + " PR CP AIP constant");
        v.expect(std::abs(r.pr_adapt_aip - first.pr_adapt_aip) <=
                     kSigmas * std::hypot(r.pr_adapt_aip_stderr, first.pr_adapt_aip_stderr),
                 name + " PR adaptive AIP constant");
      }
    }
    if (cr_ergodic) {
      const double g0 = rows.front().cr_capacity_aip - rows.front().cr_capacity_pip;
      const double g20 = rows.back().cr_capacity_aip - rows.back().cr_capacity_pip;
      v.detail << name << " CR gap 0 dB " << g0 << " 20 dB " << g20 << "; ";
      v.expect(g20 < g0, name + " CR ergodic gap shrinks");
    } else {
      v.detail << name << " PR CP AIP " << rows.front().pr_cp_aip << ".."
               << rows.back().pr_cp_aip << "; ";
    }
  }
  return v;
}

// 9. Duality cross-checks.
Verdict duality() {
  Verdict v;
  const double q = kDefaults.q_budget;
  for (double db : {0.0, 10.0}) {
    const Setting s = make_setting(db, rayleigh_f(), CrAip::ergodic);
    for (const auto* i : {&s.i_aip, &s.i_pip}) {
      const std::string tag = std::string(i == &s.i_aip ? "AIP" : "PIP") + " " +
                              num(db) + " dB";
      const EffectiveStates st(s.batch.f, *i);
      const Wf w = calibrate_wf(st, q);
      const CapacityEstimate primal = pr_ergodic_capacity(s.batch, *i, w);
      const MeanEstimate lag = wf_lagrangian(st, pr_powers(w, st), w.mu, q);
      const MeanEstimate dual = wf_dual(st, w.mu, q);
      v.expect(std::abs(lag.mean - primal.bits) <= kSigmas * primal.std_error,
               "WF Lagrangian " + tag);
      v.expect(std::abs(dual.mean - primal.bits) <= kSigmas * primal.std_error,
               "WF dual " + tag);

      const Tci t = calibrate_tci(st, q, kDefaults.eps0_pr);
      const double g0 = t.gamma;
      const OutageResult out = outage_probability(s.batch, *i, t, g0);
      const double mu = t.theta / g0;
      const MeanEstimate tl = tci_lagrangian(st, pr_powers(t, st), mu, g0, q);
      const MeanEstimate td = tci_dual(st, mu, g0, q);
      v.expect(std::abs(tl.mean - out.epsilon) <= kSigmas * out.std_error,
               "TCI Lagrangian " + tag);
      v.expect(std::abs(td.mean - out.epsilon) <= kSigmas * out.std_error,
               "TCI dual " + tag);
      v.detail << tag << ": C " << primal.bits << " L-C " << lag.mean - primal.bits
               << " eps " << out.epsilon << " L-eps " << tl.mean - out.epsilon << "; ";
    }
  }
  return v;
}

// 10. Byte-identical CSV.
Verdict determinism() {
  Verdict v;
  const auto dir = std::filesystem::temp_directory_path();
  const auto a = dir / "crshare_acceptance_a.csv";
  const auto b = dir / "crshare_acceptance_b.csv";
  emit_csv(run_sweep(kDefaults), a);
  emit_csv(run_sweep(kDefaults), b);
  auto slurp = [](const std::filesystem::path& p) {
    std::ifstream in(p, std::ios::binary);
    return std::string(std::istreambuf_iterator<char>(in), {});
  };
  const std::string sa = slurp(a), sb = slurp(b);
  v.detail << sa.size() << " bytes";
  v.expect(!sa.empty() && sa == sb, "identical bytes");
  std::filesystem::remove(a);
  std::filesystem::remove(b);
  return v;
}

struct Criterion {
  const char* name;
  std::function<Verdict()> run;
};

}  // namespace

int main(int argc, char** argv) {
  const std::vector<Criterion> criteria = {
      {"asymptotic CR outage gap 2.6791 +- 0.05, oracle within 0.02", asymptotic_outage_gap},
      {"theorem 1: CP ergodic AIP >= PIP", [] { return ergodic_theorem(false); }},
      {"theorem 2: WF ergodic AIP >= PIP, mu_a >= mu_p", [] { return ergodic_theorem(true); }},
      {"theorem 4: CI equality, delay-limited decay", channel_inversion_theorem},
      {"theorem 5: TCI outage AIP <= PIP", tci_theorem},
      {"theorem 3 as stated: convex eps_a <= eps_p, exponential eps_a >= eps_p",
       cp_outage_theorem},
      {"calibration accuracy", calibration_accuracy},
      {"sweep shape", sweep_shape},
      {"duality cross-checks", duality},
      {"sweep CSV determinism", determinism},
  };

  std::vector<std::size_t> selected;
  for (int k = 1; k < argc; ++k) {
    const long id = std::strtol(argv[k], nullptr, 10);
    if (id < 1 || id > static_cast<long>(criteria.size())) {
      std::fprintf(stderr, "unknown criterion %s\n", argv[k]);
      return 2;
    }
    selected.push_back(static_cast<std::size_t>(id));
  }
  if (selected.empty())
    for (std::size_t id = 1; id <= criteria.size(); ++id) selected.push_back(id);

  int failures = 0;
  for (std::size_t id : selected) {
    const Criterion& c = criteria[id - 1];
    Verdict v;
    try {
      v = c.run();
    } catch (const std::exception& e) {
      v.passed = false;
      v.detail << " [exception: " << e.what() << "]";
    }
    std::printf("%s C%zu %s | %s\n", v.passed ? "PASS" : "FAIL", id, c.name,
                v.detail.str().c_str());
    std::fflush(stdout);
    failures += v.passed ? 0 : 1;
  }
  return failures == 0 ? 0 : 1;
}
