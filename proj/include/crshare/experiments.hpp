#pragma once

#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <string>
#include <string_view>
#include <vector>

namespace crshare {

enum class Scenario { er_er, er_out, out_er, out_out, theorems };

const char* to_string(Scenario s);

struct ExperimentConfig {
  double gamma = 1.0;
  double q_budget = 10.0;
  double mean_h = 1.0;
  double mean_f = 1.0;
  double mean_g = 10.0;
  std::vector<double> atten_grid_db = {0, 2, 4, 6, 8, 10, 12, 14, 16, 18, 20};
  double eps0_pr = 0.2;
  double eps0_cr = 0.1;
  std::size_t n = 1'000'000;
  std::uint64_t seed = 20090317;
  Scenario scenario = Scenario::er_er;

  /// Throws Error(config_error) on a violated invariant.
  void validate() const;
};

/// Flat `key = value` text; `#` starts a comment; lists are comma-separated.
ExperimentConfig parse_config(std::string_view text);
ExperimentConfig load_config(const std::filesystem::path& path);

struct SweepRow {
  double atten_db = 0.0;
  double cr_capacity_aip = 0.0;
  double cr_capacity_pip = 0.0;
  double pr_cp_aip = 0.0;
  double pr_cp_pip = 0.0;
  double pr_adapt_aip = 0.0;
  double pr_adapt_pip = 0.0;
  double cr_capacity_aip_stderr = 0.0;
  double cr_capacity_pip_stderr = 0.0;
  double pr_cp_aip_stderr = 0.0;
  double pr_cp_pip_stderr = 0.0;
  double pr_adapt_aip_stderr = 0.0;
  double pr_adapt_pip_stderr = 0.0;
};

/// Column names in SweepRow field order.
const std::vector<std::string>& sweep_columns();

/// One row for a single attenuation point of a sweep scenario.
SweepRow run_sweep_point(const ExperimentConfig& config, double atten_db);

std::vector<SweepRow> run_sweep(const ExperimentConfig& config);

void emit_csv(const std::vector<SweepRow>& rows, std::ostream& out);
void emit_csv(const std::vector<SweepRow>& rows,
              const std::filesystem::path& destination);

struct TheoremCheck {
  std::string name;
  double measured = 0.0;   // measured gap or statistic
  double std_error = 0.0;
  double bound = 0.0;      // the threshold the verdict compares against
  bool passed = false;
  std::string detail;
};

struct TheoremReport {
  std::vector<TheoremCheck> checks;
  bool all_passed() const;
};

TheoremReport verify_theorems(const ExperimentConfig& config);

void print_report(const TheoremReport& report, std::ostream& out);

}  // namespace crshare
