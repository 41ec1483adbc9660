// Command-line front end: `crshare sweep` and `crshare theorems`.

#include <fstream>
#include <iostream>
#include <optional>
#include <string>

#include "CLI11.hpp"
#include "crshare/error.hpp"
#include "crshare/experiments.hpp"

namespace {

enum ExitCode { kOk = 0, kCheckFailed = 1, kConfigError = 2, kNumericalError = 3 };

struct Options {
  std::string config_path;
  std::string out_path;
  std::optional<std::uint64_t> seed;
  std::optional<std::size_t> n;
};

crshare::ExperimentConfig resolve(const Options& opt) {
  crshare::ExperimentConfig cfg = opt.config_path.empty()
                                      ? crshare::parse_config("")
                                      : crshare::load_config(opt.config_path);
  if (opt.seed) cfg.seed = *opt.seed;
  if (opt.n) cfg.n = *opt.n;
  cfg.validate();
  return cfg;
}

template <typename Fn>
int with_output(const std::string& path, Fn&& fn) {
  if (path.empty()) return fn(std::cout);
  std::ofstream out(path, std::ios::binary);
  if (!out) {
    std::cerr << "error: cannot open '" << path << "' for writing\n";
    return kNumericalError;
  }
  return fn(out);
}

void add_common(CLI::App* cmd, Options& opt) {
  cmd->add_option("--config", opt.config_path, "key = value experiment config");
  cmd->add_option("--out", opt.out_path, "output path (default: stdout)");
  cmd->add_option("--seed", opt.seed, "override the config seed");
  cmd->add_option("--n", opt.n, "override the config sample count");
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Spectrum-sharing capacity sweeps and AIP-vs-PIP checks"};
  app.require_subcommand(1);
  Options opt;
  CLI::App* sweep = app.add_subcommand("sweep", "attenuation sweep to CSV");
  CLI::App* theorems = app.add_subcommand("theorems", "run the AIP-vs-PIP checks");
  add_common(sweep, opt);
  add_common(theorems, opt);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kOk : kConfigError;
  }

  try {
    crshare::ExperimentConfig cfg = resolve(opt);
    if (sweep->parsed()) {
      const auto rows = crshare::run_sweep(cfg);
      return with_output(opt.out_path, [&](std::ostream& out) {
        crshare::emit_csv(rows, out);
        return kOk;
      });
    }
    cfg.scenario = crshare::Scenario::theorems;
    const crshare::TheoremReport report = crshare::verify_theorems(cfg);
    return with_output(opt.out_path, [&](std::ostream& out) {
      crshare::print_report(report, out);
      return report.all_passed() ? kOk : kCheckFailed;
    });
  } catch (const crshare::Error& e) {
    std::cerr << "error (" << crshare::to_string(e.kind()) << "): " << e.what() << '\n';
    return e.kind() == crshare::ErrorKind::config_error ? kConfigError
                                                        : kNumericalError;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kNumericalError;
  }
}
