#include <algorithm>
#include <cctype>
#include <charconv>
#include <cmath>
#include <fstream>
#include <set>
#include <sstream>
#include <string>

#include "crshare/error.hpp"
#include "crshare/experiments.hpp"

namespace crshare {

namespace {

[[noreturn]] void config_fail(std::size_t line, const std::string& message) {
  std::string where = line > 0 ? "config line " + std::to_string(line) + ": "
                               : std::string("config: ");
  throw Error(ErrorKind::config_error, where + message);
}

std::string_view trim(std::string_view s) {
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front())))
    s.remove_prefix(1);
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back())))
    s.remove_suffix(1);
  return s;
}

double parse_real(std::string_view text, std::size_t line, std::string_view key) {
  text = trim(text);
  double value = 0.0;
  const auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), value);
  if (ec != std::errc() || ptr != text.data() + text.size() || !std::isfinite(value))
    config_fail(line, "'" + std::string(key) + "' expects a real number, got '" +
                          std::string(text) + "'");
  return value;
}

std::uint64_t parse_count(std::string_view text, std::size_t line,
                          std::string_view key) {
  text = trim(text);
  std::uint64_t value = 0;
  const auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), value);
  if (ec == std::errc() && ptr == text.data() + text.size()) return value;
  // Accept integral reals such as 1e6.
  const double real = parse_real(text, line, key);
  if (real < 0.0 || real != std::floor(real) || real > 1.8e19)
    config_fail(line, "'" + std::string(key) + "' expects a nonnegative integer");
  return static_cast<std::uint64_t>(real);
}

Scenario parse_scenario(std::string_view text, std::size_t line) {
  text = trim(text);
  for (Scenario s : {Scenario::er_er, Scenario::er_out, Scenario::out_er,
                     Scenario::out_out, Scenario::theorems})
    if (text == to_string(s)) return s;
  config_fail(line, "unknown scenario '" + std::string(text) + "'");
}

void check(bool ok, std::size_t line, const std::string& message) {
  if (!ok) config_fail(line, message);
}

}  // namespace

const char* to_string(Scenario s) {
  switch (s) {
    case Scenario::er_er: return "er_er";
    case Scenario::er_out: return "er_out";
    case Scenario::out_er: return "out_er";
    case Scenario::out_out: return "out_out";
    case Scenario::theorems: return "theorems";
  }
  return "unknown";
}

void ExperimentConfig::validate() const {
  check(gamma > 0.0, 0, "gamma must be positive");
  check(q_budget > 0.0, 0, "Q must be positive");
  check(mean_h > 0.0 && mean_f > 0.0 && mean_g > 0.0, 0,
        "channel means must be positive");
  check(!atten_grid_db.empty(), 0, "atten_grid_db must not be empty");
  check(std::all_of(atten_grid_db.begin(), atten_grid_db.end(),
                    [](double a) { return std::isfinite(a); }),
        0, "atten_grid_db entries must be finite");
  check(eps0_pr > 0.0 && eps0_pr < 1.0, 0, "eps0_pr must lie in (0, 1)");
  check(eps0_cr >= 0.0 && eps0_cr < 1.0, 0, "eps0_cr must lie in [0, 1)");
  check(n >= 1000, 0, "n must be at least 1000");
}

ExperimentConfig parse_config(std::string_view text) {
  ExperimentConfig cfg;
  std::set<std::string> seen;
  std::size_t line_no = 0;
  while (!text.empty()) {
    ++line_no;
    const std::size_t eol = text.find('\n');
    std::string_view line = text.substr(0, eol);
    text = eol == std::string_view::npos ? std::string_view{} : text.substr(eol + 1);

    if (const std::size_t hash = line.find('#'); hash != std::string_view::npos)
      line = line.substr(0, hash);
    line = trim(line);
    if (line.empty()) continue;

    const std::size_t eq = line.find('=');
    if (eq == std::string_view::npos)
      config_fail(line_no, "expected 'key = value'");
    const std::string key(trim(line.substr(0, eq)));
    const std::string_view value = trim(line.substr(eq + 1));
    if (key.empty()) config_fail(line_no, "missing key");
    if (value.empty()) config_fail(line_no, "missing value for '" + key + "'");
    if (!seen.insert(key).second)
      config_fail(line_no, "duplicate key '" + key + "'");

    if (key == "gamma") {
      cfg.gamma = parse_real(value, line_no, key);
      check(cfg.gamma > 0.0, line_no, "gamma must be positive");
    } else if (key == "Q") {
      cfg.q_budget = parse_real(value, line_no, key);
      check(cfg.q_budget > 0.0, line_no, "Q must be positive");
    } else if (key == "mean_h" || key == "mean_f" || key == "mean_g") {
      const double m = parse_real(value, line_no, key);
      check(m > 0.0, line_no, key + " must be positive");
      (key == "mean_h" ? cfg.mean_h : key == "mean_f" ? cfg.mean_f : cfg.mean_g) = m;
    } else if (key == "atten_grid_db") {
      cfg.atten_grid_db.clear();
      std::string_view rest = value;
      while (true) {
        const std::size_t comma = rest.find(',');
        cfg.atten_grid_db.push_back(
            parse_real(rest.substr(0, comma), line_no, key));
        if (comma == std::string_view::npos) break;
        rest = rest.substr(comma + 1);
      }
    } else if (key == "eps0_pr") {
      cfg.eps0_pr = parse_real(value, line_no, key);
      check(cfg.eps0_pr > 0.0 && cfg.eps0_pr < 1.0, line_no,
            "eps0_pr must lie in (0, 1)");
    } else if (key == "eps0_cr") {
      cfg.eps0_cr = parse_real(value, line_no, key);
      check(cfg.eps0_cr >= 0.0 && cfg.eps0_cr < 1.0, line_no,
            "eps0_cr must lie in [0, 1)");
    } else if (key == "n") {
      cfg.n = parse_count(value, line_no, key);
      check(cfg.n >= 1000, line_no, "n must be at least 1000");
    } else if (key == "seed") {
      cfg.seed = parse_count(value, line_no, key);
    } else if (key == "scenario") {
      cfg.scenario = parse_scenario(value, line_no);
    } else {
      config_fail(line_no, "unknown key '" + key + "'");
    }
  }
  cfg.validate();
  return cfg;
}

ExperimentConfig load_config(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in)
    throw Error(ErrorKind::config_error,
                "config: cannot open '" + path.string() + "'");
  std::ostringstream buffer;
  buffer << in.rdbuf();
  return parse_config(buffer.str());
}

}  // namespace crshare
