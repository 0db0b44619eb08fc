// Command-line front end. Talks to the library through the C interface only.
#include <cstdio>
#include <map>
#include <memory>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "mesofluct/mesofluct.h"

namespace {

enum Exit { kOk = 0, kVerifyFailed = 1, kConfig = 2, kNumeric = 3 };

int exit_for(mf_status s) {
  switch (s) {
    case MF_OK: return kOk;
    case MF_ERR_CONFIG:
    case MF_ERR_INVALID_ARG: return kConfig;
    default: return kNumeric;
  }
}

int report(mf_status s) {
  std::fprintf(stderr, "mesofluct: %s\n", mf_last_error());
  return exit_for(s);
}

struct ConfigDeleter {
  void operator()(mf_config* c) const { mf_config_destroy(c); }
};
struct TableDeleter {
  void operator()(mf_table* t) const { mf_table_destroy(t); }
};
struct ReportDeleter {
  void operator()(mf_report* r) const { mf_report_destroy(r); }
};
using ConfigPtr = std::unique_ptr<mf_config, ConfigDeleter>;
using TablePtr = std::unique_ptr<mf_table, TableDeleter>;
using ReportPtr = std::unique_ptr<mf_report, ReportDeleter>;

// Settings forwarded verbatim to mf_config_set; the key is the long flag name.
const std::vector<std::pair<std::string, std::string>> kValueOptions = {
    {"model", "Model number (1 or 2)"},
    {"delta", "Model 1 dissipation strength"},
    {"gamma", "Model 1 cross-chain coupling, |gamma| <= delta/2"},
    {"j0", "Model 1 overall rate"},
    {"xi", "Model 2 detuning parameter, >= 0"},
    {"beta", "Inverse temperature"},
    {"eta", "Single-site energy scale"},
    {"r1", "Squeezing of mode 1"},
    {"r3", "Squeezing of mode 3"},
    {"variant", "symmetric, one-mode or custom"},
    {"tmax", "Final time"},
    {"points", "Number of time samples"},
    {"format", "csv or json"},
    {"seed", "Seed for randomized checks"},
    {"r-range", "Squeezing sweep lo:hi:n"},
    {"temp-range", "Temperature sweep lo:hi:n"},
    {"gamma-range", "Gamma sweep lo:hi:n"},
    {"xi-range", "Xi sweep lo:hi:n"},
    {"tol-temp", "Bisection tolerance for the critical temperature"},
};

int write(const mf_table* t, const std::string& path, mf_format format) {
  const mf_status s = mf_table_write(t, path.c_str(), format);
  return s == MF_OK ? kOk : report(s);
}

int run_evolve(const mf_config* cfg, const std::string& out) {
  mf_table* raw = nullptr;
  const mf_status s = mf_evolve(cfg, &raw);
  if (s != MF_OK) return report(s);
  TablePtr table(raw);
  double diff = 0.0;
  if (mf_table_meta(table.get(), "oracle_max_abs_diff", &diff)) {
    std::fprintf(stderr, "oracle max |S - S_closed| = %.3e\n", diff);
  }
  return write(table.get(), out, mf_config_format(cfg));
}

int run_sweep(const mf_config* cfg, const std::string& out, const std::string& tc_out) {
  mf_table* grid = nullptr;
  mf_table* critical = nullptr;
  const mf_status s = mf_sweep(cfg, &grid, tc_out.empty() ? nullptr : &critical);
  if (s != MF_OK) return report(s);
  TablePtr g(grid), c(critical);
  if (const int rc = write(g.get(), out, mf_config_format(cfg)); rc != kOk) return rc;
  return c ? write(c.get(), tc_out, mf_config_format(cfg)) : kOk;
}

int run_verify(const mf_config* cfg) {
  mf_report* raw = nullptr;
  const mf_status s = mf_verify(cfg, &raw);
  if (s != MF_OK) return report(s);
  ReportPtr rep(raw);
  const std::size_t n = mf_report_size(rep.get());
  std::size_t failed = 0;
  for (std::size_t i = 0; i < n; ++i) {
    const bool ok = mf_report_passed(rep.get(), i) != 0;
    if (!ok) ++failed;
    std::printf("%s %s residual=%.3e%s%s\n", ok ? "PASS" : "FAIL", mf_report_name(rep.get(), i),
                mf_report_residual(rep.get(), i), ok ? "" : " ", ok ? "" : mf_report_detail(rep.get(), i));
  }
  std::printf("%zu/%zu checks passed\n", n - failed, n);
  return failed == 0 ? kOk : kVerifyFailed;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Gaussian fluctuation dynamics and entanglement of two open spin chains"};
  app.set_version_flag("--version", std::string(mf_version()));
  app.require_subcommand(1);
  app.set_config("--config", "", "Flat key=value file; command-line flags take precedence");

  std::map<std::string, std::string> values;
  std::map<std::string, CLI::Option*> options;
  for (const auto& [key, help] : kValueOptions) {
    options[key] = app.add_option("--" + key, values[key], help);
  }
  auto* temp = app.add_option("--temp", values["temp"], "Temperature (exclusive with --beta)");
  temp->excludes(options["beta"]);
  options["temp"] = temp;
  bool oracle = false, fast = false;
  auto* oracle_flag = app.add_flag("--oracle", oracle, "Add the closed-form S column (model 1)");
  auto* fast_flag = app.add_flag("--fast", fast, "Run the reduced verification suite");
  std::string out = "-", tc_out;
  app.add_option("--out", out, "Output path, - for stdout");
  app.add_option("--tc-out", tc_out, "Sweep only: write the critical-temperature table here");

  auto* evolve = app.add_subcommand("evolve", "Time trajectory of E, S and the Simon invariants");
  auto* sweep = app.add_subcommand("sweep", "Grid of max E and birth/death times");
  auto* verify = app.add_subcommand("verify", "Run the self-verification suite");
  for (auto* sub : {evolve, sweep, verify}) sub->fallthrough();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);
    return rc == 0 ? kOk : kConfig;
  }

  mf_config* raw = nullptr;
  if (const mf_status s = mf_config_create(&raw); s != MF_OK) return report(s);
  ConfigPtr cfg(raw);
  for (const auto& [key, opt] : options) {
    if (opt->count() == 0) continue;
    if (const mf_status s = mf_config_set(cfg.get(), key.c_str(), values[key].c_str()); s != MF_OK) {
      return report(s);
    }
  }
  if (oracle_flag->count() > 0) mf_config_set(cfg.get(), "oracle", oracle ? "true" : "false");
  if (fast_flag->count() > 0) mf_config_set(cfg.get(), "fast", fast ? "true" : "false");

  if (verify->parsed()) return run_verify(cfg.get());
  if (const mf_status s = mf_config_validate(cfg.get()); s != MF_OK) return report(s);
  if (evolve->parsed()) return run_evolve(cfg.get(), out);
  return run_sweep(cfg.get(), out, tc_out);
}
