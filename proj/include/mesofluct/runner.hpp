#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "mesofluct/entanglement.hpp"
#include "mesofluct/output.hpp"

namespace mesofluct {

/// lo:hi:n, n evenly spaced values; n = 1 gives lo alone.
struct Range {
  double lo = 0.0;
  double hi = 0.0;
  int n = 0;

  static Range parse(const std::string& text);
  std::vector<double> values() const;
};

enum class SqueezeVariant { Symmetric, OneMode, Custom };

struct RunConfig {
  int model = 1;
  double delta = 1.0;
  double gamma = 0.5;
  double J0 = 1.0;
  double xi = 0.0;
  std::optional<double> T;
  std::optional<double> beta;
  double eta = 1.0;
  double r1 = 1.0;
  std::optional<double> r3;  // defaults follow the variant
  std::optional<SqueezeVariant> variant;
  std::optional<double> t_max;  // 20 for model 1, 50 for model 2
  int points = 401;
  bool oracle = false;
  Format format = Format::Csv;
  bool fast = false;
  std::uint64_t seed = 20240607;
  std::optional<Range> r_range;
  std::optional<Range> T_range;
  std::optional<Range> gamma_range;
  std::optional<Range> xi_range;
  double tol_T = 1e-3;
};

/// Sets one field from its textual key (the CLI flag name without dashes).
/// Unknown keys and malformed values raise a parameter error naming the key.
void apply_setting(RunConfig& cfg, const std::string& key, const std::string& value);

/// Checks cross-field constraints and fills dependent defaults.
void validate(RunConfig& cfg);

ModelSpec model_spec(const RunConfig& cfg);
ThermalParams thermal(const RunConfig& cfg);
SqueezeVariant effective_variant(const RunConfig& cfg);
double effective_r3(const RunConfig& cfg);
double effective_t_max(const RunConfig& cfg);

/// Columns t,E,S,I1,I2,I3,I4,lambda_min,f_deficit[,S_closed]. With the oracle
/// column the meta entry "oracle_max_abs_diff" holds max |S - S_closed|.
Table cmd_evolve(const RunConfig& cfg);

struct SweepResult {
  Table grid;
  std::optional<Table> critical;
};

SweepResult cmd_sweep(const RunConfig& cfg, bool with_critical_temperature);

/// Worker count for parallel sweeps: hardware threads, capped by
/// MESOFLUCT_THREADS when set.
unsigned worker_count(std::size_t tasks);

}  // namespace mesofluct
