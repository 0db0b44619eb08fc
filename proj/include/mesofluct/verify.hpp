#pragma once

#include <cstdint>
#include <functional>
#include <string>
#include <vector>

#include "mesofluct/models.hpp"

namespace mesofluct {

struct CheckResult {
  std::string name;
  bool passed = false;
  double residual = 0.0;
  std::string detail;
};

using GeneratorFormula = std::function<Mat8(const ModelSpec&, const ThermalParams&)>;

struct VerifyOptions {
  bool fast = false;
  std::uint64_t seed = 20240607;
  // closed-form generator used by the oracle comparison; tests swap in a
  // corrupted copy to confirm the check can fail
  GeneratorFormula generator_formula = closed_form::L_matrix;
};

std::vector<CheckResult> run_verification(const VerifyOptions& opts);

}  // namespace mesofluct
