#pragma once

#include <functional>
#include <optional>
#include <vector>

#include "mesofluct/dynamics.hpp"

namespace mesofluct {

struct SimonInvariants {
  double I1 = 0.0;
  double I2 = 0.0;
  double I3 = 0.0;
  double I4 = 0.0;
  double S = 0.0;
  double script_I = 0.0;
  double E = 0.0;  // logarithmic negativity
};

/// Blocks of G_red: Sigma1 top-left, Sigma2 bottom-right, Sigma_c top-right.
SimonInvariants simon_invariants(const Mat4c& g_red);

// E above this counts as entangled; below it is roundoff around E = 0.
inline constexpr double kEntanglementFloor = 1e-12;

inline bool is_entangled(const SimonInvariants& s) { return s.E > kEntanglementFloor; }

enum class Variant { Symmetric, OneMode };

const char* variant_name(Variant v) noexcept;

struct ClosedFormContext {
  ThermalParams tp;
  Model1Params p;
  double r = 0.0;
  Variant variant = Variant::Symmetric;
};

struct YFunctions {
  double y1 = 0.0;
  double y2 = 0.0;
  double y3 = 0.0;
  double y_eps = 0.0;
};

YFunctions y_functions(const ClosedFormContext& ctx, double t);

/// Model 1 separability indicator for symmetric (r1 = r3 = r) or one-mode
/// (r1 = r, r3 = 0) squeezing. Valid for 0 < epsilon <= 1.
double closed_form_S(const ClosedFormContext& ctx, double t);

/// Symmetric squeezing at zero temperature with delta = J0 = eta = 1.
double closed_form_S_T0(double r, double gamma, double t);

/// Runs the full matrix-exponential pipeline on every grid point and returns
/// max |S_numeric - S_closed|. Throws a pipeline-defect error above 1e-6.
double numeric_vs_closed_form(const ClosedFormContext& ctx, const std::vector<double>& t_grid);

/// Immediate entanglement at T = 0 for symmetric squeezing.
bool sudden_birth_condition_T0(double r, double gamma);

struct SecondDerivative {
  double analytic = 0.0;
  double numeric = 0.0;
};

SecondDerivative second_derivative_check_T0(double r, double gamma);

struct EntanglementSample {
  double t = 0.0;
  SimonInvariants inv;
  double lambda_min = 0.0;
};

/// Evaluates the two-mode entanglement of modes 1 and 3 along the evolution of
/// a squeezed thermal state. Model 1 switches to the hyperbolic propagator when
/// epsilon is beyond the matrix-exponential range, so T = 0 is reachable.
class EntanglementProbe {
 public:
  EntanglementProbe(const ModelSpec& spec, const ThermalParams& tp, double r1, double r3);

  EntanglementSample at(double t) const;
  SimonInvariants invariants(double t) const;
  CovarianceState covariance(double t) const;

  bool closed_form_propagator() const { return !model_.has_value(); }
  const ThermalParams& thermal() const { return tp_; }
  const ModelSpec& spec() const { return spec_; }

 private:
  Propagator propagate(double t) const;

  ModelSpec spec_;
  ThermalParams tp_;
  std::optional<GaussianModel> model_;
  CovarianceState g0_;
};

struct BirthDeath {
  std::optional<double> t_birth;
  std::optional<double> t_death;
};

/// Locates the first onset and the last disappearance of entanglement on a
/// sampled trajectory, then bisects S(t) inside the bracketing cell.
BirthDeath detect_birth_death(const std::vector<double>& t, const std::vector<double>& E,
                              const std::function<double(double)>& S_of_t,
                              double refine_tol);

struct TimeMaximum {
  double max_E = 0.0;
  double t_at_max = 0.0;
  double min_S = 0.0;
};

/// max_t E on 512 log-spaced points in [1e-3, t_max], refined by a Brent
/// search on S around the best grid point.
TimeMaximum maximize_over_time(const EntanglementProbe& probe, double t_max);

/// Default time horizon for the inner maximisation.
double default_t_max(ModelKind kind);

struct CriticalTemperatureRequest {
  ModelSpec spec;
  double r = 1.0;
  Variant variant = Variant::Symmetric;
  double T_lo = 0.01;
  double T_hi = 1.0;
  double t_max = 20.0;
  double tol_T = 1e-4;
};

double critical_temperature(const CriticalTemperatureRequest& req);

/// Indicator max_t E > 0 at temperature T.
bool entangled_at_temperature(const ModelSpec& spec, double r, Variant variant,
                              double T, double t_max);

}  // namespace mesofluct
