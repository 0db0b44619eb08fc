#pragma once

#include "mesofluct/models.hpp"

namespace mesofluct {

// Largest epsilon accepted by the matrix-exponential pipeline. Above it the
// inverses of sigma and M lose all precision.
inline constexpr double kNumericEpsilonMax = 1.0 - 1e-8;

void require_numeric_regime(const ThermalParams& tp, const char* who);

struct CovarianceState {
  Mat8c G;
  Ordering ordering = Ordering::Tilde;
  double time = 0.0;
};

struct Propagator {
  Mat8c E;  // tilde ordering
  double t = 0.0;
  ModelKind model = ModelKind::Model1;
};

/// (1/2eps) blockdiag(S(r1), S(r3)), S(r) = [[ch,-sh],[-sh,ch]] (+) I2 with
/// ch = cosh 2r, sh = sinh 2r.
CovarianceState squeezed_initial_covariance(const ThermalParams& tp, double r1, double r3);

Propagator propagator(const Mat8& L, const StructuralMatrices& sm, double t,
                      ModelKind model);

/// Hyperbolic closed form of the Model 1 propagator.
Mat8c model1_closed_form_propagator(const Model1Params& p, const ThermalParams& tp,
                                    double t);

/// G(t) = E^+ G0 E + (1/2eps)(I - E^+ E). Throws a numeric error if the
/// result is unphysical beyond roundoff.
CovarianceState evolve_covariance(const CovarianceState& g0, const Propagator& prop,
                                  const ThermalParams& tp);

/// Sigma - e^{tL} Sigma e^{tL^tr}
Mat8 y_matrix(const Mat8& L, const Mat8& Sigma, double t);

/// f_r(t) = -(r, Y_t r)/2
double scalar_exponent(const Vec8& r, const Mat8& L, const Mat8& Sigma, double t);

/// Rows and columns (a1, a1+, a3, a3+) of a tilde-ordered covariance.
Mat4c reduce_modes_13(const CovarianceState& g);

/// Smallest eigenvalue of G_red + diag(1,-1,1,-1)/2.
double check_physicality(const Mat4c& g_red);

/// Same test on the full eight-mode covariance.
double physicality_min_eigenvalue(const CovarianceState& g);

// Real F-ordered covariance <-> tilde ordering.
CovarianceState tilde_from_F(const Mat8& g_f, const StructuralMatrices& sm);
Mat8 F_from_tilde(const CovarianceState& g, const StructuralMatrices& sm);

/// Sigma - e^{tL} Sigma e^{tL^tr} + e^{tL} G e^{tL^tr}
Mat8 evolve_F(const Mat8& g_f, const Mat8& L, const StructuralMatrices& sm, double t);

/// Everything needed to run trajectories for one (model, temperature) pair.
class GaussianModel {
 public:
  GaussianModel(const ModelSpec& spec, const ThermalParams& tp);

  const ModelSpec& spec() const { return spec_; }
  const ThermalParams& thermal() const { return tp_; }
  const StructuralMatrices& structure() const { return sm_; }
  const Mat8& L() const { return L_; }

  Propagator propagator(double t) const;

 private:
  ModelSpec spec_;
  ThermalParams tp_;
  StructuralMatrices sm_;
  Mat8 L_;
  Mat8c left_;   // P^T Sigma3 M^+
  Mat8c right_;  // (M^+)^{-1} Sigma3 P
};

}  // namespace mesofluct
