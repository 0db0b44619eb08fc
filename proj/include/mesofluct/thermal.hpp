#pragma once

#include "mesofluct/linalg.hpp"

namespace mesofluct {

struct ThermalParams {
  double beta = 0.0;  // may be +infinity
  double eta = 1.0;
  double epsilon = 0.0;  // tanh(beta*eta/2)
  double c = 1.0;        // sqrt(1 - epsilon^2)
  bool zero_temperature = false;

  /// T = 1/beta in units with Boltzmann constant 1; 0 at zero temperature.
  double temperature() const;
};

ThermalParams thermal_params(double beta, double eta);
ThermalParams thermal_params_from_temperature(double temperature, double eta);
ThermalParams thermal_params_from_epsilon(double epsilon, double eta);

// Component orderings of the eight bosonic amplitudes.
//   F     : x1..x8
//   A     : a1..a4, a1+..a4+
//   Tilde : a1,a1+, a2,a2+, a3,a3+, a4,a4+
//   V     : a1,a2,a1+,a2+, a3,a4,a3+,a4+
enum class Ordering { F, A, Tilde, V };

const char* ordering_name(Ordering o) noexcept;

struct OrderedMatrix {
  Mat8c value;
  Ordering ordering = Ordering::A;
};

void require_ordering(Ordering have, Ordering want, const char* who);

/// Re-express a sesquilinear-form matrix between the A, Tilde and V orderings.
/// F is not a permutation of the others; see gaussian_dynamics for that map.
Mat8c reorder(const Mat8c& m, Ordering from, Ordering to);
OrderedMatrix reorder(const OrderedMatrix& m, Ordering to);

struct StructuralMatrices {
  double epsilon = 0.0;
  double c = 1.0;
  Mat8c C;          // correlation matrix, F ordering
  Mat8 Sigma;       // covariance
  Mat8 sigma;       // symplectic form
  Mat8 sigma_inv;
  Mat8c M;          // rows: (f_i^dagger, f_i^tr)
  Mat8c M_inv;
  Mat8 P;           // A -> Tilde permutation
  Mat8 Sigma3;      // diag(1,1,1,1,-1,-1,-1,-1)
};

// Closed forms valid on the whole range 0 <= epsilon <= 1.
Mat8c correlation_matrix(double epsilon);
Mat8 covariance_matrix(double epsilon);
Mat8 symplectic_matrix(double epsilon);

/// Requires 0 < epsilon < 1. Both ends are degenerate: sigma^-1 carries
/// 1/epsilon and M^-1 carries 1/c.
StructuralMatrices build_structural_matrices(const ThermalParams& tp);

Vec8c weyl_to_displacement(const Vec8& r, const StructuralMatrices& sm);
Vec8 displacement_to_weyl(const Vec8c& z, const StructuralMatrices& sm);

// exp(-(r, Sigma r)/2)
double thermal_char_function(const Vec8& r, const ThermalParams& tp,
                             const StructuralMatrices& sm);
// exp(-|Z|^2/(4 epsilon)) with Z the displacement of r
double thermal_char_function_displacement(const Vec8& r, const ThermalParams& tp,
                                          const StructuralMatrices& sm);

// The 4x4 symplectic block with rows (0,-1,0,0),(1,0,0,0),(0,0,0,-1),(0,0,1,0).
Eigen::Matrix4d symplectic_block();

}  // namespace mesofluct
