#pragma once

#include <array>
#include <vector>

#include "mesofluct/thermal.hpp"

namespace mesofluct {

enum class ModelKind { Model1, Model2 };

struct Model1Params {
  double delta = 1.0;
  double gamma = 0.5;  // |gamma| <= delta/2
  double J0 = 1.0;
};

struct Model2Params {
  double xi = 0.0;
};

struct ModelSpec {
  ModelKind kind = ModelKind::Model1;
  Model1Params m1;
  Model2Params m2;
  double eta = 1.0;

  static ModelSpec model1(double delta, double gamma, double J0, double eta = 1.0);
  static ModelSpec model2(double xi, double eta = 1.0);

  /// Throws a positivity error when the microscopic Kossakowski matrix
  /// would not be positive semidefinite.
  void validate() const;
};

struct SiteOperators {
  std::array<Mat4c, 8> x;
  std::vector<Mat4c> kraus;  // 4 for Model 1, 6 for Model 2
  std::array<Mat4c, 3> w;    // sigma_mu x 1 + 1 x sigma_mu
  Mat4c h;                   // (eta/2)(sigma3 x 1 + 1 x sigma3)
  Mat4c rho_beta;
  ComplexMatrix kossakowski;
  ModelSpec spec;
  ThermalParams tp;
};

SiteOperators build_site_operators(const ThermalParams& tp, const ModelSpec& spec);

ComplexMatrix microscopic_kossakowski(const ModelSpec& spec, const ThermalParams& tp);

/// Heisenberg-picture single-site generator.
Mat4c lindblad_action_site(const SiteOperators& ops, const Mat4c& x);

/// Its trace dual, acting on density matrices.
Mat4c dual_lindblad_action_site(const SiteOperators& ops, const Mat4c& rho);

struct GeneratorProjection {
  Mat8 L;
  double residual = 0.0;   // max over i of |L[x_i] - sum_j L_ij x_j|
  double imaginary = 0.0;  // max |Im L_ij|
};

GeneratorProjection project_generator(const SiteOperators& ops);

/// Projected generator; a residual above 1e-12 (relative) is a span-stability
/// violation.
Mat8 derive_L_matrix(const SiteOperators& ops);

struct MesoscopicGenerator {
  OrderedMatrix H1;  // F
  OrderedMatrix D1;  // F
  OrderedMatrix H2;  // A
  OrderedMatrix D2;  // A
  OrderedMatrix K_beta;  // V
  double d1_min_eigenvalue = 0.0;
};

MesoscopicGenerator mesoscopic_generator_matrices(const Mat8& L,
                                                  const StructuralMatrices& sm);

/// max_ij |Tr(rho x_i x_j) - C_ij|
double correlation_matrix_check(const SiteOperators& ops, const ThermalParams& tp);

// Hand-written closed forms of the generator matrices, kept independent of
// the site-algebra derivation so each can check the other. Some signs here
// were fixed against that derivation (notes in README).
namespace closed_form {

Mat8 L_matrix(const ModelSpec& spec, const ThermalParams& tp);
Mat8c H1(const ModelSpec& spec, const ThermalParams& tp);
Mat8c H2(const ModelSpec& spec, const ThermalParams& tp);
Mat8c D1_model1(const ModelSpec& spec, const ThermalParams& tp);
Mat8c D2(const ModelSpec& spec, const ThermalParams& tp);
Mat8c K_beta(const ModelSpec& spec, const ThermalParams& tp);

}  // namespace closed_form

}  // namespace mesofluct
