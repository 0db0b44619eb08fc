#include "mesofluct/verify.hpp"

#include <algorithm>
#include <cmath>
#include <random>
#include <sstream>

#include "mesofluct/entanglement.hpp"

namespace mesofluct {

namespace {

class Suite {
 public:
  explicit Suite(const VerifyOptions& opts) : opts_(opts) {}

  bool fast() const { return opts_.fast; }
  const VerifyOptions& options() const { return opts_; }

  // residual <= tol passes; fn returns the residual
  template <typename Fn>
  void within(const std::string& name, double tol, Fn&& fn) {
    CheckResult r;
    r.name = name;
    try {
      r.residual = fn();
      r.passed = std::isfinite(r.residual) && r.residual <= tol;
      std::ostringstream os;
      os << "residual " << r.residual << " (tolerance " << tol << ")";
      r.detail = os.str();
    } catch (const std::exception& e) {
      r.passed = false;
      r.residual = std::numeric_limits<double>::infinity();
      r.detail = e.what();
    }
    results_.push_back(std::move(r));
  }

  // fn returns true on success and may describe what it saw
  template <typename Fn>
  void holds(const std::string& name, Fn&& fn) {
    CheckResult r;
    r.name = name;
    try {
      std::string detail;
      r.passed = fn(detail);
      r.residual = r.passed ? 0.0 : 1.0;
      r.detail = detail;
    } catch (const std::exception& e) {
      r.passed = false;
      r.residual = std::numeric_limits<double>::infinity();
      r.detail = e.what();
    }
    results_.push_back(std::move(r));
  }

  std::vector<CheckResult> take() { return std::move(results_); }

 private:
  VerifyOptions opts_;
  std::vector<CheckResult> results_;
};

const std::vector<double>& eps_grid() {
  static const std::vector<double> g = {0.1, 0.3, 0.5, 0.7, 0.9, 0.99};
  return g;
}

const std::vector<double> kOracleEps = {0.2, 0.5, 0.9};

template <typename M>
double max_abs(const M& m) {
  return m.cwiseAbs().maxCoeff();
}

Mat2c pauli2(int k) {
  Mat2c m;
  if (k == 1) m << 0.0, 1.0, 1.0, 0.0;
  else if (k == 2) m << 0.0, -I_unit, I_unit, 0.0;
  else if (k == 3) m << 1.0, 0.0, 0.0, -1.0;
  else m = Mat2c::Identity();
  return m;
}

template <typename A, typename B>
ComplexMatrix kron(const A& a, const B& b) {
  ComplexMatrix out(a.rows() * b.rows(), a.cols() * b.cols());
  for (Eigen::Index i = 0; i < a.rows(); ++i)
    for (Eigen::Index j = 0; j < a.cols(); ++j)
      out.block(i * b.rows(), j * b.cols(), b.rows(), b.cols()) = a(i, j) * b;
  return out;
}

std::vector<ModelSpec> model_grid() {
  return {ModelSpec::model1(1.0, 0.5, 1.0), ModelSpec::model1(1.0, 0.2, 0.7),
          ModelSpec::model1(2.0, -0.9, 1.3), ModelSpec::model2(0.0),
          ModelSpec::model2(1.0)};
}

double max_E_over(const ModelSpec& spec, double T, double r1, double r3, double t_max) {
  const EntanglementProbe probe(spec, thermal_params_from_temperature(T, spec.eta), r1, r3);
  return maximize_over_time(probe, t_max).max_E;
}

void structural_checks(Suite& s) {
  s.within("thermal.params", 1e-15, [] {
    double worst = 0.0;
    for (double beta : {0.0, 0.3, 1.0, 10.0, 40.0}) {
      const ThermalParams tp = thermal_params(beta, 1.0);
      worst = std::max(worst, std::abs(tp.c * tp.c + tp.epsilon * tp.epsilon - 1.0));
      worst = std::max(worst, std::abs(tp.epsilon - std::tanh(0.5 * beta)));
    }
    return worst;
  });

  s.within("structural.C_equals_Sigma_plus_sigma", 1e-15, [] {
    double worst = 0.0;
    for (double e : eps_grid()) {
      const StructuralMatrices sm = build_structural_matrices(thermal_params_from_epsilon(e, 1.0));
      worst = std::max(worst, max_abs(sm.C - (sm.Sigma.cast<cplx>() + 0.5 * I_unit * sm.sigma.cast<cplx>())));
      worst = std::max(worst, max_abs(sm.sigma + sm.sigma.transpose()));
    }
    return worst;
  });

  s.within("structural.inverses", 1e-12, [] {
    double worst = 0.0;
    for (double e : eps_grid()) {
      const StructuralMatrices sm = build_structural_matrices(thermal_params_from_epsilon(e, 1.0));
      worst = std::max(worst, max_abs(sm.M * sm.M_inv - Mat8c::Identity()));
      worst = std::max(worst, max_abs(sm.P * sm.P.transpose() - Mat8::Identity()));
      worst = std::max(worst, max_abs(sm.sigma * sm.sigma_inv - Mat8::Identity()));
    }
    return worst;
  });

  s.within("structural.tensor_product_forms", 1e-15, [] {
    double worst = 0.0;
    const Mat2c id = Mat2c::Identity();
    for (double e : eps_grid()) {
      const StructuralMatrices sm = build_structural_matrices(thermal_params_from_epsilon(e, 1.0));
      const Mat2c a = id - e * pauli2(1);
      const ComplexMatrix c = kron(kron(a, id), id + e * pauli2(2));
      const ComplexMatrix sig = -2.0 * I_unit * e * kron(kron(a, id), pauli2(2));
      const ComplexMatrix cov = kron(kron(a, id), id);
      worst = std::max(worst, max_abs(c - ComplexMatrix(sm.C)));
      worst = std::max(worst, max_abs(sig - ComplexMatrix(sm.sigma.cast<cplx>())));
      worst = std::max(worst, max_abs(cov - ComplexMatrix(sm.Sigma.cast<cplx>())));
    }
    return worst;
  });

  s.within("structural.mode_vector_commutators", 1e-12, [] {
    double worst = 0.0;
    for (double e : eps_grid()) {
      const StructuralMatrices sm = build_structural_matrices(thermal_params_from_epsilon(e, 1.0));
      const Eigen::Matrix<cplx, 8, 4> f = sm.M.rightCols<4>();
      const Mat8c gram = f.conjugate() * f.transpose();
      worst = std::max(worst, max_abs(2.0 * gram.imag() - sm.sigma));
      worst = std::max(worst, max_abs(gram.real() - e * sm.Sigma));
    }
    return worst;
  });

  s.within("structural.state_positivity", 1e-12, [] {
    double worst = 0.0;
    for (double e : eps_grid()) {
      const StructuralMatrices sm = build_structural_matrices(thermal_params_from_epsilon(e, 1.0));
      const Mat8c m = sm.Sigma.cast<cplx>() - 0.5 * I_unit * sm.sigma.cast<cplx>();
      worst = std::max(worst, -linalg::min_eigenvalue(m));
    }
    return std::max(worst, 0.0);
  });

  s.within("thermal.char_function_forms", 1e-12, [&s] {
    std::mt19937_64 rng(s.options().seed);
    std::normal_distribution<double> normal(0.0, 1.0);
    double worst = 0.0;
    for (int k = 0; k < 100; ++k) {
      const double e = 0.05 + 0.9 * std::uniform_real_distribution<double>(0.0, 1.0)(rng);
      const ThermalParams tp = thermal_params_from_epsilon(e, 1.0);
      const StructuralMatrices sm = build_structural_matrices(tp);
      Vec8 r;
      for (int i = 0; i < 8; ++i) r(i) = normal(rng);
      worst = std::max(worst, std::abs(thermal_char_function(r, tp, sm) -
                                       thermal_char_function_displacement(r, tp, sm)));
    }
    return worst;
  });

  s.within("thermal.weyl_round_trip", 1e-12, [&s] {
    std::mt19937_64 rng(s.options().seed + 1);
    std::normal_distribution<double> normal(0.0, 1.0);
    double worst = 0.0;
    for (double e : eps_grid()) {
      const StructuralMatrices sm = build_structural_matrices(thermal_params_from_epsilon(e, 1.0));
      Vec8 r;
      for (int i = 0; i < 8; ++i) r(i) = normal(rng);
      const Vec8c z = weyl_to_displacement(r, sm);
      worst = std::max(worst, (displacement_to_weyl(z, sm) - r).cwiseAbs().maxCoeff());
      worst = std::max(worst, max_abs(z.tail<4>() - z.head<4>().conjugate()));
    }
    return worst;
  });
}

void site_checks(Suite& s) {
  s.within("site.operator_invariants", 1e-14, [] {
    double worst = 0.0;
    for (double e : {0.0, 0.3, 0.5, 0.9, 1.0}) {
      const ThermalParams tp = thermal_params_from_epsilon(e, 1.0);
      const SiteOperators ops = build_site_operators(tp, ModelSpec::model1(1.0, 0.5, 1.0));
      for (const Mat4c& x : ops.x) {
        worst = std::max(worst, max_abs(x - x.adjoint()));
        worst = std::max(worst, std::abs(x.trace()));
        worst = std::max(worst, std::abs((ops.rho_beta * x).trace()));
      }
      worst = std::max(worst, std::abs(ops.rho_beta.trace() - 1.0));
      const ComplexMatrix s33 = kron(pauli2(3), pauli2(3));
      const ComplexMatrix s30 = kron(pauli2(3), pauli2(0));
      worst = std::max(worst, std::abs((ops.rho_beta * s33).trace() - e * e));
      worst = std::max(worst, std::abs((ops.rho_beta * s30).trace() + e));
      worst = std::max(worst, std::max(0.0, -linalg::min_eigenvalue(ops.rho_beta)));
    }
    return worst;
  });

  s.within("site.correlation_matrix", 1e-13, [] {
    double worst = 0.0;
    for (double e : {0.0, 0.2, 0.5, 0.9, 1.0}) {
      const ThermalParams tp = thermal_params_from_epsilon(e, 1.0);
      worst = std::max(worst, correlation_matrix_check(
                                  build_site_operators(tp, ModelSpec::model2(0.5)), tp));
    }
    return worst;
  });
}

void generator_checks(Suite& s) {
  for (ModelKind kind : {ModelKind::Model1, ModelKind::Model2}) {
    const std::string tag = kind == ModelKind::Model1 ? "model1" : "model2";
    const std::vector<ModelSpec> specs =
        kind == ModelKind::Model1
            ? std::vector<ModelSpec>{ModelSpec::model1(1.0, 0.5, 1.0), ModelSpec::model1(1.5, -0.3, 0.8)}
            : std::vector<ModelSpec>{ModelSpec::model2(0.0), ModelSpec::model2(1.0)};

    s.within(tag + ".span_stability", 1e-12, [&] {
      double worst = 0.0;
      for (const ModelSpec& spec : specs)
        for (double e : kOracleEps) {
          const GeneratorProjection p =
              project_generator(build_site_operators(thermal_params_from_epsilon(e, spec.eta), spec));
          worst = std::max({worst, p.residual, p.imaginary});
        }
      return worst;
    });

    s.within(tag + ".generator_matches_closed_form", 1e-12, [&] {
      double worst = 0.0;
      for (const ModelSpec& spec : specs)
        for (double e : kOracleEps) {
          const ThermalParams tp = thermal_params_from_epsilon(e, spec.eta);
          const Mat8 derived = derive_L_matrix(build_site_operators(tp, spec));
          worst = std::max(worst, max_abs(derived - s.options().generator_formula(spec, tp)));
        }
      return worst;
    });

    s.within(tag + ".thermal_state_invariance", 1e-13, [&] {
      double worst = 0.0;
      for (const ModelSpec& spec : specs)
        for (double e : eps_grid()) {
          const SiteOperators ops = build_site_operators(thermal_params_from_epsilon(e, spec.eta), spec);
          worst = std::max(worst, max_abs(dual_lindblad_action_site(ops, ops.rho_beta)));
          worst = std::max(worst, max_abs(lindblad_action_site(ops, Mat4c::Identity())));
        }
      return worst;
    });
  }

  if (s.fast()) return;

  s.within("model1.hamiltonian_matrices", 1e-12, [] {
    double worst = 0.0;
    for (const ModelSpec& spec : {ModelSpec::model1(1.0, 0.5, 1.0), ModelSpec::model2(0.5)})
      for (double e : kOracleEps) {
        const ThermalParams tp = thermal_params_from_epsilon(e, spec.eta);
        const StructuralMatrices sm = build_structural_matrices(tp);
        const MesoscopicGenerator g =
            mesoscopic_generator_matrices(derive_L_matrix(build_site_operators(tp, spec)), sm);
        const double scale = 1.0 + max_abs(g.H1.value);
        worst = std::max(worst, max_abs(g.H1.value - closed_form::H1(spec, tp)) / scale);
        worst = std::max(worst, max_abs(g.H2.value - closed_form::H2(spec, tp)) / scale);
      }
    return worst;
  });

  s.within("model1.kossakowski_matrices", 1e-12, [] {
    double worst = 0.0;
    for (const ModelSpec& spec : {ModelSpec::model1(1.0, 0.5, 1.0), ModelSpec::model1(0.8, -0.25, 1.7)})
      for (double e : kOracleEps) {
        const ThermalParams tp = thermal_params_from_epsilon(e, spec.eta);
        const MesoscopicGenerator g = mesoscopic_generator_matrices(
            derive_L_matrix(build_site_operators(tp, spec)), build_structural_matrices(tp));
        const double scale = 1.0 + max_abs(g.D1.value);
        worst = std::max(worst, max_abs(g.D1.value - closed_form::D1_model1(spec, tp)) / scale);
        worst = std::max(worst, max_abs(g.D2.value - closed_form::D2(spec, tp)) / scale);
        worst = std::max(worst, max_abs(g.K_beta.value - closed_form::K_beta(spec, tp)) / scale);
      }
    return worst;
  });

  s.within("model2.kossakowski_matrices", 1e-12, [] {
    double worst = 0.0;
    for (double xi : {0.0, 1.0, 2.5})
      for (double e : kOracleEps) {
        const ModelSpec spec = ModelSpec::model2(xi);
        const ThermalParams tp = thermal_params_from_epsilon(e, spec.eta);
        const MesoscopicGenerator g = mesoscopic_generator_matrices(
            derive_L_matrix(build_site_operators(tp, spec)), build_structural_matrices(tp));
        const double scale = 1.0 + max_abs(g.D2.value);
        worst = std::max(worst, max_abs(g.D2.value - closed_form::D2(spec, tp)) / scale);
        worst = std::max(worst, max_abs(g.K_beta.value - closed_form::K_beta(spec, tp)) / scale);
      }
    return worst;
  });

  s.within("psd.kossakowski_matrices", 1e-10, [] {
    double worst = 0.0;
    for (const ModelSpec& spec : model_grid())
      for (double e : eps_grid()) {
        const ThermalParams tp = thermal_params_from_epsilon(e, spec.eta);
        worst = std::max(worst, -linalg::min_eigenvalue(microscopic_kossakowski(spec, tp)));
        const MesoscopicGenerator g = mesoscopic_generator_matrices(
            derive_L_matrix(build_site_operators(tp, spec)), build_structural_matrices(tp));
        worst = std::max(worst, -g.d1_min_eigenvalue / (1.0 + max_abs(g.D1.value)));
        worst = std::max(worst, -linalg::min_eigenvalue(g.K_beta.value));
      }
    return std::max(worst, 0.0);
  });
}

void dynamics_checks(Suite& s) {
  s.within("propagator.model1_closed_form", 1e-10, [&s] {
    double worst = 0.0;
    const std::vector<double> eps = s.fast() ? std::vector<double>{0.5, 0.9}
                                             : std::vector<double>{0.5, 0.8, 0.9, 0.99};
    for (double e : eps)
      for (double g : {0.1, 0.3, 0.5}) {
        const ModelSpec spec = ModelSpec::model1(1.0, g, 1.0);
        const ThermalParams tp = thermal_params_from_epsilon(e, 1.0);
        const GaussianModel model(spec, tp);
        for (int k = 0; k < 64; k += s.fast() ? 8 : 1) {
          const double t = 5.0 * k / 63.0;
          worst = std::max(worst, max_abs(model.propagator(t).E -
                                          model1_closed_form_propagator(spec.m1, tp, t)));
        }
      }
    return worst;
  });

  if (!s.fast()) {
    s.within("propagator.semigroup_and_contraction", 1e-10, [] {
      double worst = 0.0;
      for (const ModelSpec& spec : model_grid()) {
        const GaussianModel model(spec, thermal_params_from_epsilon(0.7, spec.eta));
        for (double a : {0.3, 1.1})
          for (double b : {0.2, 2.5}) {
            const Mat8c lhs = model.propagator(a + b).E;
            const Mat8c rhs = model.propagator(a).E * model.propagator(b).E;
            worst = std::max(worst, max_abs(lhs - rhs));
            worst = std::max(worst, linalg::spectral_norm(lhs) - 1.0);
          }
      }
      return std::max(worst, 0.0);
    });

    s.within("dynamics.F_and_tilde_evolution_agree", 1e-10, [] {
      double worst = 0.0;
      for (const ModelSpec& spec : model_grid()) {
        const ThermalParams tp = thermal_params_from_epsilon(0.6, spec.eta);
        const GaussianModel model(spec, tp);
        const CovarianceState g0 = squeezed_initial_covariance(tp, 0.7, 0.2);
        const Mat8 gf0 = F_from_tilde(g0, model.structure());
        for (double t : {0.4, 1.7}) {
          const CovarianceState direct = evolve_covariance(g0, model.propagator(t), tp);
          const CovarianceState via_f =
              tilde_from_F(evolve_F(gf0, model.L(), model.structure(), t), model.structure());
          worst = std::max(worst, max_abs(direct.G - via_f.G) / (1.0 + max_abs(direct.G)));
        }
      }
      return worst;
    });
  }

  s.within("dynamics.thermal_stationarity", 1e-12, [] {
    double worst = 0.0;
    for (const ModelSpec& spec : model_grid())
      for (double e : {0.3, 0.9}) {
        const ThermalParams tp = thermal_params_from_epsilon(e, spec.eta);
        const GaussianModel model(spec, tp);
        const CovarianceState g0 = squeezed_initial_covariance(tp, 0.0, 0.0);
        for (double t : {0.1, 1.0, 10.0})
          worst = std::max(worst, max_abs(evolve_covariance(g0, model.propagator(t), tp).G - g0.G));
      }
    return worst;
  });

  if (s.fast()) return;

  s.within("dynamics.noise_matrix_psd", 1e-10, [] {
    double worst = 0.0;
    for (const ModelSpec& spec : model_grid()) {
      const GaussianModel model(spec, thermal_params_from_epsilon(0.8, spec.eta));
      for (int k = 0; k <= 40; ++k) {
        const double t = 0.5 * k;
        worst = std::max(worst, -linalg::min_eigenvalue(
                                    y_matrix(model.L(), model.structure().Sigma, t).cast<cplx>()));
      }
    }
    return std::max(worst, 0.0);
  });

  s.within("dynamics.physicality_along_trajectories", 1e-9, [] {
    double worst = 0.0;
    for (const ModelSpec& spec : model_grid()) {
      const ThermalParams tp = thermal_params_from_epsilon(0.9, spec.eta);
      const GaussianModel model(spec, tp);
      const CovarianceState g0 = squeezed_initial_covariance(tp, 1.0, 0.5);
      for (int k = 0; k <= 40; ++k)
        worst = std::max(worst, -physicality_min_eigenvalue(
                                    evolve_covariance(g0, model.propagator(0.5 * k), tp)));
    }
    return std::max(worst, 0.0);
  });

  for (const bool spectrum : {false, true}) {
    const std::string name = spectrum ? "dynamics.asymptotic_lambda_min" : "dynamics.asymptotic_covariance";
    s.within(name, spectrum ? 1e-6 : 1e-8, [spectrum] {
      double worst = 0.0;
      for (double e : {0.5, 0.9}) {
        const ModelSpec spec = ModelSpec::model1(1.0, 0.5, 1.0);
        const ThermalParams tp = thermal_params_from_epsilon(e, 1.0);
        const EntanglementProbe probe(spec, tp, 1.0, 1.0);
        const double t_star = 50.0 / (spec.m1.delta * spec.m1.J0);
        const Mat4c red = reduce_modes_13(probe.covariance(t_star));
        worst = std::max(worst, spectrum ? std::abs(check_physicality(red) - (1.0 - e) / (2.0 * e))
                                         : max_abs(red - Mat4c::Identity() / (2.0 * e)));
      }
      return worst;
    });
  }
}

void entanglement_checks(Suite& s) {
  s.within("simon.thermal_and_two_mode_squeezed", 1e-12, [] {
    const double e = 0.8;
    const SimonInvariants th = simon_invariants(Mat4c::Identity() / (2.0 * e));
    double worst = std::abs(th.I1 - 0.390625) + std::abs(th.S - std::pow(1 - e * e, 2) / (16 * std::pow(e, 4))) + th.E;
    const double r = 1.0, ch = std::cosh(2 * r) / 2, sh = std::sinh(2 * r) / 2;
    Mat4c tmsv = Mat4c::Zero();
    tmsv.diagonal().setConstant(ch);
    tmsv(0, 3) = tmsv(3, 0) = tmsv(1, 2) = tmsv(2, 1) = -sh;
    worst = std::max(worst, std::abs(simon_invariants(tmsv).E - 2 * r / std::log(2.0)));
    return worst;
  });

  s.within("closed_form.S_agreement", 1e-9, [&s] {
    double worst = 0.0;
    const std::vector<double> eps = s.fast() ? std::vector<double>{0.5, 0.9}
                                             : std::vector<double>{0.5, 0.8, 0.9, 0.99};
    const std::vector<double> rs = s.fast() ? std::vector<double>{1.0} : std::vector<double>{0.5, 1.0, 2.0};
    std::vector<double> grid;
    for (int k = 0; k < 64; ++k) grid.push_back(5.0 * k / 63.0);
    for (double e : eps)
      for (double g : {0.1, 0.3, 0.5})
        for (double r : rs)
          for (Variant v : {Variant::Symmetric, Variant::OneMode}) {
            const ClosedFormContext ctx{thermal_params_from_epsilon(e, 1.0), {1.0, g, 1.0}, r, v};
            worst = std::max(worst, numeric_vs_closed_form(ctx, grid));
          }
    return worst;
  });

  s.within("closed_form.short_time_limit", 1e-10, [] {
    double worst = 0.0;
    for (double e : {0.5, 0.8, 0.99, 1.0})
      for (Variant v : {Variant::Symmetric, Variant::OneMode}) {
        const ClosedFormContext ctx{thermal_params_from_epsilon(e, 1.0), {1.0, 0.5, 1.0}, 1.3, v};
        const double limit = std::pow(1 - e * e, 2) / (16 * std::pow(e, 4));
        worst = std::max({worst, std::abs(closed_form_S(ctx, 0.0) - limit), std::abs(closed_form_S(ctx, 1e-14) - limit)});
      }
    return worst;
  });

  s.within("closed_form.zero_temperature_form", 1e-12, [] {
    double worst = 0.0;
    for (double r : {0.3, 1.0, 2.0})
      for (double g : {0.1, 0.5})
        for (double t : {0.05, 0.5, 2.0}) {
          const ClosedFormContext ctx{thermal_params_from_epsilon(1.0, 1.0), {1.0, g, 1.0}, r,
                                      Variant::Symmetric};
          const double a = closed_form_S(ctx, t), b = closed_form_S_T0(r, g, t);
          worst = std::max(worst, std::abs(a - b) / (1.0 + std::abs(b)));
        }
    return worst;
  });

  s.within("zero_T.second_derivative", 1e-4, [] {
    double worst = 0.0;
    for (double r : {0.5, 1.0, 2.0})
      for (double g : {0.1, 0.3, 0.5}) {
        const SecondDerivative d = second_derivative_check_T0(r, g);
        worst = std::max(worst, std::abs(d.numeric - d.analytic) / std::abs(d.analytic));
      }
    return worst;
  });

  s.holds("zero_T.sudden_birth_boundary", [](std::string& detail) {
    for (double g : {0.2, 0.35, 0.5}) {
      const double r_star = std::asinh(std::sqrt(g * g / (1 - g * g)));
      for (double f : {0.6, 0.9, 1.1, 1.6}) {
        const double r = f * r_star;
        double lowest = 0.0;
        for (double t = 1e-4; t <= 2e-2; t *= 1.2) lowest = std::min(lowest, closed_form_S_T0(r, g, t));
        if ((lowest < 0.0) != sudden_birth_condition_T0(r, g)) {
          std::ostringstream os;
          os << "mismatch at r=" << r << ", gamma=" << g;
          detail = os.str();
          return false;
        }
      }
    }
    detail = "boundary reproduced on 12 points";
    return true;
  });

  if (s.fast()) return;

  s.holds("entanglement.criterion_coherence", [](std::string& detail) {
    int checked = 0;
    for (const ModelSpec& spec : {ModelSpec::model1(1.0, 0.5, 1.0), ModelSpec::model2(0.0)})
      for (double T : {0.1, 0.2}) {
        const EntanglementProbe probe(spec, thermal_params_from_temperature(T, 1.0), 1.0, 1.0);
        for (int k = 1; k <= 80; ++k) {
          const SimonInvariants inv = probe.invariants(0.25 * k);
          ++checked;
          if (std::abs(inv.S) > 1e-12 && (inv.S < 0.0) != is_entangled(inv)) {
            detail = "S and E disagree at t=" + std::to_string(0.25 * k);
            return false;
          }
        }
      }
    detail = std::to_string(checked) + " samples";
    return true;
  });

  s.holds("entanglement.finite_temperature_sudden_death", [](std::string& detail) {
    const ModelSpec spec = ModelSpec::model1(1.0, 0.5, 1.0);
    const EntanglementProbe probe(spec, thermal_params_from_temperature(0.1, 1.0), 1.0, 1.0);
    std::vector<double> ts, E;
    for (int k = 0; k < 400; ++k) {
      ts.push_back(20.0 * k / 399.0);
      E.push_back(probe.invariants(ts.back()).E);
    }
    const BirthDeath bd = detect_birth_death(ts, E, [&](double t) { return probe.invariants(t).S; }, 1e-8);
    std::ostringstream os;
    if (bd.t_birth) os << "birth " << *bd.t_birth << " ";
    if (bd.t_death) os << "death " << *bd.t_death;
    detail = os.str();
    return bd.t_birth && bd.t_death && *bd.t_birth > 0.0 && *bd.t_death > *bd.t_birth;
  });

  s.holds("trends.gamma_and_temperature_monotone", [](std::string& detail) {
    std::vector<double> by_gamma, by_T;
    for (double g : {0.1, 0.2, 0.3, 0.4, 0.5})
      by_gamma.push_back(max_E_over(ModelSpec::model1(1.0, g, 1.0), 0.1, 1.0, 1.0, 20.0));
    for (double T : {0.05, 0.1, 0.2, 0.4})
      by_T.push_back(max_E_over(ModelSpec::model1(1.0, 0.5, 1.0), T, 1.0, 1.0, 20.0));
    const bool up = std::is_sorted(by_gamma.begin(), by_gamma.end());
    const bool down = std::is_sorted(by_T.rbegin(), by_T.rend());
    std::ostringstream os;
    os << "max E by gamma: ";
    for (double v : by_gamma) os << v << ' ';
    os << "| by T: ";
    for (double v : by_T) os << v << ' ';
    detail = os.str();
    return up && down && by_gamma.back() > 0.0;
  });

  s.holds("trends.squeezing_interior_maximum", [](std::string& detail) {
    std::vector<double> v;
    for (double r : {0.25, 0.5, 1.0, 2.0, 4.0})
      v.push_back(max_E_over(ModelSpec::model1(1.0, 0.5, 1.0), 0.1, r, r, 20.0));
    const auto it = std::max_element(v.begin(), v.end());
    std::ostringstream os;
    for (double x : v) os << x << ' ';
    detail = os.str();
    return it != v.begin() && it != v.end() - 1;
  });
}

}  // namespace

std::vector<CheckResult> run_verification(const VerifyOptions& opts) {
  Suite s(opts);
  structural_checks(s);
  site_checks(s);
  generator_checks(s);
  dynamics_checks(s);
  entanglement_checks(s);
  return s.take();
}

}  // namespace mesofluct
