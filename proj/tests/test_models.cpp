#include "doctest.h"
#include "oracles.hpp"

#include "mesofluct/models.hpp"
#include "mesofluct/verify.hpp"

using namespace mesofluct;

namespace {

std::vector<ModelSpec> sample_models() {
  return {ModelSpec::model1(1.0, 0.5, 1.0), ModelSpec::model1(1.3, -0.2, 0.7),
          ModelSpec::model1(1.0, 0.0, 1.0), ModelSpec::model2(0.0), ModelSpec::model2(0.8)};
}

}  // namespace

TEST_CASE("site state is the Gibbs state of the site Hamiltonian") {
  for (double beta : {0.3, 1.0, 4.0}) {
    const ThermalParams tp = thermal_params(beta, 1.0);
    const SiteOperators ops = build_site_operators(tp, ModelSpec::model1(1.0, 0.5, 1.0));
    CHECK(oracle::max_abs(ops.rho_beta - oracle::gibbs_state(beta, 1.0)) <= 1e-14);
    const auto x = oracle::site_operators();
    for (int i = 0; i < 8; ++i) CHECK(oracle::max_abs(ops.x[i] - x[i]) == 0.0);
  }
}

TEST_CASE("model parameter bounds") {
  CHECK_NOTHROW(ModelSpec::model1(1.0, 0.5, 1.0).validate());
  CHECK_THROWS_AS(ModelSpec::model1(1.0, 0.51, 1.0).validate(), Error);
  CHECK_THROWS_AS(ModelSpec::model2(-0.1).validate(), Error);
}

TEST_CASE("generator derived from the site algebra matches the closed forms") {
  for (const ModelSpec& spec : sample_models()) {
    for (double e : {0.2, 0.5, 0.9}) {
      const ThermalParams tp = thermal_params_from_epsilon(e, 1.0);
      const SiteOperators ops = build_site_operators(tp, spec);
      const GeneratorProjection proj = project_generator(ops);
      CHECK(proj.residual <= 1e-12);
      CHECK(proj.imaginary <= 1e-12);
      const Mat8 diff = derive_L_matrix(ops) - closed_form::L_matrix(spec, tp);
      CHECK(diff.cwiseAbs().maxCoeff() <= 1e-12);
    }
  }
}

TEST_CASE("the thermal state is stationary under the dual generator") {
  for (const ModelSpec& spec : sample_models()) {
    for (double e : {0.2, 0.5, 0.9}) {
      const ThermalParams tp = thermal_params_from_epsilon(e, 1.0);
      const SiteOperators ops = build_site_operators(tp, spec);
      CHECK(oracle::max_abs(dual_lindblad_action_site(ops, ops.rho_beta)) <= 1e-13);
      // adding coherences breaks stationarity, so the check has teeth
      const Mat4c other = ops.rho_beta + 0.1 * oracle::site_operators()[0];
      CHECK(oracle::max_abs(dual_lindblad_action_site(ops, other)) > 1e-2);
    }
  }
}

TEST_CASE("dual action is the trace adjoint of the Heisenberg action") {
  std::mt19937_64 rng(5);
  std::normal_distribution<double> g;
  auto random4 = [&] {
    Mat4c m;
    for (int i = 0; i < 4; ++i)
      for (int j = 0; j < 4; ++j) m(i, j) = cplx(g(rng), g(rng));
    return m;
  };
  for (const ModelSpec& spec : sample_models()) {
    const SiteOperators ops = build_site_operators(thermal_params_from_epsilon(0.6, 1.0), spec);
    for (int k = 0; k < 10; ++k) {
      const Mat4c rho = random4(), x = random4();
      const cplx lhs = (dual_lindblad_action_site(ops, rho) * x).trace();
      const cplx rhs = (rho * lindblad_action_site(ops, x)).trace();
      CHECK(std::abs(lhs - rhs) <= 1e-11 * (1.0 + std::abs(lhs)));
    }
  }
}

TEST_CASE("Kossakowski matrices are positive semidefinite across admissible parameters") {
  for (double gamma : {-0.5, -0.25, 0.0, 0.25, 0.5}) {
    for (double e : {0.1, 0.5, 0.9, 0.99}) {
      const ModelSpec spec = ModelSpec::model1(1.0, gamma, 1.0);
      const ThermalParams tp = thermal_params_from_epsilon(e, 1.0);
      CHECK(linalg::min_eigenvalue(microscopic_kossakowski(spec, tp)) >= -1e-10);
      const StructuralMatrices sm = build_structural_matrices(tp);
      const MesoscopicGenerator gen =
          mesoscopic_generator_matrices(derive_L_matrix(build_site_operators(tp, spec)), sm);
      CHECK(gen.d1_min_eigenvalue >= -1e-10);
      CHECK(linalg::min_eigenvalue(gen.K_beta.value) >= -1e-10);
      CHECK(gen.K_beta.ordering == Ordering::V);
      CHECK(oracle::max_abs(gen.H1.value - closed_form::H1(spec, tp)) <= 1e-12);
      CHECK(oracle::max_abs(gen.D1.value - closed_form::D1_model1(spec, tp)) <= 1e-12);
      CHECK(oracle::max_abs(gen.D2.value - closed_form::D2(spec, tp)) <= 1e-12);
      CHECK(oracle::max_abs(gen.K_beta.value - closed_form::K_beta(spec, tp)) <= 1e-12);
    }
  }
  for (double xi : {0.0, 0.5, 2.0}) {
    const ModelSpec spec = ModelSpec::model2(xi);
    const ThermalParams tp = thermal_params_from_epsilon(0.7, 1.0);
    CHECK(linalg::min_eigenvalue(microscopic_kossakowski(spec, tp)) >= -1e-10);
    const MesoscopicGenerator gen = mesoscopic_generator_matrices(
        derive_L_matrix(build_site_operators(tp, spec)), build_structural_matrices(tp));
    CHECK(linalg::min_eigenvalue(gen.K_beta.value) >= -1e-10);
    CHECK(oracle::max_abs(gen.K_beta.value - closed_form::K_beta(spec, tp)) <= 1e-12);
    CHECK(oracle::max_abs(gen.H2.value - closed_form::H2(spec, tp)) <= 1e-12);
  }
}

TEST_CASE("verification catches a corrupted closed-form generator") {
  VerifyOptions opts;
  opts.fast = true;
  opts.generator_formula = [](const ModelSpec& spec, const ThermalParams& tp) {
    Mat8 l = closed_form::L_matrix(spec, tp);
    l(0, 1) = -l(0, 1);
    l(2, 0) += 1e-9;
    return l;
  };
  bool saw_failure = false;
  for (const CheckResult& c : run_verification(opts)) {
    if (c.name.find("generator_matches_closed_form") != std::string::npos) {
      CHECK_FALSE(c.passed);
      saw_failure = true;
    }
  }
  CHECK(saw_failure);
}

TEST_CASE("the untouched suite passes") {
  VerifyOptions opts;
  opts.fast = true;
  const auto results = run_verification(opts);
  CHECK(results.size() >= 20);
  for (const CheckResult& c : results) {
    INFO(c.name << " " << c.detail);
    CHECK(c.passed);
  }
}
