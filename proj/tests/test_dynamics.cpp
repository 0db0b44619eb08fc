#include "doctest.h"
#include "oracles.hpp"

#include "mesofluct/dynamics.hpp"

using namespace mesofluct;

namespace {

// F-ordered evolution computed with Eigen's own exponential
Mat8 reference_evolve_F(const Mat8& g, const Mat8& L, const Mat8& Sigma, double t) {
  const Mat8 e = (t * L).exp();
  return Sigma - e * Sigma * e.transpose() + e * g * e.transpose();
}

}  // namespace

TEST_CASE("squeezed initial covariance") {
  const ThermalParams tp = thermal_params_from_epsilon(0.8, 1.0);
  const CovarianceState g0 = squeezed_initial_covariance(tp, 0.0, 0.0);
  CHECK(oracle::max_abs(g0.G - Mat8c::Identity() / 1.6) <= 1e-15);
  const CovarianceState g1 = squeezed_initial_covariance(tp, 0.7, 0.3);
  CHECK(g1.ordering == Ordering::Tilde);
  CHECK(g1.G(0, 0).real() == doctest::Approx(std::cosh(1.4) / 1.6));
  CHECK(g1.G(0, 1).real() == doctest::Approx(-std::sinh(1.4) / 1.6));
  CHECK(g1.G(4, 5).real() == doctest::Approx(-std::sinh(0.6) / 1.6));
  CHECK(g1.G(2, 2).real() == doctest::Approx(1 / 1.6));
  CHECK(g1.G(2, 3) == cplx(0.0));
  const Mat4c red = reduce_modes_13(g1);
  CHECK(red(0, 1) == g1.G(0, 1));
  CHECK(red(2, 3) == g1.G(4, 5));
  CHECK(red(1, 2) == g1.G(1, 4));
}

TEST_CASE("matrix-exponential propagator matches the hyperbolic closed form") {
  for (double e : {0.5, 0.8, 0.9, 0.99}) {
    for (double gamma : {0.1, 0.3, 0.5}) {
      const ModelSpec spec = ModelSpec::model1(1.0, gamma, 1.0);
      const ThermalParams tp = thermal_params_from_epsilon(e, 1.0);
      const GaussianModel model(spec, tp);
      for (int k = 0; k < 64; ++k) {
        const double t = 5.0 * k / 63.0;
        const Mat8c diff = model.propagator(t).E - model1_closed_form_propagator(spec.m1, tp, t);
        CHECK(oracle::max_abs(diff) <= 1e-10);
      }
    }
  }
}

TEST_CASE("without cross coupling each mode decays independently") {
  const ModelSpec spec = ModelSpec::model1(1.3, 0.0, 0.8, 1.0);
  const GaussianModel model(spec, thermal_params_from_epsilon(0.6, 1.0));
  const double t = 1.7;
  const Mat8c e = model.propagator(t).E;
  for (int i = 0; i < 8; ++i) {
    CHECK(std::abs(e(i, i)) == doctest::Approx(std::exp(-1.3 * 0.8 * t)).epsilon(1e-12));
    for (int j = 0; j < 8; ++j)
      if (i != j) CHECK(std::abs(e(i, j)) <= 1e-13);
  }
  // and the phase turns at eta
  CHECK(std::abs(std::arg(e(0, 0))) == doctest::Approx(t).epsilon(1e-12));
}

TEST_CASE("propagators form a contracting semigroup") {
  for (const ModelSpec& spec : {ModelSpec::model1(1.0, 0.5, 1.0), ModelSpec::model2(0.4)}) {
    const GaussianModel model(spec, thermal_params_from_epsilon(0.7, 1.0));
    for (double s : {0.3, 1.1}) {
      for (double t : {0.2, 2.5}) {
        const Mat8c prod = model.propagator(s).E * model.propagator(t).E;
        CHECK(oracle::max_abs(prod - model.propagator(s + t).E) <= 1e-12);
      }
    }
    CHECK(oracle::max_abs(model.propagator(0.0).E - Mat8c::Identity()) <= 1e-14);
    CHECK(linalg::spectral_norm(model.propagator(3.0).E) <= 1.0 + 1e-12);
  }
}

TEST_CASE("tilde-ordered evolution agrees with an independent F-ordered evolution") {
  for (const ModelSpec& spec : {ModelSpec::model1(1.0, 0.4, 1.0), ModelSpec::model2(0.0), ModelSpec::model2(1.5)}) {
    const ThermalParams tp = thermal_params_from_epsilon(0.75, 1.0);
    const GaussianModel model(spec, tp);
    const StructuralMatrices& sm = model.structure();
    const CovarianceState g0 = squeezed_initial_covariance(tp, 0.8, 0.4);
    const Mat8 g0_f = F_from_tilde(g0, sm);
    CHECK(oracle::max_abs(tilde_from_F(g0_f, sm).G - g0.G) <= 1e-12);
    for (double t : {0.0, 0.4, 2.0, 7.0}) {
      const CovarianceState g = evolve_covariance(g0, model.propagator(t), tp);
      const Mat8 ref = reference_evolve_F(g0_f, model.L(), sm.Sigma, t);
      CHECK((F_from_tilde(g, sm) - ref).cwiseAbs().maxCoeff() <= 1e-11);
      CHECK((evolve_F(g0_f, model.L(), sm, t) - ref).cwiseAbs().maxCoeff() <= 1e-11);
    }
  }
}

TEST_CASE("the thermal covariance is stationary and the noise matrix is positive") {
  for (const ModelSpec& spec : {ModelSpec::model1(1.0, 0.5, 1.0), ModelSpec::model2(0.3)}) {
    for (double e : {0.3, 0.9}) {
      const ThermalParams tp = thermal_params_from_epsilon(e, 1.0);
      const GaussianModel model(spec, tp);
      const CovarianceState th = squeezed_initial_covariance(tp, 0.0, 0.0);
      const CovarianceState g = evolve_covariance(th, model.propagator(3.0), tp);
      CHECK(oracle::max_abs(g.G - th.G) <= 1e-13);
      CHECK(y_matrix(model.L(), model.structure().Sigma, 0.0).cwiseAbs().maxCoeff() <= 1e-15);
      for (int k = 0; k <= 40; ++k) {
        const Mat8 y = y_matrix(model.L(), model.structure().Sigma, 0.5 * k);
        CHECK(y.selfadjointView<Eigen::Lower>().eigenvalues().minCoeff() >= -1e-12);
      }
      Vec8 r = Vec8::Zero();
      r(0) = 1.0;
      CHECK(scalar_exponent(r, model.L(), model.structure().Sigma, 0.0) == doctest::Approx(0.0));
      CHECK(scalar_exponent(r, model.L(), model.structure().Sigma, 1.0) < 0.0);
    }
  }
}

TEST_CASE("late-time state relaxes to the thermal state") {
  for (double e : {0.5, 0.9}) {
    const ThermalParams tp = thermal_params_from_epsilon(e, 1.0);
    const GaussianModel model(ModelSpec::model1(1.0, 0.5, 1.0), tp);
    const CovarianceState g = evolve_covariance(squeezed_initial_covariance(tp, 1.0, 1.0),
                                                model.propagator(50.0), tp);
    const Mat4c red = reduce_modes_13(g);
    CHECK(linalg::spectral_norm(red - Mat4c::Identity() / (2 * e)) <= 1e-8);
    CHECK(std::abs(check_physicality(red) - (1 - e) / (2 * e)) <= 1e-6);
  }
}

TEST_CASE("trajectories stay physical") {
  for (const ModelSpec& spec : {ModelSpec::model1(1.0, 0.5, 1.0), ModelSpec::model2(0.0)}) {
    const ThermalParams tp = thermal_params_from_epsilon(0.95, 1.0);
    const GaussianModel model(spec, tp);
    const CovarianceState g0 = squeezed_initial_covariance(tp, 2.0, 0.5);
    for (int k = 0; k <= 30; ++k) {
      const CovarianceState g = evolve_covariance(g0, model.propagator(0.5 * k), tp);
      CHECK(physicality_min_eigenvalue(g) >= -1e-8);
    }
  }
}

TEST_CASE("numeric pipeline refuses epsilon too close to one") {
  const ThermalParams cold = thermal_params_from_epsilon(1.0 - 1e-10, 1.0);
  try {
    GaussianModel m(ModelSpec::model2(0.0), cold);
    FAIL("expected an error");
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::Degenerate);
  }
  CHECK_THROWS_AS(GaussianModel(ModelSpec::model1(1.0, 0.5, 1.0, 2.0), thermal_params_from_epsilon(0.5, 1.0)), Error);
}
