#include "doctest.h"
#include "oracles.hpp"

#include "mesofluct/entanglement.hpp"

using namespace mesofluct;

namespace {

// zero-temperature symmetric indicator written out independently
double s_zero_temperature(double r, double gamma, double t) {
  const double sh2 = std::pow(std::sinh(r), 2);
  return sh2 * sh2 * (std::exp(-8 * t) - 2 * std::exp(-6 * t) * std::cosh(2 * gamma * t) + std::exp(-4 * t)) -
         std::exp(-4 * t) * std::pow(std::sinh(2 * gamma * t), 2) * sh2;
}

double thermal_limit(double e) { return std::pow(1 - e * e, 2) / (16 * std::pow(e, 4)); }

ClosedFormContext context(double e, double gamma, double r, Variant v) {
  return {thermal_params_from_epsilon(e, 1.0), {1.0, gamma, 1.0}, r, v};
}

}  // namespace

TEST_CASE("Simon invariants of simple states") {
  const SimonInvariants th = simon_invariants(Mat4c::Identity() / 1.6);
  CHECK(th.I1 == doctest::Approx(0.390625));
  CHECK(th.I2 == doctest::Approx(0.390625));
  CHECK(th.I3 == 0.0);
  CHECK(th.I4 == 0.0);
  CHECK(th.S == doctest::Approx(thermal_limit(0.8)).epsilon(1e-13));
  CHECK(th.E == 0.0);

  const SimonInvariants vac = simon_invariants(Mat4c::Identity() / 2.0);
  CHECK(vac.I1 == doctest::Approx(0.25));
  CHECK(std::abs(vac.S) <= 1e-16);
  CHECK(vac.E == 0.0);

  for (double r : {0.1, 0.5, 1.0, 2.0}) {
    const SimonInvariants s = simon_invariants(oracle::two_mode_squeezed(r));
    CHECK(s.E == doctest::Approx(2 * r / std::log(2.0)).epsilon(1e-10));
    CHECK(s.S < 0.0);
  }
}

TEST_CASE("log-negativity matches the partial-transpose spectrum along trajectories") {
  std::mt19937_64 rng(20240607);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  for (int trial = 0; trial < 24; ++trial) {
    const bool m1 = trial % 2 == 0;
    const ModelSpec spec = m1 ? ModelSpec::model1(1.0, u(rng) - 0.5, 1.0) : ModelSpec::model2(2 * u(rng));
    const double e = 0.5 + 0.49 * u(rng);
    const EntanglementProbe probe(spec, thermal_params_from_epsilon(e, 1.0), 2 * u(rng), 2 * u(rng));
    for (double t : {0.0, 0.3, 1.0, 2.5, 6.0}) {
      const Mat4c red = reduce_modes_13(probe.covariance(t));
      const SimonInvariants s = simon_invariants(red);
      CHECK(s.E == doctest::Approx(oracle::log_negativity(red)).epsilon(1e-8).scale(1.0));
      CHECK(s.I1 >= 0.25 - 1e-10);
      CHECK(s.I2 >= 0.25 - 1e-10);
      if (std::abs(s.S) > 1e-12) CHECK((s.S < 0) == is_entangled(s));
    }
  }
}

TEST_CASE("closed-form indicator limits") {
  for (double e : {0.5, 0.8, 0.99, 1.0})
    for (Variant v : {Variant::Symmetric, Variant::OneMode}) {
      CHECK(std::abs(closed_form_S(context(e, 0.5, 1.3, v), 1e-12) - thermal_limit(e)) <= 1e-10);
      for (double t : {0.0, 0.7, 3.0})
        CHECK(std::abs(closed_form_S(context(e, 0.5, 0.0, v), t) - thermal_limit(e)) <= 1e-14);
    }
  for (double r : {0.5, 1.0, 2.0})
    for (double g : {0.1, 0.3, 0.5})
      for (double t : {0.05, 0.5, 2.0}) {
        const double ref = s_zero_temperature(r, g, t);
        CHECK(closed_form_S(context(1.0, g, r, Variant::Symmetric), t) == doctest::Approx(ref).epsilon(1e-10).scale(1e-6));
        CHECK(closed_form_S_T0(r, g, t) == doctest::Approx(ref).epsilon(1e-10).scale(1e-6));
      }
}

TEST_CASE("numeric pipeline agrees with the closed forms") {
  std::vector<double> grid;
  for (int k = 0; k < 64; ++k) grid.push_back(5.0 * k / 63.0);
  for (double e : {0.5, 0.9})
    for (double g : {0.1, 0.5})
      for (Variant v : {Variant::Symmetric, Variant::OneMode})
        CHECK(numeric_vs_closed_form(context(e, g, 1.0, v), grid) <= 1e-9);
  CHECK(numeric_vs_closed_form(context(0.7, 0.3, 0.0, Variant::Symmetric), grid) <= 1e-12);
}

TEST_CASE("zero-temperature birth condition and curvature") {
  CHECK(sudden_birth_condition_T0(1e-3, 0.5));
  CHECK_FALSE(sudden_birth_condition_T0(0.5, 0.0));
  CHECK_FALSE(sudden_birth_condition_T0(1.0, 0.5));
  // boundary at sinh^2 r = 1/3 for gamma = 0.5
  const double r_star = std::asinh(std::sqrt(1.0 / 3.0));
  for (double r : {0.5 * r_star, 0.9 * r_star, 1.1 * r_star, 2 * r_star}) {
    const bool dips = s_zero_temperature(r, 0.5, 1e-3) < 0.0;
    CHECK(sudden_birth_condition_T0(r, 0.5) == dips);
  }
  for (double r : {0.5, 1.0, 2.0})
    for (double g : {0.1, 0.3, 0.5}) {
      const SecondDerivative d = second_derivative_check_T0(r, g);
      const double sh2 = std::pow(std::sinh(r), 2);
      CHECK(d.analytic == doctest::Approx(8 * (sh2 * sh2 * (1 - g * g) - sh2 * g * g)).epsilon(1e-13));
      const double h = 1e-4;
      const double fd = (s_zero_temperature(r, g, h) - 2 * s_zero_temperature(r, g, 0) +
                         s_zero_temperature(r, g, -h)) / (h * h);
      CHECK(fd == doctest::Approx(d.analytic).epsilon(1e-4));
      CHECK(d.numeric == doctest::Approx(d.analytic).epsilon(1e-4));
    }
}

TEST_CASE("birth and death detection on a synthetic trajectory") {
  auto S = [](double t) { return (t - 1.0) * (t - 3.0); };
  std::vector<double> ts, es, zeros;
  for (int k = 0; k <= 100; ++k) {
    const double t = 0.05 * k;
    ts.push_back(t);
    es.push_back(std::max(0.0, -S(t)));
    zeros.push_back(0.0);
  }
  const BirthDeath bd = detect_birth_death(ts, es, S, 1e-9);
  REQUIRE(bd.t_birth);
  REQUIRE(bd.t_death);
  CHECK(*bd.t_birth == doctest::Approx(1.0).epsilon(1e-8));
  CHECK(*bd.t_death == doctest::Approx(3.0).epsilon(1e-8));

  const BirthDeath none = detect_birth_death(ts, zeros, S, 1e-9);
  CHECK_FALSE(none.t_birth);
  CHECK_FALSE(none.t_death);

  auto bad = ts;
  std::swap(bad[10], bad[11]);
  CHECK_THROWS_AS(detect_birth_death(bad, es, S, 1e-9), Error);
  CHECK_THROWS_AS(detect_birth_death({0.0, 1.0}, {0.0, 0.0}, S, 1e-9), Error);
  CHECK_THROWS_AS(detect_birth_death(ts, zeros, S, 0.0), Error);
}

TEST_CASE("finite-temperature entanglement is born late and dies") {
  const EntanglementProbe probe(ModelSpec::model1(1.0, 0.5, 1.0),
                                thermal_params_from_temperature(0.1, 1.0), 1.0, 1.0);
  std::vector<double> ts, es;
  for (int k = 0; k < 401; ++k) {
    ts.push_back(20.0 * k / 400);
    es.push_back(probe.invariants(ts.back()).E);
  }
  const BirthDeath bd = detect_birth_death(ts, es, [&](double t) { return probe.invariants(t).S; }, 1e-8);
  REQUIRE(bd.t_birth);
  REQUIRE(bd.t_death);
  CHECK(*bd.t_birth > 0.0);
  CHECK(*bd.t_death > *bd.t_birth);
  CHECK(*bd.t_death < 20.0);
}

TEST_CASE("one-mode squeezing at zero temperature entangles at once") {
  const EntanglementProbe probe(ModelSpec::model1(1.0, 0.5, 1.0), thermal_params_from_temperature(0.0, 1.0),
                                1.0, 0.0);
  CHECK(probe.closed_form_propagator());
  std::vector<double> ts, es;
  for (int k = 0; k < 200; ++k) {
    ts.push_back(0.01 * k);
    es.push_back(probe.invariants(ts.back()).E);
  }
  const BirthDeath bd = detect_birth_death(ts, es, [&](double t) { return probe.invariants(t).S; }, 1e-10);
  REQUIRE(bd.t_birth);
  CHECK(*bd.t_birth <= 1e-9);
  for (double t : {0.01, 0.1, 1.0}) CHECK(closed_form_S(context(1.0, 0.5, 1.0, Variant::OneMode), t) < 0.0);
}

TEST_CASE("critical temperature needs a valid bracket") {
  CriticalTemperatureRequest req;
  req.spec = ModelSpec::model1(1.0, 0.5, 1.0);
  req.r = 0.0;
  try {
    critical_temperature(req);
    FAIL("expected a bracket error");
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::Bracket);
    CHECK(std::string(e.what()).find("T_lo") != std::string::npos);
  }
  req.r = 1.0;
  req.T_lo = 0.05;
  req.T_hi = 1.0;
  req.tol_T = 1e-3;
  const double tc = critical_temperature(req);
  CHECK(tc > req.T_lo);
  CHECK(tc < req.T_hi);
  CHECK(entangled_at_temperature(req.spec, 1.0, Variant::Symmetric, tc - 2e-3, req.t_max));
  CHECK_FALSE(entangled_at_temperature(req.spec, 1.0, Variant::Symmetric, tc + 2e-3, req.t_max));
}
