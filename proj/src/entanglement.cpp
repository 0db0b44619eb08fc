#include "mesofluct/entanglement.hpp"

#include <boost/math/tools/minima.hpp>
#include <boost/math/tools/roots.hpp>

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>

namespace mesofluct {

namespace {

constexpr int kInnerGrid = 512;
constexpr double kInnerGridStart = 1e-3;
constexpr int kBrentBits = 40;

std::pair<double, double> variant_squeezing(Variant v, double r) {
  return v == Variant::Symmetric ? std::pair{r, r} : std::pair{r, 0.0};
}

// midpoint of a bisection on the sign of S inside [a, b]
double refine_crossing(const std::function<double(double)>& S, double a, double b,
                       double tol) {
  const double sa = S(a), sb = S(b);
  if ((sa < 0.0) == (sb < 0.0)) return b;
  if (sa == 0.0) return a;
  auto sign = [&](double t) { return S(t) < 0.0 ? -1.0 : 1.0; };
  auto done = [tol](double lo, double hi) { return hi - lo <= tol; };
  const auto [lo, hi] = boost::math::tools::bisect(sign, a, b, done);
  return 0.5 * (lo + hi);
}

}  // namespace

const char* variant_name(Variant v) noexcept {
  return v == Variant::Symmetric ? "symmetric" : "one-mode";
}

SimonInvariants simon_invariants(const Mat4c& g) {
  const Mat2c s1 = g.topLeftCorner<2, 2>();
  const Mat2c s2 = g.bottomRightCorner<2, 2>();
  const Mat2c sc = g.topRightCorner<2, 2>();
  Mat2c z = Mat2c::Zero();
  z(0, 0) = 1.0;
  z(1, 1) = -1.0;

  SimonInvariants out;
  const cplx i3 = sc.determinant();
  out.I1 = s1.determinant().real();
  out.I2 = s2.determinant().real();
  out.I3 = i3.real();
  out.I4 = (s1 * z * sc * z * s2 * z * sc.adjoint() * z).trace().real();
  const double q = 0.25 - std::abs(i3);
  out.S = out.I1 * out.I2 + q * q - out.I4 - 0.25 * (out.I1 + out.I2);

  const double m = 0.5 * (out.I1 + out.I2) - out.I3;
  double rad = m * m - (out.I1 * out.I2 + out.I3 * out.I3 - out.I4);
  const double scale = 1.0 + m * m;
  if (rad < 0.0) {
    if (rad < -1e-10 * scale) {
      std::ostringstream os;
      os << "simon_invariants: negative radicand " << rad;
      throw Error(ErrorKind::Numeric, os.str());
    }
    rad = 0.0;
  }
  out.script_I = m - std::sqrt(rad);
  if (!(out.script_I > 0.0)) {
    std::ostringstream os;
    os << "simon_invariants: symplectic eigenvalue " << out.script_I
       << " is not positive";
    throw Error(ErrorKind::Numeric, os.str());
  }
  out.E = std::max(0.0, -0.5 * std::log2(4.0 * out.script_I));
  return out;
}

YFunctions y_functions(const ClosedFormContext& ctx, double t) {
  const auto& p = ctx.p;
  const double damp = 0.5 * std::exp(-2.0 * p.J0 * p.delta * t);
  const double ch = std::cosh(2.0 * p.J0 * p.gamma * t);
  YFunctions y;
  y.y1 = damp * (ch + 1.0);
  y.y2 = damp * (ch - 1.0);
  y.y3 = damp * std::sinh(2.0 * p.J0 * p.gamma * t);
  y.y_eps = y.y1 / ctx.tp.epsilon + ctx.tp.epsilon * y.y2;
  return y;
}

double closed_form_S(const ClosedFormContext& ctx, double t) {
  const double e = ctx.tp.epsilon;
  if (!(e > 0.0 && e <= 1.0)) {
    throw Error(ErrorKind::Degenerate, "closed_form_S: epsilon must lie in (0,1]");
  }
  const YFunctions y = y_functions(ctx, t);
  const double e2 = e * e;
  const double sh2 = std::sinh(ctx.r) * std::sinh(ctx.r);
  const double base = (e2 - 1.0) * (e2 - 1.0) / (16.0 * e2 * e2);
  const double y32 = y.y3 * y.y3;
  if (ctx.variant == Variant::Symmetric) {
    const double u = y.y_eps / e - y.y_eps * y.y_eps;
    const double quad = (0.5 / e2 - 0.5) * u - 2.0 * (1.0 + 1.0 / e2) * y32;
    const double w = u + 4.0 * y32;
    const double quart = w * w - 4.0 * y32 / e2;
    return base + sh2 * quad + sh2 * sh2 * quart;
  }
  const double bracket =
      (0.25 / e2 - 0.25) * ((y.y1 - y.y1 * y.y1) / e2 + y.y2 - e2 * y.y2 * y.y2) -
      y32 * (0.5 + 0.5 / e2);
  return base + sh2 * bracket;
}

double closed_form_S_T0(double r, double gamma, double t) {
  const double sh2 = std::sinh(r) * std::sinh(r);
  const double s2g = std::sinh(2.0 * gamma * t);
  return sh2 * sh2 *
             (std::exp(-8.0 * t) - 2.0 * std::exp(-6.0 * t) * std::cosh(2.0 * gamma * t) +
              std::exp(-4.0 * t)) -
         std::exp(-4.0 * t) * s2g * s2g * sh2;
}

double numeric_vs_closed_form(const ClosedFormContext& ctx, const std::vector<double>& t_grid) {
  require_numeric_regime(ctx.tp, "numeric_vs_closed_form");
  const ModelSpec spec = ModelSpec::model1(ctx.p.delta, ctx.p.gamma, ctx.p.J0, ctx.tp.eta);
  const auto [r1, r3] = variant_squeezing(ctx.variant, ctx.r);
  const EntanglementProbe probe(spec, ctx.tp, r1, r3);
  double worst = 0.0;
  for (double t : t_grid) {
    const double diff = std::abs(probe.invariants(t).S - closed_form_S(ctx, t));
    worst = std::max(worst, diff);
  }
  if (worst > 1e-6) {
    std::ostringstream os;
    os << "numeric pipeline disagrees with the closed form by " << worst;
    throw Error(ErrorKind::PipelineDefect, os.str());
  }
  return worst;
}

bool sudden_birth_condition_T0(double r, double gamma) {
  if (!(std::abs(gamma) < 1.0)) {
    throw Error(ErrorKind::Parameter, "sudden_birth_condition_T0: |gamma| must be < 1");
  }
  const double sh = std::sinh(r);
  return sh * sh < gamma * gamma / (1.0 - gamma * gamma);
}

SecondDerivative second_derivative_check_T0(double r, double gamma) {
  const double sh2 = std::sinh(r) * std::sinh(r);
  const double g2 = gamma * gamma;
  SecondDerivative d;
  d.analytic = 8.0 * (sh2 * sh2 * (1.0 - g2) - sh2 * g2);
  const double h = 1e-4;
  d.numeric = (closed_form_S_T0(r, gamma, h) - 2.0 * closed_form_S_T0(r, gamma, 0.0) +
               closed_form_S_T0(r, gamma, -h)) /
              (h * h);
  return d;
}

EntanglementProbe::EntanglementProbe(const ModelSpec& spec, const ThermalParams& tp,
                                     double r1, double r3)
    : spec_(spec), tp_(tp) {
  spec_.validate();
  if (tp_.eta != spec_.eta) {
    throw Error(ErrorKind::Parameter, "model and thermal parameters disagree on eta");
  }
  const bool hyperbolic =
      spec_.kind == ModelKind::Model1 && tp_.epsilon > kNumericEpsilonMax;
  if (!hyperbolic) model_.emplace(spec_, tp_);
  g0_ = squeezed_initial_covariance(tp_, r1, r3);
}

Propagator EntanglementProbe::propagate(double t) const {
  if (model_) return model_->propagator(t);
  return {model1_closed_form_propagator(spec_.m1, tp_, t), t, ModelKind::Model1};
}

CovarianceState EntanglementProbe::covariance(double t) const {
  return evolve_covariance(g0_, propagate(t), tp_);
}

SimonInvariants EntanglementProbe::invariants(double t) const {
  return simon_invariants(reduce_modes_13(covariance(t)));
}

EntanglementSample EntanglementProbe::at(double t) const {
  const Mat4c red = reduce_modes_13(covariance(t));
  return {t, simon_invariants(red), check_physicality(red)};
}

BirthDeath detect_birth_death(const std::vector<double>& t, const std::vector<double>& E,
                              const std::function<double(double)>& S_of_t,
                              double refine_tol) {
  if (t.size() != E.size()) {
    throw Error(ErrorKind::Input, "detect_birth_death: time and E columns differ in length");
  }
  if (t.size() < 64) {
    throw Error(ErrorKind::Input, "detect_birth_death: need at least 64 samples");
  }
  for (std::size_t k = 1; k < t.size(); ++k) {
    if (!(t[k] > t[k - 1])) {
      std::ostringstream os;
      os << "detect_birth_death: time grid not increasing at index " << k;
      throw Error(ErrorKind::Input, os.str());
    }
  }
  if (!(refine_tol > 0.0)) {
    throw Error(ErrorKind::Input, "detect_birth_death: refine_tol must be positive");
  }

  BirthDeath out;
  auto on = [](double e) { return e > kEntanglementFloor; };
  if (on(E.front())) out.t_birth = t.front();
  for (std::size_t k = 1; k < t.size(); ++k) {
    if (!on(E[k - 1]) && on(E[k])) {
      if (!out.t_birth) out.t_birth = refine_crossing(S_of_t, t[k - 1], t[k], refine_tol);
    } else if (on(E[k - 1]) && !on(E[k])) {
      out.t_death = refine_crossing(S_of_t, t[k - 1], t[k], refine_tol);
    }
  }
  // re-entangled after the last disappearance: no death inside the window
  if (out.t_death && on(E.back())) out.t_death.reset();
  return out;
}

TimeMaximum maximize_over_time(const EntanglementProbe& probe, double t_max) {
  if (!(t_max > kInnerGridStart)) {
    throw Error(ErrorKind::Input, "maximize_over_time: t_max must exceed 1e-3");
  }
  std::vector<double> ts(kInnerGrid);
  const double ratio = std::log(t_max / kInnerGridStart) / (kInnerGrid - 1);
  for (int k = 0; k < kInnerGrid; ++k) ts[k] = kInnerGridStart * std::exp(ratio * k);
  ts.back() = t_max;

  TimeMaximum best;
  best.min_S = std::numeric_limits<double>::infinity();
  int k_e = 0, k_s = 0;
  for (int k = 0; k < kInnerGrid; ++k) {
    const SimonInvariants inv = probe.invariants(ts[k]);
    if (inv.E > best.max_E) {
      best.max_E = inv.E;
      best.t_at_max = ts[k];
      k_e = k;
    }
    if (inv.S < best.min_S) {
      best.min_S = inv.S;
      k_s = k;
    }
  }

  // an entanglement window narrower than a grid cell only shows up in S
  const bool seen = best.max_E > kEntanglementFloor;
  const int k = seen ? k_e : k_s;
  const double lo = ts[std::max(k - 1, 0)];
  const double hi = ts[std::min(k + 1, kInnerGrid - 1)];
  auto objective = [&](double t) {
    const SimonInvariants inv = probe.invariants(t);
    return seen ? -inv.E : inv.S;
  };
  const auto [t_star, f_star] = boost::math::tools::brent_find_minima(objective, lo, hi, kBrentBits);
  const SimonInvariants inv = probe.invariants(t_star);
  best.min_S = std::min(best.min_S, inv.S);
  if (inv.E > best.max_E) {
    best.max_E = inv.E;
    best.t_at_max = t_star;
  }
  (void)f_star;
  return best;
}

double default_t_max(ModelKind kind) { return kind == ModelKind::Model1 ? 20.0 : 50.0; }

bool entangled_at_temperature(const ModelSpec& spec, double r, Variant variant, double T,
                              double t_max) {
  const ThermalParams tp = thermal_params_from_temperature(T, spec.eta);
  const auto [r1, r3] = variant_squeezing(variant, r);
  const EntanglementProbe probe(spec, tp, r1, r3);
  return maximize_over_time(probe, t_max).max_E > kEntanglementFloor;
}

double critical_temperature(const CriticalTemperatureRequest& req) {
  if (!(req.T_lo >= 0.0 && req.T_hi > req.T_lo)) {
    throw Error(ErrorKind::Input, "critical_temperature: need 0 <= T_lo < T_hi");
  }
  if (!(req.tol_T > 0.0)) {
    throw Error(ErrorKind::Input, "critical_temperature: tol_T must be positive");
  }
  auto indicator = [&](double T) {
    return entangled_at_temperature(req.spec, req.r, req.variant, T, req.t_max);
  };
  const bool at_lo = indicator(req.T_lo);
  const bool at_hi = indicator(req.T_hi);
  if (!at_lo || at_hi) {
    std::ostringstream os;
    os << "critical_temperature: invalid bracket for r = " << req.r << " ("
       << variant_name(req.variant) << "): entangled(T_lo=" << req.T_lo
       << ") = " << at_lo << ", entangled(T_hi=" << req.T_hi << ") = " << at_hi;
    throw Error(ErrorKind::Bracket, os.str());
  }
  auto sign = [&](double T) { return indicator(T) ? -1.0 : 1.0; };
  auto done = [&](double lo, double hi) { return hi - lo <= req.tol_T; };
  const auto [lo, hi] = boost::math::tools::bisect(sign, req.T_lo, req.T_hi, done);
  return 0.5 * (lo + hi);
}

}  // namespace mesofluct
