#include "mesofluct/dynamics.hpp"

#include <sstream>

namespace mesofluct {

namespace {

constexpr std::array<int, 4> kModes13 = {0, 1, 4, 5};

Mat4c squeeze_block(double r) {
  Mat4c s = Mat4c::Identity();
  s(0, 0) = s(1, 1) = std::cosh(2.0 * r);
  s(0, 1) = s(1, 0) = -std::sinh(2.0 * r);
  return s;
}

Mat8c tilde_left(const StructuralMatrices& sm) {
  return sm.P.transpose() * sm.Sigma3 * sm.M.adjoint();
}

Mat8c tilde_right(const StructuralMatrices& sm) {
  return sm.M_inv.adjoint() * sm.Sigma3 * sm.P;
}

}  // namespace

void require_numeric_regime(const ThermalParams& tp, const char* who) {
  if (!(tp.epsilon > 0.0)) {
    throw Error(ErrorKind::Degenerate,
                std::string(who) + ": epsilon = 0 leaves sigma^-1 undefined");
  }
  if (!(tp.epsilon <= kNumericEpsilonMax)) {
    std::ostringstream os;
    os << who << ": epsilon = " << tp.epsilon
       << " is too close to 1 for sigma^-1 and M^-1; use the closed forms";
    throw Error(ErrorKind::Degenerate, os.str());
  }
}

CovarianceState squeezed_initial_covariance(const ThermalParams& tp, double r1,
                                            double r3) {
  if (!(tp.epsilon > 0.0)) {
    throw Error(ErrorKind::Degenerate, "squeezed_initial_covariance: epsilon must be > 0");
  }
  if (!std::isfinite(r1) || !std::isfinite(r3)) {
    throw Error(ErrorKind::Parameter, "squeezing parameters must be finite");
  }
  CovarianceState g;
  g.G.setZero();
  g.G.topLeftCorner<4, 4>() = squeeze_block(r1);
  g.G.bottomRightCorner<4, 4>() = squeeze_block(r3);
  g.G /= 2.0 * tp.epsilon;
  return g;
}

Propagator propagator(const Mat8& L, const StructuralMatrices& sm, double t,
                      ModelKind model) {
  const Mat8 e = linalg::mat_exp(L.transpose(), t);
  return {tilde_left(sm) * e.cast<cplx>() * tilde_right(sm), t, model};
}

Mat8c model1_closed_form_propagator(const Model1Params& p, const ThermalParams& tp,
                                    double t) {
  const double e = tp.epsilon, c = tp.c;
  const double ch = std::cosh(p.J0 * p.gamma * t);
  const double sh = std::sinh(p.J0 * p.gamma * t);
  Eigen::Matrix4d a;
  a << ch, 0, -e * sh, c * sh,
       0, ch, c * sh, e * sh,
       -e * sh, c * sh, ch, 0,
       c * sh, e * sh, 0, ch;
  const cplx phase = std::exp(I_unit * (tp.eta * t));
  const double damp = std::exp(-p.delta * p.J0 * t);
  Mat8c out = Mat8c::Zero();
  for (int i = 0; i < 4; ++i) {
    for (int j = 0; j < 4; ++j) {
      out(2 * i, 2 * j) = damp * a(i, j) * phase;
      out(2 * i + 1, 2 * j + 1) = damp * a(i, j) * std::conj(phase);
    }
  }
  return out;
}

CovarianceState evolve_covariance(const CovarianceState& g0, const Propagator& prop,
                                  const ThermalParams& tp) {
  require_ordering(g0.ordering, Ordering::Tilde, "evolve_covariance");
  const Mat8c& e = prop.E;
  const Mat8c ed = e.adjoint();
  CovarianceState g;
  g.G = ed * g0.G * e + (Mat8c::Identity() - ed * e) / (2.0 * tp.epsilon);
  g.G = 0.5 * (g.G + g.G.adjoint()).eval();
  g.ordering = Ordering::Tilde;
  g.time = g0.time + prop.t;

  const double lam = physicality_min_eigenvalue(g);
  const double tol = 1e-8 * (1.0 + g.G.cwiseAbs().maxCoeff());
  if (lam < -tol) {
    std::ostringstream os;
    os << "evolve_covariance: state became unphysical at t = " << g.time
       << " (min eigenvalue " << lam << ")";
    throw Error(ErrorKind::Numeric, os.str());
  }
  return g;
}

Mat8 y_matrix(const Mat8& L, const Mat8& Sigma, double t) {
  const Mat8 e = linalg::mat_exp(L, t);
  Mat8 y = Sigma - e * Sigma * e.transpose();
  return 0.5 * (y + y.transpose());
}

double scalar_exponent(const Vec8& r, const Mat8& L, const Mat8& Sigma, double t) {
  return -0.5 * r.dot(y_matrix(L, Sigma, t) * r);
}

Mat4c reduce_modes_13(const CovarianceState& g) {
  require_ordering(g.ordering, Ordering::Tilde, "reduce_modes_13");
  Mat4c out;
  for (int i = 0; i < 4; ++i)
    for (int j = 0; j < 4; ++j) out(i, j) = g.G(kModes13[i], kModes13[j]);
  return out;
}

double check_physicality(const Mat4c& g_red) {
  Mat4c m = g_red;
  m(0, 0) += 0.5;
  m(1, 1) -= 0.5;
  m(2, 2) += 0.5;
  m(3, 3) -= 0.5;
  return linalg::min_eigenvalue(m);
}

double physicality_min_eigenvalue(const CovarianceState& g) {
  require_ordering(g.ordering, Ordering::Tilde, "physicality_min_eigenvalue");
  Mat8c m = g.G;
  for (int k = 0; k < 8; ++k) m(k, k) += (k % 2 == 0) ? 0.5 : -0.5;
  return linalg::min_eigenvalue(m);
}

CovarianceState tilde_from_F(const Mat8& g_f, const StructuralMatrices& sm) {
  CovarianceState g;
  g.G = sm.P.transpose() * sm.Sigma3 * sm.M_inv * g_f.cast<cplx>() * sm.M_inv.adjoint() *
        sm.Sigma3 * sm.P;
  g.ordering = Ordering::Tilde;
  return g;
}

Mat8 F_from_tilde(const CovarianceState& g, const StructuralMatrices& sm) {
  require_ordering(g.ordering, Ordering::Tilde, "F_from_tilde");
  const Mat8c f = sm.M * sm.Sigma3 * sm.P * g.G * sm.P.transpose() * sm.Sigma3 *
                  sm.M.adjoint();
  return f.real();
}

Mat8 evolve_F(const Mat8& g_f, const Mat8& L, const StructuralMatrices& sm, double t) {
  const Mat8 e = linalg::mat_exp(L, t);
  return sm.Sigma - e * sm.Sigma * e.transpose() + e * g_f * e.transpose();
}

GaussianModel::GaussianModel(const ModelSpec& spec, const ThermalParams& tp)
    : spec_(spec), tp_(tp) {
  spec_.validate();
  if (tp_.eta != spec_.eta) {
    throw Error(ErrorKind::Parameter, "model and thermal parameters disagree on eta");
  }
  require_numeric_regime(tp_, "GaussianModel");
  sm_ = build_structural_matrices(tp_);
  L_ = derive_L_matrix(build_site_operators(tp_, spec_));
  left_ = tilde_left(sm_);
  right_ = tilde_right(sm_);
}

Propagator GaussianModel::propagator(double t) const {
  const Mat8 e = linalg::mat_exp(L_.transpose(), t);
  return {left_ * e.cast<cplx>() * right_, t, spec_.kind};
}

}  // namespace mesofluct
