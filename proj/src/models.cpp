#include "mesofluct/models.hpp"

#include <cmath>
#include <sstream>

namespace mesofluct {

namespace {

Mat2c pauli(int k) {
  Mat2c m;
  switch (k) {
    case 1: m << 0.0, 1.0, 1.0, 0.0; break;
    case 2: m << 0.0, -I_unit, I_unit, 0.0; break;
    case 3: m << 1.0, 0.0, 0.0, -1.0; break;
    default: m = Mat2c::Identity(); break;
  }
  return m;
}

Mat4c kron(const Mat2c& a, const Mat2c& b) {
  Mat4c out;
  for (int i = 0; i < 2; ++i)
    for (int j = 0; j < 2; ++j) out.block<2, 2>(2 * i, 2 * j) = a(i, j) * b;
  return out;
}

Mat4c comm(const Mat4c& a, const Mat4c& b) { return a * b - b * a; }
Mat4c anti(const Mat4c& a, const Mat4c& b) { return a * b + b * a; }

void require_open_interval(const ThermalParams& tp, const char* who) {
  if (!(tp.epsilon > 0.0 && tp.epsilon < 1.0)) {
    throw Error(ErrorKind::Degenerate,
                std::string(who) + ": closed form needs 0 < epsilon < 1");
  }
}

Eigen::Matrix3cd model2_block(double eps, double xi) {
  Eigen::Matrix3cd m;
  m << 1.0, -I_unit * eps, 0.0,
       I_unit * eps, 1.0, 0.0,
       0.0, 0.0, xi;
  return m;
}

}  // namespace

ModelSpec ModelSpec::model1(double delta, double gamma, double J0, double eta) {
  ModelSpec s;
  s.kind = ModelKind::Model1;
  s.m1 = {delta, gamma, J0};
  s.eta = eta;
  s.validate();
  return s;
}

ModelSpec ModelSpec::model2(double xi, double eta) {
  ModelSpec s;
  s.kind = ModelKind::Model2;
  s.m2 = {xi};
  s.eta = eta;
  s.validate();
  return s;
}

void ModelSpec::validate() const {
  if (!(eta > 0.0) || !std::isfinite(eta)) {
    throw Error(ErrorKind::Parameter, "model: eta must be positive and finite");
  }
  if (kind == ModelKind::Model1) {
    if (!(m1.delta > 0.0) || !std::isfinite(m1.delta)) {
      throw Error(ErrorKind::Parameter, "model 1: delta must be positive");
    }
    if (!(m1.J0 > 0.0) || !std::isfinite(m1.J0)) {
      throw Error(ErrorKind::Parameter, "model 1: J0 must be positive");
    }
    if (!std::isfinite(m1.gamma) || std::abs(m1.gamma) > 0.5 * m1.delta * (1.0 + 1e-14)) {
      std::ostringstream os;
      os << "model 1: |gamma| = " << std::abs(m1.gamma) << " exceeds delta/2 = "
         << 0.5 * m1.delta << " (Kossakowski matrix not positive)";
      throw Error(ErrorKind::Positivity, os.str());
    }
  } else {
    if (!(m2.xi >= 0.0) || !std::isfinite(m2.xi)) {
      throw Error(ErrorKind::Positivity,
                  "model 2: xi must be >= 0 (Kossakowski matrix not positive)");
    }
  }
}

ComplexMatrix microscopic_kossakowski(const ModelSpec& spec, const ThermalParams& tp) {
  spec.validate();
  if (spec.kind == ModelKind::Model1) {
    const double d = spec.m1.delta, g = spec.m1.gamma;
    ComplexMatrix k(4, 4);
    k << d, 0.0, g, g,
         0.0, d, g, g,
         g, g, d, 0.0,
         g, g, 0.0, d;
    return k;
  }
  const Eigen::Matrix3cd m = model2_block(tp.epsilon, spec.m2.xi);
  ComplexMatrix k(6, 6);
  k << m, m,
       m, m;
  return k;
}

SiteOperators build_site_operators(const ThermalParams& tp, const ModelSpec& spec) {
  SiteOperators ops;
  ops.spec = spec;
  ops.tp = tp;
  const Mat2c id = pauli(0), s1 = pauli(1), s2 = pauli(2), s3 = pauli(3);
  ops.x = {kron(s1, id), kron(s2, id), kron(id, s1), kron(id, s2),
           kron(s1, s3), kron(s2, s3), kron(s3, s1), kron(s3, s2)};
  for (int mu = 1; mu <= 3; ++mu) ops.w[mu - 1] = kron(pauli(mu), id) + kron(id, pauli(mu));
  ops.h = 0.5 * spec.eta * (kron(s3, id) + kron(id, s3));

  // each spin carries (1 - eps sigma3)/2
  const double e = tp.epsilon;
  const Mat2c one_site = 0.5 * (id - e * s3);
  ops.rho_beta = kron(one_site, one_site);

  ops.kossakowski = microscopic_kossakowski(spec, tp);
  if (spec.kind == ModelKind::Model1) {
    const Mat2c sp = 0.5 * (s1 + I_unit * s2);
    const Mat2c sm = 0.5 * (s1 - I_unit * s2);
    ops.kraus = {kron(sp, sm), kron(sm, sp), 0.5 * kron(s3, id), 0.5 * kron(id, s3)};
  } else {
    ops.kraus = {kron(s1, id), kron(s2, id), kron(s3, id),
                 kron(id, s1), kron(id, s2), kron(id, s3)};
  }
  return ops;
}

Mat4c lindblad_action_site(const SiteOperators& ops, const Mat4c& x) {
  Mat4c out = I_unit * comm(ops.h, x);
  const ComplexMatrix& d = ops.kossakowski;
  if (ops.spec.kind == ModelKind::Model1) {
    const double half_j0 = 0.5 * ops.spec.m1.J0;
    for (int m = 0; m < 4; ++m) {
      for (int n = 0; n < 4; ++n) {
        if (d(m, n) == 0.0) continue;
        const Mat4c& vm = ops.kraus[m];
        const Mat4c vn_dag = ops.kraus[n].adjoint();
        out += half_j0 * d(m, n) * (vm * comm(x, vn_dag) + comm(vm, x) * vn_dag);
      }
    }
    return out;
  }
  const Eigen::Matrix3cd m = d.topLeftCorner<3, 3>();
  for (int a = 0; a < 3; ++a) {
    for (int b = 0; b < 3; ++b) {
      if (m(a, b) == 0.0) continue;
      const Mat4c& wa = ops.w[a];
      const Mat4c& wb = ops.w[b];
      out += m(a, b) * (wa * x * wb - 0.5 * anti(wa * wb, x));
    }
  }
  return out;
}

Mat4c dual_lindblad_action_site(const SiteOperators& ops, const Mat4c& rho) {
  Mat4c out = -I_unit * comm(ops.h, rho);
  const ComplexMatrix& d = ops.kossakowski;
  if (ops.spec.kind == ModelKind::Model1) {
    const double half_j0 = 0.5 * ops.spec.m1.J0;
    for (int m = 0; m < 4; ++m) {
      for (int n = 0; n < 4; ++n) {
        if (d(m, n) == 0.0) continue;
        const Mat4c& vm = ops.kraus[m];
        const Mat4c vn_dag = ops.kraus[n].adjoint();
        out += half_j0 * d(m, n) * (2.0 * vn_dag * rho * vm - anti(vm * vn_dag, rho));
      }
    }
    return out;
  }
  const Eigen::Matrix3cd m = d.topLeftCorner<3, 3>();
  for (int a = 0; a < 3; ++a) {
    for (int b = 0; b < 3; ++b) {
      if (m(a, b) == 0.0) continue;
      const Mat4c& wa = ops.w[a];
      const Mat4c& wb = ops.w[b];
      out += m(a, b) * (wb * rho * wa - 0.5 * anti(wa * wb, rho));
    }
  }
  return out;
}

GeneratorProjection project_generator(const SiteOperators& ops) {
  GeneratorProjection p;
  Eigen::Matrix<cplx, 8, 8> lc;
  for (int i = 0; i < 8; ++i) {
    const Mat4c y = lindblad_action_site(ops, ops.x[i]);
    Mat4c rebuilt = Mat4c::Zero();
    for (int j = 0; j < 8; ++j) {
      const cplx norm = (ops.x[j].adjoint() * ops.x[j]).trace();
      lc(i, j) = (ops.x[j].adjoint() * y).trace() / norm;
      rebuilt += lc(i, j) * ops.x[j];
    }
    p.residual = std::max(p.residual, (y - rebuilt).cwiseAbs().maxCoeff());
  }
  p.imaginary = lc.imag().cwiseAbs().maxCoeff();
  p.L = lc.real();
  return p;
}

Mat8 derive_L_matrix(const SiteOperators& ops) {
  const GeneratorProjection p = project_generator(ops);
  const double scale = 1.0 + p.L.cwiseAbs().maxCoeff();
  if (p.residual > 1e-12 * scale || p.imaginary > 1e-12 * scale) {
    std::ostringstream os;
    os << "derive_L_matrix: generator leaves the span of x_1..x_8 (residual "
       << p.residual << ", imaginary part " << p.imaginary << ")";
    throw Error(ErrorKind::SpanStability, os.str());
  }
  return p.L;
}

MesoscopicGenerator mesoscopic_generator_matrices(const Mat8& L,
                                                  const StructuralMatrices& sm) {
  const Mat8c lc = L.cast<cplx>();
  const Mat8c si = sm.sigma_inv.cast<cplx>();
  const Mat8c lt = lc.transpose();
  MesoscopicGenerator g;
  g.H1 = {-I_unit * si * (lc * sm.C - sm.C * lt) * si, Ordering::F};
  g.D1 = {si * (lc * sm.C + sm.C * lt) * si, Ordering::F};
  g.H2 = {sm.M.adjoint() * g.H1.value * sm.M, Ordering::A};
  g.D2 = {sm.M.adjoint() * g.D1.value * sm.M, Ordering::A};
  g.K_beta = reorder(g.D2, Ordering::V);

  const double h_defect = linalg::hermiticity_defect(g.H1.value);
  if (h_defect > 1e-12) {
    std::ostringstream os;
    os << "mesoscopic generator: H1 Hermiticity defect " << h_defect;
    throw Error(ErrorKind::Contract, os.str());
  }
  g.d1_min_eigenvalue = linalg::min_eigenvalue(g.D1.value);
  const double tol = 1e-10 * (1.0 + g.D1.value.cwiseAbs().maxCoeff());
  if (g.d1_min_eigenvalue < -tol) {
    std::ostringstream os;
    os << "mesoscopic generator: D1 has eigenvalue " << g.d1_min_eigenvalue
       << " (complete positivity violated)";
    throw Error(ErrorKind::Positivity, os.str());
  }
  return g;
}

double correlation_matrix_check(const SiteOperators& ops, const ThermalParams& tp) {
  const Mat8c c = correlation_matrix(tp.epsilon);
  double worst = 0.0;
  for (int i = 0; i < 8; ++i) {
    for (int j = 0; j < 8; ++j) {
      const cplx v = (ops.rho_beta * ops.x[i] * ops.x[j]).trace();
      worst = std::max(worst, std::abs(v - c(i, j)));
    }
  }
  return worst;
}

namespace closed_form {

Mat8 L_matrix(const ModelSpec& spec, const ThermalParams& tp) {
  const Eigen::Matrix4d s = symplectic_block();
  Mat8 h = Mat8::Zero();
  h.topLeftCorner<4, 4>() = spec.eta * s;
  h.bottomRightCorner<4, 4>() = spec.eta * s;

  if (spec.kind == ModelKind::Model1) {
    const auto& p = spec.m1;
    Eigen::Matrix4d gam = Eigen::Matrix4d::Zero();
    gam(0, 2) = gam(1, 3) = gam(2, 0) = gam(3, 1) = p.gamma;
    const Eigen::Matrix4d id4 = Eigen::Matrix4d::Identity();
    Mat8 d;
    d << -p.delta * id4, gam,
         gam, -p.delta * id4;
    return h + p.J0 * d;
  }

  const double e = tp.epsilon;
  const double a = 1.0 + spec.m2.xi;
  const double b = 3.0 + spec.m2.xi;
  Mat8 d;
  d << a, 0, 0, 0, 0, 0, -e, 0,
       0, a, 0, 0, 0, 0, 0, -e,
       0, 0, a, 0, -e, 0, 0, 0,
       0, 0, 0, a, 0, -e, 0, 0,
       2 * e, 0, e, 0, b, 0, 2, 0,
       0, 2 * e, 0, e, 0, b, 0, 2,
       e, 0, 2 * e, 0, 2, 0, b, 0,
       0, e, 0, 2 * e, 0, 2, 0, b;
  return h - 2.0 * d;
}

Mat8c H1(const ModelSpec& spec, const ThermalParams& tp) {
  require_open_interval(tp, "H1");
  const double e = tp.epsilon, c = tp.c;
  Mat4c em;
  em << e, -I_unit, 0.0, 0.0,
        I_unit, e, 0.0, 0.0,
        0.0, 0.0, e, -I_unit,
        0.0, 0.0, I_unit, e;
  Mat8c out;
  out << em, e * em,
         e * em, em;
  return spec.eta / (2.0 * c * c * e * e) * out;
}

Mat8c H2(const ModelSpec& spec, const ThermalParams& tp) {
  require_open_interval(tp, "H2");
  const double e = tp.epsilon;
  Mat8c out = Mat8c::Zero();
  for (int k = 0; k < 4; ++k) {
    out(k, k) = e + 1.0;
    out(k + 4, k + 4) = e - 1.0;
  }
  return spec.eta / e * out;
}

Mat8c D1_model1(const ModelSpec& spec, const ThermalParams& tp) {
  require_open_interval(tp, "D1");
  const double e = tp.epsilon, c = tp.c;
  Mat2c base;
  base << 1.0, -I_unit * e, I_unit * e, 1.0;
  const Mat2c d1 = spec.m1.delta * base;
  const Mat2c d2 = -spec.m1.gamma * base;
  Mat8c out;
  out << d1, e * d2, e * d1, d2,
         e * d2, d1, d2, e * d1,
         e * d1, d2, d1, e * d2,
         d2, e * d1, e * d2, d1;
  return spec.m1.J0 / (2.0 * c * c * e * e) * out;
}

Mat8c D2(const ModelSpec& spec, const ThermalParams& tp) {
  require_open_interval(tp, "D2");
  const double e = tp.epsilon, c = tp.c;
  Mat8c out = Mat8c::Zero();
  if (spec.kind == ModelKind::Model1) {
    const auto& p = spec.m1;
    Mat2c shape;
    shape << e, -c, -c, -e;
    for (int sgn : {+1, -1}) {
      const double f = 1.0 + sgn * e;
      const Mat2c d1 = p.delta * f * Mat2c::Identity();
      const Mat2c d2 = p.gamma * f * shape;
      const int o = sgn > 0 ? 0 : 4;
      out.block<2, 2>(o, o) = d1;
      out.block<2, 2>(o + 2, o + 2) = d1;
      out.block<2, 2>(o, o + 2) = d2;
      out.block<2, 2>(o + 2, o) = d2;
    }
    return p.J0 / e * out;
  }
  const double xi = spec.m2.xi;
  Mat4c a;
  a << 1.0 + xi, 0.0, e * e, -e * c,
       0.0, 3.0 + xi, -e * c, 1.0 + c * c,
       e * e, -e * c, 1.0 + xi, 0.0,
       -e * c, 1.0 + c * c, 0.0, 3.0 + xi;
  out.topLeftCorner<4, 4>() = (1.0 + e) * a;
  out.bottomRightCorner<4, 4>() = (1.0 - e) * a;
  return 2.0 / e * out;
}

Mat8c K_beta(const ModelSpec& spec, const ThermalParams& tp) {
  require_open_interval(tp, "K_beta");
  const double e = tp.epsilon, c = tp.c;
  Mat8c out = Mat8c::Zero();
  if (spec.kind == ModelKind::Model1) {
    const auto& p = spec.m1;
    Mat4c a = Mat4c::Zero();
    a.diagonal() << 1.0 + e, 1.0 + e, 1.0 - e, 1.0 - e;
    a *= p.delta;
    Mat4c b;
    b << e * (1 + e), -(1 + e) * c, 0.0, 0.0,
         -(1 + e) * c, -e * (1 + e), 0.0, 0.0,
         0.0, 0.0, e * (1 - e), -(1 - e) * c,
         0.0, 0.0, -(1 - e) * c, -e * (1 - e);
    b *= p.gamma;
    out << a, b,
           b, a;
    return p.J0 / e * out;
  }
  Mat2c m = Mat2c::Zero();
  m(0, 0) = 1.0 + spec.m2.xi;
  m(1, 1) = 3.0 + spec.m2.xi;
  Mat2c n;
  n << e * e, -e * c,
       -e * c, 1.0 + c * c;
  const double fp = 1.0 + e, fm = 1.0 - e;
  out.block<2, 2>(0, 0) = fp * m;
  out.block<2, 2>(0, 4) = fp * n;
  out.block<2, 2>(2, 2) = fm * m;
  out.block<2, 2>(2, 6) = fm * n;
  out.block<2, 2>(4, 0) = fp * n;
  out.block<2, 2>(4, 4) = fp * m;
  out.block<2, 2>(6, 2) = fm * n;
  out.block<2, 2>(6, 6) = fm * m;
  return 2.0 / e * out;
}

}  // namespace closed_form

}  // namespace mesofluct
