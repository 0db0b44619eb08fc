#include "mesofluct/thermal.hpp"

#include <array>
#include <limits>
#include <sstream>

namespace mesofluct {

namespace {

// position in A ordering of the k-th component of each ordering
constexpr std::array<int, 8> kTildeFromA = {0, 4, 1, 5, 2, 6, 3, 7};
constexpr std::array<int, 8> kVFromA = {0, 1, 4, 5, 2, 3, 6, 7};

const std::array<int, 8>& index_map(Ordering o) {
  static constexpr std::array<int, 8> identity = {0, 1, 2, 3, 4, 5, 6, 7};
  switch (o) {
    case Ordering::A: return identity;
    case Ordering::Tilde: return kTildeFromA;
    case Ordering::V: return kVFromA;
    case Ordering::F: break;
  }
  throw Error(ErrorKind::Contract,
              "reorder: F ordering is not a permutation of the mode orderings");
}

}  // namespace

double ThermalParams::temperature() const {
  if (zero_temperature) return 0.0;
  if (beta == 0.0) return std::numeric_limits<double>::infinity();
  return 1.0 / beta;
}

ThermalParams thermal_params(double beta, double eta) {
  if (!(eta > 0.0) || !std::isfinite(eta)) {
    throw Error(ErrorKind::Parameter, "thermal_params: eta must be positive and finite");
  }
  if (std::isnan(beta) || beta < 0.0) {
    throw Error(ErrorKind::Parameter, "thermal_params: beta must be >= 0");
  }
  ThermalParams tp;
  tp.beta = beta;
  tp.eta = eta;
  if (std::isinf(beta)) {
    tp.epsilon = 1.0;
    tp.c = 0.0;
    tp.zero_temperature = true;
    return tp;
  }
  const double x = 0.5 * beta * eta;
  tp.epsilon = std::tanh(x);
  // sech keeps c accurate when epsilon is close to 1
  tp.c = 1.0 / std::cosh(x);
  return tp;
}

ThermalParams thermal_params_from_temperature(double temperature, double eta) {
  if (std::isnan(temperature) || temperature < 0.0) {
    throw Error(ErrorKind::Parameter, "temperature must be >= 0");
  }
  if (temperature == 0.0) {
    return thermal_params(std::numeric_limits<double>::infinity(), eta);
  }
  return thermal_params(1.0 / temperature, eta);
}

ThermalParams thermal_params_from_epsilon(double epsilon, double eta) {
  if (!(epsilon >= 0.0 && epsilon <= 1.0)) {
    throw Error(ErrorKind::Parameter, "epsilon must lie in [0,1]");
  }
  if (epsilon == 1.0) {
    return thermal_params(std::numeric_limits<double>::infinity(), eta);
  }
  ThermalParams tp = thermal_params(2.0 * std::atanh(epsilon) / eta, eta);
  tp.epsilon = epsilon;
  tp.c = std::sqrt((1.0 - epsilon) * (1.0 + epsilon));
  return tp;
}

const char* ordering_name(Ordering o) noexcept {
  switch (o) {
    case Ordering::F: return "F";
    case Ordering::A: return "A";
    case Ordering::Tilde: return "tilde";
    case Ordering::V: return "V";
  }
  return "?";
}

void require_ordering(Ordering have, Ordering want, const char* who) {
  if (have != want) {
    std::ostringstream os;
    os << who << ": expected " << ordering_name(want) << " ordering, got "
       << ordering_name(have);
    throw Error(ErrorKind::Contract, os.str());
  }
}

Mat8c reorder(const Mat8c& m, Ordering from, Ordering to) {
  const auto& src = index_map(from);
  const auto& dst = index_map(to);
  // position of each A component inside `from`
  std::array<int, 8> where{};
  for (int k = 0; k < 8; ++k) where[src[k]] = k;
  Mat8c out;
  for (int i = 0; i < 8; ++i) {
    for (int j = 0; j < 8; ++j) out(i, j) = m(where[dst[i]], where[dst[j]]);
  }
  return out;
}

OrderedMatrix reorder(const OrderedMatrix& m, Ordering to) {
  return {reorder(m.value, m.ordering, to), to};
}

Eigen::Matrix4d symplectic_block() {
  Eigen::Matrix4d s;
  s << 0, -1, 0, 0,
       1, 0, 0, 0,
       0, 0, 0, -1,
       0, 0, 1, 0;
  return s;
}

Mat8c correlation_matrix(double e) {
  Mat4c ce;
  ce << 1.0, -I_unit * e, 0.0, 0.0,
        I_unit * e, 1.0, 0.0, 0.0,
        0.0, 0.0, 1.0, -I_unit * e,
        0.0, 0.0, I_unit * e, 1.0;
  Mat8c out;
  out << ce, -e * ce,
         -e * ce, ce;
  return out;
}

Mat8 covariance_matrix(double e) {
  const Eigen::Matrix4d id4 = Eigen::Matrix4d::Identity();
  Mat8 out;
  out << id4, -e * id4,
         -e * id4, id4;
  return out;
}

Mat8 symplectic_matrix(double e) {
  const Eigen::Matrix4d s = symplectic_block();
  Mat8 out;
  out << s, -e * s,
         -e * s, s;
  return 2.0 * e * out;
}

StructuralMatrices build_structural_matrices(const ThermalParams& tp) {
  const double e = tp.epsilon;
  if (!(e > 0.0)) {
    throw Error(ErrorKind::Degenerate,
                "structural matrices: epsilon = 0 leaves sigma^-1 undefined");
  }
  if (!(e < 1.0) || !(tp.c > 0.0)) {
    throw Error(ErrorKind::Degenerate,
                "structural matrices: epsilon = 1 leaves sigma^-1 and M^-1 undefined");
  }
  const double c = tp.c;
  StructuralMatrices sm;
  sm.epsilon = e;
  sm.c = c;

  sm.C = correlation_matrix(e);
  sm.Sigma = covariance_matrix(e);
  sm.sigma = symplectic_matrix(e);
  const Eigen::Matrix4d s = symplectic_block();
  sm.sigma_inv << s, e * s,
                  e * s, s;
  sm.sigma_inv *= -1.0 / (2.0 * e * c * c);

  Mat4c k;
  k << 1.0, 0.0, 0.0, 0.0,
       I_unit, 0.0, 0.0, 0.0,
       0.0, 0.0, 1.0, 0.0,
       0.0, 0.0, I_unit, 0.0;
  Mat4c q;
  q << -e, c, 0.0, 0.0,
       I_unit * e, -I_unit * c, 0.0, 0.0,
       0.0, 0.0, -e, c,
       0.0, 0.0, I_unit * e, -I_unit * c;
  sm.M << k, k.conjugate(),
          q.conjugate(), q;
  sm.M *= std::sqrt(e);

  Mat4c w;
  w << c, -I_unit * c, 0.0, 0.0,
       e, -I_unit * e, 0.0, 0.0,
       0.0, 0.0, c, -I_unit * c,
       0.0, 0.0, e, -I_unit * e;
  Mat4c z = Mat4c::Zero();
  z(1, 0) = 1.0;
  z(1, 1) = I_unit;
  z(3, 2) = 1.0;
  z(3, 3) = I_unit;
  sm.M_inv << w, z.conjugate(),
              w.conjugate(), z;
  sm.M_inv /= 2.0 * c * std::sqrt(e);

  Eigen::Matrix4d p11 = Eigen::Matrix4d::Zero(), p12 = p11, p21 = p11, p22 = p11;
  p11(0, 0) = p11(1, 2) = 1.0;
  p12(2, 0) = p12(3, 2) = 1.0;
  p21(0, 1) = p21(1, 3) = 1.0;
  p22(2, 1) = p22(3, 3) = 1.0;
  sm.P << p11, p12,
          p21, p22;

  sm.Sigma3 = Mat8::Identity();
  sm.Sigma3.bottomRightCorner<4, 4>() *= -1.0;
  return sm;
}

Vec8c weyl_to_displacement(const Vec8& r, const StructuralMatrices& sm) {
  return I_unit * (sm.Sigma3 * (sm.M.adjoint() * r.cast<cplx>()));
}

Vec8 displacement_to_weyl(const Vec8c& z, const StructuralMatrices& sm) {
  const Vec8c r = -I_unit * (sm.M_inv.adjoint() * (sm.Sigma3 * z));
  return r.real();
}

double thermal_char_function(const Vec8& r, const ThermalParams& /*tp*/,
                             const StructuralMatrices& sm) {
  return std::exp(-0.5 * r.dot(sm.Sigma * r));
}

double thermal_char_function_displacement(const Vec8& r, const ThermalParams& tp,
                                          const StructuralMatrices& sm) {
  const Vec8c z = weyl_to_displacement(r, sm);
  return std::exp(-z.squaredNorm() / (4.0 * tp.epsilon));
}

}  // namespace mesofluct
