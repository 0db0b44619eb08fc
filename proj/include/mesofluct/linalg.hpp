#pragma once

#include <Eigen/Dense>

#include <array>
#include <cmath>
#include <complex>
#include <string>

#include "mesofluct/error.hpp"

namespace mesofluct {

using cplx = std::complex<double>;
using ComplexMatrix = Eigen::MatrixXcd;
using Mat2c = Eigen::Matrix2cd;
using Mat4c = Eigen::Matrix4cd;
using Mat8c = Eigen::Matrix<cplx, 8, 8>;
using Mat8 = Eigen::Matrix<double, 8, 8>;
using Vec8 = Eigen::Matrix<double, 8, 1>;
using Vec8c = Eigen::Matrix<cplx, 8, 1>;

inline constexpr cplx I_unit{0.0, 1.0};

namespace linalg {

inline constexpr int kMaxDim = 8;

// max_ij |A_ij - conj(A_ji)| relative to 1 + max|A_ij|
double hermiticity_defect(const Eigen::Ref<const ComplexMatrix>& a);

/// Eigenvalues of a Hermitian matrix, ascending. The input is symmetrized
/// before solving; a defect above 1e-12 is a contract violation.
Eigen::VectorXd hermitian_eigenvalues(const Eigen::Ref<const ComplexMatrix>& a);

double min_eigenvalue(const Eigen::Ref<const ComplexMatrix>& a);

bool is_psd(const Eigen::Ref<const ComplexMatrix>& a, double tol);

double spectral_norm(const Eigen::Ref<const ComplexMatrix>& a);

namespace detail {

// Pade(13) coefficients and the matching 1-norm threshold (Higham 2005).
inline constexpr std::array<double, 14> kPade13 = {
    64764752532480000.0, 32382376266240000.0, 7771770303897600.0,
    1187353796428800.0,  129060195264000.0,   10559470521600.0,
    670442572800.0,      33522128640.0,       1323241920.0,
    40840800.0,          960960.0,            16380.0,
    182.0,               1.0};
inline constexpr double kTheta13 = 5.371920351148152;

}  // namespace detail

/// exp(t*A) by scaling and squaring around a degree-13 Pade approximant.
template <typename Derived>
typename Derived::PlainObject mat_exp(const Eigen::MatrixBase<Derived>& a_in,
                                      double t) {
  using Plain = typename Derived::PlainObject;
  if (a_in.rows() != a_in.cols()) {
    throw Error(ErrorKind::Dimension,
                "mat_exp: matrix is " + std::to_string(a_in.rows()) + "x" +
                    std::to_string(a_in.cols()) + ", expected square");
  }
  if (a_in.rows() > kMaxDim) {
    throw Error(ErrorKind::Dimension, "mat_exp: dimension " +
                                          std::to_string(a_in.rows()) +
                                          " exceeds 8");
  }
  if (!std::isfinite(t) || !a_in.allFinite()) {
    throw Error(ErrorKind::Numeric, "mat_exp: non-finite input");
  }
  const Eigen::Index n = a_in.rows();
  Plain a = t * a_in;
  const Plain id = Plain::Identity(n, n);
  if (n == 0) return a;

  const double norm1 = a.cwiseAbs().colwise().sum().maxCoeff();
  int s = 0;
  if (norm1 > detail::kTheta13) {
    s = static_cast<int>(std::ceil(std::log2(norm1 / detail::kTheta13)));
    a /= std::ldexp(1.0, s);
  }

  const auto& b = detail::kPade13;
  const Plain a2 = a * a;
  const Plain a4 = a2 * a2;
  const Plain a6 = a4 * a2;
  Plain inner = b[13] * a6 + b[11] * a4 + b[9] * a2;
  const Plain u =
      a * (a6 * inner + b[7] * a6 + b[5] * a4 + b[3] * a2 + b[1] * id);
  inner = b[12] * a6 + b[10] * a4 + b[8] * a2;
  const Plain v = a6 * inner + b[6] * a6 + b[4] * a4 + b[2] * a2 + b[0] * id;

  Plain r = (v - u).partialPivLu().solve(v + u);
  for (int k = 0; k < s; ++k) r = r * r;
  if (!r.allFinite()) {
    throw Error(ErrorKind::Numeric, "mat_exp: overflow in squaring phase");
  }
  return r;
}

}  // namespace linalg
}  // namespace mesofluct
