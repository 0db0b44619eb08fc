#include "mesofluct/linalg.hpp"

#include <Eigen/Eigenvalues>
#include <Eigen/SVD>

#include <sstream>

namespace mesofluct {

const char* error_kind_name(ErrorKind kind) noexcept {
  switch (kind) {
    case ErrorKind::Parameter: return "parameter";
    case ErrorKind::Dimension: return "dimension";
    case ErrorKind::Numeric: return "numeric";
    case ErrorKind::Contract: return "contract";
    case ErrorKind::Degenerate: return "degenerate";
    case ErrorKind::Positivity: return "positivity";
    case ErrorKind::SpanStability: return "span-stability";
    case ErrorKind::Bracket: return "bracket";
    case ErrorKind::Input: return "input";
    case ErrorKind::PipelineDefect: return "pipeline-defect";
  }
  return "unknown";
}

namespace linalg {

namespace {

constexpr double kHermitianTol = 1e-12;

void require_square(const Eigen::Ref<const ComplexMatrix>& a, const char* who) {
  if (a.rows() != a.cols() || a.rows() > kMaxDim) {
    std::ostringstream os;
    os << who << ": unsupported shape " << a.rows() << "x" << a.cols();
    throw Error(ErrorKind::Dimension, os.str());
  }
  if (!a.allFinite()) {
    throw Error(ErrorKind::Numeric, std::string(who) + ": non-finite entries");
  }
}

}  // namespace

double hermiticity_defect(const Eigen::Ref<const ComplexMatrix>& a) {
  if (a.size() == 0) return 0.0;
  const double scale = 1.0 + a.cwiseAbs().maxCoeff();
  return (a - a.adjoint()).cwiseAbs().maxCoeff() / scale;
}

Eigen::VectorXd hermitian_eigenvalues(const Eigen::Ref<const ComplexMatrix>& a) {
  require_square(a, "hermitian_eigenvalues");
  const double defect = hermiticity_defect(a);
  if (defect > kHermitianTol) {
    std::ostringstream os;
    os << "hermitian_eigenvalues: relative Hermiticity defect " << defect
       << " exceeds " << kHermitianTol;
    throw Error(ErrorKind::Contract, os.str());
  }
  const ComplexMatrix sym = 0.5 * (a + a.adjoint());
  Eigen::SelfAdjointEigenSolver<ComplexMatrix> solver(sym, Eigen::EigenvaluesOnly);
  if (solver.info() != Eigen::Success) {
    throw Error(ErrorKind::Numeric, "hermitian_eigenvalues: solver did not converge");
  }
  return solver.eigenvalues();
}

double min_eigenvalue(const Eigen::Ref<const ComplexMatrix>& a) {
  return hermitian_eigenvalues(a)(0);
}

bool is_psd(const Eigen::Ref<const ComplexMatrix>& a, double tol) {
  return min_eigenvalue(a) >= -tol;
}

double spectral_norm(const Eigen::Ref<const ComplexMatrix>& a) {
  require_square(a, "spectral_norm");
  Eigen::JacobiSVD<ComplexMatrix> svd(a);
  return svd.singularValues()(0);
}

}  // namespace linalg
}  // namespace mesofluct
