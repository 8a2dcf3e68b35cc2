#include "wiretap/matrix_core.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "wiretap/errors.hpp"

namespace wiretap {

namespace {

Eigen::SelfAdjointEigenSolver<ComplexMatrix> eig(const HermitianMatrix& m) {
  return Eigen::SelfAdjointEigenSolver<ComplexMatrix>(hermitize(m));
}

void require_square(const ComplexMatrix& m, const char* what) {
  if (m.rows() != m.cols()) {
    throw Error(ErrorKind::kDimensionMismatch, std::string(what) + " requires a square matrix");
  }
}

}  // namespace

ComplexMatrix identity(Eigen::Index n) { return ComplexMatrix::Identity(n, n); }

HermitianMatrix hermitize(const ComplexMatrix& m) { return 0.5 * (m + m.adjoint()); }

bool is_hermitian(const ComplexMatrix& m, double tol) {
  if (m.rows() != m.cols()) return false;
  return (m - m.adjoint()).cwiseAbs().maxCoeff() <= tol;
}

double min_eigenvalue(const HermitianMatrix& m) {
  require_square(m, "min_eigenvalue");
  if (m.size() == 0) return 0.0;
  return eig(m).eigenvalues().minCoeff();
}

bool is_psd(const ComplexMatrix& m, double tol) {
  if (!is_hermitian(m, std::max(kHermitianTol, tol))) return false;
  return m.size() == 0 || min_eigenvalue(m) >= -tol;
}

double logdet_hpd(const HermitianMatrix& m) {
  require_square(m, "logdet_hpd");
  if (m.size() == 0) return 0.0;
  const RealVector ev = Eigen::SelfAdjointEigenSolver<ComplexMatrix>(hermitize(m), Eigen::EigenvaluesOnly)
                            .eigenvalues();
  const double top = ev.maxCoeff();
  if (!(top > 0.0) || ev.minCoeff() <= kRelativeEigFloor * top) {
    throw Error(ErrorKind::kNonPositiveDefinite, "logdet_hpd: matrix is not positive definite");
  }
  double acc = 0.0;
  for (double e : ev) acc += std::log(e);
  return acc;
}

double logdet_identity_plus(const HermitianMatrix& m) {
  if (m.size() == 0) return 0.0;
  Eigen::LLT<ComplexMatrix> llt(m);
  if (llt.info() != Eigen::Success) return logdet_hpd(m);
  const auto& l = llt.matrixLLT();
  double acc = 0.0;
  for (Eigen::Index i = 0; i < l.rows(); ++i) acc += std::log(l(i, i).real());
  return 2.0 * acc;
}

PsdMatrix psd_sqrt(const PsdMatrix& m) {
  require_square(m, "psd_sqrt");
  if (m.size() == 0) return m;
  const auto es = eig(m);
  const RealVector root = es.eigenvalues().cwiseMax(0.0).cwiseSqrt();
  const auto& v = es.eigenvectors();
  return hermitize(v * root.cast<Complex>().asDiagonal() * v.adjoint());
}

HermitianMatrix psd_inv_sqrt(const PsdMatrix& m, double ridge) {
  require_square(m, "psd_inv_sqrt");
  if (ridge < 0.0) throw Error(ErrorKind::kInvalidArgument, "psd_inv_sqrt: negative ridge");
  if (m.size() == 0) return m;
  const auto es = eig(m);
  const RealVector shifted = es.eigenvalues().array() + ridge;
  const double top = shifted.maxCoeff();
  if (!(top > 0.0) || shifted.minCoeff() <= kRelativeEigFloor * top) {
    throw Error(ErrorKind::kSingularMatrix, "psd_inv_sqrt: eigenvalue at or below the singular floor");
  }
  const RealVector inv_root = shifted.cwiseSqrt().cwiseInverse();
  const auto& v = es.eigenvectors();
  return hermitize(v * inv_root.cast<Complex>().asDiagonal() * v.adjoint());
}

PsdMatrix project_psd(const HermitianMatrix& m) {
  require_square(m, "project_psd");
  if (m.size() == 0) return m;
  const auto es = eig(m);
  if (es.eigenvalues().minCoeff() >= 0.0) return hermitize(m);
  const RealVector clamped = es.eigenvalues().cwiseMax(0.0);
  const auto& v = es.eigenvectors();
  return hermitize(v * clamped.cast<Complex>().asDiagonal() * v.adjoint());
}

SvdTriple svd_square_diag(const ComplexMatrix& m) {
  SvdTriple out;
  const Eigen::Index r = std::min(m.rows(), m.cols());
  if (r == 0) {
    out.left = ComplexMatrix(m.rows(), 0);
    out.right = ComplexMatrix(m.cols(), 0);
    return out;
  }
  Eigen::JacobiSVD<ComplexMatrix> svd(m, Eigen::ComputeThinU | Eigen::ComputeThinV);
  // JacobiSVD already sorts nonincreasing; thin factors give r columns each.
  out.left = svd.matrixU();
  out.singular = svd.singularValues();
  out.right = svd.matrixV();
  return out;
}

double relative_frobenius_error(const ComplexMatrix& a, const ComplexMatrix& b) {
  const double denom = std::max(b.norm(), std::numeric_limits<double>::min());
  return (a - b).norm() / denom;
}

double trace_inner(const ComplexMatrix& a, const ComplexMatrix& b) {
  return (a.adjoint() * b).trace().real();
}

}  // namespace wiretap
