#pragma once

#include <complex>

#include <Eigen/Dense>

namespace wiretap {

using Complex = std::complex<double>;
using ComplexMatrix = Eigen::MatrixXcd;
using RealVector = Eigen::VectorXd;

// Hermitian and PSD matrices share the dense representation; the
// predicates below check the invariants where a contract needs them.
using HermitianMatrix = ComplexMatrix;
using PsdMatrix = ComplexMatrix;

inline constexpr double kHermitianTol = 1e-12;
inline constexpr double kPsdTol = 1e-10;
inline constexpr double kRelativeEigFloor = 1e-14;

// E * diag(singular) * F^H with a square diagonal of side min(rows, cols).
struct SvdTriple {
  ComplexMatrix left;
  RealVector singular;  // nonincreasing
  ComplexMatrix right;

  ComplexMatrix singular_matrix() const { return singular.cast<Complex>().asDiagonal(); }
  ComplexMatrix reconstruct() const { return left * singular_matrix() * right.adjoint(); }
};

ComplexMatrix identity(Eigen::Index n);

// (m + m^H) / 2
HermitianMatrix hermitize(const ComplexMatrix& m);

bool is_hermitian(const ComplexMatrix& m, double tol = kHermitianTol);

// Hermitian with smallest eigenvalue >= -tol.
bool is_psd(const ComplexMatrix& m, double tol = kPsdTol);

double min_eigenvalue(const HermitianMatrix& m);

// Natural log of det(m) for Hermitian positive definite m, summed over
// eigenvalues. Throws NonPositiveDefinite when any eigenvalue is
// <= 1e-14 times the largest.
double logdet_hpd(const HermitianMatrix& m);

// log det(m) for m = I + (PSD), via Cholesky. Hot-path variant used by the
// rate evaluators, where the argument is >= I by construction. Falls back to
// logdet_hpd when the factorization fails.
double logdet_identity_plus(const HermitianMatrix& m);

// Principal square root with eigenvalues clamped at 0.
PsdMatrix psd_sqrt(const PsdMatrix& m);

// (m + ridge I)^{-1/2}; throws SingularMatrix when an eigenvalue plus ridge
// is <= 1e-14 times the largest.
HermitianMatrix psd_inv_sqrt(const PsdMatrix& m, double ridge = 0.0);

// Frobenius-nearest PSD matrix: eigenvalues clamped at 0.
PsdMatrix project_psd(const HermitianMatrix& m);

SvdTriple svd_square_diag(const ComplexMatrix& m);

// ||a - b||_F / max(||b||_F, tiny)
double relative_frobenius_error(const ComplexMatrix& a, const ComplexMatrix& b);

// Re tr(a^H b), the real inner product on Hermitian matrices.
double trace_inner(const ComplexMatrix& a, const ComplexMatrix& b);

}  // namespace wiretap
