#include <doctest.h>

#include <Eigen/Eigenvalues>

#include "support.hpp"
#include "wiretap/errors.hpp"
#include "wiretap/matrix_core.hpp"
#include "wiretap/random.hpp"

using namespace wiretap;

namespace {

ComplexMatrix random_hpd(PortableRng& rng, Eigen::Index n) {
  const auto x = rng.complex_gaussian(n, n);
  return hermitize(x * x.adjoint() + 0.1 * identity(n));
}

}  // namespace

TEST_CASE("logdet agrees with the LU determinant") {
  PortableRng rng(11);
  for (int trial = 0; trial < 50; ++trial) {
    const auto m = random_hpd(rng, rng.uniform_int(1, 4));
    CHECK(logdet_hpd(m) == doctest::Approx(oracle::lu_logdet(m)).epsilon(1e-10));
    const ComplexMatrix ip = identity(m.rows()) + m;
    CHECK(logdet_identity_plus(ip) == doctest::Approx(oracle::lu_logdet(ip)).epsilon(1e-10));
  }
}

TEST_CASE("logdet rejects singular and indefinite input") {
  ComplexMatrix m = ComplexMatrix::Zero(2, 2);
  m(0, 0) = 1.0;
  CHECK_THROWS_AS(logdet_hpd(m), Error);
  m(1, 1) = -0.5;
  try {
    logdet_hpd(m);
    FAIL("no throw");
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::kNonPositiveDefinite);
  }
}

TEST_CASE("square roots") {
  PortableRng rng(12);
  for (int trial = 0; trial < 30; ++trial) {
    const auto m = random_hpd(rng, rng.uniform_int(1, 4));
    const auto r = psd_sqrt(m);
    CHECK(relative_frobenius_error(r * r, m) < 1e-10);
    const auto ri = psd_inv_sqrt(m);
    CHECK(relative_frobenius_error(ri * m * ri, identity(m.rows())) < 1e-9);
  }
  CHECK_THROWS_AS(psd_inv_sqrt(ComplexMatrix::Zero(2, 2)), Error);
  CHECK(relative_frobenius_error(psd_inv_sqrt(ComplexMatrix::Zero(2, 2), 4.0), 0.5 * identity(2)) < 1e-14);
  CHECK_THROWS_AS(psd_inv_sqrt(identity(2), -1.0), Error);
}

TEST_CASE("PSD projection clamps the spectrum") {
  PortableRng rng(13);
  for (int trial = 0; trial < 30; ++trial) {
    const Eigen::Index n = rng.uniform_int(1, 4);
    const auto x = rng.complex_gaussian(n, n);
    const auto h = hermitize(x + x.adjoint());
    const auto p = project_psd(h);
    CHECK(is_psd(p));
    // Oracle: general complex eigensolver, clamp, rebuild.
    Eigen::ComplexEigenSolver<ComplexMatrix> ces(h);
    ComplexMatrix v = ces.eigenvectors();
    Eigen::VectorXcd d = ces.eigenvalues();
    for (Eigen::Index i = 0; i < n; ++i) d(i) = std::max(d(i).real(), 0.0);
    const ComplexMatrix ref = v * d.asDiagonal() * v.inverse();
    CHECK(relative_frobenius_error(p, ref) < 1e-9);
    // Idempotent, and no PSD matrix is closer.
    CHECK(relative_frobenius_error(project_psd(p), p) < 1e-12);
    const auto other = rng.psd_with_trace(n, 1.0);
    CHECK((h - p).norm() <= (h - other).norm() + 1e-12);
  }
}

TEST_CASE("thin SVD reconstructs") {
  PortableRng rng(14);
  for (int trial = 0; trial < 30; ++trial) {
    const auto m = rng.complex_gaussian(rng.uniform_int(1, 4), rng.uniform_int(1, 4));
    const auto s = svd_square_diag(m);
    const auto r = std::min(m.rows(), m.cols());
    CHECK(s.singular.size() == r);
    CHECK(s.left.cols() == r);
    CHECK(s.right.cols() == r);
    CHECK(relative_frobenius_error(s.reconstruct(), m) < 1e-12);
    for (Eigen::Index i = 1; i < r; ++i) CHECK(s.singular(i) <= s.singular(i - 1));
  }
}

TEST_CASE("predicates") {
  ComplexMatrix m(2, 2);
  m << 1.0, std::complex<double>(0, 1), std::complex<double>(0, -1), 2.0;
  CHECK(is_hermitian(m));
  CHECK(is_psd(m));
  m(0, 1) += 1e-6;
  CHECK_FALSE(is_hermitian(m));
  CHECK(trace_inner(identity(2), identity(2)) == doctest::Approx(2.0));
}
