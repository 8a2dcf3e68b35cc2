#pragma once

#include <cmath>
#include <cstdint>
#include <numbers>
#include <random>

#include "wiretap/matrix_core.hpp"

namespace wiretap {

// Seedable generator used for every random ensemble in the project.
//
// The engine is std::mt19937_64, whose output sequence is fixed by the C++
// standard. The standard distributions are not portable across library
// implementations, so uniforms are built from the top 53 bits of each draw
// and normals use the Box-Muller transform on those uniforms.
class PortableRng {
 public:
  explicit PortableRng(std::uint64_t seed) : engine_(seed) {}

  // Uniform on [0, 1).
  double uniform() { return static_cast<double>(engine_() >> 11) * 0x1.0p-53; }

  double uniform(double lo, double hi) { return lo + (hi - lo) * uniform(); }

  // Uniform integer on [lo, hi].
  int uniform_int(int lo, int hi) {
    const auto span = static_cast<std::uint64_t>(hi - lo + 1);
    return lo + static_cast<int>(engine_() % span);
  }

  // Standard normal. Draws come in Box-Muller pairs; the second is cached.
  double normal() {
    if (has_spare_) {
      has_spare_ = false;
      return spare_;
    }
    const double u1 = 1.0 - uniform();  // (0, 1]
    const double u2 = uniform();
    const double r = std::sqrt(-2.0 * std::log(u1));
    const double angle = 2.0 * std::numbers::pi * u2;
    spare_ = r * std::sin(angle);
    has_spare_ = true;
    return r * std::cos(angle);
  }

  // Circularly-symmetric complex Gaussian with E|z|^2 = 1.
  Complex complex_normal() {
    const double re = normal();
    const double im = normal();
    return {re * std::numbers::sqrt2 / 2.0, im * std::numbers::sqrt2 / 2.0};
  }

  ComplexMatrix complex_gaussian(Eigen::Index rows, Eigen::Index cols) {
    ComplexMatrix m(rows, cols);
    for (Eigen::Index i = 0; i < rows; ++i)
      for (Eigen::Index j = 0; j < cols; ++j) m(i, j) = complex_normal();
    return m;
  }

  // Random PSD matrix X X^H / n with full rank, rescaled to the given trace.
  ComplexMatrix psd_with_trace(Eigen::Index n, double trace) {
    if (n == 0) return ComplexMatrix(0, 0);
    const ComplexMatrix x = complex_gaussian(n, n);
    ComplexMatrix q = hermitize(x * x.adjoint());
    const double t = q.trace().real();
    return t > 0.0 ? ComplexMatrix(q * (trace / t)) : ComplexMatrix(ComplexMatrix::Zero(n, n));
  }

 private:
  std::mt19937_64 engine_;
  double spare_ = 0.0;
  bool has_spare_ = false;
};

}  // namespace wiretap
