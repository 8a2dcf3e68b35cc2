#pragma once

// Oracles used by the unit and acceptance tests. None of them call into the
// library's numerical routines: determinants come from LU, rates from the
// definitions summed user by user, capacities from closed forms or grids.

#include <Eigen/Dense>

#include <algorithm>
#include <cmath>
#include <complex>
#include <filesystem>
#include <vector>

#include "wiretap/channel.hpp"
#include "wiretap/rates.hpp"

namespace oracle {

using wiretap::ComplexMatrix;

inline wiretap::ChannelSet example1() {
  ComplexMatrix h1(2, 2), h2(2, 2), g(1, 2);
  h1 << 1.0, -0.5, 0.5, 2.0;
  h2 << -0.3, 1.0, 2.0, -0.4;
  g << 0.8, -1.6;
  return wiretap::ChannelSet({h1, h2}, g, 1.0);
}

inline wiretap::ChannelSet example2() {
  using C = std::complex<double>;
  ComplexMatrix h1(2, 2), h2(2, 2), h3(2, 2), g(1, 2);
  h1 << C(-0.4332, 0.7954), C(-0.3152, -1.8835), C(-1.0443, 1.2282), C(-0.2614, 0.2198);
  h2 << C(1.3389, -0.5995), C(-0.6924, -0.4542), C(-1.2542, 0.1338), C(-2.1644, 0.6520);
  h3 << C(1.0291, -0.0212), C(-0.3016, -0.3662), C(0.1646, 0.5179), C(0.3075, 0.2919);
  g << C(-0.0875, -0.9443), C(-0.4637, 0.7799);
  return wiretap::ChannelSet({h1, h2, h3}, g, 1.0);
}

inline std::filesystem::path data_dir() { return WIRETAP_DATA_DIR; }

inline double lu_logdet(const ComplexMatrix& m) { return std::log(std::abs(m.partialPivLu().determinant())); }

inline double logdet_through(const ComplexMatrix& h, const ComplexMatrix& s) {
  return lu_logdet(ComplexMatrix::Identity(h.rows(), h.rows()) + h * s * h.adjoint());
}

// Covariance sum over the users encoded at positions >= from.
inline ComplexMatrix tail_sum(const wiretap::EncodingOrder& order, const std::vector<ComplexMatrix>& q, int from,
                              Eigen::Index nt) {
  ComplexMatrix s = ComplexMatrix::Zero(nt, nt);
  for (int pos = from; pos < order.size(); ++pos) s += q[static_cast<std::size_t>(order.user_at(pos))];
  return s;
}

// Secrecy rate of every user, by user index, straight from the definition.
inline std::vector<double> secrecy_rates(const wiretap::ChannelSet& ch, const wiretap::EncodingOrder& order,
                                         const std::vector<ComplexMatrix>& q) {
  std::vector<double> r(static_cast<std::size_t>(ch.num_users()));
  const auto nt = ch.tx_antennas();
  for (int pos = 0; pos < order.size(); ++pos) {
    const int u = order.user_at(pos);
    const auto with = tail_sum(order, q, pos, nt);
    const auto without = tail_sum(order, q, pos + 1, nt);
    r[static_cast<std::size_t>(u)] = logdet_through(ch.user(u), with) - logdet_through(ch.user(u), without) -
                                     logdet_through(ch.eavesdropper(), with) +
                                     logdet_through(ch.eavesdropper(), without);
  }
  return r;
}

// log|I + H Q H^H| maximized over tr Q <= P: water-filling on the
// eigenvalues of H^H H.
inline double waterfill_capacity(const ComplexMatrix& h, double power) {
  Eigen::SelfAdjointEigenSolver<ComplexMatrix> es(h.adjoint() * h);
  std::vector<double> g;
  for (Eigen::Index i = 0; i < es.eigenvalues().size(); ++i)
    if (es.eigenvalues()(i) > 1e-14) g.push_back(es.eigenvalues()(i));
  std::sort(g.rbegin(), g.rend());
  double best = 0.0;
  for (std::size_t m = g.size(); m >= 1; --m) {
    double inv = 0.0;
    for (std::size_t i = 0; i < m; ++i) inv += 1.0 / g[i];
    const double mu = (power + inv) / static_cast<double>(m);
    if (mu - 1.0 / g[m - 1] < 0.0) continue;
    for (std::size_t i = 0; i < m; ++i) best += std::log(mu * g[i]);
    break;
  }
  return best;
}

inline double det2(double a, double b, double c) { return a * c - b * b; }  // [[a b][b c]]

// max over real PSD Q = R(theta) diag(p1, p2) R(theta)^T with p1 + p2 <= P
// of log|I + H Q H^T| - log|I + G Q G^T|, H and G real 2 x 2. Grid with n
// steps along theta in [0, pi) and along each power axis. Returns at least 0
// (Q = 0 is on the grid).
inline double wiretap_grid_2x2(const Eigen::Matrix2d& h, const Eigen::Matrix2d& g, double power, int n) {
  const Eigen::Matrix2d hh = h.transpose() * h, gg = g.transpose() * g;
  double best = 0.0;
  for (int t = 0; t < n; ++t) {
    const double th = M_PI * t / n;
    Eigen::Matrix2d rot;
    rot << std::cos(th), -std::sin(th), std::sin(th), std::cos(th);
    const Eigen::Matrix2d hr = rot.transpose() * hh * rot, gr = rot.transpose() * gg * rot;
    for (int i = 0; i <= n; ++i) {
      const double p1 = power * i / n;
      for (int j = 0; i + j <= n; ++j) {
        const double p2 = power * j / n;
        // |I + H Q H^T| = |I + D^{1/2} R^T H^T H R D^{1/2}|
        const double s1 = std::sqrt(p1), s2 = std::sqrt(p2);
        const double num = det2(1 + p1 * hr(0, 0), s1 * s2 * hr(0, 1), 1 + p2 * hr(1, 1));
        const double den = det2(1 + p1 * gr(0, 0), s1 * s2 * gr(0, 1), 1 + p2 * gr(1, 1));
        best = std::max(best, std::log(num / den));
      }
    }
  }
  return best;
}

// Central finite-difference gradient of f at Q along the Hermitian basis,
// returned in the convention f(Q + dQ) ~ f(Q) + Re tr(A dQ).
template <typename F>
ComplexMatrix fd_gradient(const ComplexMatrix& q, F&& f, double h) {
  const auto n = q.rows();
  ComplexMatrix a = ComplexMatrix::Zero(n, n);
  auto diff = [&](const ComplexMatrix& e) {
    return (f(ComplexMatrix(q + h * e)) - f(ComplexMatrix(q - h * e))) / (2.0 * h);
  };
  for (Eigen::Index i = 0; i < n; ++i) {
    ComplexMatrix e = ComplexMatrix::Zero(n, n);
    e(i, i) = 1.0;
    a(i, i) = diff(e);
    for (Eigen::Index j = i + 1; j < n; ++j) {
      ComplexMatrix er = ComplexMatrix::Zero(n, n), ei = ComplexMatrix::Zero(n, n);
      er(i, j) = er(j, i) = 1.0;
      ei(i, j) = std::complex<double>(0, 1);
      ei(j, i) = std::complex<double>(0, -1);
      // Re tr(A er) = 2 Re A_ij, Re tr(A ei) = 2 Im A_ij for Hermitian A.
      a(i, j) = std::complex<double>(diff(er), diff(ei)) / 2.0;
      a(j, i) = std::conj(a(i, j));
    }
  }
  return a;
}

}  // namespace oracle
