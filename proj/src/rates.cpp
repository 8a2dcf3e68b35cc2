#include "wiretap/rates.hpp"

#include <algorithm>
#include <numeric>
#include <sstream>

#include "wiretap/errors.hpp"

namespace wiretap {

EncodingOrder::EncodingOrder(std::vector<int> users) : users_(std::move(users)), positions_(users_.size(), -1) {
  const int k = static_cast<int>(users_.size());
  if (k == 0) throw Error(ErrorKind::kInvalidArgument, "encoding order is empty");
  for (int pos = 0; pos < k; ++pos) {
    const int u = users_[pos];
    if (u < 0 || u >= k || positions_[u] != -1) {
      throw Error(ErrorKind::kInvalidArgument, "encoding order is not a permutation");
    }
    positions_[u] = pos;
  }
}

EncodingOrder EncodingOrder::identity(int k) {
  std::vector<int> u(static_cast<std::size_t>(k));
  std::iota(u.begin(), u.end(), 0);
  return EncodingOrder(std::move(u));
}

EncodingOrder EncodingOrder::from_one_based(const std::vector<int>& users) {
  std::vector<int> u(users);
  for (int& x : u) --x;
  return EncodingOrder(std::move(u));
}

std::vector<int> EncodingOrder::one_based() const {
  std::vector<int> u(users_);
  for (int& x : u) ++x;
  return u;
}

std::string EncodingOrder::to_string() const {
  std::ostringstream os;
  os << '[';
  for (std::size_t i = 0; i < users_.size(); ++i) os << (i ? "," : "") << users_[i] + 1;
  os << ']';
  return os.str();
}

EncodingOrder EncodingOrder::reversed() const { return EncodingOrder(std::vector<int>(users_.rbegin(), users_.rend())); }

CovariancePlan CovariancePlan::zeros(const ChannelSet& ch, PlanSide side) {
  CovariancePlan p;
  p.side = side;
  for (int k = 0; k < ch.num_users(); ++k) {
    const Eigen::Index n = side == PlanSide::kBc ? ch.tx_antennas() : ch.user_antennas(k);
    p.matrices.push_back(ComplexMatrix::Zero(n, n));
  }
  return p;
}

CovariancePlan CovariancePlan::uniform_identity(const ChannelSet& ch) {
  CovariancePlan p;
  const Eigen::Index nt = ch.tx_antennas();
  const double scale = ch.power() / (static_cast<double>(ch.num_users()) * static_cast<double>(nt));
  p.matrices.assign(static_cast<std::size_t>(ch.num_users()), scale * identity(nt));
  return p;
}

double CovariancePlan::total_trace() const {
  double t = 0.0;
  for (const auto& m : matrices) t += m.trace().real();
  return t;
}

void check_plan(const ChannelSet& ch, const CovariancePlan& plan, PlanSide expected) {
  if (plan.side != expected) {
    throw Error(ErrorKind::kInvalidArgument, expected == PlanSide::kBc ? "expected a BC-side plan" : "expected a MAC-side plan");
  }
  if (plan.size() != ch.num_users()) throw Error(ErrorKind::kDimensionMismatch, "plan has the wrong number of users");
  for (int k = 0; k < plan.size(); ++k) {
    const Eigen::Index n = expected == PlanSide::kBc ? ch.tx_antennas() : ch.user_antennas(k);
    const auto& m = plan.matrices[static_cast<std::size_t>(k)];
    if (m.rows() != n || m.cols() != n) {
      throw Error(ErrorKind::kDimensionMismatch, "covariance of user " + std::to_string(k + 1) + " has the wrong shape");
    }
  }
}

double RatePoint::sum() const { return std::accumulate(per_user.begin(), per_user.end(), 0.0); }

RatePoint RatePoint::clamped(const WeightVector& w) const {
  RatePoint out;
  out.per_user = per_user;
  for (double& r : out.per_user) r = std::max(r, 0.0);
  out.weighted_sum = wiretap::weighted_sum(out, w);
  return out;
}

namespace positional {

std::vector<ComplexMatrix> suffix_sums(std::span<const ComplexMatrix> q, Eigen::Index n) {
  std::vector<ComplexMatrix> s(q.size() + 1, ComplexMatrix::Zero(n, n));
  for (std::size_t k = q.size(); k-- > 0;) s[k] = s[k + 1] + q[k];
  return s;
}

double logdet_through(const ComplexMatrix& m, const ComplexMatrix& s) {
  return logdet_identity_plus(hermitize(identity(m.rows()) + m * s * m.adjoint()));
}

std::vector<double> secrecy_rates(std::span<const ComplexMatrix> h, const ComplexMatrix& g,
                                  std::span<const ComplexMatrix> q) {
  const auto s = suffix_sums(q, g.cols());
  std::vector<double> r(q.size());
  std::vector<double> eve(q.size() + 1, 0.0);
  for (std::size_t k = 0; k < q.size(); ++k) eve[k] = logdet_through(g, s[k]);
  for (std::size_t k = 0; k < q.size(); ++k) {
    r[k] = logdet_through(h[k], s[k]) - logdet_through(h[k], s[k + 1]) - (eve[k] - eve[k + 1]);
  }
  return r;
}

}  // namespace positional

namespace {

struct Arranged {
  std::vector<ComplexMatrix> h;
  std::vector<ComplexMatrix> q;
};

Arranged arrange(const ChannelSet& ch, const EncodingOrder& order, const CovariancePlan& plan) {
  if (order.size() != ch.num_users()) throw Error(ErrorKind::kDimensionMismatch, "order size differs from K");
  Arranged a;
  for (int pos = 0; pos < order.size(); ++pos) {
    const int u = order.user_at(pos);
    a.h.push_back(ch.user(u));
    a.q.push_back(plan.matrices[static_cast<std::size_t>(u)]);
  }
  return a;
}

RatePoint by_user(const EncodingOrder& order, const std::vector<double>& by_position) {
  RatePoint rp;
  rp.per_user.assign(by_position.size(), 0.0);
  for (int pos = 0; pos < order.size(); ++pos) rp.per_user[static_cast<std::size_t>(order.user_at(pos))] = by_position[pos];
  rp.weighted_sum = rp.sum();
  return rp;
}

}  // namespace

RatePoint dpc_secrecy_rates(const ChannelSet& ch, const EncodingOrder& order, const CovariancePlan& plan) {
  check_plan(ch, plan, PlanSide::kBc);
  const auto a = arrange(ch, order, plan);
  return by_user(order, positional::secrecy_rates(a.h, ch.eavesdropper(), a.q));
}

RatePoint dpc_secrecy_rates(const ChannelSet& ch, const EncodingOrder& order, const CovariancePlan& plan,
                            const WeightVector& w) {
  RatePoint rp = dpc_secrecy_rates(ch, order, plan);
  rp.weighted_sum = weighted_sum(rp, w);
  return rp;
}

RatePoint bc_rates(const ChannelSet& ch, const EncodingOrder& order, const CovariancePlan& plan) {
  check_plan(ch, plan, PlanSide::kBc);
  const auto a = arrange(ch, order, plan);
  const auto s = positional::suffix_sums(a.q, ch.tx_antennas());
  std::vector<double> r(a.q.size());
  for (std::size_t k = 0; k < a.q.size(); ++k) {
    r[k] = positional::logdet_through(a.h[k], s[k]) - positional::logdet_through(a.h[k], s[k + 1]);
  }
  return by_user(order, r);
}

namespace {

// d[k] = I + sum_{j<k} H_j^H S_j H_j, k = 0..K
std::vector<ComplexMatrix> uplink_ladder(const Arranged& a, Eigen::Index nt) {
  std::vector<ComplexMatrix> d(a.q.size() + 1, identity(nt));
  for (std::size_t k = 0; k < a.q.size(); ++k) {
    d[k + 1] = hermitize(d[k] + a.h[k].adjoint() * a.q[k] * a.h[k]);
  }
  return d;
}

}  // namespace

RatePoint mac_rates(const ChannelSet& ch, const EncodingOrder& order, const CovariancePlan& plan) {
  check_plan(ch, plan, PlanSide::kMac);
  const auto a = arrange(ch, order, plan);
  const auto d = uplink_ladder(a, ch.tx_antennas());
  std::vector<double> r(a.q.size());
  for (std::size_t k = 0; k < a.q.size(); ++k) r[k] = logdet_identity_plus(d[k + 1]) - logdet_identity_plus(d[k]);
  return by_user(order, r);
}

double weighted_sum(const RatePoint& rates, const WeightVector& w) {
  if (static_cast<int>(rates.per_user.size()) != w.size()) {
    throw Error(ErrorKind::kLengthMismatch, "rate and weight vectors differ in length");
  }
  double acc = 0.0;
  for (int k = 0; k < w.size(); ++k) acc += w[k] * rates.per_user[static_cast<std::size_t>(k)];
  return acc;
}

std::vector<double> mac_side_brackets(const ChannelSet& ch, const EncodingOrder& order, const CovariancePlan& plan,
                                      std::span<const ComplexMatrix> effective_eve) {
  check_plan(ch, plan, PlanSide::kMac);
  const int kk = ch.num_users();
  if (static_cast<int>(effective_eve.size()) != kk) {
    throw Error(ErrorKind::kDimensionMismatch, "one effective eavesdropper channel per position required");
  }
  const auto a = arrange(ch, order, plan);
  const Eigen::Index ne = ch.eve_antennas();
  for (int pos = 0; pos < kk; ++pos) {
    const auto& gt = effective_eve[static_cast<std::size_t>(pos)];
    if (gt.rows() != a.q[pos].rows() || gt.cols() != ne) {
      throw Error(ErrorKind::kDimensionMismatch, "effective eavesdropper channel has the wrong shape");
    }
  }
  const auto d = uplink_ladder(a, ch.tx_antennas());
  const double total = logdet_identity_plus(d[kk]);
  std::vector<double> brackets(static_cast<std::size_t>(kk));
  ComplexMatrix eve = identity(ne);
  for (int pos = kk; pos-- > 0;) {
    const auto& gt = effective_eve[static_cast<std::size_t>(pos)];
    eve = hermitize(eve + gt.adjoint() * a.q[pos] * gt);
    brackets[pos] = total - logdet_identity_plus(d[pos]) - logdet_identity_plus(eve);
  }
  return brackets;
}

double mac_side_objective(const ChannelSet& ch, const EncodingOrder& order, const CovariancePlan& plan,
                          std::span<const ComplexMatrix> effective_eve, const WeightVector& w) {
  if (w.size() != ch.num_users()) throw Error(ErrorKind::kLengthMismatch, "weight vector length differs from K");
  const auto brackets = mac_side_brackets(ch, order, plan, effective_eve);
  double acc = 0.0;
  double prev = 0.0;
  for (int pos = 0; pos < order.size(); ++pos) {
    const double wk = w[order.user_at(pos)];
    acc += (wk - prev) * brackets[pos];
    prev = wk;
  }
  return acc;
}

}  // namespace wiretap
