#pragma once

#include <span>
#include <string>
#include <vector>

#include "wiretap/channel.hpp"
#include "wiretap/matrix_core.hpp"

namespace wiretap {

// Successive encoding order. Position k (0-based) holds the user encoded
// k-th; users are 0-based internally and 1-based in text.
class EncodingOrder {
 public:
  explicit EncodingOrder(std::vector<int> users);

  static EncodingOrder identity(int k);
  static EncodingOrder from_one_based(const std::vector<int>& users);

  int size() const { return static_cast<int>(users_.size()); }
  int user_at(int position) const { return users_.at(position); }
  int position_of(int user) const { return positions_.at(user); }
  const std::vector<int>& users() const { return users_; }

  std::vector<int> one_based() const;
  std::string to_string() const;  // "[3,1,2]"

  EncodingOrder reversed() const;

  friend bool operator==(const EncodingOrder& a, const EncodingOrder& b) { return a.users_ == b.users_; }
  friend bool operator<(const EncodingOrder& a, const EncodingOrder& b) { return a.users_ < b.users_; }

 private:
  std::vector<int> users_;
  std::vector<int> positions_;
};

enum class PlanSide { kBc, kMac };

// Per-user transmit covariances. BC-side matrices are n_t x n_t; MAC-side
// matrices are n_k x n_k (user k transmits on its own n_k antennas in the
// dual uplink). Indexed by user, not by position.
struct CovariancePlan {
  PlanSide side = PlanSide::kBc;
  std::vector<PsdMatrix> matrices;

  static CovariancePlan zeros(const ChannelSet& ch, PlanSide side);
  // (P / (K n_t)) I for every user.
  static CovariancePlan uniform_identity(const ChannelSet& ch);

  double total_trace() const;
  int size() const { return static_cast<int>(matrices.size()); }
};

// Throws DimensionMismatch when the plan does not fit the channel set.
void check_plan(const ChannelSet& ch, const CovariancePlan& plan, PlanSide expected);

// Per-user rates in nats/sec/Hz. weighted_sum is the weighted sum when the
// evaluator received weights, and the plain sum otherwise.
struct RatePoint {
  std::vector<double> per_user;
  double weighted_sum = 0.0;

  double sum() const;
  // Rates clamped at 0 for reporting; weighted_sum recomputed with weights.
  RatePoint clamped(const WeightVector& w) const;
};

// Secrecy rate of every user under DPC with stochastic encoding: the user's
// log-det ratio minus the eavesdropper's, where the numerator sums the
// covariances at positions >= k and the denominator those at positions > k.
RatePoint dpc_secrecy_rates(const ChannelSet& ch, const EncodingOrder& order, const CovariancePlan& plan);
RatePoint dpc_secrecy_rates(const ChannelSet& ch, const EncodingOrder& order, const CovariancePlan& plan,
                            const WeightVector& w);

// Downlink DPC rates without secrecy.
RatePoint bc_rates(const ChannelSet& ch, const EncodingOrder& order, const CovariancePlan& plan);

// Dual uplink rates: the user at position k sees positions < k as
// interference.
RatePoint mac_rates(const ChannelSet& ch, const EncodingOrder& order, const CovariancePlan& plan);

double weighted_sum(const RatePoint& rates, const WeightVector& w);

// Uplink-side form of the secure WSR:
//   sum_k (w_{pi_k} - w_{pi_{k-1}}) * bracket_k,  w_{pi_0} = 0,
//   bracket_k = log|D_total| - log|D_k| - log|I + sum_{j>=k} Gt_j^H S_j Gt_j|
// where D_k = I + sum_{j<k} H_j^H S_j H_j over positions and Gt_j are the
// effective eavesdropper channels (indexed by position). bracket_k equals the
// sum of the secrecy rates at positions >= k.
double mac_side_objective(const ChannelSet& ch, const EncodingOrder& order, const CovariancePlan& plan,
                          std::span<const ComplexMatrix> effective_eve, const WeightVector& w);

// bracket_k of mac_side_objective, one per position.
std::vector<double> mac_side_brackets(const ChannelSet& ch, const EncodingOrder& order, const CovariancePlan& plan,
                                      std::span<const ComplexMatrix> effective_eve);

namespace positional {

// Secrecy rates with everything already arranged by position.
std::vector<double> secrecy_rates(std::span<const ComplexMatrix> h, const ComplexMatrix& g,
                                  std::span<const ComplexMatrix> q);

// suffix[k] = sum_{j>=k} q[j]; suffix[K] = 0.
std::vector<ComplexMatrix> suffix_sums(std::span<const ComplexMatrix> q, Eigen::Index n);

// log|I + m s m^H|
double logdet_through(const ComplexMatrix& m, const ComplexMatrix& s);

}  // namespace positional

}  // namespace wiretap
