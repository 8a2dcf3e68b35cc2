#pragma once

#include <optional>
#include <string>
#include <vector>

#include "wiretap/channel.hpp"
#include "wiretap/parallel.hpp"
#include "wiretap/rates.hpp"
#include "wiretap/solver.hpp"

namespace wiretap {

inline constexpr int kMaxEnumeratedUsers = 6;
inline constexpr double kOrderTieResolution = 1e-6;

// Users by nonincreasing weight, ties by ascending index: the
// highest-weight user is encoded first.
EncodingOrder optimal_order(const WeightVector& w);

// All K! orders in lexicographic sequence; K <= 6.
std::vector<EncodingOrder> enumerate_orders(int num_users);

struct OrderResult {
  EncodingOrder order;
  double wsr = 0.0;
  RatePoint rates;
  Termination termination = Termination::kConverged;
  std::optional<std::string> error;  // solver failure for this order
};

struct OrderComparison {
  std::vector<OrderResult> per_order;  // lexicographic
  EncodingOrder best_order;
  EncodingOrder theorem_order;

  // True when best_order puts the same weights at every position as
  // theorem_order, i.e. differs only by swapping tied users.
  bool theorem_confirmed(const WeightVector& w) const;
};

// Solves the WSR under every permutation. best_order is the argmax, with
// lexicographically earlier orders kept unless beaten by more than 1e-6.
OrderComparison compare_orders(const ChannelSet& ch, const WeightVector& w, const SolverConfig& cfg = {},
                               Execution exec = Execution::kSerial);

}  // namespace wiretap
