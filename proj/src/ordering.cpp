#include "wiretap/ordering.hpp"

#include <algorithm>
#include <limits>
#include <numeric>

#include "wiretap/errors.hpp"

namespace wiretap {

EncodingOrder optimal_order(const WeightVector& w) {
  std::vector<int> users(static_cast<std::size_t>(w.size()));
  std::iota(users.begin(), users.end(), 0);
  std::stable_sort(users.begin(), users.end(), [&](int a, int b) { return w[a] > w[b]; });
  return EncodingOrder(std::move(users));
}

std::vector<EncodingOrder> enumerate_orders(int num_users) {
  if (num_users < 1) throw Error(ErrorKind::kInvalidArgument, "need at least one user");
  if (num_users > kMaxEnumeratedUsers) {
    throw Error(ErrorKind::kTooManyUsers, "order enumeration is capped at K = 6");
  }
  std::vector<int> p(static_cast<std::size_t>(num_users));
  std::iota(p.begin(), p.end(), 0);
  std::vector<EncodingOrder> out;
  do {
    out.emplace_back(p);
  } while (std::next_permutation(p.begin(), p.end()));
  return out;
}

bool OrderComparison::theorem_confirmed(const WeightVector& w) const {
  for (int pos = 0; pos < best_order.size(); ++pos) {
    if (w[best_order.user_at(pos)] != w[theorem_order.user_at(pos)]) return false;
  }
  return true;
}

OrderComparison compare_orders(const ChannelSet& ch, const WeightVector& w, const SolverConfig& cfg, Execution exec) {
  if (w.size() != ch.num_users()) throw Error(ErrorKind::kLengthMismatch, "weight vector length differs from K");
  const auto orders = enumerate_orders(ch.num_users());
  std::vector<OrderResult> results;
  results.reserve(orders.size());
  for (const auto& o : orders) results.push_back(OrderResult{o, 0.0, {}, Termination::kConverged, std::nullopt});

  // Each permutation gets a sequential solve; the per-order solves are the
  // parallel unit.
  for_each_index(orders.size(), exec, [&](std::size_t i) {
    auto& r = results[i];
    try {
      const auto report = solve_wsr(ch, w, r.order, cfg, Execution::kSerial);
      r.rates = report.rates;
      r.wsr = report.rates.weighted_sum;
      r.termination = report.termination;
    } catch (const Error& e) {
      r.error = e.what();
      r.wsr = -std::numeric_limits<double>::infinity();
    }
  });

  std::size_t best = 0;
  for (std::size_t i = 1; i < results.size(); ++i) {
    if (results[i].wsr > results[best].wsr + kOrderTieResolution) best = i;
  }
  return OrderComparison{std::move(results), orders[best], optimal_order(w)};
}

}  // namespace wiretap
