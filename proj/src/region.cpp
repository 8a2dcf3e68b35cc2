#include "wiretap/region.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <ostream>

#include "wiretap/errors.hpp"
#include "wiretap/ordering.hpp"

namespace wiretap {

std::string format_number(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.10g", v);
  return buf;
}

std::vector<WeightVector> weight_grid(int num_users, double step) {
  if (!(step > 0.0) || step > 1.0) throw Error(ErrorKind::kInvalidArgument, "step must lie in (0, 1]");
  if (num_users > 3) throw Error(ErrorKind::kUnsupportedK, "region sweeps support K <= 3");
  if (num_users < 1) throw Error(ErrorKind::kInvalidArgument, "need at least one user");
  const int n = std::max(1, static_cast<int>(std::lround(1.0 / step)));
  std::vector<WeightVector> grid;
  if (num_users == 1) {
    grid.emplace_back(std::vector<double>{1.0});
  } else if (num_users == 2) {
    for (int i = 0; i <= n; ++i) {
      const double w1 = static_cast<double>(i) / n;
      grid.emplace_back(std::vector<double>{w1, 1.0 - w1});
    }
  } else {
    if (step < 0.05 - 1e-12) throw Error(ErrorKind::kInvalidArgument, "K = 3 sweeps need step >= 0.05");
    for (int i = 0; i <= n; ++i)
      for (int j = 0; i + j <= n; ++j) {
        grid.emplace_back(std::vector<double>{static_cast<double>(i) / n, static_cast<double>(j) / n,
                                              static_cast<double>(n - i - j) / n});
      }
  }
  return grid;
}

namespace {

// theorem order plus every permutation that only reorders equal weights.
std::vector<EncodingOrder> tied_orders(const WeightVector& w) {
  const auto base = optimal_order(w);
  std::vector<EncodingOrder> out;
  for (const auto& o : enumerate_orders(w.size())) {
    bool same = true;
    for (int pos = 0; pos < o.size() && same; ++pos) same = w[o.user_at(pos)] == w[base.user_at(pos)];
    if (same) out.push_back(o);
  }
  return out;
}

double cross(const Point2& o, const Point2& a, const Point2& b) {
  return (a[0] - o[0]) * (b[1] - o[1]) - (a[1] - o[1]) * (b[0] - o[0]);
}

}  // namespace

RegionTrace trace_region(const ChannelSet& ch, double step, const OrderPolicy& policy, const SolverConfig& cfg,
                         Execution exec) {
  const auto grid = weight_grid(ch.num_users(), step);
  if (policy.kind == OrderPolicyKind::kFixed) {
    if (!policy.fixed) throw Error(ErrorKind::kInvalidArgument, "fixed policy needs an order");
    if (policy.fixed->size() != ch.num_users()) throw Error(ErrorKind::kDimensionMismatch, "fixed order size differs from K");
  }

  struct Task {
    std::size_t grid_index;
    EncodingOrder order;
  };
  std::vector<Task> tasks;
  for (std::size_t g = 0; g < grid.size(); ++g) {
    switch (policy.kind) {
      case OrderPolicyKind::kTheorem: tasks.push_back({g, optimal_order(grid[g])}); break;
      case OrderPolicyKind::kFixed: tasks.push_back({g, *policy.fixed}); break;
      case OrderPolicyKind::kBothCorners:
        for (auto& o : tied_orders(grid[g])) tasks.push_back({g, std::move(o)});
        break;
    }
  }

  std::vector<std::optional<RegionPoint>> slots(tasks.size());
  for_each_index(tasks.size(), exec, [&](std::size_t i) {
    const auto& t = tasks[i];
    const auto& w = grid[t.grid_index];
    const auto report = solve_wsr(ch, w, t.order, cfg, Execution::kSerial);
    slots[i] = RegionPoint{w, t.order, report.rates, report.termination};
  });

  RegionTrace trace;
  trace.step = step;
  for (auto& s : slots) trace.points.push_back(std::move(*s));
  trace.grid = "simplex K=" + std::to_string(ch.num_users()) + ", " + std::to_string(grid.size()) +
               " weight points, step " + format_number(step);
  return trace;
}

std::vector<Point2> region_hull(const RegionTrace& trace) {
  std::vector<Point2> pts{{0.0, 0.0}};
  double max1 = 0.0, max2 = 0.0;
  for (const auto& p : trace.points) {
    if (p.rates.per_user.size() != 2) throw Error(ErrorKind::kUnsupportedK, "hull is computed for K = 2 only");
    pts.push_back({p.rates.per_user[0], p.rates.per_user[1]});
    max1 = std::max(max1, p.rates.per_user[0]);
    max2 = std::max(max2, p.rates.per_user[1]);
  }
  pts.push_back({max1, 0.0});
  pts.push_back({0.0, max2});

  // Andrew's monotone chain.
  std::sort(pts.begin(), pts.end());
  pts.erase(std::unique(pts.begin(), pts.end()), pts.end());
  if (pts.size() < 3) return pts;
  std::vector<Point2> hull(2 * pts.size());
  std::size_t k = 0;
  for (const auto& p : pts) {
    while (k >= 2 && cross(hull[k - 2], hull[k - 1], p) <= 0.0) --k;
    hull[k++] = p;
  }
  for (std::size_t i = pts.size() - 1, lower = k + 1; i-- > 0;) {
    while (k >= lower && cross(hull[k - 2], hull[k - 1], pts[i]) <= 0.0) --k;
    hull[k++] = pts[i];
  }
  hull.resize(k - 1);
  return hull;
}

void write_region_csv(std::ostream& out, const RegionTrace& trace) {
  if (trace.points.empty()) return;
  const std::size_t kk = trace.points.front().rates.per_user.size();
  for (std::size_t k = 0; k < kk; ++k) out << "w_" << k + 1 << ',';
  for (std::size_t k = 0; k < kk; ++k) out << "R_" << k + 1 << ',';
  out << "wsr,order\n";
  for (const auto& p : trace.points) {
    for (std::size_t k = 0; k < kk; ++k) out << format_number(p.weights[static_cast<int>(k)]) << ',';
    for (std::size_t k = 0; k < kk; ++k) out << format_number(p.rates.per_user[k]) << ',';
    out << format_number(p.rates.weighted_sum) << ',';
    const auto users = p.order.one_based();
    for (std::size_t i = 0; i < users.size(); ++i) out << (i ? " " : "") << users[i];
    out << '\n';
  }
}

void write_hull_csv(std::ostream& out, const std::vector<Point2>& hull) {
  out << "R_1,R_2\n";
  for (const auto& p : hull) out << format_number(p[0]) << ',' << format_number(p[1]) << '\n';
}

}  // namespace wiretap
