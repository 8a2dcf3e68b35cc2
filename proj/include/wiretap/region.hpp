#pragma once

#include <array>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "wiretap/channel.hpp"
#include "wiretap/parallel.hpp"
#include "wiretap/rates.hpp"
#include "wiretap/solver.hpp"

namespace wiretap {

enum class OrderPolicyKind { kTheorem, kFixed, kBothCorners };

struct OrderPolicy {
  OrderPolicyKind kind = OrderPolicyKind::kTheorem;
  std::optional<EncodingOrder> fixed;  // required for kFixed

  static OrderPolicy theorem() { return {}; }
  static OrderPolicy fixed_order(EncodingOrder o) { return {OrderPolicyKind::kFixed, std::move(o)}; }
  static OrderPolicy both_corners() { return {OrderPolicyKind::kBothCorners, std::nullopt}; }
};

struct RegionPoint {
  WeightVector weights;
  EncodingOrder order;
  RatePoint rates;  // clamped
  Termination termination = Termination::kConverged;
};

struct RegionTrace {
  std::vector<RegionPoint> points;  // by grid index, then by order
  double step = 0.0;
  std::string grid;  // e.g. "simplex K=2, 101 points, step 0.01"
};

// Weight vectors on the simplex with spacing 1/n, n = round(1/step).
// K = 1: the single point (1). K = 2: w_1 = 0, 1/n, ..., 1. K = 3: all
// (i, j, n-i-j)/n, which needs step >= 0.05.
std::vector<WeightVector> weight_grid(int num_users, double step);

// Solves the WSR for every grid weight. Under kTheorem each point uses
// optimal_order(w); kBothCorners also runs every reordering of tied users.
RegionTrace trace_region(const ChannelSet& ch, double step, const OrderPolicy& policy, const SolverConfig& cfg = {},
                         Execution exec = Execution::kSerial);

using Point2 = std::array<double, 2>;

// Convex hull, counter-clockwise, of the rate pairs together with the
// origin and the two axis projections (the downward-closed convex closure).
// K = 2 only.
std::vector<Point2> region_hull(const RegionTrace& trace);

// CSV writers: header row, 10 significant digits, order as "1 2 3".
void write_region_csv(std::ostream& out, const RegionTrace& trace);
void write_hull_csv(std::ostream& out, const std::vector<Point2>& hull);

std::string format_number(double v);  // %.10g

}  // namespace wiretap
