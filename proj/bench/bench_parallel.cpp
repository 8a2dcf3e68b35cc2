// Serial reference vs OpenMP loops on the two task-parallel workloads. Prints
// wall times and checks that both paths produced identical numbers.
#include <chrono>
#include <cstdio>
#include <filesystem>

#include "wiretap/channel.hpp"
#include "wiretap/ordering.hpp"
#include "wiretap/region.hpp"

using namespace wiretap;

namespace {

template <typename F>
double seconds(F&& f) {
  const auto t0 = std::chrono::steady_clock::now();
  f();
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

}  // namespace

int main(int argc, char** argv) {
  const std::filesystem::path data = argc > 1 ? argv[1] : WIRETAP_DATA_DIR;
  const auto ex1 = load_channel_set(data / "example1.json");
  const auto ex2 = load_channel_set(data / "example2.json");
  std::printf("threads: %d\n", max_threads());
  bool same = true;

  RegionTrace rs, rp;
  const double ts = seconds([&] { rs = trace_region(ex1, 0.05, OrderPolicy::theorem(), {}, Execution::kSerial); });
  const double tp = seconds([&] { rp = trace_region(ex1, 0.05, OrderPolicy::theorem(), {}, Execution::kParallel); });
  for (std::size_t i = 0; i < rs.points.size(); ++i) same = same && rs.points[i].rates.per_user == rp.points[i].rates.per_user;
  std::printf("trace_region (21 points): serial %.3f s, parallel %.3f s, speedup %.2fx\n", ts, tp, ts / tp);

  const WeightVector w({0.2, 0.1, 0.7});
  OrderComparison cs{{}, EncodingOrder::identity(3), EncodingOrder::identity(3)}, cp = cs;
  const double os = seconds([&] { cs = compare_orders(ex2, w, {}, Execution::kSerial); });
  const double op = seconds([&] { cp = compare_orders(ex2, w, {}, Execution::kParallel); });
  for (std::size_t i = 0; i < cs.per_order.size(); ++i) same = same && cs.per_order[i].wsr == cp.per_order[i].wsr;
  std::printf("compare_orders (6 orders): serial %.3f s, parallel %.3f s, speedup %.2fx\n", os, op, os / op);

  std::printf("results identical: %s\n", same ? "yes" : "NO");
  return same ? 0 : 1;
}
