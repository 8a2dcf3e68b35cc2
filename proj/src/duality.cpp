#include "wiretap/duality.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "wiretap/errors.hpp"
#include "wiretap/random.hpp"

namespace wiretap {

namespace {

// Transformed matrices may carry eigenvalues in [-1e-10, 0) from rounding.
PsdMatrix clean(const ComplexMatrix& m) {
  return project_psd(hermitize(m));
}

struct PositionFactors {
  HermitianMatrix c_inv_sqrt;
  HermitianMatrix c_sqrt;
  HermitianMatrix d_inv_sqrt;
  HermitianMatrix d_sqrt;
  SvdTriple svd;
  ComplexMatrix fe;  // F E^H, n_k x n_t
};

PositionFactors factor(const ComplexMatrix& h, const PsdMatrix& c, const PsdMatrix& d) {
  PositionFactors f;
  f.c_inv_sqrt = psd_inv_sqrt(c);
  f.c_sqrt = psd_sqrt(c);
  f.d_inv_sqrt = psd_inv_sqrt(d);
  f.d_sqrt = psd_sqrt(d);
  f.svd = svd_square_diag(f.d_inv_sqrt * h.adjoint() * f.c_inv_sqrt);
  f.fe = f.svd.right * f.svd.left.adjoint();
  return f;
}

ComplexMatrix effective_eve(const PositionFactors& f, const ComplexMatrix& g) {
  return f.c_sqrt * f.fe * f.d_inv_sqrt * g.adjoint();
}

DualityContext empty_context(const EncodingOrder& order, int k) {
  DualityContext ctx{order, {}, {}, {}, {}, {}, {}};
  ctx.c.resize(static_cast<std::size_t>(k));
  ctx.d.resize(static_cast<std::size_t>(k));
  ctx.svd.resize(static_cast<std::size_t>(k));
  ctx.effective_eve.resize(static_cast<std::size_t>(k));
  return ctx;
}

void require_order(const ChannelSet& ch, const EncodingOrder& order) {
  if (order.size() != ch.num_users()) throw Error(ErrorKind::kDimensionMismatch, "order size differs from K");
}

}  // namespace

DualityContext build_context_from_bc(const ChannelSet& ch, const EncodingOrder& order, const CovariancePlan& bc) {
  check_plan(ch, bc, PlanSide::kBc);
  require_order(ch, order);
  const int kk = ch.num_users();
  const Eigen::Index nt = ch.tx_antennas();
  DualityContext ctx = empty_context(order, kk);
  ctx.bc = bc;
  ctx.mac = CovariancePlan::zeros(ch, PlanSide::kMac);

  ComplexMatrix later = ComplexMatrix::Zero(nt, nt);
  for (int pos = kk; pos-- > 0;) {
    const auto& h = ch.user(order.user_at(pos));
    ctx.c[pos] = hermitize(identity(h.rows()) + h * later * h.adjoint());
    later += bc.matrices[static_cast<std::size_t>(order.user_at(pos))];
  }

  ComplexMatrix d = identity(nt);
  for (int pos = 0; pos < kk; ++pos) {
    const int u = order.user_at(pos);
    const auto& h = ch.user(u);
    ctx.d[pos] = d;
    const auto f = factor(h, ctx.c[pos], d);
    const auto& q = bc.matrices[static_cast<std::size_t>(u)];
    // S = C^{-1/2} F E^H D^{1/2} Q D^{1/2} E F^H C^{-1/2}
    const ComplexMatrix t = f.c_inv_sqrt * f.fe * f.d_sqrt;
    const PsdMatrix s = clean(t * q * t.adjoint());
    ctx.mac.matrices[static_cast<std::size_t>(u)] = s;
    ctx.svd[pos] = f.svd;
    ctx.effective_eve[pos] = effective_eve(f, ch.eavesdropper());
    d = hermitize(d + h.adjoint() * s * h);
  }
  return ctx;
}

DualityContext build_context_from_mac(const ChannelSet& ch, const EncodingOrder& order, const CovariancePlan& mac) {
  check_plan(ch, mac, PlanSide::kMac);
  require_order(ch, order);
  const int kk = ch.num_users();
  const Eigen::Index nt = ch.tx_antennas();
  DualityContext ctx = empty_context(order, kk);
  ctx.mac = mac;
  ctx.bc = CovariancePlan::zeros(ch, PlanSide::kBc);

  ComplexMatrix d = identity(nt);
  for (int pos = 0; pos < kk; ++pos) {
    const int u = order.user_at(pos);
    const auto& h = ch.user(u);
    ctx.d[pos] = d;
    d = hermitize(d + h.adjoint() * mac.matrices[static_cast<std::size_t>(u)] * h);
  }

  ComplexMatrix later = ComplexMatrix::Zero(nt, nt);
  for (int pos = kk; pos-- > 0;) {
    const int u = order.user_at(pos);
    const auto& h = ch.user(u);
    ctx.c[pos] = hermitize(identity(h.rows()) + h * later * h.adjoint());
    const auto f = factor(h, ctx.c[pos], ctx.d[pos]);
    const auto& s = mac.matrices[static_cast<std::size_t>(u)];
    // Q = D^{-1/2} E F^H C^{1/2} S C^{1/2} F E^H D^{-1/2}
    const ComplexMatrix t = f.d_inv_sqrt * f.fe.adjoint() * f.c_sqrt;
    const PsdMatrix q = clean(t * s * t.adjoint());
    ctx.bc.matrices[static_cast<std::size_t>(u)] = q;
    ctx.svd[pos] = f.svd;
    ctx.effective_eve[pos] = effective_eve(f, ch.eavesdropper());
    later += q;
  }
  return ctx;
}

CovariancePlan bc_to_mac(const ChannelSet& ch, const EncodingOrder& order, const CovariancePlan& bc) {
  return build_context_from_bc(ch, order, bc).mac;
}

CovariancePlan mac_to_bc(const ChannelSet& ch, const EncodingOrder& order, const CovariancePlan& mac) {
  return build_context_from_mac(ch, order, mac).bc;
}

std::vector<ComplexMatrix> effective_eve_channels(const DualityContext& ctx) { return ctx.effective_eve; }

namespace {

double max_abs_gap(const RatePoint& a, const RatePoint& b) {
  double gap = 0.0;
  for (std::size_t k = 0; k < a.per_user.size(); ++k) gap = std::max(gap, std::abs(a.per_user[k] - b.per_user[k]));
  return gap;
}

double ladder_floor(const DualityContext& ctx) {
  double m = std::numeric_limits<double>::infinity();
  for (const auto& c : ctx.c) m = std::min(m, min_eigenvalue(c));
  for (const auto& d : ctx.d) m = std::min(m, min_eigenvalue(d));
  return m;
}

}  // namespace

DualityCase run_duality_case(std::uint64_t seed) {
  PortableRng rng(seed);
  DualityCase dc;
  dc.seed = seed;
  dc.num_users = rng.uniform_int(1, 3);
  dc.tx_antennas = rng.uniform_int(1, 3);
  for (int k = 0; k < dc.num_users; ++k) dc.user_antennas.push_back(rng.uniform_int(1, 3));
  dc.eve_antennas = rng.uniform_int(1, 2);
  const double power = rng.uniform(0.5, 10.0);
  const auto ch = sample_channel_set(seed ^ 0x9e3779b97f4a7c15ULL, dc.num_users, dc.tx_antennas, dc.user_antennas,
                                     dc.eve_antennas, power);

  std::vector<int> perm(static_cast<std::size_t>(dc.num_users));
  for (int k = 0; k < dc.num_users; ++k) perm[k] = k;
  for (int k = dc.num_users - 1; k > 0; --k) std::swap(perm[k], perm[rng.uniform_int(0, k)]);
  const EncodingOrder order(perm);

  auto split_power = [&](PlanSide side) {
    CovariancePlan plan;
    plan.side = side;
    const double budget = power * (0.05 + 0.95 * rng.uniform());
    std::vector<double> share(static_cast<std::size_t>(dc.num_users));
    double total = 0.0;
    for (double& s : share) total += (s = 0.05 + rng.uniform());
    for (int k = 0; k < dc.num_users; ++k) {
      const Eigen::Index n = side == PlanSide::kBc ? dc.tx_antennas : dc.user_antennas[static_cast<std::size_t>(k)];
      plan.matrices.push_back(rng.psd_with_trace(n, budget * share[k] / total));
    }
    return plan;
  };

  const auto bc = split_power(PlanSide::kBc);
  const auto ctx = build_context_from_bc(ch, order, bc);
  dc.bc_to_mac_rate_gap = max_abs_gap(mac_rates(ch, order, ctx.mac), bc_rates(ch, order, bc));
  dc.bc_to_mac_trace_gap = std::abs(ctx.mac.total_trace() - bc.total_trace());
  const auto back = mac_to_bc(ch, order, ctx.mac);
  dc.round_trip_rate_gap = max_abs_gap(bc_rates(ch, order, back), bc_rates(ch, order, bc));

  const auto mac = split_power(PlanSide::kMac);
  const auto rctx = build_context_from_mac(ch, order, mac);
  dc.mac_to_bc_rate_gap = max_abs_gap(bc_rates(ch, order, rctx.bc), mac_rates(ch, order, mac));
  dc.mac_to_bc_trace_gap = std::abs(rctx.bc.total_trace() - mac.total_trace());

  dc.min_ladder_eigenvalue = std::min(ladder_floor(ctx), ladder_floor(rctx));
  return dc;
}

std::vector<DualityCase> run_duality_ensemble(int count, std::uint64_t base_seed, Execution exec) {
  std::vector<DualityCase> out(static_cast<std::size_t>(std::max(count, 0)));
  for_each_index(out.size(), exec, [&](std::size_t i) { out[i] = run_duality_case(base_seed + i); });
  return out;
}

}  // namespace wiretap
