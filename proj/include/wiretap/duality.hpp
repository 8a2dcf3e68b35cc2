#pragma once

#include <cstdint>
#include <vector>

#include "wiretap/channel.hpp"
#include "wiretap/matrix_core.hpp"
#include "wiretap/parallel.hpp"
#include "wiretap/rates.hpp"

namespace wiretap {

// Everything the downlink/uplink covariance transform computes along the
// way. All lists are indexed by position in the encoding order.
//
//   c[k] = I_{n_k} + H_k (sum_{j>k} Q_j) H_k^H        (downlink interference)
//   d[k] = I_{n_t} + sum_{j<k} H_j^H S_j H_j          (uplink interference)
//   svd[k] : d[k]^{-1/2} H_k^H c[k]^{-1/2} = E Lambda F^H
//   effective_eve[k] = c[k]^{1/2} F E^H d[k]^{-1/2} G^H   (n_k x n_e)
struct DualityContext {
  EncodingOrder order;
  std::vector<PsdMatrix> c;
  std::vector<PsdMatrix> d;
  std::vector<SvdTriple> svd;
  std::vector<ComplexMatrix> effective_eve;
  CovariancePlan bc;   // by user
  CovariancePlan mac;  // by user
};

// Forward construction, position 0..K-1: c[] comes from the downlink plan,
// d[k] needs the uplink covariances of earlier positions.
DualityContext build_context_from_bc(const ChannelSet& ch, const EncodingOrder& order, const CovariancePlan& bc);

// Reverse construction, position K-1..0: d[] comes from the uplink plan,
// c[k] needs the downlink covariances of later positions.
DualityContext build_context_from_mac(const ChannelSet& ch, const EncodingOrder& order, const CovariancePlan& mac);

// Per-user rates are preserved. Total trace is preserved when every n_k >=
// n_t (otherwise the uplink plan drops the downlink power that user k
// cannot see, and the trace can only shrink).
CovariancePlan bc_to_mac(const ChannelSet& ch, const EncodingOrder& order, const CovariancePlan& bc);

// Per-user rates are preserved. Total trace is preserved when every n_k <=
// n_t.
CovariancePlan mac_to_bc(const ChannelSet& ch, const EncodingOrder& order, const CovariancePlan& mac);

// Effective eavesdropper channels of the context, by position, each n_k x n_e,
// satisfying G Q_k G^H = Gt_k^H S_k Gt_k.
std::vector<ComplexMatrix> effective_eve_channels(const DualityContext& ctx);

// One randomized round of the transform properties.
struct DualityCase {
  std::uint64_t seed = 0;
  int num_users = 0;
  Eigen::Index tx_antennas = 0;
  std::vector<Eigen::Index> user_antennas;
  Eigen::Index eve_antennas = 0;
  double bc_to_mac_rate_gap = 0.0;  // max |R_mac - R_bc| per user
  double bc_to_mac_trace_gap = 0.0;
  double mac_to_bc_rate_gap = 0.0;
  double mac_to_bc_trace_gap = 0.0;
  double round_trip_rate_gap = 0.0;
  double min_ladder_eigenvalue = 0.0;  // over every c[k], d[k]

  bool rates_ok(double tol) const { return bc_to_mac_rate_gap <= tol && mac_to_bc_rate_gap <= tol; }
  bool trace_ok(double tol) const { return bc_to_mac_trace_gap <= tol && mac_to_bc_trace_gap <= tol; }
  bool round_trip_ok(double tol) const { return round_trip_rate_gap <= tol; }
};

// Draws K in {1,2,3}, n_t and every n_k in {1,2,3}, n_e in {1,2}, a power in
// [0.5, 10], a random order, and random full-rank PSD plans (downlink and
// uplink) with total trace in (0, P], then measures both transforms against
// the direct rate formulas.
DualityCase run_duality_case(std::uint64_t seed);

std::vector<DualityCase> run_duality_ensemble(int count, std::uint64_t base_seed, Execution exec = Execution::kSerial);

}  // namespace wiretap
