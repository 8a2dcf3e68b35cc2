#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "wiretap/channel.hpp"
#include "wiretap/matrix_core.hpp"
#include "wiretap/parallel.hpp"
#include "wiretap/rates.hpp"

namespace wiretap {

enum class InitScheme { kUniformIdentity, kZero, kProvided };

struct SolverConfig {
  int max_outer_iters = 2000;  // BSMM sweeps per power price
  double objective_tol = 1e-8;  // relative Lagrangian change per sweep
  double lambda_lo = 1e-6;
  double lambda_hi = 1e3;
  double lambda_tol = 1e-6;  // |sum tr Q - P| <= lambda_tol * P
  int max_lambda_evals = 120;
  int inner_max_iters = 500;
  double inner_step_init = 1.0;
  double inner_tol = 1e-11;  // projected-gradient norm for the block subproblem
  InitScheme init_scheme = InitScheme::kUniformIdentity;
  std::optional<CovariancePlan> initial_plan;  // BC side, used with kProvided
  int restarts = 0;  // extra seeded random starts; best WSR wins
  std::uint64_t seed = 1;

  void validate() const;
};

enum class Termination { kConverged, kMaxIters, kStalled };
const char* termination_name(Termination t);

struct SolverReport {
  CovariancePlan plan;  // BC side, by user
  RatePoint rates;      // clamped at 0, weighted with the solve's weights
  std::vector<double> objective_trace;   // WSR after each sweep at the accepted price
  std::vector<double> lagrangian_trace;  // Lagrangian after each sweep at the accepted price
  double lambda_final = 0.0;
  int outer_iters = 0;  // total BSMM sweeps over all prices and starts
  int lambda_evals = 0;
  Termination termination = Termination::kConverged;
  EncodingOrder order = EncodingOrder::identity(1);
};

// All functions below take block indices as positions in the encoding
// order: block k is the covariance of user order.user_at(k).

// sum_k w_k R_k - lambda (sum_k tr Q_k - P), R_k the secrecy rates.
double lagrangian(const ChannelSet& ch, const EncodingOrder& order, const CovariancePlan& plan,
                  const WeightVector& w, double lambda);

struct SplitValue {
  double concave = 0.0;
  double convex = 0.0;
};

// Concave/convex split of the Lagrangian with respect to block k. The
// concave part holds the block's own log-det gain, the eavesdropper terms
// that benefit earlier positions and -lambda tr Q_k; the convex part holds
// the rest, including -lambda (sum_{j != k} tr Q_j - P).
SplitValue split_objective(const ChannelSet& ch, const EncodingOrder& order, const CovariancePlan& plan,
                           const WeightVector& w, double lambda, int block);

// Gradient of the convex part with respect to Q_k (Hermitian, with the
// convention f(Q + dQ) ~ f(Q) + Re tr(A dQ)).
HermitianMatrix gradient_cvx(const ChannelSet& ch, const EncodingOrder& order, const CovariancePlan& plan,
                             const WeightVector& w, double lambda, int block);

// Maximizes concave part + Re tr(A Q_k) over PSD Q_k by projected gradient
// ascent with Armijo backtracking, starting from the current Q_k. Never
// returns a block with a lower surrogate value than the incoming one.
PsdMatrix surrogate_update(const ChannelSet& ch, const EncodingOrder& order, const CovariancePlan& plan,
                           const WeightVector& w, double lambda, int block, const SolverConfig& cfg);

struct FixedPriceRun {
  CovariancePlan plan;
  std::vector<double> block_lagrangians;  // initial value, then one entry per block update
  std::vector<double> sweep_lagrangians;
  std::vector<double> sweep_wsr;
  int sweeps = 0;
  bool converged = false;
};

// Cyclic block updates at a fixed power price until the Lagrangian settles.
FixedPriceRun bsmm_fixed_lambda(const ChannelSet& ch, const EncodingOrder& order, const CovariancePlan& start,
                                const WeightVector& w, double lambda, const SolverConfig& cfg);

// Secure WSR maximization under the total power constraint.
SolverReport solve_wsr(const ChannelSet& ch, const WeightVector& w, const EncodingOrder& order,
                       const SolverConfig& cfg = {}, Execution exec = Execution::kSerial);

// Random BC plan with total trace `power` split randomly among users.
CovariancePlan random_bc_plan(const ChannelSet& ch, std::uint64_t seed, double power);

}  // namespace wiretap
