#include "wiretap/solver.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "wiretap/errors.hpp"
#include "wiretap/random.hpp"

namespace wiretap {

void SolverConfig::validate() const {
  auto bad = [](const char* what) { throw Error(ErrorKind::kInvalidArgument, std::string("solver config: ") + what); };
  if (max_outer_iters < 1) bad("max_outer_iters must be >= 1");
  if (!(objective_tol > 0.0)) bad("objective_tol must be > 0");
  if (!(lambda_lo > 0.0) || !(lambda_lo < lambda_hi)) bad("need 0 < lambda_lo < lambda_hi");
  if (!(lambda_tol > 0.0)) bad("lambda_tol must be > 0");
  if (max_lambda_evals < 2) bad("max_lambda_evals must be >= 2");
  if (inner_max_iters < 1) bad("inner_max_iters must be >= 1");
  if (!(inner_step_init > 0.0)) bad("inner_step_init must be > 0");
  if (!(inner_tol > 0.0)) bad("inner_tol must be > 0");
  if (restarts < 0) bad("restarts must be >= 0");
  if (init_scheme == InitScheme::kProvided && !initial_plan) bad("init_scheme provided needs initial_plan");
}

const char* termination_name(Termination t) {
  switch (t) {
    case Termination::kConverged: return "converged";
    case Termination::kMaxIters: return "max_iters";
    case Termination::kStalled: return "stalled";
  }
  return "unknown";
}

namespace {

constexpr double kArmijo = 1e-4;

// The problem relabeled so that position k holds user order.user_at(k).
struct Positioned {
  std::vector<ComplexMatrix> h;
  ComplexMatrix g;
  std::vector<double> w;
  double power = 0.0;
  Eigen::Index nt = 0;
  int size() const { return static_cast<int>(h.size()); }
};

using Blocks = std::vector<ComplexMatrix>;

Positioned arrange(const ChannelSet& ch, const EncodingOrder& order, const WeightVector& w) {
  if (order.size() != ch.num_users()) throw Error(ErrorKind::kDimensionMismatch, "order size differs from K");
  if (w.size() != ch.num_users()) throw Error(ErrorKind::kLengthMismatch, "weight vector length differs from K");
  Positioned p;
  p.g = ch.eavesdropper();
  p.power = ch.power();
  p.nt = ch.tx_antennas();
  for (int pos = 0; pos < order.size(); ++pos) {
    p.h.push_back(ch.user(order.user_at(pos)));
    p.w.push_back(w[order.user_at(pos)]);
  }
  return p;
}

Blocks to_blocks(const ChannelSet& ch, const EncodingOrder& order, const CovariancePlan& plan) {
  check_plan(ch, plan, PlanSide::kBc);
  Blocks q;
  for (int pos = 0; pos < order.size(); ++pos) q.push_back(plan.matrices[static_cast<std::size_t>(order.user_at(pos))]);
  return q;
}

CovariancePlan to_plan(const EncodingOrder& order, const Blocks& q) {
  CovariancePlan plan;
  plan.matrices.resize(q.size());
  for (int pos = 0; pos < order.size(); ++pos) plan.matrices[static_cast<std::size_t>(order.user_at(pos))] = q[pos];
  return plan;
}

void check_block(const Positioned& p, int block) {
  if (block < 0 || block >= p.size()) throw Error(ErrorKind::kInvalidArgument, "block index out of range");
}

double total_trace(const Blocks& q) {
  double t = 0.0;
  for (const auto& m : q) t += m.trace().real();
  return t;
}

double wsr(const Positioned& p, const Blocks& q) {
  const auto r = positional::secrecy_rates(p.h, p.g, q);
  double acc = 0.0;
  for (int k = 0; k < p.size(); ++k) acc += p.w[k] * r[k];
  return acc;
}

double lagrangian(const Positioned& p, const Blocks& q, double lambda) {
  return wsr(p, q) - lambda * (total_trace(q) - p.power);
}

// m^H (I + m s m^H)^{-1} m, the gradient of log|I + m s m^H| in s.
HermitianMatrix inverse_through(const ComplexMatrix& m, const ComplexMatrix& s) {
  const ComplexMatrix a = hermitize(identity(m.rows()) + m * s * m.adjoint());
  Eigen::LLT<ComplexMatrix> llt(a);
  return hermitize(m.adjoint() * llt.solve(m));
}

SplitValue split(const Positioned& p, const Blocks& q, double lambda, int k) {
  const auto s = positional::suffix_sums(q, p.nt);
  auto ld_h = [&](int j, const ComplexMatrix& sum) { return positional::logdet_through(p.h[j], sum); };
  auto ld_g = [&](const ComplexMatrix& sum) { return positional::logdet_through(p.g, sum); };

  SplitValue v;
  v.concave = p.w[k] * (ld_h(k, s[k]) - ld_h(k, s[k + 1])) - lambda * q[k].trace().real();
  for (int j = 0; j < k; ++j) v.concave += p.w[j] * ld_g(s[j + 1]);

  v.convex = -p.w[k] * (ld_g(s[k]) - ld_g(s[k + 1]));
  for (int j = 0; j < k; ++j) {
    v.convex += p.w[j] * (ld_h(j, s[j]) - ld_h(j, s[j + 1])) - p.w[j] * ld_g(s[j]);
  }
  const auto r = positional::secrecy_rates(p.h, p.g, q);
  for (int j = k + 1; j < p.size(); ++j) v.convex += p.w[j] * r[j];
  v.convex -= lambda * (total_trace(q) - q[k].trace().real() - p.power);
  return v;
}

HermitianMatrix grad_cvx(const Positioned& p, const Blocks& q, int k) {
  const auto s = positional::suffix_sums(q, p.nt);
  HermitianMatrix a = -p.w[k] * inverse_through(p.g, s[k]);
  for (int j = 0; j < k; ++j) {
    if (p.w[j] == 0.0) continue;
    a += p.w[j] * (inverse_through(p.h[j], s[j]) - inverse_through(p.h[j], s[j + 1]) - inverse_through(p.g, s[j]));
  }
  return hermitize(a);
}

// sum_t weight_t log|base_t + m_t Q m_t^H| - lambda tr Q + Re tr(linear Q)
struct ConcaveBlock {
  struct Term {
    double weight;
    ComplexMatrix m;
    HermitianMatrix base;
  };
  std::vector<Term> terms;
  double lambda = 0.0;
  HermitianMatrix linear;

  double evaluate(const ComplexMatrix& q, HermitianMatrix* grad) const {
    double val = -lambda * q.trace().real() + trace_inner(linear, q);
    if (grad) *grad = linear - lambda * identity(q.rows());
    for (const auto& t : terms) {
      const ComplexMatrix a = hermitize(t.base + t.m * q * t.m.adjoint());
      Eigen::LLT<ComplexMatrix> llt(a);
      const auto& l = llt.matrixLLT();
      double ld = 0.0;
      for (Eigen::Index i = 0; i < l.rows(); ++i) ld += std::log(l(i, i).real());
      val += t.weight * 2.0 * ld;
      if (grad) *grad += t.weight * (t.m.adjoint() * llt.solve(t.m));
    }
    if (grad) *grad = hermitize(*grad);
    return val;
  }
};

ConcaveBlock block_model(const Positioned& p, const Blocks& q, double lambda, int k, const HermitianMatrix& a) {
  Blocks others = q;
  others[k].setZero();
  const auto t = positional::suffix_sums(others, p.nt);
  ConcaveBlock model;
  model.lambda = lambda;
  model.linear = a;
  if (p.w[k] != 0.0) {
    model.terms.push_back(
        {p.w[k], p.h[k], hermitize(identity(p.h[k].rows()) + p.h[k] * t[k + 1] * p.h[k].adjoint())});
  }
  for (int j = 0; j < k; ++j) {
    if (p.w[j] == 0.0) continue;
    model.terms.push_back({p.w[j], p.g, hermitize(identity(p.g.rows()) + p.g * t[j + 1] * p.g.adjoint())});
  }
  return model;
}

PsdMatrix maximize_block(const ConcaveBlock& model, const PsdMatrix& start, const SolverConfig& cfg) {
  PsdMatrix q = project_psd(hermitize(start));
  HermitianMatrix grad;
  double val = model.evaluate(q, &grad);
  double step = cfg.inner_step_init;
  for (int it = 0; it < cfg.inner_max_iters; ++it) {
    const double pg = (project_psd(q + grad) - q).norm();
    if (pg <= cfg.inner_tol * (1.0 + q.norm())) break;

    PsdMatrix next;
    HermitianMatrix next_grad;
    double next_val = val;
    bool accepted = false;
    for (int bt = 0; bt < 80; ++bt) {
      next = project_psd(q + step * grad);
      const double expected = trace_inner(grad, next - q);
      next_val = model.evaluate(next, &next_grad);
      if (next_val >= val + kArmijo * expected && next_val >= val) {
        accepted = true;
        break;
      }
      step *= 0.5;
    }
    if (!accepted) {
      if (pg <= 1e-6 * (1.0 + q.norm())) break;  // rounding floor reached
      throw Error(ErrorKind::kInnerNotImproved,
                  "block line search found no ascent with projected gradient norm " + std::to_string(pg));
    }
    // Barzilai-Borwein trial step for the next iteration.
    const ComplexMatrix s = next - q;
    const double sy = trace_inner(s, next_grad - grad);
    const double ss = trace_inner(s, s);
    step = sy < 0.0 ? ss / -sy : 2.0 * step;
    step = std::clamp(step, 1e-12, 1e12);

    const double gain = next_val - val;
    q = std::move(next);
    grad = std::move(next_grad);
    val = next_val;
    if (gain <= 1e-16 * (1.0 + std::abs(val)) && std::sqrt(ss) <= 1e-15 * (1.0 + q.norm())) break;
  }
  return q;
}

PsdMatrix update_block(const Positioned& p, const Blocks& q, double lambda, int k, const SolverConfig& cfg) {
  const HermitianMatrix a = grad_cvx(p, q, k);
  return maximize_block(block_model(p, q, lambda, k, a), q[k], cfg);
}

struct PositionedRun {
  Blocks q;
  std::vector<double> block_lagrangians;
  std::vector<double> sweep_lagrangians;
  std::vector<double> sweep_wsr;
  int sweeps = 0;
  bool converged = false;
};

PositionedRun run_fixed_price(const Positioned& p, Blocks q, double lambda, const SolverConfig& cfg) {
  PositionedRun run;
  double value = lagrangian(p, q, lambda);
  run.block_lagrangians.push_back(value);
  for (int sweep = 0; sweep < cfg.max_outer_iters; ++sweep) {
    const double before = value;
    for (int k = 0; k < p.size(); ++k) {
      q[k] = update_block(p, q, lambda, k, cfg);
      value = lagrangian(p, q, lambda);
      run.block_lagrangians.push_back(value);
    }
    ++run.sweeps;
    run.sweep_lagrangians.push_back(value);
    run.sweep_wsr.push_back(wsr(p, q));
    if (std::abs(value - before) <= cfg.objective_tol * std::max(1.0, std::abs(value))) {
      run.converged = true;
      break;
    }
  }
  run.q = std::move(q);
  return run;
}

struct PriceEval {
  double lambda = 0.0;
  double residual = 0.0;  // sum tr Q - P
  double wsr = 0.0;
  bool feasible = false;
  PositionedRun run;
};

struct SearchResult {
  PriceEval best;
  int sweeps = 0;
  int evals = 0;
  Termination termination = Termination::kConverged;
};

// Searches the power price so that the fixed-price optimum spends the power
// budget. Bisection runs on log(lambda); a residual that grows with lambda
// switches to a golden-section search on the achieved WSR.
SearchResult search_price(const Positioned& p, Blocks start, const SolverConfig& cfg) {
  const double tol = cfg.lambda_tol * p.power;
  std::vector<PriceEval> evals;
  evals.reserve(static_cast<std::size_t>(cfg.max_lambda_evals) + 2);
  SearchResult out;
  Blocks warm = std::move(start);

  auto eval = [&](double lambda) -> const PriceEval& {
    PriceEval e;
    e.lambda = lambda;
    e.run = run_fixed_price(p, warm, lambda, cfg);
    e.residual = total_trace(e.run.q) - p.power;
    e.wsr = wsr(p, e.run.q);
    e.feasible = e.residual <= tol;
    out.sweeps += e.run.sweeps;
    warm = e.run.q;
    evals.push_back(std::move(e));
    return evals.back();
  };
  auto budget_left = [&] { return static_cast<int>(evals.size()) < cfg.max_lambda_evals; };

  bool hit = false;       // |residual| <= tol somewhere
  bool slack = false;     // constraint inactive at lambda_lo
  bool monotone = true;
  double lo = 0.0, hi = 0.0;  // residual(lo) > tol, residual(hi) < -tol

  double lam = std::clamp(1.0 / (1.0 + p.power), cfg.lambda_lo, cfg.lambda_hi);
  double r = eval(lam).residual;
  if (std::abs(r) <= tol) {
    hit = true;
  } else if (r > tol) {
    lo = lam;
    while (budget_left()) {
      lam = std::min(lam * 8.0, cfg.lambda_hi);
      r = eval(lam).residual;
      if (std::abs(r) <= tol) { hit = true; break; }
      if (r < -tol) { hi = lam; break; }
      lo = lam;
      if (lam >= cfg.lambda_hi) break;
    }
  } else {
    hi = lam;
    while (budget_left()) {
      lam = std::max(lam / 8.0, cfg.lambda_lo);
      r = eval(lam).residual;
      if (std::abs(r) <= tol) { hit = true; break; }
      if (r > tol) { lo = lam; break; }
      hi = lam;
      if (lam <= cfg.lambda_lo) { slack = true; break; }
    }
  }

  if (!hit && !slack && lo > 0.0 && hi > 0.0) {
    while (budget_left() && hi / lo - 1.0 > 1e-13) {
      const double mid = std::sqrt(lo * hi);
      const auto& e = eval(mid);
      for (const auto& other : evals) {
        if ((other.lambda < mid && other.residual < e.residual - tol) ||
            (other.lambda > mid && other.residual > e.residual + tol)) {
          monotone = false;
        }
      }
      if (!monotone) break;
      if (std::abs(e.residual) <= tol) { hit = true; break; }
      (e.residual > tol ? lo : hi) = mid;
    }
    if (!monotone) {
      // Golden-section on log(lambda) over the last bracket, maximizing WSR
      // among plans inside the budget.
      const double phi = 0.5 * (std::sqrt(5.0) - 1.0);
      double a = std::log(lo), b = std::log(hi);
      auto score = [&](double x) {
        const auto& e = eval(std::exp(x));
        return e.feasible ? e.wsr : -std::numeric_limits<double>::infinity();
      };
      double c = b - phi * (b - a), d = a + phi * (b - a);
      double fc = score(c), fd = score(d);
      while (budget_left() && b - a > 1e-10) {
        if (fc >= fd) {
          b = d; d = c; fd = fc; c = b - phi * (b - a); fc = score(c);
        } else {
          a = c; c = d; fc = fd; d = a + phi * (b - a); fd = score(d);
        }
      }
    }
  }

  const PriceEval* best = nullptr;
  for (const auto& e : evals) {
    if (!e.feasible) continue;
    if (!best || e.wsr > best->wsr) best = &e;
  }
  if (!best) {
    // Only reachable when the budget ran out before any feasible price.
    eval(cfg.lambda_hi);
    best = &evals.back();
  }
  out.evals = static_cast<int>(evals.size());
  if (!best->run.converged) {
    out.termination = Termination::kMaxIters;
  } else if (hit || slack || std::abs(best->residual) <= tol) {
    out.termination = Termination::kConverged;
  } else {
    out.termination = Termination::kStalled;
  }
  out.best = *best;
  return out;
}

Blocks initial_blocks(const ChannelSet& ch, const EncodingOrder& order, const SolverConfig& cfg, int start) {
  if (start > 0) return to_blocks(ch, order, random_bc_plan(ch, cfg.seed + static_cast<std::uint64_t>(start), ch.power()));
  switch (cfg.init_scheme) {
    case InitScheme::kZero: return to_blocks(ch, order, CovariancePlan::zeros(ch, PlanSide::kBc));
    case InitScheme::kProvided: {
      CovariancePlan plan = *cfg.initial_plan;
      plan.side = PlanSide::kBc;
      return to_blocks(ch, order, plan);
    }
    case InitScheme::kUniformIdentity: break;
  }
  return to_blocks(ch, order, CovariancePlan::uniform_identity(ch));
}

}  // namespace

double lagrangian(const ChannelSet& ch, const EncodingOrder& order, const CovariancePlan& plan, const WeightVector& w,
                  double lambda) {
  const auto p = arrange(ch, order, w);
  return lagrangian(p, to_blocks(ch, order, plan), lambda);
}

SplitValue split_objective(const ChannelSet& ch, const EncodingOrder& order, const CovariancePlan& plan,
                           const WeightVector& w, double lambda, int block) {
  const auto p = arrange(ch, order, w);
  check_block(p, block);
  return split(p, to_blocks(ch, order, plan), lambda, block);
}

HermitianMatrix gradient_cvx(const ChannelSet& ch, const EncodingOrder& order, const CovariancePlan& plan,
                             const WeightVector& w, double /*lambda*/, int block) {
  const auto p = arrange(ch, order, w);
  check_block(p, block);
  return grad_cvx(p, to_blocks(ch, order, plan), block);
}

PsdMatrix surrogate_update(const ChannelSet& ch, const EncodingOrder& order, const CovariancePlan& plan,
                           const WeightVector& w, double lambda, int block, const SolverConfig& cfg) {
  const auto p = arrange(ch, order, w);
  check_block(p, block);
  return update_block(p, to_blocks(ch, order, plan), lambda, block, cfg);
}

FixedPriceRun bsmm_fixed_lambda(const ChannelSet& ch, const EncodingOrder& order, const CovariancePlan& start,
                                const WeightVector& w, double lambda, const SolverConfig& cfg) {
  cfg.validate();
  const auto p = arrange(ch, order, w);
  auto run = run_fixed_price(p, to_blocks(ch, order, start), lambda, cfg);
  FixedPriceRun out;
  out.plan = to_plan(order, run.q);
  out.block_lagrangians = std::move(run.block_lagrangians);
  out.sweep_lagrangians = std::move(run.sweep_lagrangians);
  out.sweep_wsr = std::move(run.sweep_wsr);
  out.sweeps = run.sweeps;
  out.converged = run.converged;
  return out;
}

SolverReport solve_wsr(const ChannelSet& ch, const WeightVector& w, const EncodingOrder& order, const SolverConfig& cfg,
                       Execution exec) {
  cfg.validate();
  const auto p = arrange(ch, order, w);
  const int starts = 1 + cfg.restarts;
  std::vector<SearchResult> results(static_cast<std::size_t>(starts));
  for_each_index(results.size(), exec, [&](std::size_t s) {
    results[s] = search_price(p, initial_blocks(ch, order, cfg, static_cast<int>(s)), cfg);
  });

  std::size_t pick = 0;
  int sweeps = 0, evals = 0;
  for (std::size_t s = 0; s < results.size(); ++s) {
    sweeps += results[s].sweeps;
    evals += results[s].evals;
    if (results[s].best.wsr > results[pick].best.wsr) pick = s;
  }
  const auto& best = results[pick];

  SolverReport report;
  report.order = order;
  report.plan = to_plan(order, best.best.run.q);
  report.plan.side = PlanSide::kBc;
  report.rates = dpc_secrecy_rates(ch, order, report.plan, w).clamped(w);
  report.objective_trace = best.best.run.sweep_wsr;
  report.lagrangian_trace = best.best.run.sweep_lagrangians;
  report.lambda_final = best.best.lambda;
  report.outer_iters = sweeps;
  report.lambda_evals = evals;
  report.termination = best.termination;
  return report;
}

CovariancePlan random_bc_plan(const ChannelSet& ch, std::uint64_t seed, double power) {
  PortableRng rng(seed);
  std::vector<double> share(static_cast<std::size_t>(ch.num_users()));
  double total = 0.0;
  for (double& s : share) total += (s = 0.05 + rng.uniform());
  CovariancePlan plan;
  for (double s : share) plan.matrices.push_back(rng.psd_with_trace(ch.tx_antennas(), power * s / total));
  return plan;
}

}  // namespace wiretap
