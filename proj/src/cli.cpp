#include "wiretap/cli.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <fstream>
#include <ostream>
#include <sstream>

#include "wiretap/channel.hpp"
#include "wiretap/duality.hpp"
#include "wiretap/errors.hpp"
#include "wiretap/ordering.hpp"
#include "wiretap/region.hpp"

namespace wiretap {

namespace {

using nlohmann::json;

template <typename T>
void read_key(const json& j, const char* key, T& field) {
  if (j.contains(key)) field = j.at(key).get<T>();
}

std::string order_text(const EncodingOrder& o) { return o.to_string(); }

// "[3,1,2]", "3,1,2" or "3 1 2".
std::vector<double> parse_list(const std::string& text) {
  std::string s = text;
  for (char& c : s)
    if (c == '[' || c == ']' || c == ',') c = ' ';
  std::istringstream in(s);
  std::vector<double> out;
  std::string tok;
  while (in >> tok) {
    try {
      std::size_t used = 0;
      out.push_back(std::stod(tok, &used));
      if (used != tok.size()) throw std::invalid_argument(tok);
    } catch (const std::exception&) {
      throw Error(ErrorKind::kParseError, "not a number: " + tok);
    }
  }
  return out;
}

EncodingOrder parse_order(const std::string& text, const WeightVector& w) {
  if (text == "theorem") return optimal_order(w);
  std::vector<int> users;
  for (double v : parse_list(text)) users.push_back(static_cast<int>(v));
  return EncodingOrder::from_one_based(users);
}

WeightVector parse_weights(const std::string& text, int num_users) {
  if (text.empty() || text == "uniform") return WeightVector::uniform(num_users);
  WeightVector w(parse_list(text));
  if (w.size() != num_users) throw Error(ErrorKind::kLengthMismatch, "weight count differs from K");
  return w;
}

using ordered = nlohmann::ordered_json;

ordered matrix_json(const ComplexMatrix& m) {
  ordered rows = ordered::array();
  for (Eigen::Index r = 0; r < m.rows(); ++r) {
    ordered row = ordered::array();
    for (Eigen::Index c = 0; c < m.cols(); ++c) row.push_back({m(r, c).real(), m(r, c).imag()});
    rows.push_back(row);
  }
  return rows;
}

ordered report_json(const SolverReport& rep) {
  ordered plan = ordered::array();
  for (const auto& q : rep.plan.matrices) plan.push_back(matrix_json(q));
  return {
      {"order", rep.order.one_based()},
      {"rates", rep.rates.per_user},
      {"sum_rate", rep.rates.sum()},
      {"weighted_sum", rep.rates.weighted_sum},
      {"total_power", rep.plan.total_trace()},
      {"lambda_final", rep.lambda_final},
      {"outer_iters", rep.outer_iters},
      {"lambda_evals", rep.lambda_evals},
      {"termination", termination_name(rep.termination)},
      {"objective_trace", rep.objective_trace},
      {"lagrangian_trace", rep.lagrangian_trace},
      {"plan", plan},
  };
}

std::ofstream open_out(const std::string& path) {
  std::ofstream f(path, std::ios::binary);
  if (!f) throw Error(ErrorKind::kInvalidArgument, "cannot write " + path);
  return f;
}

}  // namespace

SolverConfig load_solver_config(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorKind::kParseError, "cannot open " + path.string());
  SolverConfig cfg;
  try {
    const json j = json::parse(in);
    if (!j.is_object()) throw Error(ErrorKind::kParseError, "config must be a JSON object");
    read_key(j, "max_outer_iters", cfg.max_outer_iters);
    read_key(j, "objective_tol", cfg.objective_tol);
    read_key(j, "lambda_lo", cfg.lambda_lo);
    read_key(j, "lambda_hi", cfg.lambda_hi);
    read_key(j, "lambda_tol", cfg.lambda_tol);
    read_key(j, "max_lambda_evals", cfg.max_lambda_evals);
    read_key(j, "inner_max_iters", cfg.inner_max_iters);
    read_key(j, "inner_step_init", cfg.inner_step_init);
    read_key(j, "inner_tol", cfg.inner_tol);
    read_key(j, "restarts", cfg.restarts);
    read_key(j, "seed", cfg.seed);
    if (j.contains("init_scheme")) {
      const auto s = j.at("init_scheme").get<std::string>();
      if (s == "uniform_identity") cfg.init_scheme = InitScheme::kUniformIdentity;
      else if (s == "zero") cfg.init_scheme = InitScheme::kZero;
      else throw Error(ErrorKind::kParseError, "unknown init_scheme " + s);
    }
  } catch (const json::exception& e) {
    throw Error(ErrorKind::kParseError, e.what());
  }
  cfg.validate();
  return cfg;
}

int cli_main(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Secure DPC rates, covariances and region traces for the Gaussian MIMO multi-receiver wiretap channel"};
  app.require_subcommand(1);
  bool serial = false;
  app.add_flag("--serial", serial, "run the serial reference instead of the OpenMP loops");

  std::string channels, weights, order = "theorem", config_path, out_path, hull_path, policy = "theorem";
  int restarts = -1;
  std::uint64_t seed = 1;
  double step = 0.01;

  auto add_solver_opts = [&](CLI::App* sub) {
    sub->add_option("--config", config_path, "solver config JSON")->check(CLI::ExistingFile);
    sub->add_option("--restarts", restarts, "extra seeded random starts")->check(CLI::NonNegativeNumber);
  };

  auto* solve = app.add_subcommand("solve", "one WSR instance; prints the report as JSON");
  solve->add_option("--channels", channels)->required()->check(CLI::ExistingFile);
  solve->add_option("--weights", weights, "e.g. 0.5,0.5 (default uniform)");
  solve->add_option("--order", order, "theorem or a 1-based list such as 2,1");
  solve->add_option("--seed", seed, "seed for random restarts");
  add_solver_opts(solve);

  auto* region = app.add_subcommand("region", "weight sweep; writes w_1..w_K,R_1..R_K,wsr,order");
  region->add_option("--channels", channels)->required()->check(CLI::ExistingFile);
  region->add_option("--step", step)->check(CLI::Range(1e-4, 1.0));
  region->add_option("--policy", policy)->check(CLI::IsMember({"theorem", "fixed", "both_corners"}));
  region->add_option("--order", order, "order for --policy fixed");
  region->add_option("--out", out_path, "CSV path (default standard output)");
  region->add_option("--hull", hull_path, "K = 2 convex-hull CSV");
  add_solver_opts(region);

  auto* compare = app.add_subcommand("compare-orders", "WSR under every encoding order");
  compare->add_option("--channels", channels)->required()->check(CLI::ExistingFile);
  compare->add_option("--weights", weights);
  compare->add_option("--out", out_path, "per-order CSV path (default standard output)");
  add_solver_opts(compare);

  int seeds = 200;
  std::uint64_t base_seed = 1;
  double tol = 1e-8;
  auto* dual = app.add_subcommand("duality-check", "random downlink/uplink transform properties");
  dual->add_option("--seeds", seeds, "instances")->check(CLI::PositiveNumber);
  dual->add_option("--base-seed", base_seed);
  dual->add_option("--tol", tol);

  int num_users = 2, nt = 2, ne = 1;
  std::string nk = "2";
  double power = 1.0;
  auto* gen = app.add_subcommand("gen-channels", "random CN(0,1) channel file");
  gen->add_option("--seed", seed)->required();
  gen->add_option("--K", num_users)->check(CLI::PositiveNumber);
  gen->add_option("--nt", nt)->check(CLI::PositiveNumber);
  gen->add_option("--nk", nk, "one count for every user, or one per user");
  gen->add_option("--ne", ne)->check(CLI::PositiveNumber);
  gen->add_option("--power", power);
  gen->add_option("--out", out_path, "JSON path (default standard output)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    std::ostringstream o, er;
    const int code = app.exit(e, o, er);
    out << o.str();
    err << er.str();
    return code == 0 ? 0 : 1;
  }

  const Execution exec = serial ? Execution::kSerial : Execution::kParallel;
  auto solver_config = [&] {
    SolverConfig cfg = config_path.empty() ? SolverConfig{} : load_solver_config(config_path);
    if (restarts >= 0) cfg.restarts = restarts;
    return cfg;
  };

  try {
    if (*solve) {
      const auto ch = load_channel_set(std::filesystem::path(channels));
      const auto w = parse_weights(weights, ch.num_users());
      auto cfg = solver_config();
      if (solve->count("--seed")) cfg.seed = seed;
      const auto rep = solve_wsr(ch, w, parse_order(order, w), cfg, exec);
      out << report_json(rep).dump(2) << '\n';
    } else if (*region) {
      const auto ch = load_channel_set(std::filesystem::path(channels));
      OrderPolicy pol;
      if (policy == "both_corners") pol = OrderPolicy::both_corners();
      if (policy == "fixed") {
        if (order == "theorem") throw Error(ErrorKind::kInvalidArgument, "--policy fixed needs --order LIST");
        pol = OrderPolicy::fixed_order(parse_order(order, WeightVector::uniform(ch.num_users())));
      }
      const auto trace = trace_region(ch, step, pol, solver_config(), exec);
      if (out_path.empty()) {
        write_region_csv(out, trace);
      } else {
        auto f = open_out(out_path);
        write_region_csv(f, trace);
      }
      if (!hull_path.empty()) {
        auto f = open_out(hull_path);
        write_hull_csv(f, region_hull(trace));
      }
    } else if (*compare) {
      const auto ch = load_channel_set(std::filesystem::path(channels));
      const auto w = parse_weights(weights, ch.num_users());
      const auto cmp = compare_orders(ch, w, solver_config(), exec);
      std::ostringstream csv;
      csv << "order,wsr";
      for (int k = 0; k < ch.num_users(); ++k) csv << ",R_" << k + 1;
      csv << ",termination\n";
      for (const auto& r : cmp.per_order) {
        const auto users = r.order.one_based();
        for (std::size_t i = 0; i < users.size(); ++i) csv << (i ? " " : "") << users[i];
        csv << ',' << (r.error ? std::string("nan") : format_number(r.wsr));
        for (int k = 0; k < ch.num_users(); ++k)
          csv << ',' << (r.error ? std::string("nan") : format_number(r.rates.per_user[k]));
        csv << ',' << (r.error ? std::string("error") : termination_name(r.termination)) << '\n';
      }
      if (out_path.empty()) {
        out << csv.str();
      } else {
        auto f = open_out(out_path);
        f << csv.str();
      }
      out << "verdict: best_order " << order_text(cmp.best_order) << " theorem_order "
          << order_text(cmp.theorem_order) << (cmp.theorem_confirmed(w) ? " agree" : " disagree") << '\n';
    } else if (*dual) {
      const auto cases = run_duality_ensemble(seeds, base_seed, exec);
      int rates = 0, trace = 0, round = 0, floor = 0;
      for (const auto& c : cases) {
        rates += c.rates_ok(tol);
        trace += c.trace_ok(tol);
        round += c.round_trip_ok(tol);
        floor += c.min_ladder_eigenvalue >= 1.0 - 1e-10;
      }
      const int n = static_cast<int>(cases.size());
      auto line = [&](const char* name, int ok) {
        out << (ok == n ? "PASS " : "FAIL ") << name << ' ' << ok << '/' << n << '\n';
      };
      line("rate_equality", rates);
      line("trace_preservation", trace);
      line("round_trip", round);
      line("interference_floor", floor);
      for (const auto& c : cases) {
        if (c.rates_ok(tol) && c.trace_ok(tol) && c.round_trip_ok(tol)) continue;
        out << "  seed " << c.seed << " K=" << c.num_users << " nt=" << c.tx_antennas << " nk=";
        for (std::size_t i = 0; i < c.user_antennas.size(); ++i) out << (i ? "," : "") << c.user_antennas[i];
        out << " ne=" << c.eve_antennas << " rate_gap=" << format_number(std::max(c.bc_to_mac_rate_gap, c.mac_to_bc_rate_gap))
            << " trace_gap=" << format_number(std::max(c.bc_to_mac_trace_gap, c.mac_to_bc_trace_gap))
            << " round_trip_gap=" << format_number(c.round_trip_rate_gap) << '\n';
      }
      if (rates != n || trace != n || round != n || floor != n) return 2;
    } else if (*gen) {
      std::vector<Eigen::Index> counts;
      for (double v : parse_list(nk)) counts.push_back(static_cast<Eigen::Index>(v));
      if (counts.size() == 1) counts.assign(static_cast<std::size_t>(num_users), counts.front());
      if (static_cast<int>(counts.size()) != num_users)
        throw Error(ErrorKind::kLengthMismatch, "--nk needs one value or K values");
      const auto ch = sample_channel_set(seed, num_users, nt, counts, ne, power);
      if (out_path.empty()) {
        save_channel_set(out, ch);
      } else {
        auto f = open_out(out_path);
        save_channel_set(f, ch);
      }
    }
  } catch (const Error& e) {
    err << e.what() << '\n';
    return 2;
  }
  return 0;
}

}  // namespace wiretap
