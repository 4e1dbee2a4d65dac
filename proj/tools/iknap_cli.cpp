// Command-line harness: solve instance files, query exact oracles, probe the
// covering disjunction, generate seeded instances, and drive the experiment
// suites. Exit codes: 0 success, 1 assertion/guarantee failure, 2 usage or
// input error.

#include <chrono>
#include <iostream>
#include <string>
#include <variant>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"

#include "iknap/experiment.hpp"
#include "iknap/generator.hpp"
#include "iknap/io.hpp"
#include "iknap/mink.hpp"
#include "iknap/model.hpp"
#include "iknap/oracle.hpp"
#include "iknap/rational.hpp"
#include "iknap/solver.hpp"

namespace {

using iknap::Rational;
using nlohmann::json;

std::string both(const Rational& q) {
  return iknap::to_fraction_string(q) + " (" + iknap::to_decimal_string(q) + ")";
}

Rational eps_arg(const std::string& text) {
  Rational eps = iknap::parse_rational(text);
  if (eps <= 0 || eps >= 1)
    throw std::invalid_argument("--eps must lie strictly between 0 and 1");
  return eps;
}

iknap::IikInstance load_iik(const std::string& path) {
  iknap::Instance inst = iknap::load_instance(path);
  if (auto* p = std::get_if<iknap::IikInstance>(&inst)) return std::move(*p);
  throw std::invalid_argument(path + ": expected an iik instance");
}

iknap::MinkInstance load_mink(const std::string& path) {
  iknap::Instance inst = iknap::load_instance(path);
  if (auto* p = std::get_if<iknap::MinkInstance>(&inst)) return std::move(*p);
  throw std::invalid_argument(path + ": expected a mink instance");
}

json schedule_json(const iknap::Schedule& s) {
  json arr = json::array();
  for (int t : s.insert_time) {
    if (t == iknap::kNever)
      arr.push_back(nullptr);
    else
      arr.push_back(t);
  }
  return arr;
}

json schedule_json(const iknap::MultiSchedule& s) {
  json rows = json::array();
  for (const auto& row : s.count) {
    json r = json::array();
    for (const iknap::Integer& c : row)
      r.push_back(iknap::to_fraction_string(Rational(c)));
    rows.push_back(std::move(r));
  }
  return rows;
}

json stats_json(const iknap::SolveStats& st) {
  return json{{"pieces_enumerated", st.pieces_enumerated},
              {"pieces_pruned", st.pieces_pruned},
              {"pieces_solved", st.pieces_solved},
              {"lp_pivots", st.lp_pivots},
              {"wall_ms", st.wall_ms}};
}

void print_stats(const iknap::SolveStats& st) {
  std::cout << "pieces: enumerated=" << st.pieces_enumerated
            << " pruned=" << st.pieces_pruned << " solved=" << st.pieces_solved
            << "\nlp_pivots: " << st.lp_pivots << "\nwall_ms: " << st.wall_ms
            << "\n";
}

void print_schedule(const iknap::Schedule& s) {
  std::cout << "schedule:";
  for (std::size_t i = 0; i < s.insert_time.size(); ++i) {
    std::cout << " item" << i << "=";
    if (s.insert_time[i] == iknap::kNever)
      std::cout << "never";
    else
      std::cout << "t" << s.insert_time[i];
  }
  std::cout << "\n";
}

void print_schedule(const iknap::MultiSchedule& s) {
  for (std::size_t t = 0; t < s.count.size(); ++t) {
    std::cout << "counts t" << t << ":";
    for (const iknap::Integer& c : s.count[t]) std::cout << " " << c;
    std::cout << "\n";
  }
}

void write_report(const std::string& path, const json& j) {
  if (path.empty()) return;
  iknap::write_file(path, j.dump(2) + "\n");
}

int run_solve(const std::string& command, const std::string& input,
              const std::string& eps_text, long long budget,
              const std::string& out_path) {
  const Rational eps = eps_arg(eps_text);
  iknap::IikInstance inst = load_iik(input);
  iknap::SolveOptions opt;
  opt.budget = budget;

  json report;
  report["algorithm"] = command;
  report["eps"] = iknap::to_fraction_string(eps);

  std::cout << "algorithm: " << command << "\neps: " << both(eps) << "\n";
  if (command == "solve-multi") {
    iknap::MultiSolveReport rep = iknap::solve_multi(inst, eps, opt);
    std::cout << "value: " << both(rep.value)
              << "\nfull_enumeration: " << (rep.full_enumeration ? "true" : "false")
              << "\n";
    print_stats(rep.stats);
    print_schedule(rep.schedule);
    report["value"] = iknap::to_fraction_string(rep.value);
    report["value_dec"] = iknap::to_decimal_string(rep.value);
    report["full_enumeration"] = rep.full_enumeration;
    report["stats"] = stats_json(rep.stats);
    report["counts"] = schedule_json(rep.schedule);
  } else {
    iknap::SolveReport rep = command == "solve-ik"
                                 ? iknap::solve_ik(inst, eps, opt)
                                 : iknap::solve_ptas(inst, eps, opt);
    std::cout << "value: " << both(rep.value)
              << "\nfull_enumeration: " << (rep.full_enumeration ? "true" : "false")
              << "\n";
    print_stats(rep.stats);
    print_schedule(rep.schedule);
    for (const auto& [stage, value] : rep.chain)
      std::cout << "chain " << stage << ": " << both(value) << "\n";
    report["value"] = iknap::to_fraction_string(rep.value);
    report["value_dec"] = iknap::to_decimal_string(rep.value);
    report["full_enumeration"] = rep.full_enumeration;
    report["stats"] = stats_json(rep.stats);
    report["insert_time"] = schedule_json(rep.schedule);
    if (!rep.chain.empty()) {
      json chain = json::array();
      for (const auto& [stage, value] : rep.chain)
        chain.push_back({{"stage", stage},
                         {"value", iknap::to_fraction_string(value)}});
      report["chain"] = std::move(chain);
    }
  }
  write_report(out_path, report);
  return 0;
}

int run_exact_iik(const std::string& input, const std::string& out_path) {
  iknap::IikInstance inst = load_iik(input);
  json report;
  report["algorithm"] = "exact-iik";
  if (inst.has_multiplicities()) {
    iknap::MultiOracleResult res = iknap::exact_iik_multi(inst);
    std::cout << "algorithm: exact-iik (copy counts)\nvalue: " << both(res.value)
              << "\nleaves: " << res.leaves << "\n";
    print_schedule(res.schedule);
    report["value"] = iknap::to_fraction_string(res.value);
    report["value_dec"] = iknap::to_decimal_string(res.value);
    report["leaves"] = res.leaves;
    report["counts"] = schedule_json(res.schedule);
  } else {
    iknap::IikOracleResult res = iknap::exact_iik(inst);
    std::cout << "algorithm: exact-iik\nvalue: " << both(res.value)
              << "\nleaves: " << res.leaves << "\n";
    print_schedule(res.schedule);
    report["value"] = iknap::to_fraction_string(res.value);
    report["value_dec"] = iknap::to_decimal_string(res.value);
    report["leaves"] = res.leaves;
    report["insert_time"] = schedule_json(res.schedule);
  }
  write_report(out_path, report);
  return 0;
}

int run_exact_mink(const std::string& input, const std::string& out_path) {
  iknap::MinkInstance inst = load_mink(input);
  iknap::MinkOracleResult res = iknap::exact_mink(inst);
  std::cout << "algorithm: exact-mink\nfeasible: " << (res.feasible ? "true" : "false")
            << "\n";
  json report;
  report["algorithm"] = "exact-mink";
  report["feasible"] = res.feasible;
  if (res.feasible) {
    std::cout << "value: " << both(res.value) << "\ntake:";
    for (std::size_t i = 0; i < res.take.size(); ++i)
      if (res.take[i]) std::cout << " " << i;
    std::cout << "\n";
    report["value"] = iknap::to_fraction_string(res.value);
    report["value_dec"] = iknap::to_decimal_string(res.value);
    report["take"] = res.take;
  }
  std::cout << "leaves: " << res.leaves << "\n";
  report["leaves"] = res.leaves;
  write_report(out_path, report);
  return 0;
}

int run_mink_gap(const std::string& input, const std::string& eps_text,
                 const std::string& csv_path) {
  const Rational eps = eps_arg(eps_text);
  iknap::MinkInstance inst = load_mink(input);
  const auto t0 = std::chrono::steady_clock::now();
  iknap::GapReport rep = iknap::disjunction_gap(inst, eps);
  const long wall = static_cast<long>(
      std::chrono::duration_cast<std::chrono::milliseconds>(
          std::chrono::steady_clock::now() - t0)
          .count());

  std::cout << "feasible: " << (rep.feasible ? "true" : "false") << "\n";
  if (rep.lp_found) std::cout << "lp_disj: " << both(rep.lp_disj) << "\n";
  if (rep.feasible) std::cout << "opt_int: " << both(rep.opt_int) << "\n";
  if (rep.rounded_found)
    std::cout << "best_rounded: " << both(rep.best_rounded) << "\n";
  if (rep.ratios_defined) {
    std::cout << "opt/lp: " << both(rep.ratio_int) << "\n"
              << "rounded/lp: " << both(rep.ratio_rounded) << "\n";
  }
  std::cout << "sandwich (lp <= opt <= rounded): "
            << (rep.sandwich_ok ? "true" : "false") << "\n"
            << "pieces: enumerated=" << rep.pieces_enumerated
            << " pruned=" << rep.pieces_pruned << " solved=" << rep.pieces_solved
            << "\nlp_pivots: " << rep.lp_pivots << "\nwall_ms: " << wall << "\n";
  if (rep.best_pivot >= 0) {
    std::cout << "best piece: pivot=" << rep.best_pivot << " tau=(";
    for (std::size_t k = 0; k < rep.best_tau.size(); ++k)
      std::cout << (k ? "," : "") << rep.best_tau[k];
    std::cout << ") rho=(";
    for (std::size_t k = 0; k < rep.best_rho.size(); ++k)
      std::cout << (k ? "," : "") << rep.best_rho[k];
    std::cout << ")\n";
  }

  if (!csv_path.empty()) {
    iknap::ResultRow row;
    row.instance = input;
    row.eps = iknap::to_fraction_string(eps);
    row.algorithm = "disjunction-gap";
    if (rep.feasible) {
      row.value = iknap::to_fraction_string(rep.opt_int);
      row.value_dec = iknap::to_decimal_string(rep.opt_int);
    }
    if (rep.lp_found) {
      row.oracle = iknap::to_fraction_string(rep.lp_disj);
      row.oracle_dec = iknap::to_decimal_string(rep.lp_disj);
    }
    if (rep.ratios_defined) {
      row.ratio = iknap::to_fraction_string(rep.ratio_int);
      row.ratio_dec = iknap::to_decimal_string(rep.ratio_int);
    }
    row.pieces_enum = rep.pieces_enumerated;
    row.pieces_pruned = rep.pieces_pruned;
    row.pieces_solved = rep.pieces_solved;
    row.wall_ms = wall;
    row.guarantee = "ratio = opt_int / lp_disj";
    iknap::write_file(csv_path, iknap::csv_header() + iknap::csv_line(row));
  }
  return rep.sandwich_ok ? 0 : 1;
}

int run_mink_size(const std::string& eps_text) {
  const Rational eps = eps_arg(eps_text);
  iknap::Integer base = iknap::count_pieces(eps, iknap::PieceCountMode::baseline);
  iknap::Integer gam = iknap::count_pieces(eps, iknap::PieceCountMode::gamma);
  std::cout << "eps: " << both(eps) << "\ncost classes: " << iknap::c_eps(eps)
            << "\nbaseline pieces per pivot: " << base
            << "\nstair-vector pieces per pivot: " << gam << "\nshrink factor: "
            << iknap::to_decimal_string(Rational(base) / Rational(gam), 3)
            << "x\n";
  return 0;
}

int run_experiment(const std::string& suite, const std::string& csv_path) {
  iknap::SuiteResult res = iknap::run_suite(suite, csv_path);
  std::cout << "suite: " << res.name << "\ncsv: " << csv_path << "\n";
  for (const auto& [key, val] : res.checks)
    std::cout << "check " << key << ": " << (val ? "pass" : "FAIL") << "\n";
  for (const auto& [key, val] : res.details)
    std::cout << key << ": " << val << "\n";
  for (const std::string& f : res.failures) std::cout << "failure: " << f << "\n";
  std::cout << (res.ok ? "all assertions passed" : "assertions failed") << "\n";
  return res.ok ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Incremental and covering knapsacks via disjunctive relaxations"};
  app.require_subcommand(1);

  std::string input, eps_text, out_path, csv_path, suite, kind;
  long long budget = 0;
  unsigned long long seed = 0;
  iknap::IikGenParams ip;
  iknap::MinkGenParams mp;
  std::string gen_eps = "1/4";
  int g_n_lo = 0, g_n_hi = 0, g_t_lo = 0, g_t_hi = 0;
  long g_w_lo = 0, g_w_hi = 0;

  auto add_solve = [&](const std::string& name, const std::string& blurb) {
    CLI::App* cmd = app.add_subcommand(name, blurb);
    cmd->add_option("--input", input, "instance file (JSON)")->required();
    cmd->add_option("--eps", eps_text, "accuracy parameter, fraction string")
        ->required();
    cmd->add_option("--budget", budget, "cap on LP solves, 0 = unlimited");
    cmd->add_option("--out", out_path, "write a JSON report here");
    return cmd;
  };
  add_solve("solve-iik", "approximation scheme, single-copy items");
  add_solve("solve-ik", "approximation scheme with per-time discounts");
  add_solve("solve-multi", "approximation scheme with copy counts");

  CLI::App* cmd_exact_iik =
      app.add_subcommand("exact-iik", "exhaustive incremental optimum");
  cmd_exact_iik->add_option("--input", input, "instance file (JSON)")->required();
  cmd_exact_iik->add_option("--out", out_path, "write a JSON report here");

  CLI::App* cmd_exact_mink =
      app.add_subcommand("exact-mink", "exhaustive covering optimum");
  cmd_exact_mink->add_option("--input", input, "instance file (JSON)")->required();
  cmd_exact_mink->add_option("--out", out_path, "write a JSON report here");

  CLI::App* cmd_gap = app.add_subcommand(
      "mink-gap", "solve every covering piece and report the integrality gap");
  cmd_gap->add_option("--input", input, "instance file (JSON, costs nonincreasing)")
      ->required();
  cmd_gap->add_option("--eps", eps_text, "accuracy parameter, fraction string")
      ->required();
  cmd_gap->add_option("--csv", csv_path, "write a one-row CSV here");

  CLI::App* cmd_size =
      app.add_subcommand("mink-size", "piece counts per pivot for an eps");
  cmd_size->add_option("--eps", eps_text, "accuracy parameter, fraction string")
      ->required();

  CLI::App* cmd_gen = app.add_subcommand("gen", "generate a seeded instance");
  cmd_gen->add_option("--kind", kind, "iik or mink")->required();
  cmd_gen->add_option("--seed", seed, "PRNG seed (mt19937_64)")->required();
  cmd_gen->add_option("--out", out_path, "write the instance here (default stdout)");
  CLI::Option* o_n_lo = cmd_gen->add_option("--n-lo", g_n_lo, "minimum item count");
  CLI::Option* o_n_hi = cmd_gen->add_option("--n-hi", g_n_hi, "maximum item count");
  CLI::Option* o_t_lo =
      cmd_gen->add_option("--t-lo", g_t_lo, "minimum period count (iik)");
  CLI::Option* o_t_hi =
      cmd_gen->add_option("--t-hi", g_t_hi, "maximum period count (iik)");
  CLI::Option* o_w_lo =
      cmd_gen->add_option("--weight-lo", g_w_lo, "minimum item weight");
  CLI::Option* o_w_hi =
      cmd_gen->add_option("--weight-hi", g_w_hi, "maximum item weight");
  cmd_gen->add_option("--profile", ip.capacity_profile,
                      "capacity profile: random or linear (iik)");
  cmd_gen->add_option("--mult-hi", ip.mult_hi, "draw copy limits in [1,N] (iik)");
  cmd_gen->add_option("--delta-hi", ip.delta_hi,
                      "draw nondecreasing discounts in [1,N] (iik)");
  cmd_gen->add_option("--cost-levels", mp.cost_levels,
                      "draw costs from N exact power levels (mink)");
  cmd_gen->add_option("--eps", gen_eps, "level base for --cost-levels (mink)");
  cmd_gen->add_option("--demand-lo", mp.demand_pct_lo,
                      "demand lower bound, percent of total weight (mink)");
  cmd_gen->add_option("--demand-hi", mp.demand_pct_hi,
                      "demand upper bound, percent of total weight (mink)");

  CLI::App* cmd_exp = app.add_subcommand("experiment", "run a named suite");
  std::string names;
  for (const std::string& s : iknap::suite_names()) names += s + " ";
  cmd_exp->add_option("--suite", suite, "one of: " + names)->required();
  cmd_exp->add_option("--csv", csv_path, "CSV output path")->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }

  try {
    for (const char* name : {"solve-iik", "solve-ik", "solve-multi"})
      if (app.got_subcommand(name))
        return run_solve(name, input, eps_text, budget, out_path);
    if (app.got_subcommand("exact-iik")) return run_exact_iik(input, out_path);
    if (app.got_subcommand("exact-mink")) return run_exact_mink(input, out_path);
    if (app.got_subcommand("mink-gap"))
      return run_mink_gap(input, eps_text, csv_path);
    if (app.got_subcommand("mink-size")) return run_mink_size(eps_text);
    if (app.got_subcommand("gen")) {
      if (o_n_lo->count()) ip.n_lo = mp.n_lo = g_n_lo;
      if (o_n_hi->count()) ip.n_hi = mp.n_hi = g_n_hi;
      if (o_t_lo->count()) ip.t_lo = g_t_lo;
      if (o_t_hi->count()) ip.t_hi = g_t_hi;
      if (o_w_lo->count()) ip.weight_lo = mp.weight_lo = g_w_lo;
      if (o_w_hi->count()) ip.weight_hi = mp.weight_hi = g_w_hi;
      mp.eps = iknap::parse_rational(gen_eps);
      return run_gen(kind, seed, ip, mp, out_path);
    }
    if (app.got_subcommand("experiment")) return run_experiment(suite, csv_path);
  } catch (const std::invalid_argument& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const std::logic_error& e) {
    std::cerr << "assertion failure: " << e.what() << "\n";
    return 1;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
  return 2;
}
