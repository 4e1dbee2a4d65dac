#include "iknap/experiment.hpp"

#include <algorithm>
#include <atomic>
#include <chrono>
#include <condition_variable>
#include <fstream>
#include <functional>
#include <map>
#include <mutex>
#include <optional>
#include <random>
#include <set>
#include <sstream>
#include <stdexcept>
#include <thread>
#include <utility>
#include <vector>

#include "iknap/enumeration.hpp"
#include "iknap/generator.hpp"
#include "iknap/io.hpp"
#include "iknap/lp.hpp"
#include "iknap/mink.hpp"
#include "iknap/model.hpp"
#include "iknap/oracle.hpp"
#include "iknap/preprocess.hpp"
#include "iknap/rounding.hpp"
#include "iknap/solver.hpp"

namespace iknap {
namespace {

using Clock = std::chrono::steady_clock;

long elapsed_ms(Clock::time_point t0) {
  return static_cast<long>(std::chrono::duration_cast<std::chrono::milliseconds>(
                               Clock::now() - t0)
                               .count());
}

std::string pad3(int i) {
  std::string s = std::to_string(i);
  while (s.size() < 3) s.insert(s.begin(), '0');
  return s;
}

// CSV fields must stay comma-free; free text swaps commas for semicolons.
std::string scrub(std::string s) {
  for (char& c : s)
    if (c == ',') c = ';';
  return s;
}

void set_value(ResultRow& row, const Rational& v) {
  row.value = to_fraction_string(v);
  row.value_dec = to_decimal_string(v);
}

void set_oracle(ResultRow& row, const Rational& v) {
  row.oracle = to_fraction_string(v);
  row.oracle_dec = to_decimal_string(v);
}

// Ratio cells are filled only against a positive oracle; a zero optimum
// makes every guarantee vacuous and leaves the cell as "-".
void set_ratio(ResultRow& row, const Rational& value, const Rational& oracle) {
  if (oracle <= 0) return;
  Rational q = value / oracle;
  row.ratio = to_fraction_string(q);
  row.ratio_dec = to_decimal_string(q);
}

struct JobResult {
  std::vector<ResultRow> rows;
  std::vector<std::string> failures;
  std::vector<std::pair<std::string, bool>> checks;
  std::vector<std::pair<std::string, long long>> counts;
  std::vector<std::pair<std::string, std::string>> notes;
};

struct SuiteSpec {
  std::string name;
  int count = 0;
  std::vector<std::string> check_names;
  std::function<JobResult(int)> job;
  std::function<void(SuiteResult&, const std::vector<ResultRow>&,
                     const std::map<std::string, long long>&)>
      finish;
};

int clamp_count(int full, int size_override) {
  if (size_override > 0 && size_override < full) return size_override;
  return full;
}

// Shared audit state for the rounding observer used by the incremental
// suites: Claim-style weight/profit equality, the per-class fractional
// bound, piece membership, and the floored-profit retention
// floor(x) profit >= (1 - 2 eps') * LP profit at the solver's internal eps'.
struct RoundAuditState {
  bool equalities = true;
  bool fractional = true;
  bool in_piece = true;
  bool floor_bound = true;
  long long audited = 0;
};

RoundObserver make_auditor(RoundAuditState& st, const Rational& eps_internal) {
  const Rational keep = Rational(1) - 2 * eps_internal;
  return [&st, keep](const IikInstance& wb, const Piece& piece,
                     const ClassPartition& classes, const RoundingTrace& trace) {
    ++st.audited;
    RoundingAudit audit = audit_rounding(wb, piece, classes, trace);
    st.equalities = st.equalities && audit.weights_match && audit.profits_match;
    st.fractional = st.fractional && audit.fractional_ok;
    st.in_piece = st.in_piece && audit.in_piece;
    Rational floored(0), lp_profit(0);
    for (int l = 0; l < trace.L; ++l) {
      Rational pf(0);
      for (int i = 0; i < trace.n; ++i)
        pf += wb.profit[i] * Rational(floor_rational(trace.x[l][i]));
      floored += piece.interval_len[l] * pf;
      lp_profit += piece.interval_len[l] * trace.profit_target[l];
    }
    st.floor_bound = st.floor_bound && floored >= keep * lp_profit;
  };
}

// ---------------------------------------------------------------------------
// iik-ptas: 100 seeded instances, eps = 1/2, full enumeration, every rounded
// piece audited, value within (1 - eps) of the exhaustive optimum.

SuiteSpec make_iik_ptas(int size_override) {
  SuiteSpec spec;
  spec.name = "iik-ptas";
  spec.count = clamp_count(100, size_override);
  spec.check_names = {"guarantee",        "feasible",
                      "weight-profit-equalities", "fractional-bound",
                      "in-piece",         "floor-retention"};
  spec.job = [](int i) {
    JobResult out;
    const unsigned long long seed = 1000 + i;
    const Rational eps(1, 2);
    IikGenParams gp;
    IikInstance inst = gen_iik(seed, gp);

    RoundAuditState audit;
    SolveOptions opt;
    opt.round_all = true;
    opt.on_rounded = make_auditor(audit, eps / 4);

    auto t0 = Clock::now();
    SolveReport rep = solve_ptas(inst, eps, opt);
    long wall = elapsed_ms(t0);
    IikOracleResult orc = exact_iik(inst);

    bool consistent = check_feasible(inst, rep.schedule).ok &&
                      evaluate_profit(inst, rep.schedule) == rep.value &&
                      rep.eps_internal == eps / 4;
    bool guarantee = rep.full_enumeration && orc.feasible &&
                     rep.value >= (Rational(1) - eps) * orc.value;

    ResultRow row;
    row.instance = "iik-ptas-" + pad3(i);
    row.seed = std::to_string(seed);
    row.eps = "1/2";
    row.algorithm = "solve-ptas";
    set_value(row, rep.value);
    set_oracle(row, orc.value);
    set_ratio(row, rep.value, orc.value);
    row.pieces_enum = static_cast<long>(rep.stats.pieces_enumerated);
    row.pieces_pruned = static_cast<long>(rep.stats.pieces_pruned);
    row.pieces_solved = static_cast<long>(rep.stats.pieces_solved);
    row.wall_ms = wall;
    row.guarantee = "value >= (1/2)*oracle; all rounded pieces audited";
    out.rows.push_back(std::move(row));

    out.checks = {{"guarantee", guarantee},
                  {"feasible", consistent},
                  {"weight-profit-equalities", audit.equalities},
                  {"fractional-bound", audit.fractional},
                  {"in-piece", audit.in_piece},
                  {"floor-retention", audit.floor_bound}};
    out.counts = {{"pieces_audited", audit.audited},
                  {"pieces_solved", rep.stats.pieces_solved}};
    if (!guarantee)
      out.failures.push_back(out.rows[0].instance + ": ratio below 1/2");
    return out;
  };
  spec.finish = [](SuiteResult& res, const std::vector<ResultRow>&,
                   const std::map<std::string, long long>& counts) {
    for (const char* key : {"pieces_audited", "pieces_solved"}) {
      auto it = counts.find(key);
      res.details[key] = std::to_string(it == counts.end() ? 0 : it->second);
    }
  };
  return spec;
}

// ---------------------------------------------------------------------------
// stairways: enumerated counts against an independent recursive count plus
// the 2^{J+K+1} bound, for every grid J, K <= 5.

long long brute_stair_count(int J, int K, bool anchored) {
  // Sequences over j-values {1..J} strictly decreasing and class values
  // {0..K} strictly increasing; counts only depend on the label sets.
  std::function<long long(int, int)> ext = [&](int j, int k) {
    long long c = 1;
    for (int j2 = 1; j2 < j; ++j2)
      for (int k2 = k + 1; k2 <= K; ++k2) c += ext(j2, k2);
    return c;
  };
  long long total = anchored ? 0 : 1;
  for (int j = 1; j <= J; ++j) {
    const int k_hi = anchored ? 0 : K;
    for (int k = 0; k <= k_hi; ++k) total += ext(j, k);
  }
  return total;
}

bool stair_shape_ok(const Stairway& s) {
  for (std::size_t h = 1; h < s.entries.size(); ++h) {
    if (s.entries[h].j >= s.entries[h - 1].j) return false;
    if (s.entries[h].k <= s.entries[h - 1].k) return false;
  }
  return true;
}

SuiteSpec make_stairways(int size_override) {
  SuiteSpec spec;
  spec.name = "stairways";
  spec.count = clamp_count(30, size_override);
  spec.check_names = {"counts-match", "bound", "structure"};
  spec.job = [](int i) {
    JobResult out;
    const int J = 1 + i / 6;
    const int K = i % 6;
    auto free_list = enumerate_stairways(J, K, false);
    auto anchored = enumerate_stairways(J, K, true);
    const long long brute_free = brute_stair_count(J, K, false);
    const long long brute_anch = brute_stair_count(J, K, true);
    const long long bound = 1LL << (J + K + 1);

    bool structure = true;
    std::set<std::vector<std::pair<int, int>>> seen;
    for (const auto* list : {&free_list, &anchored}) {
      seen.clear();
      for (const Stairway& s : *list) {
        structure = structure && stair_shape_ok(s);
        std::vector<std::pair<int, int>> key;
        for (const StairEntry& e : s.entries) key.emplace_back(e.j, e.k);
        structure = structure && seen.insert(key).second;
      }
    }
    for (const Stairway& s : anchored)
      structure = structure && !s.entries.empty() && s.entries.front().k == 0;

    bool match = static_cast<long long>(free_list.size()) == brute_free &&
                 static_cast<long long>(anchored.size()) == brute_anch;
    bool bounded = static_cast<long long>(free_list.size()) <= bound &&
                   static_cast<long long>(anchored.size()) <= bound;

    const std::string tag = "J" + std::to_string(J) + "K" + std::to_string(K);
    for (int mode = 0; mode < 2; ++mode) {
      ResultRow row;
      row.instance = "stairways-" + tag;
      row.algorithm = mode == 0 ? "stairways-free" : "stairways-anchored";
      const long long got = mode == 0 ? static_cast<long long>(free_list.size())
                                      : static_cast<long long>(anchored.size());
      const long long want = mode == 0 ? brute_free : brute_anch;
      set_value(row, Rational(got));
      set_oracle(row, Rational(want));
      set_ratio(row, Rational(got), Rational(want));
      row.pieces_enum = static_cast<long>(got);
      row.guarantee = "count == independent recursion; count <= 2^(J+K+1)";
      out.rows.push_back(std::move(row));
    }
    out.checks = {{"counts-match", match}, {"bound", bounded}, {"structure", structure}};
    if (!match)
      out.failures.push_back("stairways-" + tag + ": enumerated count disagrees");
    return out;
  };
  return spec;
}

// ---------------------------------------------------------------------------
// wellbehaved: shape of the massaged instance plus exact retention of the
// 1-in optimum, eps = 1/2.

SuiteSpec make_wellbehaved(int size_override) {
  SuiteSpec spec;
  spec.name = "wellbehaved";
  spec.count = clamp_count(50, size_override);
  spec.check_names = {"shape", "bounds", "opt-retention"};
  spec.job = [](int i) {
    JobResult out;
    const unsigned long long seed = 3000 + i;
    const Rational eps(1, 2);
    IikGenParams gp;
    gp.n_hi = 6;
    IikInstance raw = gen_iik(seed, gp);
    TransformResult restricted = one_in_restrict(raw, 0);
    const IikInstance& base = restricted.instance;

    auto t0 = Clock::now();
    TransformResult tr = well_behave(base, eps);
    const IikInstance& wb = tr.instance;

    bool shape = is_well_behaved(wb, eps);
    bool bounds = wb.n() == base.n() && wb.T() == base.T();
    for (int t = 0; bounds && t < base.T(); ++t)
      bounds = wb.capacity[t] <= base.capacity[t];
    if (bounds) bounds = wb.capacity[base.T() - 1] == base.capacity[base.T() - 1];
    for (int j = 0; bounds && j < base.n(); ++j)
      bounds = wb.profit[j] <= base.profit[j] &&
               base.profit[j] <= (Rational(1) + eps) * wb.profit[j];

    OracleOptions req;
    req.require_item_one = true;
    IikOracleResult before = exact_iik(base, req);
    IikOracleResult after = exact_iik(wb, req);
    long wall = elapsed_ms(t0);
    const Rational retain = (Rational(1) - eps) * (Rational(1) - eps);
    bool retention = before.feasible && after.feasible &&
                     after.value >= retain * before.value;

    ResultRow row;
    row.instance = "wellbehaved-" + pad3(i);
    row.seed = std::to_string(seed);
    row.eps = "1/2";
    row.algorithm = "well-behave";
    set_value(row, after.value);
    set_oracle(row, before.value);
    set_ratio(row, after.value, before.value);
    row.wall_ms = wall;
    row.guarantee = "profit powers; significant-time capacities; b' <= b; "
                    "p/(1+eps) <= p' <= p; opt' >= (1-eps)^2 * opt";
    out.rows.push_back(std::move(row));

    out.checks = {{"shape", shape}, {"bounds", bounds}, {"opt-retention", retention}};
    if (!retention)
      out.failures.push_back(out.rows[0].instance + ": 1-in optimum dropped too far");
    return out;
  };
  return spec;
}

// ---------------------------------------------------------------------------
// mink-vertex: solve piece LPs across eps in {1/4, 1/16} and check the
// vertex structure rounding relies on; the suite must see >= 500 solved LPs.

SuiteSpec make_mink_vertex(int size_override) {
  SuiteSpec spec;
  spec.name = "mink-vertex";
  spec.count = clamp_count(40, size_override);
  spec.check_names = {"vertex-structure", "coverage"};
  const bool full_size = spec.count == 40;
  spec.job = [](int i) {
    JobResult out;
    const unsigned long long seed = 4000 + i;
    const Rational eps = i % 2 == 0 ? Rational(1, 4) : Rational(1, 16);
    MinkGenParams gp;
    MinkInstance inst = gen_mink(seed, gp);
    const int n = inst.n();
    const long cap = static_cast<long>(ceil_rational(1 / eps));

    long solved = 0, skipped = 0, considered = 0;
    long long frac1 = 0, frac2 = 0;
    bool structure = true;
    auto t0 = Clock::now();
    for (int p = 0; p < n; ++p) {
      std::vector<Rational> scaled;
      std::vector<std::vector<int>> taus;
      if (inst.cost[p] == 0) {
        taus = {{}};
      } else {
        for (int j = p + 1; j < n; ++j) scaled.push_back(inst.cost[j] / inst.cost[p]);
        taus = enumerate_gamma(eps, scaled);
      }
      for (const auto& tau : taus) {
        ++considered;
        BucketFamily fam = buckets_tau(scaled, tau, eps);
        std::vector<int> ones(tau.size(), 1), maxed(tau.size());
        bool underfull = false;
        for (std::size_t k = 0; k < tau.size(); ++k) {
          const long have = static_cast<long>(fam.bucket[k].size());
          if (have == 0) underfull = true;
          maxed[k] = static_cast<int>(std::min(cap, have));
        }
        if (underfull) {
          ++skipped;
          continue;
        }
        const int variants = ones == maxed ? 1 : 2;
        for (int v = 0; v < variants; ++v) {
          const std::vector<int>& rho = v == 0 ? ones : maxed;
          MinkPiece piece = build_mink_piece(inst, p, tau, rho, eps);
          if (piece.empty) {
            ++skipped;
            continue;
          }
          LpResult res = solve_lp(piece.lp);
          if (res.status != LpStatus::optimal) continue;
          ++solved;
          const auto& pt = res.vertex->point;
          std::vector<int> frac;
          for (int j = 0; j < n; ++j)
            if (denominator(pt[j]) != 1) frac.push_back(j);
          if (frac.size() > 2) {
            structure = false;
          } else if (frac.size() == 2) {
            ++frac2;
            structure = structure &&
                        piece.bucket_of[frac[0]] == piece.bucket_of[frac[1]] &&
                        piece.bucket_of[frac[0]] >= 1 &&
                        pt[frac[0]] + pt[frac[1]] == 1;
          } else if (frac.size() == 1) {
            ++frac1;
          }
          RoundedCover rc = round_vertex(inst, piece, *res.vertex, eps);
          Rational wsum(0);
          for (int j = 0; j < n; ++j)
            if (rc.take[j]) wsum += inst.weight[j];
          structure = structure && wsum >= inst.demand && rc.take[p] == 1;
        }
      }
    }

    ResultRow row;
    row.instance = "mink-vertex-" + pad3(i);
    row.seed = std::to_string(seed);
    row.eps = i % 2 == 0 ? "1/4" : "1/16";
    row.algorithm = "mink-pieces";
    row.pieces_enum = considered;
    row.pieces_pruned = skipped;
    row.pieces_solved = solved;
    row.wall_ms = elapsed_ms(t0);
    row.guarantee = "every optimal vertex: <= 2 fractional; pairs share a "
                    "finite bucket and sum to 1";
    out.rows.push_back(std::move(row));

    out.checks = {{"vertex-structure", structure}};
    out.counts = {{"pieces_solved", solved}, {"frac1", frac1}, {"frac2", frac2}};
    if (!structure)
      out.failures.push_back(out.rows[0].instance + ": vertex structure violated");
    return out;
  };
  spec.finish = [full_size](SuiteResult& res, const std::vector<ResultRow>&,
                            const std::map<std::string, long long>& counts) {
    auto get = [&](const char* k) {
      auto it = counts.find(k);
      return it == counts.end() ? 0LL : it->second;
    };
    const long long solved = get("pieces_solved");
    res.details["pieces_solved"] = std::to_string(solved);
    res.details["one_fractional"] = std::to_string(get("frac1"));
    res.details["two_fractional"] = std::to_string(get("frac2"));
    if (full_size && solved < 500) {
      res.checks["coverage"] = false;
      res.failures.push_back("mink-vertex: fewer than 500 solved piece LPs");
    }
  };
  return spec;
}

// ---------------------------------------------------------------------------
// mink-cover: read the stair vector off a random feasible cover containing
// item 0 and verify the matching piece admits it, eps = 1/4.

SuiteSpec make_mink_cover(int size_override) {
  SuiteSpec spec;
  spec.name = "mink-cover";
  spec.count = clamp_count(100, size_override);
  spec.check_names = {"cover-valid"};
  spec.job = [](int i) {
    JobResult out;
    const unsigned long long seed = 5000 + i;
    const Rational eps(1, 4);
    MinkGenParams gp;
    MinkInstance inst = gen_mink(seed, gp);
    const int n = inst.n();

    std::mt19937_64 rng(90000ULL + i);
    std::vector<int> take(n, 0);
    take[0] = 1;
    for (int j = 1; j < n; ++j) take[j] = static_cast<int>(rng() % 2);
    Rational got(0);
    for (int j = 0; j < n; ++j)
      if (take[j]) got += inst.weight[j];
    for (int j = 1; j < n && got < inst.demand; ++j) {
      if (!take[j]) {
        take[j] = 1;
        got += inst.weight[j];
      }
    }

    auto t0 = Clock::now();
    CoverResult cv = cover(inst, take, eps);
    const long cap = static_cast<long>(ceil_rational(1 / eps));
    bool valid = in_gamma(cv.tau, eps) && cv.rho.size() == cv.tau.size();
    for (int r : cv.rho) valid = valid && r >= 1 && r <= cap;

    MinkPiece piece = build_mink_piece(inst, 0, cv.tau, cv.rho, eps);
    std::vector<Rational> xhat(n);
    for (int j = 0; j < n; ++j) xhat[j] = Rational(take[j]);
    valid = valid && !piece.empty && satisfies(piece.lp, xhat);
    long wall = elapsed_ms(t0);

    Rational cost(0);
    for (int j = 0; j < n; ++j)
      if (take[j]) cost += inst.cost[j];
    MinkOracleResult orc = exact_mink(inst);

    ResultRow row;
    row.instance = "mink-cover-" + pad3(i);
    row.seed = std::to_string(seed);
    row.eps = "1/4";
    row.algorithm = "cover-read";
    set_value(row, cost);
    if (orc.feasible) {
      set_oracle(row, orc.value);
      set_ratio(row, cost, orc.value);
    }
    row.wall_ms = wall;
    row.guarantee = "tau in Gamma; piece for pivot 0 contains the cover";
    out.rows.push_back(std::move(row));

    out.checks = {{"cover-valid", valid}};
    if (!valid)
      out.failures.push_back(out.rows[0].instance + ": cover escaped its piece");
    return out;
  };
  return spec;
}

// ---------------------------------------------------------------------------
// mink-gap: full disjunction on three-level instances at eps = 1/16; the
// sandwich must hold and OPT/LP is expected within 1 + 2 eps = 9/8. A
// violation writes the instance next to the CSV for later replay.

SuiteSpec make_mink_gap(int size_override, const std::string& csv_path) {
  SuiteSpec spec;
  spec.name = "mink-gap";
  spec.count = clamp_count(30, size_override);
  spec.check_names = {"sandwich", "gap-bound"};
  spec.job = [csv_path](int i) {
    JobResult out;
    const unsigned long long seed = 2000 + i;
    const Rational eps(1, 16);
    MinkGenParams gp;
    gp.cost_levels = 3;
    gp.eps = eps;
    gp.n_lo = 6;
    gp.n_hi = 12;
    MinkInstance inst = gen_mink(seed, gp);

    auto t0 = Clock::now();
    GapReport rep = disjunction_gap(inst, eps, 0);
    long wall = elapsed_ms(t0);

    bool sandwich = rep.full && rep.sandwich_ok;
    bool gap_ok = !rep.ratios_defined || rep.ratio_int <= Rational(9, 8);

    ResultRow row;
    row.instance = "mink-gap-" + pad3(i);
    row.seed = std::to_string(seed);
    row.eps = "1/16";
    row.algorithm = "disjunction-gap";
    if (rep.feasible) set_value(row, rep.opt_int);
    if (rep.lp_found) set_oracle(row, rep.lp_disj);
    if (rep.ratios_defined) {
      row.ratio = to_fraction_string(rep.ratio_int);
      row.ratio_dec = to_decimal_string(rep.ratio_int);
    }
    row.pieces_enum = rep.pieces_enumerated;
    row.pieces_pruned = rep.pieces_pruned;
    row.pieces_solved = rep.pieces_solved;
    row.wall_ms = wall;
    row.guarantee = "lp_disj <= opt <= rounded; opt/lp_disj <= 9/8 expected";
    out.rows.push_back(std::move(row));

    out.checks = {{"sandwich", sandwich}, {"gap-bound", gap_ok}};
    if (!sandwich)
      out.failures.push_back(out.rows[0].instance + ": sandwich violated");
    if (!gap_ok) {
      std::string where = "(csv path not set; instance not preserved)";
      if (!csv_path.empty()) {
        where = csv_path + ".counterexample-" + std::to_string(seed) + ".json";
        write_file(where, instance_to_json(inst));
      }
      out.failures.push_back(out.rows[0].instance +
                             ": opt/lp exceeds 9/8; counterexample " + where);
      out.notes.emplace_back("counterexample", where);
    }
    return out;
  };
  spec.finish = [](SuiteResult& res, const std::vector<ResultRow>& rows,
                   const std::map<std::string, long long>&) {
    bool any = false;
    Rational worst(0);
    for (const ResultRow& r : rows) {
      if (r.ratio == "-" || r.instance == "summary") continue;
      Rational q = parse_rational(r.ratio);
      if (!any || q > worst) worst = q;
      any = true;
    }
    res.details["max_ratio"] =
        any ? to_fraction_string(worst) + " (" + to_decimal_string(worst) + ")"
            : "undefined";
  };
  return spec;
}

// ---------------------------------------------------------------------------
// multi: copy-count guarantee against the multiplicity oracle, plus the
// unit-multiplicity identity with the single-copy solver. The first half of
// the jobs carries d_i in [1,3]; the second half reruns both solvers on
// single-copy instances and compares reports field by field (wall clock
// excluded, it is the one environmental quantity in a report).

SuiteSpec make_multi(int size_override) {
  SuiteSpec spec;
  spec.name = "multi";
  spec.count = clamp_count(100, size_override);
  const int half = spec.count / 2;
  spec.check_names = {"guarantee", "feasible", "unit-identity",
                      "fractional-bound", "weight-profit-equalities",
                      "floor-retention"};
  spec.job = [half](int i) {
    JobResult out;
    const Rational eps(1, 2);
    if (i < half) {
      const unsigned long long seed = 6000 + i;
      IikGenParams gp;
      gp.n_lo = 2;
      gp.n_hi = 5;
      gp.t_hi = 3;
      gp.mult_hi = 3;
      IikInstance inst = gen_iik(seed, gp);

      RoundAuditState audit;
      SolveOptions opt;
      opt.round_all = true;
      opt.on_rounded = make_auditor(audit, eps / 4);

      auto t0 = Clock::now();
      MultiSolveReport rep = solve_multi(inst, eps, opt);
      long wall = elapsed_ms(t0);
      MultiOracleResult orc = exact_iik_multi(inst);

      bool consistent = check_feasible(inst, rep.schedule).ok &&
                        evaluate_profit(inst, rep.schedule) == rep.value;
      bool guarantee = rep.full_enumeration && orc.feasible &&
                       rep.value >= (Rational(1) - eps) * orc.value;

      ResultRow row;
      row.instance = "multi-" + pad3(i);
      row.seed = std::to_string(seed);
      row.eps = "1/2";
      row.algorithm = "solve-multi";
      set_value(row, rep.value);
      set_oracle(row, orc.value);
      set_ratio(row, rep.value, orc.value);
      row.pieces_enum = static_cast<long>(rep.stats.pieces_enumerated);
      row.pieces_pruned = static_cast<long>(rep.stats.pieces_pruned);
      row.pieces_solved = static_cast<long>(rep.stats.pieces_solved);
      row.wall_ms = wall;
      row.guarantee = "value >= (1/2)*multiplicity oracle";
      out.rows.push_back(std::move(row));

      out.checks = {{"guarantee", guarantee},
                    {"feasible", consistent},
                    {"fractional-bound", audit.fractional},
                    {"weight-profit-equalities", audit.equalities},
                    {"floor-retention", audit.floor_bound}};
      out.counts = {{"pieces_audited", audit.audited}};
      if (!guarantee)
        out.failures.push_back(out.rows[0].instance + ": ratio below 1/2");
    } else {
      const unsigned long long seed = 6500 + (i - half);
      IikGenParams gp;
      gp.n_lo = 2;
      gp.n_hi = 5;
      gp.t_hi = 3;
      IikInstance inst = gen_iik(seed, gp);

      auto t0 = Clock::now();
      MultiSolveReport a = solve_multi(inst, eps);
      SolveReport b = solve_ptas(inst, eps);
      long wall = elapsed_ms(t0);

      bool identical = a.value == b.value &&
                       a.full_enumeration == b.full_enumeration &&
                       a.eps == b.eps && a.eps_internal == b.eps_internal &&
                       a.stats.pieces_enumerated == b.stats.pieces_enumerated &&
                       a.stats.pieces_pruned == b.stats.pieces_pruned &&
                       a.stats.pieces_solved == b.stats.pieces_solved &&
                       a.stats.lp_pivots == b.stats.lp_pivots &&
                       a.schedule.count == to_multi(inst, b.schedule).count;

      ResultRow row;
      row.instance = "multi-unit-" + pad3(i - half);
      row.seed = std::to_string(seed);
      row.eps = "1/2";
      row.algorithm = "unit-identity";
      set_value(row, a.value);
      set_oracle(row, b.value);
      set_ratio(row, a.value, b.value);
      row.pieces_enum = static_cast<long>(a.stats.pieces_enumerated);
      row.pieces_pruned = static_cast<long>(a.stats.pieces_pruned);
      row.pieces_solved = static_cast<long>(a.stats.pieces_solved);
      row.wall_ms = wall;
      row.guarantee = "solve_multi == solve_ptas on single copies "
                      "(value; schedule; counters; wall clock excluded)";
      out.rows.push_back(std::move(row));

      out.checks = {{"unit-identity", identical}};
      if (!identical)
        out.failures.push_back(out.rows[0].instance + ": reports diverged");
    }
    return out;
  };
  spec.finish = [](SuiteResult& res, const std::vector<ResultRow>&,
                   const std::map<std::string, long long>& counts) {
    auto it = counts.find("pieces_audited");
    res.details["pieces_audited"] =
        std::to_string(it == counts.end() ? 0 : it->second);
  };
  return spec;
}

// ---------------------------------------------------------------------------
// ik: discounted instances with nondecreasing discounts. Checks the exact
// telescoping identity between discounted profit and the expanded unit
// profit on random schedules, then the end-to-end solve against the oracle.

SuiteSpec make_ik(int size_override) {
  SuiteSpec spec;
  spec.name = "ik";
  spec.count = clamp_count(50, size_override);
  spec.check_names = {"profit-identity", "guarantee", "report-consistent"};
  spec.job = [](int i) {
    JobResult out;
    const unsigned long long seed = 7000 + i;
    const Rational eps(1, 2);
    IikGenParams gp;
    gp.n_lo = 2;
    gp.n_hi = 6;
    gp.t_hi = 3;
    gp.delta_hi = 4;
    IikInstance inst = gen_iik(seed, gp);
    const int n = inst.n();
    const int T = inst.T();

    IkExpansion ex = reduce_ik_bounded(inst);
    std::vector<int> block_start(T, 0);
    for (int t = 1; t < T; ++t) block_start[t] = ex.last_copy[t - 1] + 1;

    // The identity is arithmetic, so the sampled schedules need not be
    // feasible; they only need to be block-aligned under the expansion.
    std::mt19937_64 rng(70000ULL + i);
    bool identity = true;
    for (int round = 0; round < 5; ++round) {
      Schedule s;
      s.insert_time.resize(n);
      for (int j = 0; j < n; ++j) {
        const int r = static_cast<int>(rng() % (T + 1));
        s.insert_time[j] = r == T ? kNever : r;
      }
      Schedule se;
      se.insert_time.resize(n);
      for (int j = 0; j < n; ++j)
        se.insert_time[j] =
            s.insert_time[j] == kNever ? kNever : block_start[s.insert_time[j]];
      identity = identity &&
                 evaluate_profit(inst, s) == evaluate_profit(ex.instance, se);
      Schedule back = pull_back(ex, se);
      identity = identity && back.insert_time == s.insert_time;
    }

    auto t0 = Clock::now();
    SolveReport rep = solve_ik(inst, eps);
    long wall = elapsed_ms(t0);
    IikOracleResult orc = exact_iik(inst);

    bool consistent = check_feasible(inst, rep.schedule).ok &&
                      evaluate_profit(inst, rep.schedule) == rep.value &&
                      !rep.chain.empty() && rep.chain.back().first == "discounted" &&
                      rep.chain.back().second == rep.value;
    const Rational floor_factor = Rational(1) - 2 * eps;
    bool guarantee = rep.full_enumeration && orc.feasible &&
                     rep.value >= floor_factor * orc.value &&
                     rep.value <= orc.value;

    ResultRow row;
    row.instance = "ik-" + pad3(i);
    row.seed = std::to_string(seed);
    row.eps = "1/2";
    row.algorithm = "solve-ik";
    set_value(row, rep.value);
    set_oracle(row, orc.value);
    set_ratio(row, rep.value, orc.value);
    row.pieces_enum = static_cast<long>(rep.stats.pieces_enumerated);
    row.pieces_pruned = static_cast<long>(rep.stats.pieces_pruned);
    row.pieces_solved = static_cast<long>(rep.stats.pieces_solved);
    row.wall_ms = wall;
    row.guarantee = "discounted == expanded profit on 5 schedules; "
                    "value >= (1-2*eps)*oracle (vacuous at eps=1/2)";
    out.rows.push_back(std::move(row));

    out.checks = {{"profit-identity", identity},
                  {"guarantee", guarantee},
                  {"report-consistent", consistent}};
    if (!identity)
      out.failures.push_back(out.rows[0].instance + ": expansion identity broke");
    return out;
  };
  return spec;
}

// ---------------------------------------------------------------------------
// mink-size: piece-count formulas, exact values pinned.

SuiteSpec make_mink_size(int size_override) {
  SuiteSpec spec;
  spec.name = "mink-size";
  spec.count = clamp_count(3, size_override);
  spec.check_names = {"counts"};
  spec.job = [](int i) {
    JobResult out;
    static const Rational eps_grid[3] = {Rational(1, 2), Rational(1, 4),
                                         Rational(1, 16)};
    static const char* eps_text[3] = {"1/2", "1/4", "1/16"};
    const Rational eps = eps_grid[i];

    auto t0 = Clock::now();
    Integer base = count_pieces(eps, PieceCountMode::baseline);
    Integer gam = count_pieces(eps, PieceCountMode::gamma);
    long wall = elapsed_ms(t0);

    bool ok = gam <= base;
    if (i == 0) ok = ok && base == 9 && gam == 9;
    if (i == 1) ok = ok && base == 78125 && gam == 1901;
    if (i == 2) {
      Integer expect_base(1);
      for (int k = 0; k < 46; ++k) expect_base *= 17;
      ok = ok && base == expect_base && gam == Integer(8726817532603873LL) &&
           gam < base;
    }

    ResultRow row;
    row.instance = std::string("mink-size-") + eps_text[i];
    row.eps = eps_text[i];
    row.algorithm = "count-pieces";
    set_value(row, Rational(gam));
    set_oracle(row, Rational(base));
    set_ratio(row, Rational(gam), Rational(base));
    row.wall_ms = wall;
    row.guarantee = "stair-vector count <= baseline; exact values pinned";
    out.rows.push_back(std::move(row));

    out.checks = {{"counts", ok}};
    if (!ok)
      out.failures.push_back(out.rows[0].instance + ": piece count drifted");
    return out;
  };
  return spec;
}

// ---------------------------------------------------------------------------
// determinism: rerun shrunken copies of every other suite twice and compare
// their CSV byte for byte with the timing column blanked.

SuiteSpec make_determinism(int size_override) {
  static const std::vector<std::pair<std::string, int>> kRerun = {
      {"iik-ptas", 6},  {"stairways", 0},  {"wellbehaved", 8},
      {"mink-vertex", 6}, {"mink-cover", 10}, {"mink-gap", 4},
      {"multi", 10},    {"ik", 4},         {"mink-size", 0},
  };
  SuiteSpec spec;
  spec.name = "determinism";
  spec.count = clamp_count(static_cast<int>(kRerun.size()), size_override);
  spec.check_names = {"byte-identical", "sub-suites-pass"};
  spec.job = [](int i) {
    JobResult out;
    const auto& [sub, size] = kRerun[i];
    auto t0 = Clock::now();
    SuiteResult first = run_suite(sub, "", size);
    SuiteResult second = run_suite(sub, "", size);
    long wall = elapsed_ms(t0);

    bool same = strip_timing(first.csv) == strip_timing(second.csv);
    bool passed = first.ok && second.ok;

    ResultRow row;
    row.instance = "determinism-" + sub;
    row.algorithm = "rerun-diff";
    row.wall_ms = wall;
    row.guarantee = "rerun CSV byte-identical excluding wall_ms";
    out.rows.push_back(std::move(row));

    out.checks = {{"byte-identical", same}, {"sub-suites-pass", passed}};
    if (!same)
      out.failures.push_back("determinism-" + sub + ": reruns differ");
    for (const std::string& f : first.failures)
      out.failures.push_back("determinism-" + sub + ": " + f);
    return out;
  };
  return spec;
}

SuiteSpec make_spec(const std::string& name, const std::string& csv_path,
                    int size_override) {
  if (name == "iik-ptas") return make_iik_ptas(size_override);
  if (name == "stairways") return make_stairways(size_override);
  if (name == "wellbehaved") return make_wellbehaved(size_override);
  if (name == "mink-vertex") return make_mink_vertex(size_override);
  if (name == "mink-cover") return make_mink_cover(size_override);
  if (name == "mink-gap") return make_mink_gap(size_override, csv_path);
  if (name == "multi") return make_multi(size_override);
  if (name == "ik") return make_ik(size_override);
  if (name == "mink-size") return make_mink_size(size_override);
  if (name == "determinism") return make_determinism(size_override);
  if (name == "none") {
    SuiteSpec spec;
    spec.name = "none";
    return spec;
  }
  throw std::invalid_argument("unknown suite: " + name);
}

}  // namespace

std::string csv_header() {
  return "instance,seed,eps,algorithm,value,value_dec,oracle,oracle_dec,"
         "ratio,ratio_dec,pieces_enum,pieces_pruned,pieces_solved,wall_ms,"
         "guarantee\n";
}

std::string csv_line(const ResultRow& row) {
  std::ostringstream os;
  os << scrub(row.instance) << ',' << scrub(row.seed) << ',' << scrub(row.eps)
     << ',' << scrub(row.algorithm) << ',' << scrub(row.value) << ','
     << scrub(row.value_dec) << ',' << scrub(row.oracle) << ','
     << scrub(row.oracle_dec) << ',' << scrub(row.ratio) << ','
     << scrub(row.ratio_dec) << ',' << row.pieces_enum << ','
     << row.pieces_pruned << ',' << row.pieces_solved << ',' << row.wall_ms
     << ',' << scrub(row.guarantee) << '\n';
  return os.str();
}

std::vector<std::string> suite_names() {
  return {"iik-ptas", "stairways",  "wellbehaved", "mink-vertex",
          "mink-cover", "mink-gap", "multi",       "ik",
          "mink-size", "determinism", "none"};
}

std::string strip_timing(const std::string& csv) {
  std::string out;
  out.reserve(csv.size());
  std::istringstream in(csv);
  std::string line;
  while (std::getline(in, line)) {
    std::vector<std::string> cells;
    std::string cell;
    std::istringstream ls(line);
    while (std::getline(ls, cell, ',')) cells.push_back(cell);
    if (line.size() && line.back() == ',') cells.push_back("");
    if (cells.size() == 15) cells[13].clear();
    for (std::size_t c = 0; c < cells.size(); ++c) {
      if (c) out += ',';
      out += cells[c];
    }
    out += '\n';
  }
  return out;
}

SuiteResult run_suite(const std::string& name, const std::string& csv_path,
                      int size_override) {
  SuiteSpec spec = make_spec(name, csv_path, size_override);
  SuiteResult out;
  out.name = spec.name;
  out.checks["completed"] = true;
  for (const std::string& c : spec.check_names) out.checks[c] = true;
  out.csv = csv_header();

  std::ofstream file;
  if (!csv_path.empty()) {
    file.open(csv_path, std::ios::binary | std::ios::trunc);
    if (!file) throw std::runtime_error("cannot open csv path: " + csv_path);
    file << out.csv << std::flush;
  }

  const int count = spec.count;
  std::vector<std::optional<JobResult>> slots(count);
  std::mutex mu;
  std::condition_variable cv;
  std::atomic<int> cursor{0};
  auto work = [&] {
    for (;;) {
      const int i = cursor.fetch_add(1);
      if (i >= count) return;
      JobResult jr;
      try {
        jr = spec.job(i);
      } catch (const std::exception& e) {
        jr = JobResult{};
        ResultRow row;
        row.instance = spec.name + "-" + pad3(i);
        row.algorithm = "error";
        row.guarantee = std::string("exception: ") + e.what();
        jr.failures.push_back(row.instance + ": exception: " + e.what());
        jr.rows.push_back(std::move(row));
        jr.checks.emplace_back("completed", false);
      }
      {
        std::lock_guard<std::mutex> lk(mu);
        slots[i] = std::move(jr);
      }
      cv.notify_all();
    }
  };

  const unsigned hw = std::thread::hardware_concurrency();
  int workers = static_cast<int>(hw == 0 ? 1 : hw);
  workers = std::min(workers, 4);
  workers = std::min(workers, std::max(count, 1));
  std::vector<std::thread> pool;
  pool.reserve(workers);
  for (int w = 0; w < workers && count > 0; ++w) pool.emplace_back(work);

  // Single writer: rows leave in instance order and hit the disk as soon as
  // their instance finishes, so a killed run keeps a usable prefix.
  std::vector<ResultRow> rows;
  std::map<std::string, long long> counts;
  for (int i = 0; i < count; ++i) {
    std::unique_lock<std::mutex> lk(mu);
    cv.wait(lk, [&] { return slots[i].has_value(); });
    JobResult jr = std::move(*slots[i]);
    slots[i].reset();
    lk.unlock();
    for (ResultRow& r : jr.rows) {
      const std::string line = csv_line(r);
      out.csv += line;
      if (file.is_open()) file << line << std::flush;
      rows.push_back(std::move(r));
    }
    for (std::string& f : jr.failures) out.failures.push_back(std::move(f));
    for (const auto& [key, val] : jr.checks) {
      auto it = out.checks.find(key);
      if (it == out.checks.end())
        out.checks[key] = val;
      else
        it->second = it->second && val;
    }
    for (const auto& [key, val] : jr.counts) counts[key] += val;
    for (const auto& [key, val] : jr.notes) out.details[key] = val;
  }
  for (std::thread& th : pool) th.join();

  if (count > 0) {
    ResultRow summary;
    summary.instance = "summary";
    summary.algorithm = spec.name;
    bool any = false;
    int with_ratio = 0;
    Rational least(0), total(0);
    for (const ResultRow& r : rows) {
      summary.pieces_enum += r.pieces_enum;
      summary.pieces_pruned += r.pieces_pruned;
      summary.pieces_solved += r.pieces_solved;
      summary.wall_ms += r.wall_ms;
      if (r.ratio == "-") continue;
      const Rational q = parse_rational(r.ratio);
      if (!any || q < least) least = q;
      total += q;
      ++with_ratio;
      any = true;
    }
    std::string tail;
    if (any) {
      const Rational mean = total / with_ratio;
      summary.ratio = to_fraction_string(least);
      summary.ratio_dec = to_decimal_string(least);
      tail = "min_ratio=" + to_fraction_string(least) +
             "; mean_ratio=" + to_fraction_string(mean) + " (" +
             to_decimal_string(mean) + ")";
      out.details["min_ratio"] =
          to_fraction_string(least) + " (" + to_decimal_string(least) + ")";
      out.details["mean_ratio"] =
          to_fraction_string(mean) + " (" + to_decimal_string(mean) + ")";
    } else {
      tail = "no ratio rows";
    }
    summary.guarantee = "rows=" + std::to_string(rows.size()) + "; " + tail;
    const std::string line = csv_line(summary);
    out.csv += line;
    if (file.is_open()) file << line << std::flush;
    rows.push_back(std::move(summary));
  }

  if (spec.finish) spec.finish(out, rows, counts);
  out.ok = out.failures.empty();
  for (const auto& [key, val] : out.checks) {
    (void)key;
    out.ok = out.ok && val;
  }
  return out;
}

}  // namespace iknap
