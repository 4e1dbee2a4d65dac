#include "iknap/solver.hpp"

#include <algorithm>
#include <chrono>
#include <unordered_set>

#include "iknap/lp.hpp"

namespace iknap {
namespace {

bool unit_discounts(const IikInstance& inst) {
  for (const Integer& d : inst.discount) {
    if (d != 1) return false;
  }
  return true;
}

bool unit_multiplicities(const IikInstance& inst) {
  if (!inst.has_multiplicities()) return true;
  for (const auto& d : inst.multiplicity) {
    if (!d.has_value() || *d != 1) return false;
  }
  return true;
}

/// Deterministic integral incumbent: walk times in order, items by profit
/// density, and take as many copies as capacity and multiplicity allow.
MultiSchedule greedy_seed(const IikInstance& inst,
                          const std::vector<int>& order) {
  const int T = inst.T();
  const int n = inst.n();
  MultiSchedule sched;
  sched.count.assign(T, std::vector<Integer>(n, Integer(0)));
  for (int t = 0; t < T; ++t) {
    if (t > 0) sched.count[t] = sched.count[t - 1];
    Rational load(0);
    for (int i = 0; i < n; ++i) {
      load += inst.weight[i] * Rational(sched.count[t][i]);
    }
    for (int i : order) {
      Rational room = inst.capacity[t] - load;
      if (room <= 0) break;
      Integer add = floor_rational(room / inst.weight[i]);
      Integer headroom = inst.effective_multiplicity(i) - sched.count[t][i];
      if (add > headroom) add = headroom;
      if (add > 0) {
        sched.count[t][i] += add;
        load += Rational(add) * inst.weight[i];
      }
    }
  }
  return sched;
}

/// Weight forced by demanding v copies from a class: cheapest items first,
/// the item covering copy v taken partially. Indexed by v, 0..value_cap;
/// callers never ask beyond the class's total supply.
std::vector<Rational> forced_weight_table(const IikInstance& inst,
                                          const std::vector<int>& members,
                                          int value_cap) {
  std::vector<Rational> table(value_cap + 1, Rational(0));
  Integer consumed(0);
  Rational consumed_weight(0);
  std::size_t idx = 0;
  for (int v = 1; v <= value_cap; ++v) {
    while (idx < members.size() &&
           consumed + inst.effective_multiplicity(members[idx]) < v) {
      const int item = members[idx];
      consumed += inst.effective_multiplicity(item);
      consumed_weight +=
          Rational(inst.effective_multiplicity(item)) * inst.weight[item];
      ++idx;
    }
    if (idx == members.size()) break;
    Rational residual = Rational(Integer(v) - consumed);
    table[v] = consumed_weight + residual * inst.weight[members[idx]];
  }
  return table;
}

struct CoreResult {
  MultiSchedule schedule;
  Rational value;
  SolveStats stats;
  bool full = true;
};

/// State shared across one guess's piece enumeration.
struct GuessContext {
  const IikInstance* original = nullptr;
  const IikInstance* wb = nullptr;
  const TransformResult* tr_restrict = nullptr;
  const TransformResult* tr_behave = nullptr;
  const ClassPartition* classes = nullptr;
  const std::vector<int>* significant = nullptr;
  const std::vector<int>* order = nullptr;
  Rational eps_internal;
  /// Largest factor by which lifting can grow a well-behaved profit:
  /// the guess's profit times the profit-rounding slack.
  Rational lift_factor;
  std::vector<std::vector<Rational>> forced_weight;
  std::vector<Rational> sig_capacity;
};

/// Optimistic value of a piece: fixed profit plus, per interval, a
/// fractional fill of the free cells into the remaining capacity.
Rational piece_upper_bound(const GuessContext& ctx, const Piece& piece) {
  Rational total = piece.fixed_profit;
  for (int l = 0; l < piece.L; ++l) {
    Rational room =
        ctx.wb->capacity[piece.interval_start[l]] - piece.forced_load[l];
    if (room <= 0) continue;
    Rational gain(0);
    for (int i : *ctx.order) {
      if (piece.var_of[l][i] < 0) continue;
      if (room <= 0) break;
      Rational take = room / ctx.wb->weight[i];
      Rational cap(piece.upper[l][i]);
      if (take > cap) take = cap;
      gain += take * ctx.wb->profit[i];
      room -= take * ctx.wb->weight[i];
    }
    total += Rational(piece.interval_len[l]) * gain;
  }
  return total;
}

struct Incumbent {
  MultiSchedule schedule;
  Rational value;
};

/// Builds, prunes, solves, and rounds one candidate piece. Returns false
/// when the LP budget has been exhausted.
bool process_piece(const GuessContext& ctx, const Stairway& stairway,
                   const RhoMap& rho, const SolveOptions& options,
                   std::unordered_set<std::string>& seen, SolveStats& stats,
                   Incumbent& best) {
  Piece piece = build_piece(*ctx.wb, *ctx.classes, *ctx.significant, stairway,
                            rho, ctx.eps_internal);
  ++stats.pieces_enumerated;
  if (piece.empty) {
    ++stats.pieces_pruned;
    return true;
  }
  if (!seen.insert(piece.fixing_key()).second) {
    ++stats.pieces_pruned;
    return true;
  }
  if (ctx.lift_factor * piece_upper_bound(ctx, piece) <= best.value) {
    ++stats.pieces_pruned;
    return true;
  }
  if (options.budget > 0 && stats.pieces_solved >= options.budget) {
    return false;
  }
  LpResult res;
  if (piece.lp.num_vars == 0) {
    res.status = LpStatus::optimal;
    res.vertex.emplace();
    res.vertex->value = Rational(0);
  } else {
    res = solve_lp(piece.lp);
  }
  ++stats.pieces_solved;
  stats.lp_pivots += res.pivots;
  if (res.status != LpStatus::optimal) {
    return true;
  }
  Rational cap = ctx.lift_factor * (piece.fixed_profit + res.vertex->value);
  if (!options.round_all && cap <= best.value) {
    return true;
  }
  RoundingTrace trace = greedy_round(*ctx.wb, piece, *ctx.classes,
                                     res.vertex->point, *ctx.order);
  if (options.on_rounded) {
    options.on_rounded(*ctx.wb, piece, *ctx.classes, trace);
  }
  MultiSchedule floored = floor_trace(piece, trace);
  MultiSchedule restricted = lift_schedule(*ctx.tr_behave, floored);
  MultiSchedule lifted = lift_schedule(*ctx.tr_restrict, restricted);
  Rational value = evaluate_profit(*ctx.original, lifted);
  detail::check(check_feasible(*ctx.original, lifted).ok,
                "lifted schedule must stay feasible on the input instance");
  if (value > best.value) {
    best.value = value;
    best.schedule = std::move(lifted);
  }
  return true;
}

/// Depth-first assignment of demanded values over the domain cells,
/// pruning branches whose forced weight already exceeds the capacity at
/// the cell's significant time. Returns false on budget exhaustion.
bool enumerate_pieces(const GuessContext& ctx, const Stairway& stairway,
                      const RhoDomain& domain, const SolveOptions& options,
                      std::unordered_set<std::string>& seen, SolveStats& stats,
                      Incumbent& best) {
  const int J = static_cast<int>(ctx.significant->size());
  const int K = ctx.classes->K;
  std::vector<int> assigned(domain.cells.size(), 0);
  std::vector<Rational> class_load(K + 1, Rational(0));
  Rational total_load(0);

  std::vector<int> hi(domain.cells.size());
  for (std::size_t c = 0; c < domain.cells.size(); ++c) {
    const Integer& cap = ctx.classes->caps[domain.cells[c].k];
    hi[c] = cap >= domain.value_cap ? domain.value_cap
                                    : static_cast<int>(cap);
  }

  std::function<bool(std::size_t)> descend = [&](std::size_t depth) -> bool {
    if (depth == domain.cells.size()) {
      RhoMap rho;
      rho.value.assign(J, std::vector<int>(K + 1, -1));
      for (std::size_t c = 0; c < domain.cells.size(); ++c) {
        rho.value[domain.cells[c].jt][domain.cells[c].k] = assigned[c];
      }
      return process_piece(ctx, stairway, rho, options, seen, stats, best);
    }
    const RhoCell& cell = domain.cells[depth];
    int lo = cell.prev >= 0 ? assigned[cell.prev] : 0;
    if (cell.anchor && lo < 1) lo = 1;
    const Rational& budget = ctx.sig_capacity[cell.jt];
    for (int v = lo; v <= hi[depth]; ++v) {
      Rational load = ctx.forced_weight[cell.k][v];
      Rational delta = load - class_load[cell.k];
      if (total_load + delta > budget) break;
      Rational saved = class_load[cell.k];
      class_load[cell.k] = load;
      total_load += delta;
      assigned[depth] = v;
      bool keep_going = descend(depth + 1);
      class_load[cell.k] = saved;
      total_load -= delta;
      if (!keep_going) return false;
    }
    return true;
  };
  return descend(0);
}

CoreResult solve_core(const IikInstance& inst, const Rational& eps,
                      const SolveOptions& options) {
  detail::require(eps > 0 && eps < 1, "eps must lie strictly between 0 and 1");
  detail::require(unit_discounts(inst),
                  "discounted instances go through solve_ik");
  const auto started = std::chrono::steady_clock::now();

  CoreResult result;
  const Rational eps_internal = eps / 4;
  std::vector<int> order = ratio_order(inst);

  Incumbent best;
  best.schedule = greedy_seed(inst, order);
  best.value = evaluate_profit(inst, best.schedule);

  bool full = true;
  for (std::size_t rank = 0; rank < inst.normalized_order.size() && full;
       ++rank) {
    TransformResult tr_restrict = one_in_restrict(inst, static_cast<int>(rank));
    TransformResult tr_behave =
        well_behave(tr_restrict.instance, eps_internal);
    const IikInstance& wb = tr_behave.instance;

    const long K = profit_class_count(eps_internal, wb.T());
    ClassPartition classes =
        partition_classes(wb, tr_behave.map.item_class, K);
    const std::vector<int>& significant = tr_behave.map.significant;

    std::vector<int> nonempty;
    for (long k = 0; k <= K; ++k) {
      if (!classes.items[k].empty()) nonempty.push_back(static_cast<int>(k));
    }
    std::vector<Stairway> stairways = enumerate_stairways_anchored(
        static_cast<int>(significant.size()), nonempty);
    if (stairways.empty()) continue;

    GuessContext ctx;
    ctx.original = &inst;
    ctx.wb = &wb;
    ctx.tr_restrict = &tr_restrict;
    ctx.tr_behave = &tr_behave;
    ctx.classes = &classes;
    ctx.significant = &significant;
    std::vector<int> wb_order = ratio_order(wb);
    ctx.order = &wb_order;
    ctx.eps_internal = eps_internal;
    ctx.lift_factor = tr_restrict.map.scale * (1 + eps_internal);
    const int value_cap =
        static_cast<int>(ceil_rational(1 / eps_internal)) + 1;
    ctx.forced_weight.resize(K + 1);
    for (long k = 0; k <= K; ++k) {
      ctx.forced_weight[k] =
          forced_weight_table(wb, classes.items[k], value_cap);
    }
    for (int t : significant) ctx.sig_capacity.push_back(wb.capacity[t]);

    std::unordered_set<std::string> seen;
    for (const Stairway& stairway : stairways) {
      RhoDomain domain = build_rho_domain(
          stairway, static_cast<int>(significant.size()),
          static_cast<int>(K), eps_internal);
      if (!enumerate_pieces(ctx, stairway, domain, options, seen,
                            result.stats, best)) {
        full = false;
        break;
      }
    }
  }

  result.schedule = std::move(best.schedule);
  result.value = std::move(best.value);
  result.full = full;
  result.stats.wall_ms = std::chrono::duration_cast<std::chrono::milliseconds>(
                             std::chrono::steady_clock::now() - started)
                             .count();
  return result;
}

}  // namespace

SolveReport solve_ptas(const IikInstance& inst, const Rational& eps,
                       const SolveOptions& options) {
  detail::require(unit_multiplicities(inst),
                  "instances with copy counts go through solve_multi");
  CoreResult core = solve_core(inst, eps, options);
  SolveReport report;
  report.schedule = to_schedule(core.schedule);
  report.value = std::move(core.value);
  report.stats = core.stats;
  report.full_enumeration = core.full;
  report.eps = eps;
  report.eps_internal = eps / 4;
  detail::check(report.value == evaluate_profit(inst, report.schedule),
                "reported profit must match the reported schedule");
  return report;
}

MultiSolveReport solve_multi(const IikInstance& inst, const Rational& eps,
                             const SolveOptions& options) {
  CoreResult core = solve_core(inst, eps, options);
  MultiSolveReport report;
  report.schedule = std::move(core.schedule);
  report.value = std::move(core.value);
  report.stats = core.stats;
  report.full_enumeration = core.full;
  report.eps = eps;
  report.eps_internal = eps / 4;
  detail::check(report.value == evaluate_profit(inst, report.schedule),
                "reported profit must match the reported schedule");
  return report;
}

DiscountScaling scale_discounts(const IikInstance& inst, const Rational& eps) {
  detail::require(eps > 0, "eps must be positive");
  const int T = inst.T();
  const int n = inst.n();
  detail::require(n >= 1 && T >= 1, "instance must be nonempty");
  Integer max_discount(1);
  for (int t = 0; t < T; ++t) {
    detail::require(t == 0 || inst.discount_at(t - 1) <= inst.discount_at(t),
                    "discounts must be nondecreasing");
    if (inst.discount_at(t) > max_discount) max_discount = inst.discount_at(t);
  }
  DiscountScaling out;
  out.divisor = eps * Rational(max_discount) / Rational(Integer(T) * n);
  out.instance = inst;
  out.instance.discount.resize(T);
  for (int t = 0; t < T; ++t) {
    out.instance.discount[t] =
        floor_rational(Rational(inst.discount_at(t)) / out.divisor);
  }
  return out;
}

IkExpansion reduce_ik_bounded(const IikInstance& inst, int time_cap) {
  const int T = inst.T();
  Integer total(0);
  for (int t = 0; t < T; ++t) {
    detail::require(inst.discount_at(t) >= 0, "discounts must be nonnegative");
    total += inst.discount_at(t);
  }
  detail::require(total >= 1, "expansion needs at least one period");
  detail::require(total <= time_cap, "expanded horizon exceeds the cap");

  IkExpansion out;
  std::vector<Rational> capacities;
  for (int t = 0; t < T; ++t) {
    long copies = static_cast<long>(inst.discount_at(t));
    for (long c = 0; c < copies; ++c) capacities.push_back(inst.capacity[t]);
    out.last_copy.push_back(static_cast<int>(capacities.size()) - 1);
  }
  out.instance = IikInstance::validated(inst.profit, inst.weight,
                                        std::move(capacities), {},
                                        inst.multiplicity);
  return out;
}

Schedule pull_back(const IkExpansion& expansion, const Schedule& expanded) {
  Schedule out;
  out.insert_time.assign(expanded.insert_time.size(), kNever);
  for (std::size_t i = 0; i < expanded.insert_time.size(); ++i) {
    if (expanded.insert_time[i] == kNever) continue;
    for (std::size_t t = 0; t < expansion.last_copy.size(); ++t) {
      if (expansion.last_copy[t] >= expanded.insert_time[i]) {
        out.insert_time[i] = static_cast<int>(t);
        break;
      }
    }
  }
  return out;
}

MultiSchedule pull_back(const IkExpansion& expansion,
                        const MultiSchedule& expanded) {
  MultiSchedule out;
  const std::size_t n = expanded.count.empty() ? 0 : expanded.count[0].size();
  for (int last : expansion.last_copy) {
    if (last < 0) {
      out.count.emplace_back(n, Integer(0));
    } else {
      out.count.push_back(expanded.count[last]);
    }
  }
  return out;
}

SolveReport solve_ik(const IikInstance& inst, const Rational& eps,
                     const SolveOptions& options) {
  detail::require(unit_multiplicities(inst),
                  "discounted solving expects single-copy items");
  Integer max_discount(1);
  for (int t = 0; t < inst.T(); ++t) {
    detail::require(t == 0 || inst.discount_at(t - 1) <= inst.discount_at(t),
                    "discounts must be nondecreasing");
    if (inst.discount_at(t) > max_discount) max_discount = inst.discount_at(t);
  }
  const Rational divisor =
      eps * Rational(max_discount) / Rational(Integer(inst.T()) * inst.n());

  SolveReport report;
  report.eps = eps;
  if (divisor <= 1) {
    // Discounts are already polynomially small: expand them as-is and keep
    // the caller's accuracy, since the expansion is lossless.
    IkExpansion expansion = reduce_ik_bounded(inst);
    SolveReport inner = solve_ptas(expansion.instance, eps, options);
    report.schedule = pull_back(expansion, inner.schedule);
    report.value = evaluate_profit(inst, report.schedule);
    report.stats = inner.stats;
    report.full_enumeration = inner.full_enumeration;
    report.eps_internal = inner.eps_internal;
    report.chain.emplace_back("expanded-unit", inner.value);
    report.chain.emplace_back("discounted", report.value);
  } else {
    DiscountScaling scaled = scale_discounts(inst, eps);
    IkExpansion expansion = reduce_ik_bounded(scaled.instance);
    SolveReport inner = solve_ptas(expansion.instance, eps / 2, options);
    report.schedule = pull_back(expansion, inner.schedule);
    report.value = evaluate_profit(inst, report.schedule);
    report.stats = inner.stats;
    report.full_enumeration = inner.full_enumeration;
    report.eps_internal = inner.eps_internal;
    report.chain.emplace_back("expanded-unit", inner.value);
    report.chain.emplace_back(
        "scaled-discounted", evaluate_profit(scaled.instance, report.schedule));
    report.chain.emplace_back("discounted", report.value);
  }
  detail::check(check_feasible(inst, report.schedule).ok,
                "pulled-back schedule must stay feasible");
  return report;
}

}  // namespace iknap
