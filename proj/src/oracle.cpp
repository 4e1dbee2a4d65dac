#include "iknap/oracle.hpp"

#include <algorithm>
#include <limits>

namespace iknap {

namespace {

constexpr long long kIntLimit = std::numeric_limits<long long>::max() / 4;

bool to_small_int(const Rational& q, long long& out) {
  if (boost::multiprecision::denominator(q) != 1) return false;
  const Integer num = boost::multiprecision::numerator(q);
  if (num > kIntLimit || num < -kIntLimit) return false;
  out = num.convert_to<long long>();
  return true;
}

bool to_small_ints(const std::vector<Rational>& in, std::vector<long long>& out) {
  out.resize(in.size());
  for (size_t i = 0; i < in.size(); ++i) {
    if (!to_small_int(in[i], out[i])) return false;
  }
  return true;
}

/// DFS over insertion times, one item per level. `room[t]` is the capacity
/// left at time t; an insertion at s occupies every time from s on. Branches
/// are cut only on capacity, so with unbounded room the leaf count is exactly
/// (T+1)^n (or T*(T+1)^(n-1) when item 0 must enter).
template <typename W>
void iik_dfs(const IikInstance& inst, const std::vector<W>& w,
             const std::vector<Rational>& suffix, std::vector<W>& room,
             bool require_first, int i, std::vector<int>& cur, Rational& value,
             IikOracleResult& best, long long& leaves) {
  const int n = inst.n();
  const int T = inst.T();
  if (i == n) {
    ++leaves;
    if (!best.feasible || value > best.value) {
      best.feasible = true;
      best.value = value;
      best.schedule.insert_time = cur;
    }
    return;
  }
  for (int s = 0; s < T; ++s) {
    bool fits = true;
    for (int t = s; t < T; ++t) {
      if (w[i] > room[t]) {
        fits = false;
        break;
      }
    }
    if (!fits) continue;
    for (int t = s; t < T; ++t) room[t] -= w[i];
    cur[i] = s;
    value += inst.profit[i] * suffix[s];
    iik_dfs(inst, w, suffix, room, require_first, i + 1, cur, value, best,
            leaves);
    value -= inst.profit[i] * suffix[s];
    cur[i] = kNever;
    for (int t = s; t < T; ++t) room[t] += w[i];
  }
  if (!(require_first && i == 0)) {
    iik_dfs(inst, w, suffix, room, require_first, i + 1, cur, value, best,
            leaves);
  }
}

/// DFS over monotone copy-count profiles, one (item, time) cell per level.
/// `prev` carries the count at the previous time of the current item.
template <typename W>
void multi_dfs(const IikInstance& inst, const std::vector<W>& w,
               const std::vector<Rational>& unit_profit, std::vector<W>& room,
               const std::vector<long long>& mult, bool require_first, int i,
               int t, long long prev, std::vector<std::vector<long long>>& cur,
               Rational& value, MultiOracleResult& best, long long& leaves) {
  const int n = inst.n();
  const int T = inst.T();
  if (i == n) {
    ++leaves;
    if (!best.feasible || value > best.value) {
      best.feasible = true;
      best.value = value;
      for (int tt = 0; tt < T; ++tt) {
        for (int ii = 0; ii < n; ++ii) {
          best.schedule.count[tt][ii] = Integer(cur[ii][tt]);
        }
      }
    }
    return;
  }
  if (t == T) {
    if (require_first && i == 0 && prev == 0) return;
    multi_dfs(inst, w, unit_profit, room, mult, require_first, i + 1, 0, 0,
              cur, value, best, leaves);
    return;
  }
  for (long long c = prev; c <= mult[i]; ++c) {
    const W need = w[i] * static_cast<W>(c);
    if (need > room[t]) break;
    room[t] -= need;
    cur[i][t] = c;
    value += unit_profit[i * T + t] * Rational(c);
    multi_dfs(inst, w, unit_profit, room, mult, require_first, i, t + 1, c,
              cur, value, best, leaves);
    value -= unit_profit[i * T + t] * Rational(c);
    cur[i][t] = 0;
    room[t] += need;
  }
}

void mink_dfs(const MinkInstance& inst, int i, Rational& weight_sum,
              Rational& cost_sum, Rational& remaining, std::vector<int>& cur,
              MinkOracleResult& best, long long& leaves) {
  if (weight_sum >= inst.demand) {
    ++leaves;
    // Costs are nonnegative, so extending a cover never improves it.
    if (!best.feasible || cost_sum < best.value) {
      best.feasible = true;
      best.value = cost_sum;
      best.take = cur;
    }
    return;
  }
  const int n = inst.n();
  if (i == n) return;
  if (weight_sum + remaining < inst.demand) return;
  if (best.feasible && cost_sum >= best.value) return;

  remaining -= inst.weight[i];

  cur[i] = 1;
  weight_sum += inst.weight[i];
  cost_sum += inst.cost[i];
  mink_dfs(inst, i + 1, weight_sum, cost_sum, remaining, cur, best, leaves);
  cost_sum -= inst.cost[i];
  weight_sum -= inst.weight[i];
  cur[i] = 0;

  mink_dfs(inst, i + 1, weight_sum, cost_sum, remaining, cur, best, leaves);

  remaining += inst.weight[i];
}

}  // namespace

IikOracleResult exact_iik(const IikInstance& inst, const OracleOptions& opt) {
  detail::require(!inst.has_multiplicities(),
                  "copy limits require exact_iik_multi");
  detail::require(opt.state_cap <= Integer(kIntLimit),
                  "state cap exceeds supported range");
  const int n = inst.n();
  const int T = inst.T();
  detail::require(!opt.require_item_one || n >= 1,
                  "require_item_one needs at least one item");
  Integer space = 1;
  for (int i = 0; i < n; ++i) {
    space *= T + 1;
    detail::require(space <= opt.state_cap, "search space exceeds state cap");
  }

  std::vector<Rational> suffix(T + 1, Rational(0));
  for (int t = T - 1; t >= 0; --t) {
    suffix[t] = suffix[t + 1] + Rational(inst.discount_at(t));
  }

  IikOracleResult best;
  best.schedule.insert_time.assign(n, kNever);
  std::vector<int> cur(n, kNever);
  Rational value(0);

  std::vector<long long> wi, ci;
  if (to_small_ints(inst.weight, wi) && to_small_ints(inst.capacity, ci)) {
    std::vector<long long> room = ci;
    iik_dfs<long long>(inst, wi, suffix, room, opt.require_item_one, 0, cur,
                       value, best, best.leaves);
  } else {
    std::vector<Rational> room = inst.capacity;
    iik_dfs<Rational>(inst, inst.weight, suffix, room, opt.require_item_one, 0,
                      cur, value, best, best.leaves);
  }
  if (!best.feasible) {
    best.value = 0;
    best.schedule.insert_time.assign(n, kNever);
  }
  return best;
}

MultiOracleResult exact_iik_multi(const IikInstance& inst,
                                  const OracleOptions& opt) {
  detail::require(opt.state_cap <= Integer(kIntLimit),
                  "state cap exceeds supported range");
  const int n = inst.n();
  const int T = inst.T();
  detail::require(!opt.require_item_one || n >= 1,
                  "require_item_one needs at least one item");

  std::vector<long long> mult(n);
  Integer space = 1;
  for (int i = 0; i < n; ++i) {
    const Integer em = inst.effective_multiplicity(i);
    detail::require(em <= Integer(kIntLimit), "multiplicity exceeds supported range");
    mult[i] = em.convert_to<long long>();
    // Profiles of one item are the monotone count paths: C(T + m, T) many.
    Integer profiles = 1;
    for (int t = 1; t <= T; ++t) {
      profiles *= em + t;
      profiles /= t;
    }
    space *= profiles;
    detail::require(space <= opt.state_cap, "search space exceeds state cap");
  }

  std::vector<Rational> unit_profit(static_cast<size_t>(n) * T);
  for (int i = 0; i < n; ++i) {
    for (int t = 0; t < T; ++t) {
      unit_profit[i * T + t] = inst.profit[i] * Rational(inst.discount_at(t));
    }
  }

  MultiOracleResult best;
  best.schedule.count.assign(T, std::vector<Integer>(n, Integer(0)));
  std::vector<std::vector<long long>> cur(n, std::vector<long long>(T, 0));
  Rational value(0);

  std::vector<long long> wi, ci;
  if (to_small_ints(inst.weight, wi) && to_small_ints(inst.capacity, ci)) {
    std::vector<long long> room = ci;
    multi_dfs<long long>(inst, wi, unit_profit, room, mult,
                         opt.require_item_one, 0, 0, 0, cur, value, best,
                         best.leaves);
  } else {
    std::vector<Rational> room = inst.capacity;
    multi_dfs<Rational>(inst, inst.weight, unit_profit, room, mult,
                        opt.require_item_one, 0, 0, 0, cur, value, best,
                        best.leaves);
  }
  if (!best.feasible) {
    best.value = 0;
    best.schedule.count.assign(T, std::vector<Integer>(n, Integer(0)));
  }
  return best;
}

MinkOracleResult exact_mink(const MinkInstance& inst, const OracleOptions& opt) {
  detail::require(opt.state_cap <= Integer(kIntLimit),
                  "state cap exceeds supported range");
  const int n = inst.n();
  Integer space = 1;
  for (int i = 0; i < n; ++i) {
    space *= 2;
    detail::require(space <= opt.state_cap, "search space exceeds state cap");
  }

  MinkOracleResult best;
  best.take.assign(n, 0);
  std::vector<int> cur(n, 0);
  Rational weight_sum(0), cost_sum(0), remaining(0);
  for (const Rational& w : inst.weight) remaining += w;

  mink_dfs(inst, 0, weight_sum, cost_sum, remaining, cur, best, best.leaves);
  if (!best.feasible) {
    best.value = 0;
    best.take.assign(n, 0);
  }
  return best;
}

MinkDpResult exact_mink_dp(const MinkInstance& inst) {
  const int n = inst.n();
  std::vector<long long> w(n);
  for (int i = 0; i < n; ++i) {
    detail::require(to_small_int(inst.weight[i], w[i]),
                    "covering table requires integer weights");
  }
  const Integer target_big = ceil_rational(inst.demand);
  detail::require(target_big <= Integer(5000000),
                  "demand too large for the covering table");
  const long long target = target_big.convert_to<long long>();

  // g[v] is the cheapest cost reaching covered weight at least v, with v
  // capped at the target so overshoot collapses into the final cell.
  std::vector<std::optional<Rational>> g(static_cast<size_t>(target) + 1);
  g[0] = Rational(0);
  for (int i = 0; i < n; ++i) {
    for (long long v = target - 1; v >= 0; --v) {
      if (!g[v].has_value()) continue;
      const long long to = std::min(v + w[i], target);
      const Rational cand = *g[v] + inst.cost[i];
      if (!g[to].has_value() || cand < *g[to]) g[to] = cand;
    }
  }

  MinkDpResult result;
  if (g[target].has_value()) {
    result.feasible = true;
    result.value = *g[target];
  }
  return result;
}

}  // namespace iknap
