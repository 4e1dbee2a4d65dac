#include "iknap/preprocess.hpp"

#include <algorithm>

namespace iknap {

namespace {

/// Ascending distinct values of ceil((1+eps)^j) for j = 0..floor_log(T).
/// These are the ages (T minus a 0-based time) at which capacities may rise.
std::vector<int> significant_ages(int T, const Rational& eps) {
  detail::require(T >= 1, "at least one time period required");
  detail::require(eps > 0 && eps < 1, "eps must lie in (0,1)");
  const Rational base = Rational(1) + eps;
  const long jmax = floor_log(base, Rational(T));
  std::vector<int> ages;
  for (long j = 0; j <= jmax; ++j) {
    const Integer age = ceil_rational(pow_rational(base, j));
    const int a = age.convert_to<int>();
    if (ages.empty() || ages.back() != a) ages.push_back(a);
  }
  return ages;
}

}  // namespace

long profit_class_count(const Rational& eps, int T) {
  detail::require(T >= 1, "at least one time period required");
  detail::require(eps > 0 && eps < 1, "eps must lie in (0,1)");
  return ceil_log(Rational(1) + eps, Rational(T) / eps);
}

long profit_class(const Rational& p, const Rational& eps, int T) {
  detail::require(p > 0 && p <= 1, "profit must lie in (0,1]");
  detail::require(eps > 0 && eps < 1, "eps must lie in (0,1)");
  if (p * T <= eps) return -1;
  return ceil_log(Rational(1) + eps, Rational(1) / p);
}

std::vector<int> significant_times(int T, const Rational& eps) {
  const std::vector<int> ages = significant_ages(T, eps);
  std::vector<int> times;
  times.reserve(ages.size());
  for (auto it = ages.rbegin(); it != ages.rend(); ++it) times.push_back(T - *it);
  return times;
}

TransformResult one_in_restrict(const IikInstance& inst, int rank) {
  detail::require(rank >= 0 &&
                      rank < static_cast<int>(inst.normalized_order.size()),
                  "rank outside the normalized item order");
  const Rational guess_profit = inst.profit[inst.normalized_order[rank]];

  TransformResult tr;
  tr.map.original_n = inst.n();
  tr.map.scale = guess_profit;

  std::vector<Rational> profits, weights;
  std::vector<std::optional<Integer>> mults;
  for (size_t r = rank; r < inst.normalized_order.size(); ++r) {
    const int i = inst.normalized_order[r];
    tr.map.item_map.push_back(i);
    profits.push_back(inst.profit[i] / guess_profit);
    weights.push_back(inst.weight[i]);
    if (inst.has_multiplicities()) mults.push_back(inst.multiplicity[i]);
  }
  tr.instance = IikInstance::validated(std::move(profits), std::move(weights),
                                       inst.capacity, inst.discount,
                                       std::move(mults),
                                       /*allow_zero_capacity=*/true);
  return tr;
}

TransformResult well_behave(const IikInstance& inst, const Rational& eps) {
  const int n = inst.n();
  const int T = inst.T();
  detail::require(n >= 1, "at least one item required");
  detail::require(inst.profit[0] == 1, "leading profit must be 1");
  for (int i = 1; i < n; ++i) {
    detail::require(inst.profit[i] <= inst.profit[i - 1],
                    "profits must be nonincreasing");
  }

  TransformResult tr;
  tr.map.original_n = n;
  tr.map.item_map.resize(n);
  const Rational base = Rational(1) + eps;

  std::vector<Rational> profits(n);
  tr.map.item_class.resize(n);
  for (int i = 0; i < n; ++i) {
    tr.map.item_map[i] = i;
    const long j = profit_class(inst.profit[i], eps, T);
    tr.map.item_class[i] = static_cast<int>(j);
    profits[i] = j < 0 ? inst.profit[i] : pow_rational(base, -j);
  }

  const std::vector<int> ages = significant_ages(T, eps);
  tr.map.significant = significant_times(T, eps);
  tr.map.band_source.resize(T);
  std::vector<Rational> capacities(T);
  for (int t = 0; t < T; ++t) {
    const int age = T - t;
    const auto it = std::lower_bound(ages.begin(), ages.end(), age);
    if (it == ages.end()) {
      tr.map.band_source[t] = -1;
      capacities[t] = 0;
    } else {
      const int source = T - *it;
      tr.map.band_source[t] = source;
      capacities[t] = inst.capacity[source];
    }
  }

  tr.instance = IikInstance::validated(std::move(profits), inst.weight,
                                       std::move(capacities), inst.discount,
                                       inst.multiplicity,
                                       /*allow_zero_capacity=*/true);
  return tr;
}

bool is_well_behaved(const IikInstance& inst, const Rational& eps) {
  detail::require(eps > 0 && eps < 1, "eps must lie in (0,1)");
  const int T = inst.T();
  const Rational base = Rational(1) + eps;
  const long K = profit_class_count(eps, T);
  for (const Rational& p : inst.profit) {
    if (p * T <= eps) continue;
    if (p > 1) return false;
    const long j = ceil_log(base, Rational(1) / p);
    if (j > K || p != pow_rational(base, -j)) return false;
  }
  const std::vector<int> sig = significant_times(T, eps);
  for (int t = 0; t < T; ++t) {
    if (std::binary_search(sig.begin(), sig.end(), t)) continue;
    const Rational prev = t == 0 ? Rational(0) : inst.capacity[t - 1];
    if (inst.capacity[t] != prev) return false;
  }
  return true;
}

Schedule lift_schedule(const TransformResult& tr, const Schedule& s) {
  detail::check(check_feasible(tr.instance, s).ok,
                "schedule infeasible for the transformed instance");
  Schedule out;
  out.insert_time.assign(tr.map.original_n, kNever);
  for (int i = 0; i < tr.instance.n(); ++i) {
    out.insert_time[tr.map.item_map[i]] = s.insert_time[i];
  }
  return out;
}

MultiSchedule lift_schedule(const TransformResult& tr, const MultiSchedule& s) {
  detail::check(check_feasible(tr.instance, s).ok,
                "schedule infeasible for the transformed instance");
  MultiSchedule out;
  out.count.assign(tr.instance.T(),
                   std::vector<Integer>(tr.map.original_n, Integer(0)));
  for (int t = 0; t < tr.instance.T(); ++t) {
    for (int i = 0; i < tr.instance.n(); ++i) {
      out.count[t][tr.map.item_map[i]] = s.count[t][i];
    }
  }
  return out;
}

}  // namespace iknap
