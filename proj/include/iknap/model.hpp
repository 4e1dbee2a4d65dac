#pragma once

#include <limits>
#include <optional>
#include <string>
#include <vector>

#include "iknap/rational.hpp"

namespace iknap {

/// Sentinel insertion time for items never inserted. Real times are 0-based,
/// so `insert_time[i] <= t` tests membership at time t directly.
inline constexpr int kNever = std::numeric_limits<int>::max();

/// Multi-period knapsack instance. Arrays stay in the caller's item order;
/// `normalized_order` lists the items that fit at the last time, sorted by
/// nonincreasing profit (ties by caller index). Capacities are nondecreasing;
/// construction via validated() additionally requires them positive, while
/// instances produced by transforms may carry leading zeros.
struct IikInstance {
  std::vector<Rational> profit;
  std::vector<Rational> weight;
  std::vector<Rational> capacity;
  // Per-time objective discounts; empty means every time counts once.
  std::vector<Integer> discount;
  // Per-item copy limits; empty means one copy each, nullopt means unbounded.
  std::vector<std::optional<Integer>> multiplicity;
  std::vector<int> normalized_order;

  int n() const { return static_cast<int>(profit.size()); }
  int T() const { return static_cast<int>(capacity.size()); }

  Integer discount_at(int t) const {
    return discount.empty() ? Integer(1) : discount[t];
  }
  bool has_multiplicities() const { return !multiplicity.empty(); }
  /// Copy limit for item i; unbounded limits are capped by what the final
  /// capacity can hold, which is finite because weights are positive.
  Integer effective_multiplicity(int i) const;

  static IikInstance validated(std::vector<Rational> profits,
                               std::vector<Rational> weights,
                               std::vector<Rational> capacities,
                               std::vector<Integer> discounts = {},
                               std::vector<std::optional<Integer>> multiplicities = {},
                               bool allow_zero_capacity = false);
};

/// Covering knapsack instance: pick items of minimum total cost whose weight
/// reaches the demand. Arrays stay in the caller's item order; the relaxation
/// machinery sorts and rescales costs on its own copies.
struct MinkInstance {
  std::vector<Rational> cost;
  std::vector<Rational> weight;
  Rational demand;

  int n() const { return static_cast<int>(cost.size()); }

  static MinkInstance validated(std::vector<Rational> costs,
                                std::vector<Rational> weights,
                                Rational demand);
};

/// Incremental 0/1 solution: the time each item enters, or kNever.
struct Schedule {
  std::vector<int> insert_time;
};

/// Incremental solution with copy counts; count[t][i] is nondecreasing in t.
struct MultiSchedule {
  std::vector<std::vector<Integer>> count;
};

struct FeasibilityViolation {
  int time = 0;
  std::string what;
};

struct FeasibilityReport {
  bool ok = true;
  std::vector<FeasibilityViolation> violations;
};

Rational evaluate_profit(const IikInstance& inst, const Schedule& schedule);
Rational evaluate_profit(const IikInstance& inst, const MultiSchedule& schedule);

FeasibilityReport check_feasible(const IikInstance& inst, const Schedule& schedule);
FeasibilityReport check_feasible(const IikInstance& inst, const MultiSchedule& schedule);

/// Expands a 0/1 schedule to per-time copy counts (all counts 0 or 1).
MultiSchedule to_multi(const IikInstance& inst, const Schedule& schedule);

}  // namespace iknap
