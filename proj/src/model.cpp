#include "iknap/model.hpp"

#include <algorithm>
#include <numeric>

namespace iknap {

Integer IikInstance::effective_multiplicity(int i) const {
  Integer by_capacity =
      T() == 0 ? Integer(0) : floor_rational(capacity.back() / weight[i]);
  if (by_capacity < 0) by_capacity = 0;
  if (!has_multiplicities() || !multiplicity[i].has_value()) {
    return has_multiplicities() ? by_capacity : Integer(1);
  }
  return std::min(*multiplicity[i], by_capacity < 0 ? Integer(0) : by_capacity);
}

IikInstance IikInstance::validated(std::vector<Rational> profits,
                                   std::vector<Rational> weights,
                                   std::vector<Rational> capacities,
                                   std::vector<Integer> discounts,
                                   std::vector<std::optional<Integer>> multiplicities,
                                   bool allow_zero_capacity) {
  detail::require(profits.size() == weights.size(),
                  "profits and weights must have equal length");
  detail::require(!capacities.empty(), "at least one time period required");
  for (const Rational& p : profits) detail::require(p > 0, "profits must be positive");
  for (const Rational& w : weights) detail::require(w > 0, "weights must be positive");
  for (size_t t = 0; t < capacities.size(); ++t) {
    if (allow_zero_capacity) {
      detail::require(capacities[t] >= 0, "capacities must be nonnegative");
    } else {
      detail::require(capacities[t] > 0, "capacities must be positive");
    }
    if (t > 0) {
      detail::require(capacities[t - 1] <= capacities[t],
                      "capacities must be nondecreasing");
    }
  }
  if (!discounts.empty()) {
    detail::require(discounts.size() == capacities.size(),
                    "discounts must cover every time period");
    for (const Integer& d : discounts) detail::require(d >= 1, "discounts must be positive");
  }
  if (!multiplicities.empty()) {
    detail::require(multiplicities.size() == profits.size(),
                    "multiplicities must cover every item");
    for (const auto& d : multiplicities) {
      detail::require(!d.has_value() || *d >= 1, "multiplicities must be positive");
    }
  }

  IikInstance inst;
  inst.profit = std::move(profits);
  inst.weight = std::move(weights);
  inst.capacity = std::move(capacities);
  inst.discount = std::move(discounts);
  inst.multiplicity = std::move(multiplicities);

  inst.normalized_order.resize(inst.profit.size());
  std::iota(inst.normalized_order.begin(), inst.normalized_order.end(), 0);
  std::stable_sort(inst.normalized_order.begin(), inst.normalized_order.end(),
                   [&](int a, int b) { return inst.profit[a] > inst.profit[b]; });
  std::erase_if(inst.normalized_order,
                [&](int i) { return inst.weight[i] > inst.capacity.back(); });
  return inst;
}

MinkInstance MinkInstance::validated(std::vector<Rational> costs,
                                     std::vector<Rational> weights,
                                     Rational demand) {
  detail::require(costs.size() == weights.size(),
                  "costs and weights must have equal length");
  detail::require(!costs.empty(), "at least one item required");
  for (const Rational& c : costs) detail::require(c >= 0, "costs must be nonnegative");
  for (const Rational& w : weights) detail::require(w > 0, "weights must be positive");
  detail::require(demand > 0, "demand must be positive");

  MinkInstance inst;
  inst.cost = std::move(costs);
  inst.weight = std::move(weights);
  inst.demand = std::move(demand);
  return inst;
}

Rational evaluate_profit(const IikInstance& inst, const Schedule& schedule) {
  detail::require(static_cast<int>(schedule.insert_time.size()) == inst.n(),
                  "schedule length must match item count");
  Rational total(0);
  for (int t = 0; t < inst.T(); ++t) {
    Rational at_t(0);
    for (int i = 0; i < inst.n(); ++i) {
      if (schedule.insert_time[i] <= t) at_t += inst.profit[i];
    }
    total += Rational(inst.discount_at(t)) * at_t;
  }
  return total;
}

Rational evaluate_profit(const IikInstance& inst, const MultiSchedule& schedule) {
  detail::require(static_cast<int>(schedule.count.size()) == inst.T(),
                  "schedule must cover every time period");
  Rational total(0);
  for (int t = 0; t < inst.T(); ++t) {
    detail::require(static_cast<int>(schedule.count[t].size()) == inst.n(),
                    "schedule row length must match item count");
    Rational at_t(0);
    for (int i = 0; i < inst.n(); ++i) {
      at_t += Rational(schedule.count[t][i]) * inst.profit[i];
    }
    total += Rational(inst.discount_at(t)) * at_t;
  }
  return total;
}

FeasibilityReport check_feasible(const IikInstance& inst, const Schedule& schedule) {
  detail::require(static_cast<int>(schedule.insert_time.size()) == inst.n(),
                  "schedule length must match item count");
  FeasibilityReport report;
  for (int i = 0; i < inst.n(); ++i) {
    int t = schedule.insert_time[i];
    if (t != kNever && (t < 0 || t >= inst.T())) {
      report.ok = false;
      report.violations.push_back({t, "insertion time out of range"});
    }
  }
  if (!report.ok) return report;
  for (int t = 0; t < inst.T(); ++t) {
    Rational load(0);
    for (int i = 0; i < inst.n(); ++i) {
      if (schedule.insert_time[i] <= t) load += inst.weight[i];
    }
    if (load > inst.capacity[t]) {
      report.ok = false;
      report.violations.push_back(
          {t, "load " + to_fraction_string(load) + " exceeds capacity " +
                  to_fraction_string(inst.capacity[t])});
    }
  }
  return report;
}

FeasibilityReport check_feasible(const IikInstance& inst, const MultiSchedule& schedule) {
  detail::require(static_cast<int>(schedule.count.size()) == inst.T(),
                  "schedule must cover every time period");
  FeasibilityReport report;
  for (int t = 0; t < inst.T(); ++t) {
    detail::require(static_cast<int>(schedule.count[t].size()) == inst.n(),
                    "schedule row length must match item count");
    Rational load(0);
    for (int i = 0; i < inst.n(); ++i) {
      const Integer& c = schedule.count[t][i];
      if (c < 0) {
        report.ok = false;
        report.violations.push_back({t, "negative copy count"});
      }
      if (t > 0 && c < schedule.count[t - 1][i]) {
        report.ok = false;
        report.violations.push_back({t, "copy counts decrease over time"});
      }
      if (inst.has_multiplicities() && inst.multiplicity[i].has_value() &&
          c > *inst.multiplicity[i]) {
        report.ok = false;
        report.violations.push_back({t, "copy count exceeds multiplicity"});
      }
      if (!inst.has_multiplicities() && c > 1) {
        report.ok = false;
        report.violations.push_back({t, "copy count exceeds 1"});
      }
      load += Rational(c) * inst.weight[i];
    }
    if (load > inst.capacity[t]) {
      report.ok = false;
      report.violations.push_back(
          {t, "load " + to_fraction_string(load) + " exceeds capacity " +
                  to_fraction_string(inst.capacity[t])});
    }
  }
  return report;
}

MultiSchedule to_multi(const IikInstance& inst, const Schedule& schedule) {
  MultiSchedule multi;
  multi.count.assign(inst.T(), std::vector<Integer>(inst.n(), Integer(0)));
  for (int t = 0; t < inst.T(); ++t) {
    for (int i = 0; i < inst.n(); ++i) {
      if (schedule.insert_time[i] <= t) multi.count[t][i] = 1;
    }
  }
  return multi;
}

}  // namespace iknap
