#include "iknap/rounding.hpp"

#include <algorithm>
#include <map>

namespace iknap {

std::vector<int> ratio_order(const IikInstance& inst) {
  std::vector<int> order(inst.n());
  for (int i = 0; i < inst.n(); ++i) order[i] = i;
  std::sort(order.begin(), order.end(), [&](int a, int b) {
    // p_a / w_a > p_b / w_b without division.
    Rational lhs = inst.profit[a] * inst.weight[b];
    Rational rhs = inst.profit[b] * inst.weight[a];
    if (lhs != rhs) return lhs > rhs;
    return a < b;
  });
  return order;
}

RoundingTrace greedy_round(const IikInstance& inst, const Piece& piece,
                           const ClassPartition& classes,
                           const std::vector<Rational>& point,
                           const std::vector<int>& order) {
  detail::require(!piece.empty, "cannot round an empty piece");
  detail::require(static_cast<int>(point.size()) == piece.lp.num_vars,
                  "point size must match the piece LP");
  const int L = piece.L;
  const int n = piece.n;

  RoundingTrace trace;
  trace.L = L;
  trace.n = n;
  trace.target = piece.interval_values(point);
  trace.weight_target.assign(L, Rational(0));
  trace.profit_target.assign(L, Rational(0));
  for (int l = 0; l < L; ++l) {
    for (int i = 0; i < n; ++i) {
      trace.weight_target[l] += inst.weight[i] * trace.target[l][i];
      trace.profit_target[l] += inst.profit[i] * trace.target[l][i];
    }
  }

  trace.x.assign(L, std::vector<Rational>(n, Rational(0)));
  for (int l = 0; l < L; ++l) {
    auto& x = trace.x[l];
    if (l > 0) x = trace.x[l - 1];
    for (int i = 0; i < n; ++i) {
      if (piece.fixed[l][i]) {
        x[i] = Rational(*piece.fixed[l][i]);
      } else if (x[i] < Rational(piece.lower[l][i])) {
        x[i] = Rational(piece.lower[l][i]);
      }
    }
    Rational deficit = trace.weight_target[l];
    for (int i = 0; i < n; ++i) deficit -= inst.weight[i] * x[i];
    detail::check(deficit >= 0,
                  "rounding base exceeds the interval weight target");
    std::size_t cursor = 0;
    while (deficit > 0) {
      while (cursor < order.size()) {
        int i = order[cursor];
        if (piece.var_of[l][i] >= 0 && x[i] < Rational(piece.upper[l][i])) break;
        ++cursor;
      }
      detail::check(cursor < order.size(),
                    "rounding ran out of items before meeting the weight target");
      int i = order[cursor];
      Rational room = Rational(piece.upper[l][i]) - x[i];
      Rational step = deficit / inst.weight[i];
      if (step > room) step = room;
      x[i] += step;
      deficit -= step * inst.weight[i];
    }
    Rational profit(0);
    for (int i = 0; i < n; ++i) profit += inst.profit[i] * x[i];
    detail::check(profit == trace.profit_target[l],
                  "rounded interval profit drifted from the LP point");
    // At most one fractional item per profit class, small class included.
    std::map<int, int> fractional;
    for (int i = 0; i < n; ++i) {
      if (denominator(x[i]) != 1) ++fractional[classes.class_of[i]];
    }
    for (const auto& [cls, cnt] : fractional) {
      (void)cls;
      detail::check(cnt <= 1, "more than one fractional item in a profit class");
    }
    if (l > 0) {
      for (int i = 0; i < n; ++i) {
        detail::check(trace.x[l - 1][i] <= x[i],
                      "rounded counts must be nondecreasing across intervals");
      }
    }
  }
  return trace;
}

RoundingAudit audit_rounding(const IikInstance& inst, const Piece& piece,
                             const ClassPartition& classes,
                             const RoundingTrace& trace) {
  RoundingAudit audit;
  const int L = piece.L;
  const int n = piece.n;
  for (int l = 0; l < L; ++l) {
    Rational weight(0), profit(0);
    std::map<int, int> fractional;
    for (int i = 0; i < n; ++i) {
      const Rational& v = trace.x[l][i];
      weight += inst.weight[i] * v;
      profit += inst.profit[i] * v;
      if (denominator(v) != 1) ++fractional[classes.class_of[i]];
      if (piece.fixed[l][i]) {
        if (v != Rational(*piece.fixed[l][i])) audit.in_piece = false;
      } else {
        if (v < Rational(piece.lower[l][i]) || v > Rational(piece.upper[l][i]))
          audit.in_piece = false;
      }
      if (l > 0 && trace.x[l - 1][i] > v) audit.in_piece = false;
    }
    if (weight != trace.weight_target[l]) audit.weights_match = false;
    if (profit != trace.profit_target[l]) audit.profits_match = false;
    for (const auto& [cls, cnt] : fractional) {
      (void)cls;
      if (cnt > 1) audit.fractional_ok = false;
    }
    if (weight > inst.capacity[piece.interval_start[l]]) audit.in_piece = false;
  }
  return audit;
}

MultiSchedule floor_trace(const Piece& piece, const RoundingTrace& trace) {
  std::vector<std::vector<Rational>> floored(trace.L,
                                             std::vector<Rational>(trace.n));
  for (int l = 0; l < trace.L; ++l) {
    for (int i = 0; i < trace.n; ++i) {
      floored[l][i] = Rational(floor_rational(trace.x[l][i]));
    }
  }
  auto per_time = piece.expand(floored);
  MultiSchedule schedule;
  schedule.count.assign(per_time.size(), std::vector<Integer>(trace.n));
  for (std::size_t t = 0; t < per_time.size(); ++t) {
    for (int i = 0; i < trace.n; ++i) {
      schedule.count[t][i] = numerator(per_time[t][i]);
    }
  }
  return schedule;
}

Schedule to_schedule(const MultiSchedule& schedule) {
  Schedule out;
  if (schedule.count.empty()) return out;
  const std::size_t n = schedule.count[0].size();
  out.insert_time.assign(n, kNever);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t t = 0; t < schedule.count.size(); ++t) {
      if (schedule.count[t][i] > 0) {
        out.insert_time[i] = static_cast<int>(t);
        break;
      }
    }
  }
  return out;
}

}  // namespace iknap
