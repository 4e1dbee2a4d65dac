#pragma once

#include <vector>

#include "iknap/enumeration.hpp"
#include "iknap/model.hpp"
#include "iknap/rational.hpp"

namespace iknap {

/// Result of rounding one LP vertex against its piece. Values are per
/// interval: x[l][i] is the (possibly fractional) copy count of item i
/// throughout interval l, target[l][i] the LP point it was rounded from.
struct RoundingTrace {
  int L = 0;
  int n = 0;
  std::vector<std::vector<Rational>> x;
  std::vector<std::vector<Rational>> target;
  std::vector<Rational> weight_target;
  std::vector<Rational> profit_target;
};

/// Items sorted by profit density p_i / w_i, best first, ties by index.
std::vector<int> ratio_order(const IikInstance& inst);

/// Rounds an optimal vertex of the piece's LP to a greedy fill.
///
/// Interval by interval the rounded vector starts from the previous
/// interval, applies the piece's fixings and lower bounds, then adds items
/// in ratio order until the interval's weight matches the vertex's weight
/// exactly. For an optimal vertex the result carries the vertex's weight
/// and profit in every interval and has at most one fractional item per
/// profit class per interval; both facts are checked here and a violation
/// throws, so callers must not pass suboptimal points.
RoundingTrace greedy_round(const IikInstance& inst, const Piece& piece,
                           const ClassPartition& classes,
                           const std::vector<Rational>& point,
                           const std::vector<int>& order);

/// Re-checks a trace from scratch: exact weight and profit agreement with
/// the target in every interval, at most one fractional item per class per
/// interval, and membership in the piece (fixings, bounds, monotonicity,
/// capacity). Used by the acceptance suites; greedy_round already enforces
/// all of these.
struct RoundingAudit {
  bool weights_match = true;
  bool profits_match = true;
  bool fractional_ok = true;
  bool in_piece = true;
  bool ok() const { return weights_match && profits_match && fractional_ok && in_piece; }
};

RoundingAudit audit_rounding(const IikInstance& inst, const Piece& piece,
                             const ClassPartition& classes,
                             const RoundingTrace& trace);

/// Componentwise floor of the trace, expanded back to one column per time.
MultiSchedule floor_trace(const Piece& piece, const RoundingTrace& trace);

/// First time each item reaches a positive count, or kNever.
Schedule to_schedule(const MultiSchedule& schedule);

}  // namespace iknap
