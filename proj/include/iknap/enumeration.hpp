#pragma once

#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "iknap/lp.hpp"
#include "iknap/model.hpp"

namespace iknap {

/// One step of a stairway on the [1..J] x [0..K] grid. j indexes significant
/// times in ascending time order, k is a profit class. Consecutive entries
/// have strictly decreasing j and strictly increasing k: entry h speaks about
/// an earlier stretch of time than entry h-1 and anchors a lower-profit
/// class, matching solutions whose best present profit class improves over
/// time.
struct StairEntry {
  int j = 0;
  int k = 0;
  friend bool operator==(const StairEntry&, const StairEntry&) = default;
};

struct Stairway {
  std::vector<StairEntry> entries;
  friend bool operator==(const Stairway&, const Stairway&) = default;
};

/// All stairways on the grid, smallest length first, then lexicographic in
/// the chosen time rows and class columns. With require_first_class_zero only
/// nonempty stairways whose first entry anchors class 0 are produced;
/// otherwise the empty stairway is included.
std::vector<Stairway> enumerate_stairways(int J, int K,
                                          bool require_first_class_zero);

/// Stairways whose classes are drawn from `classes` (ascending, distinct)
/// and whose first entry anchors class 0. Same order as filtering the full
/// enumeration; empty when 0 is not among the classes. The solver uses this
/// because a stairway anchoring a class with no items admits no value map.
std::vector<Stairway> enumerate_stairways_anchored(
    int J, const std::vector<int>& classes);

/// How many classes below its anchor a stairway block keeps visible:
/// ceil_log_{1+eps}(1/eps). Anything farther from the anchor contributes
/// less than an eps fraction per item and is handled by fixing rules instead.
long class_window(const Rational& eps);

/// Values demanded from class prefixes at significant times; value[jt][k] for
/// 0-based significant-time index jt and class k, -1 outside the domain.
/// Within a column values never decrease over time.
struct RhoMap {
  std::vector<std::vector<int>> value;

  int at(int jt, int k) const { return value[jt][k]; }
};

/// One enumerable cell of a stairway's value-map domain, in assignment order
/// (time-major, classes ascending within a time).
struct RhoCell {
  int jt = 0;
  int k = 0;
  /// Anchor cells demand at least one item.
  bool anchor = false;
  /// Index of the previous cell in the same class column, -1 at the start.
  int prev = -1;
};

struct RhoDomain {
  int J = 0;
  int K = 0;
  /// Largest demandable value, ceil(1/eps) + 1; this top value means
  /// "at least this many" while smaller values are exact.
  int value_cap = 0;
  std::vector<RhoCell> cells;
};

/// Builds the cell domain for a stairway: block h covers the significant
/// times from its own entry up to the previous entry's, and tracks classes
/// from its anchor through the class window (capped at K).
RhoDomain build_rho_domain(const Stairway& s, int J, int K, const Rational& eps);

/// All value maps over the domain: column-monotone, anchors at least 1, and
/// no value beyond what the class can supply (`class_caps[k]`, the summed
/// copy limits). Deterministic DFS order.
std::vector<RhoMap> enumerate_rho(const RhoDomain& domain,
                                  const std::vector<Integer>& class_caps);

/// Items grouped by profit class. Within a class items are sorted by
/// nondecreasing weight (ties by index), the order in which fixing rules and
/// the rounding walk consume them.
struct ClassPartition {
  int K = 0;
  std::vector<std::vector<int>> items;
  std::vector<int> small_items;
  /// Per item: class index or -1 for the small class.
  std::vector<int> class_of;
  /// Per class: total copies available (1 per item without multiplicities).
  std::vector<Integer> caps;
};

ClassPartition partition_classes(const IikInstance& inst,
                                 const std::vector<int>& item_class, long K);

/// A piece of the disjunction: the variable fixings implied by (stairway,
/// value map) plus the residual LP over the remaining free cells.
///
/// Capacities of the instances fed here change only at significant times, so
/// some optimal monotone solution is constant between consecutive significant
/// times (inserting earlier under unchanged capacity never loses profit).
/// Pieces therefore quotient the timeline into intervals, one per significant
/// time plus one for any leading stretch, and carry one cell per (interval,
/// item). This keeps every interval transition aligned with a significant
/// time, which the rounding walk relies on, and shrinks the LP.
///
/// fixed[l][i] is the forced copy count when set; free cells range over
/// [lower, upper]. Zeros forced at an interval propagate to earlier intervals
/// and full-capacity fixings to later ones, mirroring monotone solutions. The
/// LP keeps capacity rows (fixed load moved to the right-hand side) and
/// coupling rows only between cells that both stay free; objective
/// coefficients are profits scaled by interval length.
struct Piece {
  bool empty = false;
  std::string empty_reason;
  Stairway stairway;
  RhoMap rho;
  int T = 0;
  int n = 0;
  /// Number of intervals.
  int L = 0;
  /// First time of each interval; interval l covers [start[l], start[l+1]).
  std::vector<int> interval_start;
  std::vector<int> interval_len;
  /// Per time: the interval containing it.
  std::vector<int> interval_of;
  std::vector<std::vector<std::optional<Integer>>> fixed;
  std::vector<std::vector<Integer>> lower;
  std::vector<std::vector<Integer>> upper;
  LinearProgram lp;
  /// LP column of a free cell, -1 for fixed cells.
  std::vector<std::vector<int>> var_of;
  /// LP column -> (interval, item).
  std::vector<std::pair<int, int>> cell_of;
  /// Objective contribution of the fixed cells; the piece optimum is this
  /// plus the LP optimum.
  Rational fixed_profit;
  /// Per interval: weight forced by fixed values.
  std::vector<Rational> forced_load;

  /// Canonical serialization of the fixing state; pieces with equal keys
  /// have identical polytopes.
  std::string fixing_key() const;

  /// Per-interval values of an LP point, merging fixed cells back in.
  std::vector<std::vector<Rational>> interval_values(
      const std::vector<Rational>& point) const;

  /// Expands per-interval values to a full [T][n] matrix.
  std::vector<std::vector<Rational>> expand(
      const std::vector<std::vector<Rational>>& per_interval) const;
};

Piece build_piece(const IikInstance& inst, const ClassPartition& classes,
                  const std::vector<int>& significant, const Stairway& s,
                  const RhoMap& rho, const Rational& eps);

}  // namespace iknap
