#pragma once

#include <vector>

#include "iknap/model.hpp"

namespace iknap {

/// Bookkeeping carried alongside a transformed instance so solutions can be
/// mapped back. Fields that a particular transform does not touch keep their
/// defaults: one_in_restrict fills item_map and scale, well_behave fills
/// item_class, significant, and band_source with an identity item_map.
struct WellBehavedMap {
  int original_n = 0;
  /// Transformed item index -> item index in the input instance.
  std::vector<int> item_map;
  /// Factor the profits were divided by (the guessed item's profit).
  Rational scale = Rational(1);
  /// Per transformed item: profit class j >= 0, or -1 for the small class.
  std::vector<int> item_class;
  /// 0-based times where the capacity profile may rise; elsewhere it repeats.
  std::vector<int> significant;
  /// Per time: the 0-based time whose capacity was adopted, or -1 when zeroed.
  std::vector<int> band_source;
};

struct TransformResult {
  IikInstance instance;
  WellBehavedMap map;
};

/// Largest profit class index K; classes are 0..K and profits at or below
/// eps/T fall into the small class instead.
long profit_class_count(const Rational& eps, int T);

/// Class of profit p (0 < p <= 1): smallest j >= 0 with (1+eps)^{-j} <= p,
/// or -1 when p <= eps/T.
long profit_class(const Rational& p, const Rational& eps, int T);

/// 0-based times of the form T - ceil((1+eps)^j), ascending. Capacities of a
/// well-behaved instance change only at these times.
std::vector<int> significant_times(int T, const Rational& eps);

/// Restricts to the items ranked at or below `rank` in normalized profit
/// order and rescales profits so the guessed item has profit 1. Optimal
/// solutions containing the guessed item as their most profitable member
/// survive this restriction.
TransformResult one_in_restrict(const IikInstance& inst, int rank);

/// Rounds profits down to powers of (1+eps)^{-1} (keeping tiny profits) and
/// lowers each capacity to its value at the next significant time. Expects
/// nonincreasing profits with the first equal to 1.
TransformResult well_behave(const IikInstance& inst, const Rational& eps);

/// Checks the two structural conditions well_behave establishes: every
/// profit is a power (1+eps)^{-j} with j in [0, K] or at most eps/T, and the
/// capacity profile changes only at significant times, starting from 0.
bool is_well_behaved(const IikInstance& inst, const Rational& eps);

/// Re-indexes a schedule for tr.instance back to the instance tr was built
/// from, after verifying it is feasible for tr.instance.
Schedule lift_schedule(const TransformResult& tr, const Schedule& s);
MultiSchedule lift_schedule(const TransformResult& tr, const MultiSchedule& s);

}  // namespace iknap
