#pragma once

#include <vector>

#include "iknap/model.hpp"

namespace iknap {

struct OracleOptions {
  /// Upper bound on the exhaustive search space; instances beyond it are
  /// rejected instead of running without bound.
  Integer state_cap = Integer(100000000);
  /// Restrict the search to solutions that insert item 0 at some time
  /// (for copy-count searches: at least one copy by the final time).
  bool require_item_one = false;
};

struct IikOracleResult {
  /// False only when require_item_one cannot be met by any feasible solution.
  bool feasible = false;
  Rational value;
  Schedule schedule;
  /// Complete assignments visited; with unbounded capacities this equals
  /// (T+1)^n, which the tests use to certify exhaustiveness.
  long long leaves = 0;
};

/// Exhaustive optimum over 0/1 incremental solutions. Branches are cut only
/// when an insertion already violates a capacity, never by objective bounds.
IikOracleResult exact_iik(const IikInstance& inst, const OracleOptions& opt = {});

struct MultiOracleResult {
  bool feasible = false;
  Rational value;
  MultiSchedule schedule;
  long long leaves = 0;
};

/// Exhaustive optimum over monotone copy-count solutions, one nondecreasing
/// count profile per item, capped by effective multiplicities.
MultiOracleResult exact_iik_multi(const IikInstance& inst,
                                  const OracleOptions& opt = {});

struct MinkOracleResult {
  bool feasible = false;
  Rational value;
  std::vector<int> take;
  long long leaves = 0;
};

/// Exhaustive minimum-cost cover by subset search. Descent stops once the
/// demand is met (costs are nonnegative, so supersets never improve).
MinkOracleResult exact_mink(const MinkInstance& inst, const OracleOptions& opt = {});

struct MinkDpResult {
  bool feasible = false;
  Rational value;
};

/// Covering dynamic program over integer weights; requires every weight to be
/// an integer. Cross-validates exact_mink on integral instances.
MinkDpResult exact_mink_dp(const MinkInstance& inst);

}  // namespace iknap
