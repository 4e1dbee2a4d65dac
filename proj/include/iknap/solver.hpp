#pragma once

#include <functional>
#include <string>
#include <utility>
#include <vector>

#include "iknap/enumeration.hpp"
#include "iknap/model.hpp"
#include "iknap/preprocess.hpp"
#include "iknap/rounding.hpp"

namespace iknap {

struct SolveStats {
  /// Pieces built, empty and duplicate ones included.
  long long pieces_enumerated = 0;
  /// Pieces discarded before their LP ran: empty, duplicate fixings, or an
  /// optimistic bound at or below the incumbent.
  long long pieces_pruned = 0;
  /// LPs solved, trivial zero-variable pieces included.
  long long pieces_solved = 0;
  long long lp_pivots = 0;
  long long wall_ms = 0;

  friend bool operator==(const SolveStats&, const SolveStats&) = default;
};

/// Called for every rounded piece with the well-behaved instance it was
/// built from, before lifting. Lets callers re-audit rounding claims.
using RoundObserver =
    std::function<void(const IikInstance&, const Piece&, const ClassPartition&,
                       const RoundingTrace&)>;

struct SolveOptions {
  /// Maximum LP solves across the whole run; 0 means unlimited. When the
  /// budget trips the report is flagged best-effort.
  long long budget = 0;
  /// Round every solved piece instead of only candidates that can beat the
  /// incumbent. The returned schedule is unchanged; observers see more.
  bool round_all = false;
  RoundObserver on_rounded;
};

struct SolveReport {
  Schedule schedule;
  /// Exact profit of `schedule` on the input instance.
  Rational value;
  SolveStats stats;
  /// True when every piece was enumerated; false once the budget tripped,
  /// making the value best-effort.
  bool full_enumeration = true;
  Rational eps;
  Rational eps_internal;
  /// Intermediate profits of reduction chains (solve_ik), in stage order.
  std::vector<std::pair<std::string, Rational>> chain;
};

struct MultiSolveReport {
  MultiSchedule schedule;
  Rational value;
  SolveStats stats;
  bool full_enumeration = true;
  Rational eps;
  Rational eps_internal;
};

/// Approximation scheme for the time-invariant incremental knapsack: for
/// each guess of the most profitable included item, restrict and rescale,
/// massage the instance into the well-behaved form at eps/4, enumerate
/// stairway pieces, solve and round each surviving LP, and return the best
/// lifted schedule. With full enumeration the result is within (1-eps) of
/// optimal. Requires unit discounts and no multiplicities.
SolveReport solve_ptas(const IikInstance& inst, const Rational& eps,
                       const SolveOptions& options = {});

/// Same pipeline with copy counts; d_i may be finite or unbounded. With all
/// multiplicities equal to one the report matches solve_ptas bit for bit
/// apart from the schedule encoding.
MultiSolveReport solve_multi(const IikInstance& inst, const Rational& eps,
                             const SolveOptions& options = {});

struct DiscountScaling {
  IikInstance instance;
  /// The divisor C = eps * max discount / (T * n); discounts become
  /// floor(discount / C), which can be zero for early periods.
  Rational divisor;
};

/// Shrinks nondecreasing discounts so their maximum is at most T*n/eps,
/// keeping monotone order. The scaled instance is built directly because a
/// scaled discount may legitimately be zero.
DiscountScaling scale_discounts(const IikInstance& inst, const Rational& eps);

struct IkExpansion {
  IikInstance instance;
  /// Per original time: index of its last expanded copy, or -1 when no
  /// copy exists yet (zero-discount prefix).
  std::vector<int> last_copy;
};

/// Replicates time t `discount[t]` times at unchanged capacity, producing a
/// unit-discount instance whose total profit telescopes to the discounted
/// profit of the pulled-back schedule. Zero discounts produce empty blocks.
/// Rejects expansions beyond `time_cap` periods.
IkExpansion reduce_ik_bounded(const IikInstance& inst, int time_cap = 4096);

/// Restricts an expanded schedule to each block's last copy.
Schedule pull_back(const IkExpansion& expansion, const Schedule& expanded);
MultiSchedule pull_back(const IkExpansion& expansion,
                        const MultiSchedule& expanded);

/// Discount-aware solve: with small discounts the timeline is expanded
/// as-is and solved at eps; otherwise discounts are scaled first and the
/// expansion solved at eps/2 to absorb the scaling loss. The report chain
/// carries the expanded unit profit and the discounted profit of the
/// pulled-back schedule. Requires nondecreasing discounts.
SolveReport solve_ik(const IikInstance& inst, const Rational& eps,
                     const SolveOptions& options = {});

}  // namespace iknap
