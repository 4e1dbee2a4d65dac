#pragma once

#include <string>
#include <vector>

#include "iknap/lp.hpp"
#include "iknap/model.hpp"
#include "iknap/rational.hpp"

namespace iknap {

/// Number of cost classes the covering disjunction distinguishes:
/// ceil(log_{1+eps}(1/eps)), by exact power comparison. Requires 0 < eps < 1.
int c_eps(const Rational& eps);

/// Class of a normalized cost in (0, 1]: the largest m with
/// (1+eps)^{-m} >= cost. A cost sitting exactly on a power boundary takes the
/// deeper class, so cost_level((1+eps)^{-m}) == m.
int cost_level(const Rational& cost, const Rational& eps);

/// Whether tau is an admissible stair vector: nonnegative entries,
/// |tau|^2 <= 4 * c_eps, tau[k] + (k+1) <= tau[k+1] between consecutive
/// entries, last entry <= c_eps - 1. The empty vector is admissible.
bool in_gamma(const std::vector<int>& tau, const Rational& eps);

/// All admissible stair vectors, ordered by length then lexicographically.
std::vector<std::vector<int>> enumerate_gamma(const Rational& eps);

/// Pruned variant: keeps only stair vectors whose every bucket would contain
/// at least one of the given candidate costs. Since each bucket must supply
/// at least one item, dropped vectors describe empty polytopes only.
/// `scaled_costs` holds the candidate items' costs divided by the pivot cost
/// (pivot excluded), each in [0, 1].
std::vector<std::vector<int>> enumerate_gamma(const Rational& eps,
                                              const std::vector<Rational>& scaled_costs);

/// Grouping of candidate items into cost-class windows. bucket[k] lists
/// indices into the scaled-cost vector whose class lies in
/// [tau_k, min(tau_k + k+1, c_eps) - 1] (0-based k); inf_items collects the
/// tail of items cheaper than every bucket member and below (1+eps)^{-c_eps}.
struct BucketFamily {
  int K = 0;
  std::vector<std::vector<int>> bucket;
  std::vector<int> inf_items;
  std::vector<int> width;
};

BucketFamily buckets_tau(const std::vector<Rational>& scaled_costs,
                         const std::vector<int>& tau, const Rational& eps);

/// Ordering predicate the bucket construction guarantees: costs within bucket
/// k dominate costs within bucket k+1, and the tail items are cheaper than
/// both eps and every member of the last bucket. Empty buckets are vacuous.
bool is_eps_cost_ordered(const BucketFamily& family,
                         const std::vector<Rational>& scaled_costs,
                         const Rational& eps);

/// One disjunct of the covering relaxation: the pivot is the most expensive
/// item taken, items before it are fixed to zero, and bucket k must supply
/// rho[k] items (at least rho[k] when rho[k] hits the cap ceil(1/eps)).
/// The LP keeps all n variables and minimizes original cost; buckets are
/// computed on costs scaled by the pivot cost. bucket_of maps each item to
/// its finite bucket in 1..K, to -1 for the cheap free tail, or to 0 when the
/// variable is fixed (prefix, pivot, or outside every bucket).
struct MinkPiece {
  bool empty = false;
  std::string empty_reason;
  int pivot = -1;
  std::vector<int> tau;
  std::vector<int> rho;
  std::vector<int> bucket_of;
  LinearProgram lp;
};

/// Builds the piece for (pivot, tau, rho). Costs must be nonincreasing.
/// Returns an empty piece when some bucket holds fewer than rho[k] items.
/// A zero-cost pivot admits only tau = (): every later item is also free of
/// charge, so the piece frees them all.
MinkPiece build_mink_piece(const MinkInstance& inst, int pivot,
                           const std::vector<int>& tau,
                           const std::vector<int>& rho, const Rational& eps);

struct RoundedCover {
  std::vector<int> take;
  Rational cost;
};

/// Rounds an optimal vertex of a piece LP to an integral cover. One
/// fractional coordinate is raised to 1; two fractional coordinates must
/// share a finite bucket and sum to 1, and the heavier one (lower index on
/// ties) is raised while the other drops to 0. Any other fractional pattern
/// signals an lp_core bug and throws. The result satisfies the demand row.
RoundedCover round_vertex(const MinkInstance& inst, const MinkPiece& piece,
                          const VertexSolution& vertex, const Rational& eps);

struct CoverResult {
  std::vector<int> tau;
  std::vector<int> rho;
};

/// Reads the stair vector off a feasible 0/1 cover whose first item is
/// taken: tau[0] is the shallowest class among taken items beyond the pivot,
/// each later entry is the shallowest taken class the previous bucket does
/// not absorb, and rho[k] counts taken items in bucket k, capped at
/// ceil(1/eps). The resulting piece for pivot 0 contains the cover.
CoverResult cover(const MinkInstance& inst, const std::vector<int>& take,
                  const Rational& eps);

struct GapReport {
  bool feasible = false;
  Rational lp_disj;
  bool lp_found = false;
  Rational opt_int;
  Rational best_rounded;
  bool rounded_found = false;
  Rational ratio_int;
  Rational ratio_rounded;
  bool ratios_defined = false;
  long pieces_enumerated = 0;
  long pieces_pruned = 0;
  long pieces_solved = 0;
  long lp_pivots = 0;
  bool full = true;
  int best_pivot = -1;
  std::vector<int> best_tau;
  std::vector<int> best_rho;
  bool sandwich_ok = false;
};

/// Solves every piece of the disjunction (pivots ascending, stair vectors by
/// length then lex, counts lex) and reports the relaxation value
/// lp_disj = min piece LP, the exact integral optimum, and the cheapest
/// rounded cover, together with lp_disj <= opt_int <= best_rounded.
/// budget > 0 caps the number of LP solves; a tripped budget clears `full`.
/// Costs must be nonincreasing.
GapReport disjunction_gap(const MinkInstance& inst, const Rational& eps,
                          long budget = 0);

enum class PieceCountMode { baseline, gamma };

/// Pieces per pivot. baseline: (ceil(1/eps)+1)^{c_eps}, one candidate count
/// vector per class profile. gamma: sum over admissible stair vectors of
/// ceil(1/eps)^{|tau|}, computed by a (length, last entry) recurrence
/// without materializing the family.
Integer count_pieces(const Rational& eps, PieceCountMode mode);

}  // namespace iknap
