#include "iknap/mink.hpp"

#include <algorithm>
#include <stdexcept>
#include <utility>

#include "iknap/oracle.hpp"

namespace iknap {

namespace {

int take_cap(const Rational& eps) {
  return static_cast<int>(ceil_rational(Rational(1) / eps));
}

void require_eps(const Rational& eps) {
  detail::require(eps > 0 && eps < 1, "eps must lie strictly between 0 and 1");
}

void require_sorted_costs(const MinkInstance& inst) {
  detail::require(inst.n() >= 1, "at least one item required");
  detail::require(inst.weight.size() == inst.cost.size(),
                  "costs and weights must have equal length");
  for (std::size_t i = 1; i < inst.cost.size(); ++i) {
    detail::require(inst.cost[i] <= inst.cost[i - 1],
                    "costs must be nonincreasing");
  }
  detail::require(inst.cost.back() >= 0, "costs must be nonnegative");
}

// Scaled costs of the items after the pivot; the pivot cost must be positive.
std::vector<Rational> scaled_tail(const MinkInstance& inst, int pivot) {
  std::vector<Rational> tail;
  tail.reserve(inst.n() - pivot - 1);
  for (int i = pivot + 1; i < inst.n(); ++i) {
    tail.push_back(inst.cost[i] / inst.cost[pivot]);
  }
  return tail;
}

// Levels 0..C-1 that hold at least one candidate cost. Costs of class C or
// deeper (zero included) never seed a bucket.
std::vector<char> occupied_levels(const std::vector<Rational>& scaled_costs,
                                  const Rational& eps, int c) {
  std::vector<char> occ(c, 0);
  for (const Rational& cost : scaled_costs) {
    detail::require(cost >= 0 && cost <= 1,
                    "scaled costs must lie in [0, 1]");
    if (cost == 0) continue;
    int level = cost_level(cost, eps);
    if (level < c) occ[level] = 1;
  }
  return occ;
}

// Shared stair-vector DFS. `occ` empty means no pruning; otherwise every
// bucket window must contain an occupied level.
void gamma_dfs(int c, const std::vector<char>& occ,
               std::vector<int>& prefix, int target_len,
               std::vector<std::vector<int>>& out) {
  if (static_cast<int>(prefix.size()) == target_len) {
    out.push_back(prefix);
    return;
  }
  const int idx = static_cast<int>(prefix.size());
  const int lo = prefix.empty() ? 0 : prefix.back() + idx;
  for (int v = lo; v < c; ++v) {
    if (!occ.empty()) {
      // Bucket idx+1 (1-based) spans levels [v, min(v + idx + 1, c) - 1].
      const int hi = std::min(v + idx + 1, c) - 1;
      bool hit = false;
      for (int l = v; l <= hi; ++l) {
        if (occ[l]) {
          hit = true;
          break;
        }
      }
      if (!hit) continue;
    }
    prefix.push_back(v);
    gamma_dfs(c, occ, prefix, target_len, out);
    prefix.pop_back();
  }
}

std::vector<std::vector<int>> enumerate_gamma_impl(const Rational& eps,
                                                   const std::vector<char>& occ) {
  const int c = c_eps(eps);
  std::vector<std::vector<int>> out;
  out.push_back({});
  std::vector<int> prefix;
  for (int len = 1; len * len <= 4 * c; ++len) {
    // The tightest length-len vector ends at 0+1+...+(len-1).
    if (len * (len - 1) / 2 > c - 1) break;
    gamma_dfs(c, occ, prefix, len, out);
  }
  return out;
}

Integer ipow(const Integer& base, int e) {
  Integer out(1);
  for (int i = 0; i < e; ++i) out *= base;
  return out;
}

}  // namespace

int c_eps(const Rational& eps) {
  require_eps(eps);
  return static_cast<int>(ceil_log(1 + eps, Rational(1) / eps));
}

int cost_level(const Rational& cost, const Rational& eps) {
  require_eps(eps);
  detail::require(cost > 0 && cost <= 1,
                  "cost_level expects a normalized cost in (0, 1]");
  return static_cast<int>(floor_log(1 + eps, Rational(1) / cost));
}

bool in_gamma(const std::vector<int>& tau, const Rational& eps) {
  const int c = c_eps(eps);
  const int len = static_cast<int>(tau.size());
  if (len * len > 4 * c) return false;
  if (len == 0) return true;
  if (tau.front() < 0 || tau.back() > c - 1) return false;
  for (int k = 1; k < len; ++k) {
    if (tau[k - 1] + k > tau[k]) return false;
  }
  return true;
}

std::vector<std::vector<int>> enumerate_gamma(const Rational& eps) {
  c_eps(eps);
  return enumerate_gamma_impl(eps, {});
}

std::vector<std::vector<int>> enumerate_gamma(
    const Rational& eps, const std::vector<Rational>& scaled_costs) {
  const int c = c_eps(eps);
  std::vector<char> occ = occupied_levels(scaled_costs, eps, c);
  bool any = std::find(occ.begin(), occ.end(), char(1)) != occ.end();
  if (!any) {
    // Only the empty vector survives: every bucket would stay empty.
    return {{}};
  }
  return enumerate_gamma_impl(eps, occ);
}

BucketFamily buckets_tau(const std::vector<Rational>& scaled_costs,
                         const std::vector<int>& tau, const Rational& eps) {
  detail::require(in_gamma(tau, eps), "tau must be an admissible stair vector");
  const int c = c_eps(eps);
  const Rational base = 1 + eps;
  BucketFamily family;
  family.K = static_cast<int>(tau.size());
  family.bucket.resize(family.K);
  family.width.resize(family.K);
  std::vector<char> placed(scaled_costs.size(), 0);
  for (int k = 0; k < family.K; ++k) {
    const int lo = tau[k];
    const int hi = std::min(tau[k] + k + 1, c) - 1;
    family.width[k] = hi - lo + 1;
    // Class in [lo, hi] means (1+eps)^{-lo} >= cost > (1+eps)^{-(hi+1)}.
    const Rational upper = pow_rational(base, -lo);
    const Rational lower = pow_rational(base, -(hi + 1));
    for (std::size_t i = 0; i < scaled_costs.size(); ++i) {
      const Rational& cost = scaled_costs[i];
      detail::require(cost >= 0 && cost <= 1,
                      "scaled costs must lie in [0, 1]");
      if (cost <= upper && cost > lower) {
        family.bucket[k].push_back(static_cast<int>(i));
        placed[i] = 1;
      }
    }
  }
  const Rational deep = pow_rational(base, -c);
  const bool strict = family.K > 0 && !family.bucket.back().empty();
  Rational last_min;
  if (strict) {
    last_min = scaled_costs[family.bucket.back().front()];
    for (int i : family.bucket.back()) {
      last_min = std::min(last_min, scaled_costs[i]);
    }
  }
  for (std::size_t i = 0; i < scaled_costs.size(); ++i) {
    if (placed[i]) continue;
    if (scaled_costs[i] > deep) continue;
    if (strict && scaled_costs[i] >= last_min) continue;
    family.inf_items.push_back(static_cast<int>(i));
  }
  return family;
}

bool is_eps_cost_ordered(const BucketFamily& family,
                         const std::vector<Rational>& scaled_costs,
                         const Rational& eps) {
  std::vector<std::pair<Rational, Rational>> spans;  // (min, max) per bucket
  for (const std::vector<int>& members : family.bucket) {
    if (members.empty()) continue;
    Rational lo = scaled_costs[members.front()];
    Rational hi = lo;
    for (int i : members) {
      lo = std::min(lo, scaled_costs[i]);
      hi = std::max(hi, scaled_costs[i]);
    }
    spans.emplace_back(lo, hi);
  }
  for (std::size_t k = 1; k < spans.size(); ++k) {
    if (spans[k - 1].first < spans[k].second) return false;
  }
  Rational bound = eps;
  if (!spans.empty()) bound = std::min(bound, spans.back().first);
  for (int i : family.inf_items) {
    if (scaled_costs[i] > bound) return false;
  }
  return true;
}

MinkPiece build_mink_piece(const MinkInstance& inst, int pivot,
                           const std::vector<int>& tau,
                           const std::vector<int>& rho, const Rational& eps) {
  require_sorted_costs(inst);
  detail::require(pivot >= 0 && pivot < inst.n(), "pivot out of range");
  detail::require(tau.size() == rho.size(),
                  "rho must assign one count per stair entry");
  detail::require(in_gamma(tau, eps), "tau must be an admissible stair vector");
  const int cap = take_cap(eps);
  for (int r : rho) {
    detail::require(r >= 1 && r <= cap, "rho entries must lie in [1, ceil(1/eps)]");
  }

  MinkPiece piece;
  piece.pivot = pivot;
  piece.tau = tau;
  piece.rho = rho;
  piece.bucket_of.assign(inst.n(), 0);

  const int n = inst.n();
  if (inst.cost[pivot] == 0) {
    if (!tau.empty()) {
      piece.empty = true;
      piece.empty_reason = "zero-cost pivot admits only the empty stair vector";
      return piece;
    }
    // Every later item costs zero as well; all of them ride for free.
    for (int i = pivot + 1; i < n; ++i) piece.bucket_of[i] = -1;
  } else {
    const std::vector<Rational> tail = scaled_tail(inst, pivot);
    BucketFamily family = buckets_tau(tail, tau, eps);
    for (int k = 0; k < family.K; ++k) {
      if (static_cast<int>(family.bucket[k].size()) < rho[k]) {
        piece.empty = true;
        piece.empty_reason = "a bucket holds fewer items than its required count";
        return piece;
      }
      for (int t : family.bucket[k]) {
        piece.bucket_of[pivot + 1 + t] = k + 1;
      }
    }
    for (int t : family.inf_items) piece.bucket_of[pivot + 1 + t] = -1;
  }

  LinearProgram& lp = piece.lp;
  lp.num_vars = n;
  lp.maximize = false;
  lp.objective = inst.cost;
  lp.lower.assign(n, Rational(0));
  lp.upper.assign(n, Rational(0));
  lp.lower[pivot] = Rational(1);
  lp.upper[pivot] = Rational(1);
  for (int i = pivot + 1; i < n; ++i) {
    if (piece.bucket_of[i] != 0) lp.upper[i] = Rational(1);
  }
  std::vector<Rational> wrow(inst.weight.begin(), inst.weight.end());
  lp.add_row(std::move(wrow), Rel::ge, inst.demand);
  for (std::size_t k = 0; k < tau.size(); ++k) {
    std::vector<Rational> row(n, Rational(0));
    for (int i = pivot + 1; i < n; ++i) {
      if (piece.bucket_of[i] == static_cast<int>(k) + 1) row[i] = 1;
    }
    lp.add_row(std::move(row), rho[k] < cap ? Rel::eq : Rel::ge,
               Rational(rho[k]));
  }
  return piece;
}

RoundedCover round_vertex(const MinkInstance& inst, const MinkPiece& piece,
                          const VertexSolution& vertex, const Rational& eps) {
  detail::require(!piece.empty, "cannot round an empty piece");
  detail::require(static_cast<int>(vertex.point.size()) == inst.n(),
                  "vertex size must match the instance");
  std::vector<int> frac;
  for (int i = 0; i < inst.n(); ++i) {
    if (denominator(vertex.point[i]) != 1) frac.push_back(i);
  }
  if (frac.size() > 2) {
    throw std::logic_error(
        "piece vertex has more than two fractional coordinates; "
        "signals an lp_core bug");
  }

  RoundedCover out;
  out.take.resize(inst.n());
  for (int i = 0; i < inst.n(); ++i) {
    out.take[i] = static_cast<int>(numerator(vertex.point[i]));
  }
  if (frac.size() == 1) {
    out.take[frac[0]] = 1;
  } else if (frac.size() == 2) {
    const int q = frac[0];
    const int r = frac[1];
    const bool same_bucket =
        piece.bucket_of[q] >= 1 && piece.bucket_of[q] == piece.bucket_of[r];
    const bool sums_one = vertex.point[q] + vertex.point[r] == 1;
    if (!same_bucket || !sums_one) {
      throw std::logic_error(
          "fractional pair must share a bucket and sum to one; "
          "signals an lp_core bug");
    }
    if (inst.weight[q] >= inst.weight[r]) {
      out.take[q] = 1;
      out.take[r] = 0;
    } else {
      out.take[q] = 0;
      out.take[r] = 1;
    }
  }

  Rational weight(0);
  for (int i = 0; i < inst.n(); ++i) {
    if (out.take[i] == 1) {
      weight += inst.weight[i];
      out.cost += inst.cost[i];
    }
  }
  detail::check(weight >= inst.demand, "rounded cover lost feasibility");
  if (eps <= Rational(1, 256)) {
    detail::check(out.cost <= (1 + 2 * eps) * vertex.value,
                  "rounded cost exceeded the guarantee bound");
  }
  return out;
}

CoverResult cover(const MinkInstance& inst, const std::vector<int>& take,
                  const Rational& eps) {
  require_sorted_costs(inst);
  detail::require(static_cast<int>(take.size()) == inst.n(),
                  "take vector size must match the instance");
  for (int t : take) detail::require(t == 0 || t == 1, "take entries must be 0/1");
  detail::require(take[0] == 1, "cover requires the first item taken");
  Rational weight(0);
  for (int i = 0; i < inst.n(); ++i) {
    if (take[i] == 1) weight += inst.weight[i];
  }
  detail::require(weight >= inst.demand, "cover requires a feasible take vector");

  CoverResult out;
  if (inst.cost[0] == 0) return out;  // every item is free; the plain piece covers

  const int c = c_eps(eps);
  const std::vector<Rational> tail = scaled_tail(inst, 0);
  std::vector<char> taken_level(c, 0);
  for (std::size_t t = 0; t < tail.size(); ++t) {
    if (take[1 + t] != 1 || tail[t] == 0) continue;
    int level = cost_level(tail[t], eps);
    if (level < c) taken_level[level] = 1;
  }

  int from = 0;
  while (true) {
    int next = -1;
    for (int l = from; l < c; ++l) {
      if (taken_level[l]) {
        next = l;
        break;
      }
    }
    if (next < 0) break;
    out.tau.push_back(next);
    // Entry k (1-based) absorbs levels below tau_k + k; resume above them.
    from = next + static_cast<int>(out.tau.size());
  }

  const int cap = take_cap(eps);
  BucketFamily family = buckets_tau(tail, out.tau, eps);
  for (int k = 0; k < family.K; ++k) {
    int count = 0;
    for (int t : family.bucket[k]) {
      if (take[1 + t] == 1) ++count;
    }
    detail::check(count >= 1, "cover produced an unused bucket");
    out.rho.push_back(std::min(count, cap));
  }
  return out;
}

GapReport disjunction_gap(const MinkInstance& inst, const Rational& eps,
                          long budget) {
  require_sorted_costs(inst);
  const int cap = take_cap(eps);

  GapReport report;
  bool stopped = false;
  for (int pivot = 0; pivot < inst.n() && !stopped; ++pivot) {
    std::vector<std::vector<int>> taus;
    if (inst.cost[pivot] == 0) {
      taus.push_back({});
    } else {
      taus = enumerate_gamma(eps, scaled_tail(inst, pivot));
    }
    for (const std::vector<int>& tau : taus) {
      // Counts run lexicographically over [1, min(cap, |bucket|)] per entry;
      // the empty stair vector contributes the single piece with no counts.
      std::vector<int> hi(tau.size(), 0);
      if (!tau.empty()) {
        BucketFamily family =
            buckets_tau(scaled_tail(inst, pivot), tau, eps);
        for (int k = 0; k < family.K; ++k) {
          hi[k] = std::min<int>(cap, static_cast<int>(family.bucket[k].size()));
        }
      }
      std::vector<int> rho(tau.size(), 1);
      bool more = true;
      while (more) {
        if (budget > 0 && report.pieces_solved >= budget) {
          report.full = false;
          stopped = true;
          break;
        }
        MinkPiece piece = build_mink_piece(inst, pivot, tau, rho, eps);
        ++report.pieces_enumerated;
        if (piece.empty) {
          ++report.pieces_pruned;
        } else {
          LpResult res = solve_lp(piece.lp);
          ++report.pieces_solved;
          report.lp_pivots += res.pivots;
          detail::check(res.status != LpStatus::unbounded,
                        "piece LPs are bounded by construction");
          if (res.status == LpStatus::optimal) {
            const Rational value = res.vertex->value;
            if (!report.lp_found || value < report.lp_disj) {
              report.lp_found = true;
              report.lp_disj = value;
              report.best_pivot = pivot;
              report.best_tau = tau;
              report.best_rho = rho;
            }
            RoundedCover rounded = round_vertex(inst, piece, *res.vertex, eps);
            if (!report.rounded_found || rounded.cost < report.best_rounded) {
              report.rounded_found = true;
              report.best_rounded = rounded.cost;
            }
          }
        }
        // Advance rho like an odometer, least significant entry last.
        more = false;
        for (int k = static_cast<int>(rho.size()) - 1; k >= 0; --k) {
          if (rho[k] < hi[k]) {
            ++rho[k];
            std::fill(rho.begin() + k + 1, rho.end(), 1);
            more = true;
            break;
          }
        }
      }
      if (stopped) break;
    }
  }

  MinkOracleResult oracle = exact_mink(inst);
  report.feasible = oracle.feasible;
  if (oracle.feasible) report.opt_int = oracle.value;

  if (report.feasible && report.lp_found && report.rounded_found &&
      report.lp_disj > 0) {
    report.ratio_int = report.opt_int / report.lp_disj;
    report.ratio_rounded = report.best_rounded / report.lp_disj;
    report.ratios_defined = true;
  }
  if (!report.feasible) {
    report.sandwich_ok = !report.lp_found && !report.rounded_found;
  } else {
    report.sandwich_ok = report.lp_found && report.rounded_found &&
                         report.lp_disj <= report.opt_int &&
                         report.opt_int <= report.best_rounded;
  }
  return report;
}

Integer count_pieces(const Rational& eps, PieceCountMode mode) {
  const int c = c_eps(eps);
  const Integer m(take_cap(eps));
  if (mode == PieceCountMode::baseline) {
    return ipow(m + 1, c);
  }
  // Count stair vectors by (length, last entry); each vector of length s
  // carries m^s count assignments.
  Integer total(1);
  std::vector<Integer> row(c, Integer(1));  // length 1: one vector per level
  Integer power = m;
  for (int len = 1; len * len <= 4 * c; ++len) {
    Integer level_sum(0);
    for (const Integer& f : row) level_sum += f;
    if (level_sum == 0) break;
    total += level_sum * power;
    power *= m;
    // Extend by one entry: new last v admits any previous last u <= v - len.
    std::vector<Integer> next(c, Integer(0));
    Integer prefix(0);
    for (int v = 0; v < c; ++v) {
      if (v - len >= 0) prefix += row[v - len];
      next[v] = prefix;
    }
    row.swap(next);
  }
  return total;
}

}  // namespace iknap
