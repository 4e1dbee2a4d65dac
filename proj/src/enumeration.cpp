#include "iknap/enumeration.hpp"

#include <algorithm>
#include <functional>
#include <sstream>

namespace iknap {

namespace {

/// Calls visit for every ascending size-`size` combination drawn from
/// values[from..], in lexicographic order.
void for_each_combination(const std::vector<int>& values, int size,
                          const std::function<void(const std::vector<int>&)>& visit) {
  std::vector<int> pick(size);
  std::function<void(int, int)> rec = [&](int from, int depth) {
    if (depth == size) {
      visit(pick);
      return;
    }
    const int remaining = size - depth;
    for (int idx = from; idx <= static_cast<int>(values.size()) - remaining; ++idx) {
      pick[depth] = values[idx];
      rec(idx + 1, depth + 1);
    }
  };
  rec(0, 0);
}

std::vector<Stairway> enumerate_over(int J, const std::vector<int>& classes,
                                     bool require_first_class_zero,
                                     bool include_empty) {
  detail::require(J >= 0, "grid sizes must be nonnegative");
  std::vector<int> times(J);
  for (int j = 0; j < J; ++j) times[j] = j + 1;

  std::vector<Stairway> out;
  if (include_empty) out.emplace_back();
  const int max_len = std::min<int>(J, static_cast<int>(classes.size()));
  for (int s = 1; s <= max_len; ++s) {
    for_each_combination(times, s, [&](const std::vector<int>& js) {
      for_each_combination(classes, s, [&](const std::vector<int>& ks) {
        if (require_first_class_zero && ks[0] != 0) return;
        Stairway sw;
        sw.entries.resize(s);
        for (int h = 0; h < s; ++h) {
          sw.entries[h].j = js[s - 1 - h];
          sw.entries[h].k = ks[h];
        }
        out.push_back(std::move(sw));
      });
    });
  }
  return out;
}

}  // namespace

std::vector<Stairway> enumerate_stairways(int J, int K,
                                          bool require_first_class_zero) {
  detail::require(K >= 0, "grid sizes must be nonnegative");
  std::vector<int> classes(K + 1);
  for (int k = 0; k <= K; ++k) classes[k] = k;
  return enumerate_over(J, classes, require_first_class_zero,
                        /*include_empty=*/!require_first_class_zero);
}

std::vector<Stairway> enumerate_stairways_anchored(
    int J, const std::vector<int>& classes) {
  for (size_t i = 0; i < classes.size(); ++i) {
    detail::require(classes[i] >= 0, "classes must be nonnegative");
    detail::require(i == 0 || classes[i - 1] < classes[i],
                    "classes must be ascending and distinct");
  }
  if (classes.empty() || classes[0] != 0) return {};
  return enumerate_over(J, classes, /*require_first_class_zero=*/true,
                        /*include_empty=*/false);
}

long class_window(const Rational& eps) {
  detail::require(eps > 0 && eps < 1, "eps must lie in (0,1)");
  return ceil_log(Rational(1) + eps, Rational(1) / eps);
}

RhoDomain build_rho_domain(const Stairway& s, int J, int K,
                           const Rational& eps) {
  detail::require(J >= 1 && K >= 0, "grid must be nonempty");
  const int len = static_cast<int>(s.entries.size());
  for (int h = 0; h < len; ++h) {
    detail::require(s.entries[h].j >= 1 && s.entries[h].j <= J,
                    "stairway time outside the grid");
    detail::require(s.entries[h].k >= 0 && s.entries[h].k <= K,
                    "stairway class outside the grid");
    if (h > 0) {
      detail::require(s.entries[h].j < s.entries[h - 1].j,
                      "stairway times must strictly decrease");
      detail::require(s.entries[h].k > s.entries[h - 1].k,
                      "stairway classes must strictly increase");
    }
  }

  RhoDomain domain;
  domain.J = J;
  domain.K = K;
  domain.value_cap =
      (ceil_rational(Rational(1) / eps) + 1).convert_to<int>();
  const long window = class_window(eps);

  std::vector<int> last_in_col(K + 1, -1);
  // Blocks in ascending time order: the last entry covers the earliest times.
  for (int h = len; h >= 1; --h) {
    const int j_lo = s.entries[h - 1].j;
    const int j_hi = (h == 1 ? J + 1 : s.entries[h - 2].j) - 1;
    const int k_lo = s.entries[h - 1].k;
    const int k_hi = static_cast<int>(std::min<long>(k_lo + window, K));
    for (int j = j_lo; j <= j_hi; ++j) {
      for (int k = k_lo; k <= k_hi; ++k) {
        RhoCell cell;
        cell.jt = j - 1;
        cell.k = k;
        cell.anchor = k == k_lo;
        cell.prev = last_in_col[k];
        last_in_col[k] = static_cast<int>(domain.cells.size());
        domain.cells.push_back(cell);
      }
    }
  }
  return domain;
}

std::vector<RhoMap> enumerate_rho(const RhoDomain& domain,
                                  const std::vector<Integer>& class_caps) {
  detail::require(static_cast<int>(class_caps.size()) >= domain.K + 1,
                  "class capacities must cover every class");
  std::vector<int> class_hi(domain.K + 1);
  for (int k = 0; k <= domain.K; ++k) {
    Integer cap = class_caps[k] < 0 ? Integer(0) : class_caps[k];
    cap = std::min(cap, Integer(domain.value_cap));
    class_hi[k] = cap.convert_to<int>();
  }

  std::vector<RhoMap> out;
  const int cells = static_cast<int>(domain.cells.size());
  std::vector<int> assigned(cells, -1);
  std::function<void(int)> rec = [&](int c) {
    if (c == cells) {
      RhoMap map;
      map.value.assign(domain.J, std::vector<int>(domain.K + 1, -1));
      for (int q = 0; q < cells; ++q) {
        map.value[domain.cells[q].jt][domain.cells[q].k] = assigned[q];
      }
      out.push_back(std::move(map));
      return;
    }
    const RhoCell& cell = domain.cells[c];
    int lo = cell.anchor ? 1 : 0;
    if (cell.prev >= 0) lo = std::max(lo, assigned[cell.prev]);
    for (int v = lo; v <= class_hi[cell.k]; ++v) {
      assigned[c] = v;
      rec(c + 1);
    }
    assigned[c] = -1;
  };
  rec(0);
  return out;
}

ClassPartition partition_classes(const IikInstance& inst,
                                 const std::vector<int>& item_class, long K) {
  const int n = inst.n();
  detail::require(static_cast<int>(item_class.size()) == n,
                  "class labels must cover every item");
  ClassPartition part;
  part.K = static_cast<int>(K);
  part.items.assign(K + 1, {});
  part.caps.assign(K + 1, Integer(0));
  part.class_of = item_class;
  for (int i = 0; i < n; ++i) {
    const int k = item_class[i];
    if (k < 0) {
      part.small_items.push_back(i);
      continue;
    }
    detail::require(k <= K, "class label outside the grid");
    part.items[k].push_back(i);
    part.caps[k] += inst.effective_multiplicity(i);
  }
  for (auto& members : part.items) {
    std::stable_sort(members.begin(), members.end(), [&](int a, int b) {
      return inst.weight[a] < inst.weight[b];
    });
  }
  return part;
}

namespace {

/// Mutable fixing state shared by the rule applications below.
struct FixState {
  Piece& piece;
  bool conflict = false;

  void fail() { conflict = true; }

  /// Forces a zero at interval l and, by monotonicity, at every earlier one.
  void zero_through(int l, int i) {
    for (int ll = l; ll >= 0; --ll) {
      auto& cell = piece.fixed[ll][i];
      if (cell.has_value()) {
        if (*cell != 0) fail();
        return;  // earlier intervals were zeroed when this cell was
      }
      cell = Integer(0);
    }
  }

  /// Forces value v at interval l and at every later one (used when v is the
  /// item's full copy limit, which monotone solutions can never exceed).
  void full_from(int l, int i, const Integer& v) {
    for (int ll = l; ll < piece.L; ++ll) {
      auto& cell = piece.fixed[ll][i];
      if (cell.has_value()) {
        if (*cell != v) fail();
        return;
      }
      cell = v;
    }
  }

  /// Forces value v at interval l only.
  void value_at(int l, int i, const Integer& v) {
    auto& cell = piece.fixed[l][i];
    if (cell.has_value()) {
      if (*cell != v) fail();
      return;
    }
    cell = v;
  }
};

}  // namespace

std::string Piece::fixing_key() const {
  std::ostringstream out;
  for (int l = 0; l < L; ++l) {
    for (int i = 0; i < n; ++i) {
      if (fixed[l][i].has_value()) {
        out << 'F' << fixed[l][i]->str();
      } else {
        out << 'B' << lower[l][i].str() << ':' << upper[l][i].str();
      }
      out << ';';
    }
  }
  return out.str();
}

std::vector<std::vector<Rational>> Piece::interval_values(
    const std::vector<Rational>& point) const {
  detail::require(static_cast<int>(point.size()) == lp.num_vars,
                  "point size must match the piece LP");
  std::vector<std::vector<Rational>> values(L, std::vector<Rational>(n));
  for (int l = 0; l < L; ++l) {
    for (int i = 0; i < n; ++i) {
      values[l][i] = fixed[l][i].has_value() ? Rational(*fixed[l][i])
                                             : point[var_of[l][i]];
    }
  }
  return values;
}

std::vector<std::vector<Rational>> Piece::expand(
    const std::vector<std::vector<Rational>>& per_interval) const {
  detail::require(static_cast<int>(per_interval.size()) == L,
                  "expected one value row per interval");
  std::vector<std::vector<Rational>> full(T);
  for (int t = 0; t < T; ++t) full[t] = per_interval[interval_of[t]];
  return full;
}

Piece build_piece(const IikInstance& inst, const ClassPartition& classes,
                  const std::vector<int>& significant, const Stairway& s,
                  const RhoMap& rho, const Rational& eps) {
  detail::require(inst.discount.empty(), "pieces assume unit objective weights");
  const int T = inst.T();
  const int n = inst.n();
  const int K = classes.K;
  const int J = static_cast<int>(significant.size());
  detail::require(J >= 1, "at least one significant time required");
  for (int j = 0; j < J; ++j) {
    detail::require(significant[j] >= 0 && significant[j] < T &&
                        (j == 0 || significant[j - 1] < significant[j]),
                    "significant times must be ascending within [0,T)");
  }
  const long window = class_window(eps);
  const Integer exact_cap = ceil_rational(Rational(1) / eps);

  Piece piece;
  piece.stairway = s;
  piece.rho = rho;
  piece.T = T;
  piece.n = n;

  // Intervals: one per significant time, plus a leading stretch when the
  // first significant time is not 0. Capacities must be constant inside each
  // interval (zero before the first significant time); solutions are pinned
  // constant there too, which keeps at least one optimal monotone solution.
  piece.interval_of.assign(T, 0);
  if (significant[0] > 0) piece.interval_start.push_back(0);
  for (int j = 0; j < J; ++j) piece.interval_start.push_back(significant[j]);
  piece.L = static_cast<int>(piece.interval_start.size());
  const int sig_offset = piece.L - J;
  piece.interval_len.resize(piece.L);
  for (int l = 0; l < piece.L; ++l) {
    const int stop = l + 1 < piece.L ? piece.interval_start[l + 1] : T;
    piece.interval_len[l] = stop - piece.interval_start[l];
    for (int t = piece.interval_start[l]; t < stop; ++t) piece.interval_of[t] = l;
    for (int t = piece.interval_start[l] + 1; t < stop; ++t) {
      detail::require(inst.capacity[t] == inst.capacity[t - 1],
                      "capacity may change only at significant times");
    }
  }
  if (sig_offset == 1) {
    detail::require(inst.capacity[0] == 0,
                    "capacity before the first significant time must be zero");
  }

  const int L = piece.L;
  piece.fixed.assign(L, std::vector<std::optional<Integer>>(n));
  piece.lower.assign(L, std::vector<Integer>(n, Integer(0)));
  piece.upper.assign(L, std::vector<Integer>(n));
  std::vector<Integer> limit(n);
  for (int i = 0; i < n; ++i) {
    limit[i] = inst.effective_multiplicity(i);
    for (int l = 0; l < L; ++l) piece.upper[l][i] = limit[i];
  }

  FixState st{piece};
  const int len = static_cast<int>(s.entries.size());

  auto empty_out = [&](std::string reason) {
    piece.empty = true;
    piece.empty_reason = std::move(reason);
    return piece;
  };

  // Zeros below the next anchor before each block begins.
  for (int h = 1; h <= len; ++h) {
    const int start = sig_offset + s.entries[h - 1].j - 1;
    const int k_next = h == len ? K + 1 : s.entries[h].k;
    if (start == 0) continue;
    for (int k = 0; k < k_next && k <= K; ++k) {
      for (int i : classes.items[k]) st.zero_through(start - 1, i);
    }
  }

  // Forced class prefixes at the intervals of each block.
  for (int h = 1; h <= len && !st.conflict; ++h) {
    const int j_lo = s.entries[h - 1].j;
    const int j_hi = (h == 1 ? J + 1 : s.entries[h - 2].j) - 1;
    const int k_lo = s.entries[h - 1].k;
    const int k_hi = static_cast<int>(std::min<long>(k_lo + window, K));
    for (int j = j_lo; j <= j_hi && !st.conflict; ++j) {
      const int l = sig_offset + j - 1;
      for (int k = k_lo; k <= k_hi && !st.conflict; ++k) {
        const int v = rho.at(j - 1, k);
        detail::require(v >= 0, "value map misses a domain cell");
        if (k == k_lo) detail::require(v >= 1, "anchor value must be positive");
        const auto& members = classes.items[k];
        if (v == 0) {
          for (int i : members) st.zero_through(l, i);
          continue;
        }
        Integer cum(0);
        size_t idx = 0;
        while (idx < members.size() && cum + limit[members[idx]] < v) {
          st.full_from(l, members[idx], limit[members[idx]]);
          cum += limit[members[idx]];
          ++idx;
        }
        if (idx == members.size()) {
          return empty_out("class cannot supply the demanded count");
        }
        const int r = members[idx];
        const Integer residual = Integer(v) - cum;
        if (Integer(v) <= exact_cap) {
          if (residual == limit[r]) {
            st.full_from(l, r, residual);
          } else {
            st.value_at(l, r, residual);
          }
          for (size_t q = idx + 1; q < members.size(); ++q) {
            st.zero_through(l, members[q]);
          }
        } else {
          // "At least this many": the partially used item keeps room above
          // the demanded count, so it gets a floor instead of a fixing.
          if (residual == limit[r]) {
            st.full_from(l, r, residual);
          } else if (piece.lower[l][r] < residual) {
            piece.lower[l][r] = residual;
          }
        }
      }
    }
  }
  if (st.conflict) return empty_out("conflicting fixings");

  // Push floors forward and ceilings backward through free cells, so the
  // coupling between a fixed cell and its free neighbors lives in the box.
  for (int i = 0; i < n; ++i) {
    for (int l = 1; l < L; ++l) {
      if (piece.fixed[l][i].has_value()) continue;
      const Integer prev = piece.fixed[l - 1][i].has_value()
                               ? *piece.fixed[l - 1][i]
                               : piece.lower[l - 1][i];
      if (piece.lower[l][i] < prev) piece.lower[l][i] = prev;
    }
    for (int l = L - 2; l >= 0; --l) {
      if (piece.fixed[l][i].has_value()) continue;
      const Integer next = piece.fixed[l + 1][i].has_value()
                               ? *piece.fixed[l + 1][i]
                               : piece.upper[l + 1][i];
      if (piece.upper[l][i] > next) piece.upper[l][i] = next;
    }
  }
  for (int i = 0; i < n && !st.conflict; ++i) {
    for (int l = 0; l < L; ++l) {
      if (piece.fixed[l][i].has_value()) {
        if (piece.lower[l][i] > *piece.fixed[l][i]) st.fail();
        if (l + 1 < L && piece.fixed[l + 1][i].has_value() &&
            *piece.fixed[l][i] > *piece.fixed[l + 1][i]) {
          st.fail();
        }
      } else {
        if (piece.lower[l][i] > piece.upper[l][i]) st.fail();
        if (piece.lower[l][i] == piece.upper[l][i]) {
          piece.fixed[l][i] = piece.lower[l][i];
        }
      }
    }
  }
  if (st.conflict) return empty_out("conflicting fixings");

  piece.forced_load.assign(L, Rational(0));
  for (int l = 0; l < L; ++l) {
    const Rational& cap = inst.capacity[piece.interval_start[l]];
    Rational least(0);
    for (int i = 0; i < n; ++i) {
      if (piece.fixed[l][i].has_value()) {
        const Rational part = Rational(*piece.fixed[l][i]) * inst.weight[i];
        piece.forced_load[l] += part;
        least += part;
      } else {
        least += Rational(piece.lower[l][i]) * inst.weight[i];
      }
    }
    if (least > cap) {
      return empty_out("forced load exceeds capacity");
    }
  }

  piece.var_of.assign(L, std::vector<int>(n, -1));
  for (int l = 0; l < L; ++l) {
    for (int i = 0; i < n; ++i) {
      if (piece.fixed[l][i].has_value()) {
        piece.fixed_profit += Rational(*piece.fixed[l][i]) * inst.profit[i] *
                              piece.interval_len[l];
        continue;
      }
      piece.var_of[l][i] = static_cast<int>(piece.cell_of.size());
      piece.cell_of.emplace_back(l, i);
    }
  }

  LinearProgram& lp = piece.lp;
  lp.num_vars = static_cast<int>(piece.cell_of.size());
  lp.maximize = true;
  lp.objective.resize(lp.num_vars);
  lp.lower.resize(lp.num_vars);
  lp.upper.resize(lp.num_vars);
  for (int v = 0; v < lp.num_vars; ++v) {
    const auto [l, i] = piece.cell_of[v];
    lp.objective[v] = inst.profit[i] * piece.interval_len[l];
    lp.lower[v] = Rational(piece.lower[l][i]);
    lp.upper[v] = Rational(piece.upper[l][i]);
  }
  for (int l = 0; l < L; ++l) {
    std::vector<Rational> coeff(lp.num_vars, Rational(0));
    bool any = false;
    for (int i = 0; i < n; ++i) {
      if (piece.var_of[l][i] >= 0) {
        coeff[piece.var_of[l][i]] = inst.weight[i];
        any = true;
      }
    }
    if (any) {
      lp.add_row(std::move(coeff), Rel::le,
                 inst.capacity[piece.interval_start[l]] - piece.forced_load[l]);
    }
  }
  for (int l = 0; l + 1 < L; ++l) {
    for (int i = 0; i < n; ++i) {
      if (piece.var_of[l][i] < 0 || piece.var_of[l + 1][i] < 0) continue;
      std::vector<Rational> coeff(lp.num_vars, Rational(0));
      coeff[piece.var_of[l][i]] = 1;
      coeff[piece.var_of[l + 1][i]] = -1;
      lp.add_row(std::move(coeff), Rel::le, Rational(0));
    }
  }
  return piece;
}

}  // namespace iknap
