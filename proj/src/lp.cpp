#include "iknap/lp.hpp"

#include <algorithm>
#include <utility>

namespace iknap {

void LinearProgram::add_row(std::vector<Rational> coeff, Rel rel, Rational rhs) {
  detail::require(static_cast<int>(coeff.size()) == num_vars,
                  "row length must match variable count");
  rows.push_back({std::move(coeff), rel, std::move(rhs)});
}

namespace {

using OptRat = std::optional<Rational>;

enum class ColStatus { basic, at_lower, at_upper, fixed_nonbasic };

// Bounded-variable simplex working state. Columns: active structural
// variables, then one slack per row, then artificials appended as needed.
struct Simplex {
  int m = 0;
  int ncols = 0;
  std::vector<std::vector<Rational>> tab;  // m x ncols, B^{-1} A
  std::vector<Rational> xb;                // value of basis[i]
  std::vector<int> basis;                  // column basic in row i
  std::vector<ColStatus> status;           // per column
  std::vector<Rational> val;               // current value of nonbasic columns
  std::vector<OptRat> lo, hi;
  std::vector<bool> artificial;
  long pivots = 0;

  std::vector<Rational> reduced_costs(const std::vector<Rational>& cost) const {
    std::vector<Rational> z = cost;
    for (int i = 0; i < m; ++i) {
      const Rational& cb = cost[basis[i]];
      if (cb == 0) continue;
      for (int j = 0; j < ncols; ++j) {
        if (tab[i][j] != 0) z[j] -= cb * tab[i][j];
      }
    }
    return z;
  }

  void pivot(int row, int col, std::vector<Rational>& z) {
    ++pivots;
    Rational p = tab[row][col];
    if (p != 1) {
      for (int j = 0; j < ncols; ++j) {
        if (tab[row][j] != 0) tab[row][j] /= p;
      }
    }
    for (int i = 0; i < m; ++i) {
      if (i == row) continue;
      const Rational f = tab[i][col];
      if (f == 0) continue;
      for (int j = 0; j < ncols; ++j) {
        if (tab[row][j] != 0) tab[i][j] -= f * tab[row][j];
      }
    }
    const Rational fz = z[col];
    if (fz != 0) {
      for (int j = 0; j < ncols; ++j) {
        if (tab[row][j] != 0) z[j] -= fz * tab[row][j];
      }
    }
  }

  // Maximizes over the current basis with Bland's rule. `allowed` masks
  // columns that may enter. Returns false when the objective is unbounded.
  bool optimize(std::vector<Rational>& z, const std::vector<bool>& allowed) {
    for (;;) {
      int enter = -1;
      int dir = 0;
      for (int j = 0; j < ncols; ++j) {
        if (!allowed[j]) continue;
        if (status[j] == ColStatus::at_lower) {
          if (z[j] > 0) {
            enter = j;
            dir = 1;
            break;
          }
          // A variable with no lower bound starts here at value zero and may
          // also move downward.
          if (z[j] < 0 && !lo[j].has_value()) {
            enter = j;
            dir = -1;
            break;
          }
        }
        if (status[j] == ColStatus::at_upper && z[j] < 0) {
          enter = j;
          dir = -1;
          break;
        }
      }
      if (enter < 0) return true;

      // Ratio test: step length before the entering column or a basic
      // variable hits a bound.
      OptRat theta;
      int leave_row = -1;   // -1 means the entering column flips bound
      int leave_dir = 0;    // bound the leaving variable lands on
      if (dir == 1 && hi[enter].has_value()) {
        theta = *hi[enter] - val[enter];
      } else if (dir == -1 && lo[enter].has_value()) {
        theta = val[enter] - *lo[enter];
      }
      for (int i = 0; i < m; ++i) {
        const Rational& a = tab[i][enter];
        if (a == 0) continue;
        // Basic variable i moves at rate -dir * a per unit step.
        const int k = basis[i];
        Rational rate = -Rational(dir) * a;
        OptRat limit;
        int land = 0;
        if (rate > 0) {
          if (hi[k].has_value()) {
            limit = (*hi[k] - xb[i]) / rate;
            land = 1;
          }
        } else {
          if (lo[k].has_value()) {
            limit = (xb[i] - *lo[k]) / (-rate);
            land = -1;
          }
        }
        if (!limit.has_value()) continue;
        // Ties against a pending bound flip keep the flip: a flip candidate
        // has strictly separated bounds, so its step is positive and the
        // objective strictly improves. Ties between rows leave the smallest
        // basis variable index, matching the smallest-index entering rule.
        if (!theta.has_value() || *limit < *theta ||
            (*limit == *theta && leave_row >= 0 && basis[i] < basis[leave_row])) {
          theta = limit;
          leave_row = i;
          leave_dir = land;
        }
      }
      if (!theta.has_value()) return false;

      // Move the entering variable and all basic values.
      for (int i = 0; i < m; ++i) {
        const Rational& a = tab[i][enter];
        if (a == 0) continue;
        xb[i] -= Rational(dir) * a * *theta;
      }
      Rational new_val = val[enter] + Rational(dir) * *theta;
      if (leave_row < 0) {
        val[enter] = new_val;
        status[enter] =
            dir == 1 ? ColStatus::at_upper : ColStatus::at_lower;
        continue;
      }
      const int leaving = basis[leave_row];
      if (lo[leaving].has_value() && hi[leaving].has_value() &&
          *lo[leaving] == *hi[leaving]) {
        // Landing on coincident bounds: the column is pinned and must never
        // re-enter, or it could flip with zero step.
        status[leaving] = ColStatus::fixed_nonbasic;
      } else {
        status[leaving] =
            leave_dir == 1 ? ColStatus::at_upper : ColStatus::at_lower;
      }
      val[leaving] = leave_dir == 1 ? *hi[leaving] : *lo[leaving];
      status[enter] = ColStatus::basic;
      basis[leave_row] = enter;
      xb[leave_row] = new_val;
      pivot(leave_row, enter, z);
    }
  }
};

}  // namespace

LpResult solve_lp(const LinearProgram& lp) {
  detail::require(static_cast<int>(lp.objective.size()) == lp.num_vars &&
                      static_cast<int>(lp.lower.size()) == lp.num_vars &&
                      static_cast<int>(lp.upper.size()) == lp.num_vars,
                  "objective and bounds must match variable count");
  for (const LpRow& row : lp.rows) {
    detail::require(static_cast<int>(row.coeff.size()) == lp.num_vars,
                    "row length must match variable count");
  }

  LpResult result;
  for (int j = 0; j < lp.num_vars; ++j) {
    if (lp.lower[j].has_value() && lp.upper[j].has_value() &&
        *lp.lower[j] > *lp.upper[j]) {
      result.status = LpStatus::infeasible;
      return result;
    }
  }

  // Substitute out fixed variables.
  std::vector<int> active;
  std::vector<Rational> fixed_value(lp.num_vars, Rational(0));
  std::vector<bool> is_fixed(lp.num_vars, false);
  for (int j = 0; j < lp.num_vars; ++j) {
    if (lp.lower[j].has_value() && lp.upper[j].has_value() &&
        *lp.lower[j] == *lp.upper[j]) {
      is_fixed[j] = true;
      fixed_value[j] = *lp.lower[j];
    } else {
      active.push_back(j);
    }
  }
  const int na = static_cast<int>(active.size());
  const int m = static_cast<int>(lp.rows.size());

  Simplex s;
  s.m = m;
  s.basis.assign(m, -1);
  s.xb.assign(m, Rational(0));

  // Columns: active structurals, slacks, then artificials.
  const int slack0 = na;
  int ncols = na + m;
  std::vector<std::vector<Rational>> rows(m);
  std::vector<Rational> rhs(m);
  std::vector<bool> row_is_eq(m, false);
  for (int i = 0; i < m; ++i) {
    const LpRow& row = lp.rows[i];
    Rational r = row.rhs;
    const bool flip = row.rel == Rel::ge;
    row_is_eq[i] = row.rel == Rel::eq;
    rows[i].assign(na, Rational(0));
    for (int j = 0; j < lp.num_vars; ++j) {
      if (row.coeff[j] == 0) continue;
      if (is_fixed[j]) {
        r -= row.coeff[j] * fixed_value[j];
      }
    }
    for (int a = 0; a < na; ++a) {
      rows[i][a] = flip ? -row.coeff[active[a]] : row.coeff[active[a]];
    }
    rhs[i] = flip ? -r : r;
  }

  s.lo.assign(ncols, OptRat());
  s.hi.assign(ncols, OptRat());
  s.val.assign(ncols, Rational(0));
  s.status.assign(ncols, ColStatus::at_lower);
  for (int a = 0; a < na; ++a) {
    const int j = active[a];
    s.lo[a] = lp.lower[j];
    s.hi[a] = lp.upper[j];
    if (s.lo[a].has_value()) {
      s.val[a] = *s.lo[a];
      s.status[a] = ColStatus::at_lower;
    } else if (s.hi[a].has_value()) {
      s.val[a] = *s.hi[a];
      s.status[a] = ColStatus::at_upper;
    } else {
      // Free variable: model as unbounded in both directions, start at zero.
      s.val[a] = 0;
      s.status[a] = ColStatus::at_lower;  // direction chosen by reduced cost
    }
  }
  for (int i = 0; i < m; ++i) {
    const int sj = slack0 + i;
    s.lo[sj] = Rational(0);
    s.hi[sj] = row_is_eq[i] ? OptRat(Rational(0)) : OptRat();
  }

  // Residuals with all structurals at their initial values.
  std::vector<Rational> residual = rhs;
  for (int i = 0; i < m; ++i) {
    for (int a = 0; a < na; ++a) {
      if (rows[i][a] != 0 && s.val[a] != 0) residual[i] -= rows[i][a] * s.val[a];
    }
  }

  std::vector<int> artificial_of_row;
  for (int i = 0; i < m; ++i) {
    const bool slack_ok = row_is_eq[i] ? residual[i] == 0 : residual[i] >= 0;
    if (slack_ok) continue;
    artificial_of_row.push_back(i);
  }
  const int art0 = ncols;
  ncols += static_cast<int>(artificial_of_row.size());
  s.ncols = ncols;
  s.lo.resize(ncols);
  s.hi.resize(ncols);
  s.val.resize(ncols, Rational(0));
  s.status.resize(ncols, ColStatus::at_lower);
  s.artificial.assign(ncols, false);

  s.tab.assign(m, std::vector<Rational>(ncols, Rational(0)));
  for (int i = 0; i < m; ++i) {
    for (int a = 0; a < na; ++a) s.tab[i][a] = rows[i][a];
    s.tab[i][slack0 + i] = 1;
  }
  for (int i = 0; i < m; ++i) {
    const bool slack_ok = row_is_eq[i] ? residual[i] == 0 : residual[i] >= 0;
    if (slack_ok) {
      s.basis[i] = slack0 + i;
      s.xb[i] = residual[i];
      s.status[slack0 + i] = ColStatus::basic;
    } else {
      s.status[slack0 + i] =
          row_is_eq[i] ? ColStatus::fixed_nonbasic : ColStatus::at_lower;
      s.val[slack0 + i] = 0;
    }
  }
  for (size_t k = 0; k < artificial_of_row.size(); ++k) {
    const int i = artificial_of_row[k];
    const int aj = art0 + static_cast<int>(k);
    s.artificial[aj] = true;
    s.lo[aj] = Rational(0);
    s.hi[aj] = OptRat();
    if (residual[i] < 0) {
      // Flip the row so the artificial enters with coefficient +1.
      for (int j = 0; j < ncols; ++j) s.tab[i][j] = -s.tab[i][j];
      residual[i] = -residual[i];
    }
    s.tab[i][aj] = 1;
    s.basis[i] = aj;
    s.xb[i] = residual[i];
    s.status[aj] = ColStatus::basic;
  }
  // Equality slacks that began basic at zero stay pinned by their bounds;
  // fixed nonbasic columns never enter.
  std::vector<bool> allowed(ncols, true);
  for (int j = 0; j < ncols; ++j) {
    if (s.status[j] == ColStatus::fixed_nonbasic) allowed[j] = false;
    if (s.lo[j].has_value() && s.hi[j].has_value() && *s.lo[j] == *s.hi[j] &&
        s.status[j] != ColStatus::basic) {
      allowed[j] = false;
    }
  }

  // Phase 1: maximize minus the sum of artificials.
  if (!artificial_of_row.empty()) {
    std::vector<Rational> cost1(ncols, Rational(0));
    for (int j = art0; j < ncols; ++j) cost1[j] = -1;
    std::vector<Rational> z1 = s.reduced_costs(cost1);
    const bool ok = s.optimize(z1, allowed);
    detail::check(ok, "phase 1 objective cannot be unbounded");
    Rational infeasibility(0);
    for (int i = 0; i < m; ++i) {
      if (s.artificial[s.basis[i]]) infeasibility += s.xb[i];
    }
    result.pivots = s.pivots;
    if (infeasibility != 0) {
      result.status = LpStatus::infeasible;
      return result;
    }
    // Pivot zero-valued artificials out of the basis where possible.
    for (int i = 0; i < m; ++i) {
      if (!s.artificial[s.basis[i]]) continue;
      int enter = -1;
      for (int j = 0; j < art0; ++j) {
        if (s.status[j] != ColStatus::basic && allowed[j] && s.tab[i][j] != 0) {
          enter = j;
          break;
        }
      }
      if (enter < 0) continue;  // redundant row: artificial stays at zero
      const int leaving = s.basis[i];
      s.status[leaving] = ColStatus::at_lower;
      s.val[leaving] = 0;
      s.status[enter] = ColStatus::basic;
      s.basis[i] = enter;
      s.xb[i] = s.val[enter];
      std::vector<Rational> dummy(ncols, Rational(0));
      s.pivot(i, enter, dummy);
    }
  }
  for (int j = art0; j < ncols; ++j) {
    allowed[j] = false;
    // Keep any still-basic artificial pinned at zero.
    s.lo[j] = Rational(0);
    s.hi[j] = Rational(0);
  }

  // Phase 2 on the real objective.
  std::vector<Rational> cost2(ncols, Rational(0));
  for (int a = 0; a < na; ++a) {
    cost2[a] = lp.maximize ? lp.objective[active[a]] : -lp.objective[active[a]];
  }
  std::vector<Rational> z2 = s.reduced_costs(cost2);
  const bool bounded = s.optimize(z2, allowed);
  result.pivots = s.pivots;
  if (!bounded) {
    result.status = LpStatus::unbounded;
    return result;
  }

  VertexSolution vertex;
  vertex.point.assign(lp.num_vars, Rational(0));
  vertex.status.assign(lp.num_vars, VarStatus::at_lower);
  for (int j = 0; j < lp.num_vars; ++j) {
    if (is_fixed[j]) {
      vertex.point[j] = fixed_value[j];
      vertex.status[j] = VarStatus::fixed;
    }
  }
  std::vector<int> row_of_col(ncols, -1);
  for (int i = 0; i < m; ++i) row_of_col[s.basis[i]] = i;
  for (int a = 0; a < na; ++a) {
    const int j = active[a];
    if (s.status[a] == ColStatus::basic) {
      vertex.point[j] = s.xb[row_of_col[a]];
      vertex.status[j] = VarStatus::basic;
    } else {
      vertex.point[j] = s.val[a];
      vertex.status[j] =
          s.status[a] == ColStatus::at_upper ? VarStatus::at_upper : VarStatus::at_lower;
    }
  }
  vertex.basis.assign(m, -1);
  for (int i = 0; i < m; ++i) {
    const int b = s.basis[i];
    if (b < na) {
      vertex.basis[i] = active[b];
    } else if (b < slack0 + m) {
      vertex.basis[i] = lp.num_vars + (b - slack0);
    }
  }
  Rational value(0);
  for (int j = 0; j < lp.num_vars; ++j) {
    if (lp.objective[j] != 0) value += lp.objective[j] * vertex.point[j];
  }
  vertex.value = value;
  result.status = LpStatus::optimal;
  result.vertex = std::move(vertex);
  return result;
}

bool satisfies(const LinearProgram& lp, const std::vector<Rational>& point) {
  if (static_cast<int>(point.size()) != lp.num_vars) return false;
  for (int j = 0; j < lp.num_vars; ++j) {
    if (lp.lower[j] && point[j] < *lp.lower[j]) return false;
    if (lp.upper[j] && point[j] > *lp.upper[j]) return false;
  }
  for (const LpRow& row : lp.rows) {
    Rational lhs(0);
    for (int j = 0; j < lp.num_vars; ++j) {
      if (row.coeff[j] != 0) lhs += row.coeff[j] * point[j];
    }
    if (row.rel == Rel::le && lhs > row.rhs) return false;
    if (row.rel == Rel::ge && lhs < row.rhs) return false;
    if (row.rel == Rel::eq && lhs != row.rhs) return false;
  }
  return true;
}

}  // namespace iknap
