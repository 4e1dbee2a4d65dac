#pragma once

#include <optional>
#include <vector>

#include "iknap/rational.hpp"

namespace iknap {

enum class Rel { le, ge, eq };

struct LpRow {
  std::vector<Rational> coeff;
  Rel rel = Rel::le;
  Rational rhs;
};

/// Linear program over exactly represented rationals. Bounds may be absent
/// on either side; a variable with equal bounds is fixed and is substituted
/// out before any pivoting.
struct LinearProgram {
  int num_vars = 0;
  bool maximize = true;
  std::vector<Rational> objective;
  std::vector<LpRow> rows;
  std::vector<std::optional<Rational>> lower;
  std::vector<std::optional<Rational>> upper;

  void add_row(std::vector<Rational> coeff, Rel rel, Rational rhs);
};

enum class LpStatus { optimal, infeasible, unbounded };

enum class VarStatus { basic, at_lower, at_upper, fixed };

/// Optimal basic solution. `basis[i]` identifies the variable basic in row i:
/// a structural index in [0, num_vars), num_vars + i for the slack of row i,
/// or -1 when the row was redundant. Together with the nonbasic statuses this
/// certifies the point is a vertex: tight rows and tight bounds form a system
/// of full rank.
struct VertexSolution {
  std::vector<Rational> point;
  Rational value;
  std::vector<VarStatus> status;
  std::vector<int> basis;
};

struct LpResult {
  LpStatus status = LpStatus::infeasible;
  std::optional<VertexSolution> vertex;
  long pivots = 0;
};

/// Exact primal simplex with Bland's rule over bounded variables; two phases
/// with artificial variables. Deterministic: entering variable is the lowest
/// eligible index, ties in the ratio test break toward the lowest leaving
/// variable index.
LpResult solve_lp(const LinearProgram& lp);

/// Whether `point` satisfies every row and bound of `lp` exactly.
bool satisfies(const LinearProgram& lp, const std::vector<Rational>& point);

}  // namespace iknap
