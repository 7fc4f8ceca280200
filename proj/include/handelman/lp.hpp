#pragma once

#include "handelman/matrix.hpp"

namespace handelman {

/// maximize objective^T x  subject to  eq * x = eq_rhs,  le * x <= le_rhs,  x >= 0.
///
/// Either constraint block may have zero rows, but its column count must
/// match objective.size().
struct LinearProgram {
  RatVector objective;
  RatMatrix eq;
  RatVector eq_rhs;
  RatMatrix le;
  RatVector le_rhs;
};

enum class LpStatus { optimal, infeasible, unbounded };

struct LpResult {
  LpStatus status = LpStatus::infeasible;
  RatVector x;
  Rat value;
};

/// Two-phase dense tableau simplex over exact rationals with Bland's rule.
/// Meant for the tiny instances the pipeline builds.
LpResult solve_lp(const LinearProgram& lp);

}  // namespace handelman
