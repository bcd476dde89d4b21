#pragma once

// A small exact-rational linear programming solver.
//
// Problems are always "maximize c.x subject to rows, x >= 0". The solver is a
// dense two-phase tableau simplex with Bland's rule, which is slow but cannot
// cycle and never rounds.

#include "cake/rational.hpp"

#include <iosfwd>
#include <vector>

namespace cake {

enum class Relation { LessEq, GreaterEq, Equal };

struct LpConstraint {
  std::vector<Rational> coeffs;  // one per variable
  Relation relation = Relation::LessEq;
  Rational rhs;
};

struct LpProblem {
  std::size_t num_vars = 0;
  std::vector<Rational> objective;  // maximised
  std::vector<LpConstraint> constraints;

  explicit LpProblem(std::size_t vars = 0) : num_vars(vars), objective(vars) {}

  /// Appends a row with all-zero coefficients and returns it for filling in.
  LpConstraint& add_row(Relation rel, Rational rhs);
};

enum class LpStatus { Optimal, Infeasible, Unbounded };

const char* to_string(LpStatus s);

struct LpSolution {
  LpStatus status = LpStatus::Infeasible;
  Rational value;
  std::vector<Rational> x;
  std::size_t pivots = 0;
  /// Filled when the duality check ran: the optimum of the dual problem,
  /// solved separately from scratch.
  bool dual_checked = false;
  Rational dual_value;
};

struct LpOptions {
  /// Also solve the dual LP and record its optimum.
  bool check_duality = false;
  /// When set, every tableau is dumped here as plain text.
  std::ostream* trace = nullptr;
};

LpSolution lp_solve(const LpProblem& problem, const LpOptions& opts = {});

/// The dual of `problem` rewritten as a maximisation over non-negative
/// variables, so that max(dual) == -min(original dual) == -max(problem).
LpProblem dual_problem(const LpProblem& problem);

/// Checks every row and non-negativity exactly.
bool satisfies(const LpProblem& problem, const std::vector<Rational>& x);

}  // namespace cake
