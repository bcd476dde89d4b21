#include "cake/lp.hpp"

#include <limits>
#include <optional>
#include <ostream>

namespace cake {

LpConstraint& LpProblem::add_row(Relation rel, Rational rhs) {
  constraints.push_back({std::vector<Rational>(num_vars), rel, std::move(rhs)});
  return constraints.back();
}

const char* to_string(LpStatus s) {
  switch (s) {
    case LpStatus::Optimal: return "optimal";
    case LpStatus::Infeasible: return "infeasible";
    case LpStatus::Unbounded: return "unbounded";
  }
  return "?";
}

namespace {

constexpr std::size_t kNone = std::numeric_limits<std::size_t>::max();

// Row r holds the constraint coefficients followed by the right-hand side.
// z holds reduced costs (z_j = c_B B^-1 A_j - c_j); z.back() is the objective.
struct Tableau {
  std::vector<std::vector<Rational>> rows;
  std::vector<Rational> z;
  std::vector<std::size_t> basis;
  std::size_t cols = 0;
  std::size_t pivots = 0;
  std::ostream* trace = nullptr;

  void pivot(std::size_t r, std::size_t c) {
    auto& pr = rows[r];
    const Rational p = pr[c];
    for (auto& v : pr) {
      if (!v.is_zero()) v = v / p;
    }
    auto eliminate = [&](std::vector<Rational>& row) {
      if (row[c].is_zero()) return;
      const Rational f = row[c];
      for (std::size_t j = 0; j <= cols; ++j) {
        if (!pr[j].is_zero()) row[j] -= f * pr[j];
      }
    };
    for (std::size_t k = 0; k < rows.size(); ++k) {
      if (k != r) eliminate(rows[k]);
    }
    eliminate(z);
    basis[r] = c;
    ++pivots;
    if (trace) {
      *trace << "pivot " << pivots << ": column " << c << " enters at row " << r << '\n';
      dump();
    }
  }

  void dump() const {
    if (!trace) return;
    for (std::size_t r = 0; r < rows.size(); ++r) {
      *trace << "  x" << basis[r] << " |";
      for (const auto& v : rows[r]) *trace << ' ' << v;
      *trace << '\n';
    }
    *trace << "  z  |";
    for (const auto& v : z) *trace << ' ' << v;
    *trace << '\n';
  }

  // Bland's rule over the columns below `limit`. Returns false on unboundedness.
  bool optimise(std::size_t limit) {
    for (;;) {
      std::size_t enter = kNone;
      for (std::size_t j = 0; j < limit; ++j) {
        if (z[j].sign() < 0) {
          enter = j;
          break;
        }
      }
      if (enter == kNone) return true;
      std::size_t leave = kNone;
      Rational best;
      for (std::size_t r = 0; r < rows.size(); ++r) {
        if (rows[r][enter].sign() <= 0) continue;
        Rational ratio = rows[r][cols] / rows[r][enter];
        if (leave == kNone || ratio < best || (ratio == best && basis[r] < basis[leave])) {
          leave = r;
          best = std::move(ratio);
        }
      }
      if (leave == kNone) return false;
      pivot(leave, enter);
    }
  }

  void price(const std::vector<Rational>& cost) {
    z.assign(cols + 1, Rational(0));
    for (std::size_t j = 0; j <= cols; ++j) {
      if (j < cols) z[j] = -cost[j];
      for (std::size_t r = 0; r < rows.size(); ++r) {
        if (!cost[basis[r]].is_zero()) z[j] += cost[basis[r]] * rows[r][j];
      }
    }
  }
};

}  // namespace

LpSolution lp_solve(const LpProblem& problem, const LpOptions& opts) {
  const std::size_t n = problem.num_vars;
  const std::size_t m = problem.constraints.size();

  // Column layout: structural | slack or surplus | artificial.
  std::size_t extra = 0;
  for (const auto& c : problem.constraints) {
    if (c.relation != Relation::Equal) ++extra;
  }
  const std::size_t art_begin = n + extra;
  std::size_t artificials = 0;
  std::vector<Relation> rel(m);
  std::vector<bool> flip(m);
  for (std::size_t r = 0; r < m; ++r) {
    const auto& c = problem.constraints[r];
    flip[r] = c.rhs.sign() < 0;
    rel[r] = c.relation;
    if (flip[r] && rel[r] == Relation::LessEq) {
      rel[r] = Relation::GreaterEq;
    } else if (flip[r] && rel[r] == Relation::GreaterEq) {
      rel[r] = Relation::LessEq;
    }
    if (rel[r] != Relation::LessEq) ++artificials;
  }

  Tableau t;
  t.cols = art_begin + artificials;
  t.trace = opts.trace;
  t.rows.assign(m, std::vector<Rational>(t.cols + 1));
  t.basis.assign(m, kNone);
  std::size_t slack = n, art = art_begin;
  for (std::size_t r = 0; r < m; ++r) {
    const auto& c = problem.constraints[r];
    auto& row = t.rows[r];
    for (std::size_t j = 0; j < n; ++j) row[j] = flip[r] ? -c.coeffs[j] : c.coeffs[j];
    row[t.cols] = flip[r] ? -c.rhs : c.rhs;
    if (c.relation != Relation::Equal) {
      row[slack] = rel[r] == Relation::LessEq ? Rational(1) : Rational(-1);
      if (rel[r] == Relation::LessEq) t.basis[r] = slack;
      ++slack;
    }
    if (rel[r] != Relation::LessEq) {
      row[art] = 1;
      t.basis[r] = art++;
    }
  }

  LpSolution sol;

  // Phase 1: maximise minus the sum of artificials.
  if (artificials > 0) {
    std::vector<Rational> cost(t.cols);
    for (std::size_t j = art_begin; j < t.cols; ++j) cost[j] = -1;
    t.price(cost);
    if (t.trace) *t.trace << "phase 1\n";
    t.dump();
    t.optimise(t.cols);
    if (t.z[t.cols].sign() != 0) {
      sol.status = LpStatus::Infeasible;
      sol.pivots = t.pivots;
      return sol;
    }
    // Drive remaining (zero-valued) artificials out, dropping redundant rows.
    for (std::size_t r = 0; r < t.rows.size();) {
      if (t.basis[r] < art_begin) {
        ++r;
        continue;
      }
      std::size_t col = kNone;
      for (std::size_t j = 0; j < art_begin; ++j) {
        if (!t.rows[r][j].is_zero()) {
          col = j;
          break;
        }
      }
      if (col == kNone) {
        t.rows.erase(t.rows.begin() + static_cast<std::ptrdiff_t>(r));
        t.basis.erase(t.basis.begin() + static_cast<std::ptrdiff_t>(r));
      } else {
        t.pivot(r, col);
        ++r;
      }
    }
  }

  std::vector<Rational> cost(t.cols);
  for (std::size_t j = 0; j < n; ++j) cost[j] = problem.objective[j];
  t.price(cost);
  if (t.trace) *t.trace << "phase 2\n";
  t.dump();
  const bool bounded = t.optimise(art_begin);
  sol.pivots = t.pivots;
  if (!bounded) {
    sol.status = LpStatus::Unbounded;
    return sol;
  }
  sol.status = LpStatus::Optimal;
  sol.value = t.z[t.cols];
  sol.x.assign(n, Rational(0));
  for (std::size_t r = 0; r < t.rows.size(); ++r) {
    if (t.basis[r] < n) sol.x[t.basis[r]] = t.rows[r][t.cols];
  }

  if (opts.check_duality) {
    const LpSolution dual = lp_solve(dual_problem(problem));
    if (dual.status == LpStatus::Optimal) {
      sol.dual_checked = true;
      sol.dual_value = -dual.value;
    }
  }
  return sol;
}

// Primal: max c.x, A_le x <= b, A_ge x >= b, A_eq x = b, x >= 0.
// Dual:   min b.y, A^T y >= c, y_le >= 0, y_ge <= 0, y_eq free.
// With y_ge = -u, y_eq = v - w and every variable non-negative this becomes
// max -b.y subject to -A^T y <= -c.
LpProblem dual_problem(const LpProblem& problem) {
  std::vector<std::pair<std::size_t, Rational>> cols;  // (row, sign)
  for (std::size_t r = 0; r < problem.constraints.size(); ++r) {
    switch (problem.constraints[r].relation) {
      case Relation::LessEq: cols.emplace_back(r, Rational(1)); break;
      case Relation::GreaterEq: cols.emplace_back(r, Rational(-1)); break;
      case Relation::Equal:
        cols.emplace_back(r, Rational(1));
        cols.emplace_back(r, Rational(-1));
        break;
    }
  }
  LpProblem d(cols.size());
  for (std::size_t k = 0; k < cols.size(); ++k) {
    d.objective[k] = -(cols[k].second * problem.constraints[cols[k].first].rhs);
  }
  for (std::size_t j = 0; j < problem.num_vars; ++j) {
    auto& row = d.add_row(Relation::LessEq, -problem.objective[j]);
    for (std::size_t k = 0; k < cols.size(); ++k) {
      row.coeffs[k] = -(cols[k].second * problem.constraints[cols[k].first].coeffs[j]);
    }
  }
  return d;
}

bool satisfies(const LpProblem& problem, const std::vector<Rational>& x) {
  if (x.size() != problem.num_vars) return false;
  for (const auto& v : x) {
    if (v.sign() < 0) return false;
  }
  for (const auto& c : problem.constraints) {
    Rational lhs;
    for (std::size_t j = 0; j < problem.num_vars; ++j) {
      if (!c.coeffs[j].is_zero()) lhs += c.coeffs[j] * x[j];
    }
    const bool ok = c.relation == Relation::LessEq ? lhs <= c.rhs
                    : c.relation == Relation::GreaterEq ? lhs >= c.rhs
                                                        : lhs == c.rhs;
    if (!ok) return false;
  }
  return true;
}

}  // namespace cake
