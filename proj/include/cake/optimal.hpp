#pragma once

// Welfare optima over the cake.
//
// The unit interval is cut at every piece endpoint and every point where two
// densities cross. On each resulting segment the agents' densities keep one
// order, so the unconstrained utilitarian optimum simply hands each segment
// to its highest-density agent. For piecewise constant inputs every density
// is flat on every segment, utilities become linear in the lengths x[i][s]
// handed to agent i on segment s, and constrained optima are linear programs.

#include "cake/allocation.hpp"
#include "cake/lp.hpp"

#include <iosfwd>
#include <span>
#include <string>
#include <vector>

namespace cake {

struct Segmentation {
  std::vector<Rational> marks;  // strictly increasing, starts at 0 and ends at 1

  [[nodiscard]] std::size_t size() const { return marks.empty() ? 0 : marks.size() - 1; }
  [[nodiscard]] Interval segment(std::size_t s) const { return {marks[s], marks[s + 1]}; }
};

Segmentation segment(std::span<const Valuation> valuations);

/// rate[i][s]: agent i's density on segment s.
struct SegmentRateMatrix {
  std::vector<std::vector<Rational>> rate;
};

/// Throws Error{UnsupportedValuationClass} unless every valuation is
/// piecewise constant.
SegmentRateMatrix segment_rates(std::span<const Valuation> valuations, const Segmentation& seg);

/// Each segment goes wholly to an agent of maximal density at its midpoint,
/// lowest index on ties. Works for piecewise linear valuations.
Allocation utilitarian_optimal(std::span<const Valuation> valuations);

enum class FairnessConstraint { None, Proportional, EnvyFree, Equitable };

const char* to_string(FairnessConstraint c);
/// Accepts none, proportional, envy-free and equitable.
FairnessConstraint parse_fairness_constraint(const std::string& name);

struct OptimumResult {
  Rational value;
  /// Lengths materialised left to right inside every segment in agent order.
  Allocation allocation;
  LpSolution lp;
};

/// Maximum UE subject to the constraint. Piecewise constant valuations only.
/// Throws Error{Infeasible} if the program has no solution.
OptimumResult max_ue(std::span<const Valuation> valuations, FairnessConstraint constraint,
                     const LpOptions& opts = {});

/// Maximum EE (smallest own-portion utility). Piecewise constant only.
OptimumResult max_ee(std::span<const Valuation> valuations, const LpOptions& opts = {});

/// True iff no allocation weakly improves every agent and strictly improves
/// one, decided by maximising UE subject to u_i(B_i) >= u_i(A_i).
bool pareto_oracle(std::span<const Valuation> valuations, const Allocation& allocation);

/// max_ue(None) / max_ue(constraint).
Rational price_of(std::span<const Valuation> valuations, FairnessConstraint constraint);

struct PriceRow {
  std::string instance;
  std::size_t agents = 0;
  Rational unconstrained;
  Rational constrained;
  Rational ratio;
};

PriceRow price_row(std::string instance, std::span<const Valuation> valuations, FairnessConstraint constraint);

/// "instance,n,ue_opt,constrained_ue,ratio" header followed by one line per row.
void write_price_csv(std::ostream& os, std::span<const PriceRow> rows, bool header = true);

}  // namespace cake
