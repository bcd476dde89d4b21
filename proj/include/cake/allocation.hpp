#pragma once

// Allocations and the equity / efficiency audits defined over them.

#include "cake/interval_set.hpp"
#include "cake/rational.hpp"
#include "cake/valuation.hpp"

#include <span>
#include <string>
#include <vector>

namespace cake {

/// One portion per agent (index = agent). Portions may be empty and need not
/// cover the cake; pairwise intersections must have zero length.
struct Allocation {
  std::vector<IntervalSet> portions;

  Allocation() = default;
  explicit Allocation(std::size_t n) : portions(n) {}
  explicit Allocation(std::vector<IntervalSet> p) : portions(std::move(p)) {}

  [[nodiscard]] std::size_t size() const { return portions.size(); }
  [[nodiscard]] IntervalSet covered() const;
  /// Pairwise disjoint up to measure zero.
  [[nodiscard]] bool is_disjoint() const;
  [[nodiscard]] bool covers_cake() const { return covered() == IntervalSet::whole(); }

  friend bool operator==(const Allocation&, const Allocation&) = default;
};

/// entries[i][j] = u_i(A_j).
struct EquityTable {
  std::vector<std::vector<Rational>> entries;

  [[nodiscard]] std::size_t size() const { return entries.size(); }
  [[nodiscard]] const Rational& at(std::size_t i, std::size_t j) const { return entries[i][j]; }
  [[nodiscard]] std::vector<Rational> diagonal() const;
  [[nodiscard]] std::string str() const;  // the n x n matrix, one row per line

  friend bool operator==(const EquityTable&, const EquityTable&) = default;
};

/// Throws Error{DimensionMismatch} when the counts differ.
EquityTable equity_table(std::span<const Valuation> valuations, const Allocation& allocation);

bool is_proportional(const EquityTable& table);
bool is_envy_free(const EquityTable& table);
bool is_equitable(const EquityTable& table);

/// No positive-length part of a portion is worthless to its owner but valued
/// by another agent. Unallocated cake is reported by uncovered_valued_cake.
bool is_non_wasteful(std::span<const Valuation> valuations, const Allocation& allocation);

/// Cake outside every portion that some agent values.
IntervalSet uncovered_valued_cake(std::span<const Valuation> valuations, const Allocation& allocation);

Rational utilitarian_efficiency(const EquityTable& table);
Rational egalitarian_efficiency(const EquityTable& table);

/// a's own-portion utilities weakly dominate b's with at least one strict gain.
bool pareto_dominates(std::span<const Valuation> valuations, const Allocation& a, const Allocation& b);

/// u_i(A_i) == u_i(B_i) for every agent.
bool utilitarian_equivalent(std::span<const Valuation> valuations, const Allocation& a, const Allocation& b);

/// Own-portion utilities u_i(A_i).
std::vector<Rational> utilities(std::span<const Valuation> valuations, const Allocation& allocation);

}  // namespace cake
