#pragma once

// Revelation mechanisms over piecewise uniform preferences.
//
// A piecewise uniform agent is fully described by the set P_i it values;
// its utility for X is |X n P_i| / |P_i|.

#include "cake/allocation.hpp"
#include "cake/interval_set.hpp"

#include <cstdint>
#include <span>
#include <vector>

namespace cake {

class UniformPreference {
public:
  /// Throws Error{ZeroMass} when the set has zero length.
  explicit UniformPreference(IntervalSet valued);

  [[nodiscard]] const IntervalSet& valued() const { return valued_; }
  [[nodiscard]] Rational length() const { return valued_.length(); }
  [[nodiscard]] Rational utility(const IntervalSet& x) const { return x.intersect(valued_).length() / length(); }
  [[nodiscard]] Valuation valuation() const { return Valuation::uniform_on(valued_); }

  friend bool operator==(const UniformPreference&, const UniformPreference&) = default;

private:
  IntervalSet valued_;
};

/// Throws Error{UnsupportedValuationClass} if any valuation is not piecewise uniform.
std::vector<UniformPreference> uniform_preferences(std::span<const Valuation> valuations);
std::vector<Valuation> valuations_of(std::span<const UniformPreference> prefs);

/// Strategies submitted to Lex Order / Length Game, one per agent.
struct Profile {
  std::vector<IntervalSet> strategies;

  [[nodiscard]] std::size_t size() const { return strategies.size(); }
  /// S_i is contained in P_i for every agent.
  [[nodiscard]] bool well_behaved(std::span<const UniformPreference> prefs) const;

  friend bool operator==(const Profile&, const Profile&) = default;
};

/// A permutation of agent indices; earlier agents claim first.
using AgentOrder = std::vector<std::size_t>;

/// A_i = S_i minus everything claimed by agents earlier in `order`.
/// Throws Error{DimensionMismatch} if `order` is not a permutation of the agents.
Allocation lex_order(const Profile& profile, const AgentOrder& order);

/// Lex Order with agents sorted by |S_i| ascending, ties by agent index.
Allocation length_game(const Profile& profile);
AgentOrder length_game_order(const Profile& profile);

/// Agents as a bitmask over indices (bit i = agent i); n <= 63.
using AgentSubset = std::uint64_t;

/// D(subset, x): the part of x valued by at least one agent of the subset.
IntervalSet valued_region(std::span<const UniformPreference> prefs, AgentSubset subset, const IntervalSet& x);
/// |D(subset, x)| / #subset. Throws Error{EmptySubset}.
Rational average_share(std::span<const UniformPreference> prefs, AgentSubset subset, const IntervalSet& x);

/// The subset of `agents` minimising the average share over x; ties go to the
/// smaller subset, then to the lexicographically smallest index list.
/// Exhaustive over all non-empty subsets.
AgentSubset min_avg_subset(std::span<const UniformPreference> prefs, AgentSubset agents, const IntervalSet& x);

/// Gives every agent of the subset a part of its valued cake inside x with
/// length exactly the average share; parts are disjoint and together cover
/// D(subset, x). Portions of agents outside the subset are empty.
/// Throws Error{Infeasible} when no such allocation exists (the subset was
/// not a minimiser).
Allocation exact_allocation(std::span<const UniformPreference> prefs, AgentSubset subset, const IntervalSet& x);

struct ProcacciaRound {
  AgentSubset agents = 0;
  Rational average;
};

/// Repeatedly serves the minimum-average subset with an exact allocation and
/// removes it (and its valued cake) until no agents are left.
Allocation mechanism_procaccia(std::span<const UniformPreference> prefs,
                               std::vector<ProcacciaRound>* rounds = nullptr);

std::vector<std::size_t> members(AgentSubset subset);

}  // namespace cake
