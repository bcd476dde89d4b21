#pragma once

// Length Game equilibria: profile reduction, the two-condition equilibrium
// test, best responses and best-response dynamics.

#include "cake/uniform_mechanisms.hpp"

#include <optional>
#include <span>
#include <variant>

namespace cake {

/// A profile together with whether it is known to equal its own Length Game
/// allocation.
struct ReducedProfile {
  Profile profile;
  bool certified_reduced = false;
};

/// Replaces every strategy by the portion Length Game gives for it.
ReducedProfile reduce_profile(const Profile& profile);

/// S_i == A_i for every agent under Length Game.
bool is_reduced(const Profile& profile);

/// P_i minus every other agent's P_j.
IntervalSet uncontested_region(std::span<const UniformPreference> prefs, std::size_t agent);

struct UnallocatedValuedCake {
  IntervalSet witness;
};

/// |S_i n P_j| > 0 although |S_i| > |S_j|; the witness is S_i n P_j.
struct LengthOrderViolation {
  std::size_t holder;   // i
  std::size_t claimant; // j
  IntervalSet witness;
};

using EquilibriumViolation = std::variant<UnallocatedValuedCake, LengthOrderViolation>;

struct EquilibriumReport {
  bool is_equilibrium = true;
  std::optional<EquilibriumViolation> violation;
  std::optional<std::size_t> deviating_agent;
  std::optional<IntervalSet> improving_strategy;
};

/// Checks that all valued cake is claimed and that whenever S_i meets P_j
/// (j != i) we have |S_i| <= |S_j|. Reports the first violation found, with
/// an agent that gains by deviating and its best response.
/// Throws Error{NotWellBehaved} or Error{NotReduced} when the preconditions fail.
EquilibriumReport is_equilibrium(std::span<const UniformPreference> prefs, const ReducedProfile& reduced);

struct BestResponse {
  IntervalSet strategy;
  Rational utility;       // u_i under Length Game after playing `strategy`
  Rational utility_gain;  // relative to the current strategy; never negative
};

/// Utility of `agent` when `profile` is played through Length Game.
Rational length_game_utility(std::span<const UniformPreference> prefs, const Profile& profile, std::size_t agent);

/// Best well-behaved deviation for `agent`.
///
/// A claim of length L wins min(L, |P_i \ B(L)|), where B(L) is the cake of
/// everyone served first at that length, and B only changes at the other
/// agents' lengths. Walking those lengths gives the largest winnable L
/// exactly. When that supremum sits just under a length the agent would lose
/// the tie at, it is not attained; the reply then stops 1/1024 of the gap
/// short (or halfway from the current claim, if that is closer). The reply is
/// the first L of P_i \ B(L). The current strategy is kept unless this
/// strictly improves on it.
BestResponse best_response(std::span<const UniformPreference> prefs, const Profile& profile, std::size_t agent);

struct DynamicsResult {
  Profile profile;
  bool converged = false;
  std::size_t rounds = 0;
  std::size_t moves = 0;
};

/// Round-robin improving moves in ascending agent order, reducing the profile
/// after each move. Moves are kept on a grid fine enough for every
/// equal-share length, and an agent levels (drains longer claimants until
/// they keep as much as it claims) whenever that improves, falling back to
/// the best response. Stops after a full round without a move or after
/// `max_rounds` rounds (`0` means 100 * n); `converged` is set only when the
/// final profile passes is_equilibrium.
DynamicsResult best_response_dynamics(std::span<const UniformPreference> prefs, const Profile& start,
                                      std::size_t max_rounds = 0);

}  // namespace cake
