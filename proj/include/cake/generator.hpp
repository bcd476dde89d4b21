#pragma once

// Seeded random instances on a rational grid.
//
// The standard library distributions are implementation-defined, so bounded
// integers are drawn by rejection straight from mt19937_64. The same seed
// then gives the same instance on every platform.

#include "cake/allocation.hpp"
#include "cake/uniform_mechanisms.hpp"

#include <cstdint>
#include <random>

namespace cake {

class Rng {
public:
  explicit Rng(std::uint64_t seed) : engine_(seed) {}

  /// Uniform on {lo, ..., hi}; requires lo <= hi.
  std::int64_t between(std::int64_t lo, std::int64_t hi);
  bool coin() { return between(0, 1) == 1; }

private:
  std::mt19937_64 engine_;
};

/// k ~ uniform{1..max_intervals} disjoint intervals with endpoints on the grid
/// of denominator `denom` (fewer when the grid is too coarse).
UniformPreference random_uniform_preference(Rng& rng, long denom = 64, int max_intervals = 4);
std::vector<UniformPreference> random_uniform_preferences(Rng& rng, std::size_t n, long denom = 64,
                                                          int max_intervals = 4);

/// A step density with 1..max_pieces grid-aligned pieces and integer heights
/// in 0..9 (at least one positive), normalised.
Valuation random_constant_valuation(Rng& rng, long denom = 64, int max_pieces = 4);
std::vector<Valuation> random_constant_valuations(Rng& rng, std::size_t n, long denom = 64, int max_pieces = 4);

/// Cuts the cake at up to max_slices - 1 grid points and hands every slice
/// to a random agent, so the portions cover the whole cake.
Allocation random_full_allocation(Rng& rng, std::size_t n, long denom = 64, int max_slices = 8);

/// S_i a random grid-aligned subset of P_i (possibly empty).
Profile random_well_behaved_profile(Rng& rng, std::span<const UniformPreference> prefs, long denom = 64);

}  // namespace cake
