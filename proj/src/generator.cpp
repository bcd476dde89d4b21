#include "cake/generator.hpp"

#include <algorithm>
#include <limits>
#include <set>

namespace cake {

std::int64_t Rng::between(std::int64_t lo, std::int64_t hi) {
  const std::uint64_t span = static_cast<std::uint64_t>(hi - lo) + 1;
  if (span == 0) return static_cast<std::int64_t>(engine_());
  const std::uint64_t limit = std::numeric_limits<std::uint64_t>::max() - std::numeric_limits<std::uint64_t>::max() % span;
  std::uint64_t draw;
  do {
    draw = engine_();
  } while (draw >= limit);
  return lo + static_cast<std::int64_t>(draw % span);
}

namespace {

// `count` distinct sorted grid indices from {0..denom}.
std::vector<long> grid_points(Rng& rng, long denom, std::size_t count) {
  count = std::min<std::size_t>(count, static_cast<std::size_t>(denom) + 1);
  std::set<long> picked;
  while (picked.size() < count) picked.insert(static_cast<long>(rng.between(0, denom)));
  return {picked.begin(), picked.end()};
}

// 0, then up to k - 1 distinct interior grid indices, then denom.
std::vector<long> partition_points(Rng& rng, long denom, std::size_t k) {
  std::vector<long> cuts{0};
  if (denom > 1) {
    for (long c : grid_points(rng, denom - 2, k - 1)) cuts.push_back(c + 1);
  }
  cuts.push_back(denom);
  return cuts;
}

}  // namespace

UniformPreference random_uniform_preference(Rng& rng, long denom, int max_intervals) {
  const auto k = static_cast<std::size_t>(rng.between(1, max_intervals));
  const std::vector<long> pts = grid_points(rng, denom, 2 * k);
  std::vector<Interval> parts;
  for (std::size_t i = 0; i + 1 < pts.size(); i += 2) {
    parts.push_back({Rational(pts[i], denom), Rational(pts[i + 1], denom)});
  }
  return UniformPreference(IntervalSet(std::move(parts)));
}

std::vector<UniformPreference> random_uniform_preferences(Rng& rng, std::size_t n, long denom, int max_intervals) {
  std::vector<UniformPreference> out;
  out.reserve(n);
  for (std::size_t i = 0; i < n; ++i) out.push_back(random_uniform_preference(rng, denom, max_intervals));
  return out;
}

Valuation random_constant_valuation(Rng& rng, long denom, int max_pieces) {
  for (;;) {
    const auto k = static_cast<std::size_t>(rng.between(1, max_pieces));
    const std::vector<long> cuts = partition_points(rng, denom, k);
    std::vector<PieceSpec> pieces;
    bool positive = false;
    for (std::size_t i = 0; i + 1 < cuts.size(); ++i) {
      const long h = static_cast<long>(rng.between(0, 9));
      if (h == 0) continue;
      positive = true;
      pieces.push_back(PieceSpec::constant(Rational(cuts[i], denom), Rational(cuts[i + 1], denom), Rational(h)));
    }
    if (positive) return Valuation::normalize(std::move(pieces));
  }
}

std::vector<Valuation> random_constant_valuations(Rng& rng, std::size_t n, long denom, int max_pieces) {
  std::vector<Valuation> out;
  out.reserve(n);
  for (std::size_t i = 0; i < n; ++i) out.push_back(random_constant_valuation(rng, denom, max_pieces));
  return out;
}

Allocation random_full_allocation(Rng& rng, std::size_t n, long denom, int max_slices) {
  const auto k = static_cast<std::size_t>(rng.between(1, max_slices));
  const std::vector<long> cuts = partition_points(rng, denom, k);
  Allocation a(n);
  for (std::size_t i = 0; i + 1 < cuts.size(); ++i) {
    const auto who = static_cast<std::size_t>(rng.between(0, static_cast<std::int64_t>(n) - 1));
    a.portions[who] = a.portions[who].unite(IntervalSet::single(Rational(cuts[i], denom), Rational(cuts[i + 1], denom)));
  }
  return a;
}

Profile random_well_behaved_profile(Rng& rng, std::span<const UniformPreference> prefs, long denom) {
  Profile p;
  p.strategies.reserve(prefs.size());
  const Rational scale(denom);
  for (const auto& pref : prefs) {
    IntervalSet s;
    for (const auto& iv : pref.valued().intervals()) {
      if (rng.between(0, 3) == 0) continue;  // drop the whole interval now and then
      // Grid points inside the interval (the interval itself may be off-grid).
      const long lo_i = (iv.lo * scale).ceil().get_si();
      const long hi_i = (iv.hi * scale).floor().get_si();
      if (lo_i >= hi_i) {
        if (rng.coin()) s = s.unite(IntervalSet::single(iv.lo, iv.hi));
        continue;
      }
      long a = static_cast<long>(rng.between(lo_i, hi_i));
      long b = static_cast<long>(rng.between(lo_i, hi_i));
      if (a > b) std::swap(a, b);
      if (a == b) continue;
      s = s.unite(IntervalSet::single(Rational(a, denom), Rational(b, denom)));
    }
    p.strategies.push_back(std::move(s));
  }
  return p;
}

}  // namespace cake
