#include "cake/equilibrium.hpp"

#include "cake/error.hpp"

#include <algorithm>
#include <optional>

namespace cake {

ReducedProfile reduce_profile(const Profile& profile) {
  return {Profile{length_game(profile).portions}, true};
}

bool is_reduced(const Profile& profile) { return length_game(profile).portions == profile.strategies; }

IntervalSet uncontested_region(std::span<const UniformPreference> prefs, std::size_t agent) {
  IntervalSet others;
  for (std::size_t j = 0; j < prefs.size(); ++j) {
    if (j != agent) others = others.unite(prefs[j].valued());
  }
  return prefs[agent].valued().difference(others);
}

Rational length_game_utility(std::span<const UniformPreference> prefs, const Profile& profile, std::size_t agent) {
  return prefs[agent].utility(length_game(profile).portions[agent]);
}

namespace {

// Cake that goes to agents served before `agent` when it claims length `len`:
// shorter claims come first and equal lengths are served in index order.
IntervalSet served_before(const Profile& profile, std::size_t agent, const Rational& len, bool at_point) {
  IntervalSet b;
  for (std::size_t j = 0; j < profile.size(); ++j) {
    if (j == agent) continue;
    const Rational lj = profile.strategies[j].length();
    if (lj < len || (at_point && lj == len && j < agent) || (!at_point && lj == len)) {
      b = b.unite(profile.strategies[j]);
    }
  }
  return b;
}

}  // namespace

BestResponse best_response(std::span<const UniformPreference> prefs, const Profile& profile, std::size_t agent) {
  if (agent >= prefs.size() || prefs.size() != profile.size()) {
    throw Error(ErrorCode::DimensionMismatch, "agent or profile size does not match preferences");
  }
  const IntervalSet& own = prefs[agent].valued();
  const Rational current = length_game_utility(prefs, profile, agent);
  const Rational current_len = current * own.length();

  // A claim of length L wins min(L, |P_i \ B(L)|), and the best claim of that
  // length is any L-long subset of P_i \ B(L). B only changes at the other
  // agents' lengths, so walk the points t_k and the open gaps between them.
  std::vector<Rational> ts{Rational(0)};
  for (std::size_t j = 0; j < profile.size(); ++j) {
    if (j != agent) ts.push_back(profile.strategies[j].length());
  }
  std::sort(ts.begin(), ts.end());
  ts.erase(std::unique(ts.begin(), ts.end()), ts.end());

  Rational best_len;       // largest feasible length found so far
  bool best_at_point = true;
  for (std::size_t k = 0; k < ts.size(); ++k) {
    const Rational& a = ts[k];
    if (own.difference(served_before(profile, agent, a, true)).length() >= a && a >= best_len) {
      best_len = a;
      best_at_point = true;
    }
    // Open gap (a, b); past the last length the gap is unbounded.
    const Rational free = own.difference(served_before(profile, agent, a, false)).length();
    if (free <= a) continue;
    if (k + 1 == ts.size() || free < ts[k + 1]) {
      best_len = free;
      best_at_point = false;
      continue;
    }
    // The whole gap is feasible but its top end b may not be: the supremum
    // is not attained, so stop just short of b (and beyond the current claim).
    const Rational& b = ts[k + 1];
    Rational near = b - (b - a) / Rational(1024);
    if (current_len >= near && current_len < b) near = (current_len + b) / Rational(2);
    best_len = near;
    best_at_point = false;
  }

  BestResponse best{profile.strategies[agent], current, Rational(0)};
  const IntervalSet room = own.difference(served_before(profile, agent, best_len, best_at_point));
  IntervalSet claim = room.prefix(best_len);
  Profile trial = profile;
  trial.strategies[agent] = claim;
  const Rational u = length_game_utility(prefs, trial, agent);
  if (u > current) {
    best.strategy = std::move(claim);
    best.utility = u;
    best.utility_gain = u - current;
  }
  return best;
}

EquilibriumReport is_equilibrium(std::span<const UniformPreference> prefs, const ReducedProfile& reduced) {
  const Profile& s = reduced.profile;
  if (!s.well_behaved(prefs)) throw Error(ErrorCode::NotWellBehaved, "some strategy is not inside its preference");
  if (!reduced.certified_reduced || !is_reduced(s)) throw Error(ErrorCode::NotReduced, "profile is not reduced");

  EquilibriumReport report;
  auto flag = [&](EquilibriumViolation v, std::size_t deviator) {
    report.is_equilibrium = false;
    report.violation = std::move(v);
    report.deviating_agent = deviator;
    BestResponse br = best_response(prefs, s, deviator);
    if (br.utility_gain.sign() > 0) report.improving_strategy = std::move(br.strategy);
  };

  IntervalSet claimed, valued;
  for (std::size_t i = 0; i < s.size(); ++i) {
    claimed = claimed.unite(s.strategies[i]);
    valued = valued.unite(prefs[i].valued());
  }
  const IntervalSet missing = valued.difference(claimed);
  if (!missing.empty()) {
    std::size_t who = 0;
    while (who < prefs.size() && !prefs[who].valued().overlaps(missing)) ++who;
    flag(UnallocatedValuedCake{missing}, who);
    return report;
  }

  for (std::size_t i = 0; i < s.size(); ++i) {
    for (std::size_t j = 0; j < s.size(); ++j) {
      if (i == j) continue;
      IntervalSet meet = s.strategies[i].intersect(prefs[j].valued());
      if (!meet.empty() && s.strategies[j].length() < s.strategies[i].length()) {
        flag(LengthOrderViolation{i, j, std::move(meet)}, j);
        return report;
      }
    }
  }
  return report;
}

namespace {

// Moves made by the dynamics live on the grid (1/g)Z. g is the lcm of every
// endpoint denominator in the instance and the start, multiplied by lcm(1..n),
// so every equal-share length |region|/k an equilibrium can need is on it.
mpz_class dynamics_grid(std::span<const UniformPreference> prefs, const Profile& start) {
  mpz_class g = 1;
  auto fold = [&](const IntervalSet& s) {
    for (const auto& iv : s.intervals()) {
      mpz_lcm(g.get_mpz_t(), g.get_mpz_t(), iv.lo.den().get_mpz_t());
      mpz_lcm(g.get_mpz_t(), g.get_mpz_t(), iv.hi.den().get_mpz_t());
    }
  };
  for (const auto& p : prefs) fold(p.valued());
  for (const auto& s : start.strategies) fold(s);
  mpz_class shares = 1;
  for (unsigned long k = 2; k <= prefs.size(); ++k) mpz_lcm_ui(shares.get_mpz_t(), shares.get_mpz_t(), k);
  return g * shares;
}

Rational floor_to(const Rational& x, const mpz_class& g) {
  return Rational(mpq_class((x * Rational(mpq_class(g))).floor(), g));
}

// An improving grid claim for the dynamics, or nothing. First choice is the
// levelling claim: agent i keeps the cake no one else claims and drains
// S_j ∩ P_i from each longer claimant j while |S_j| - x_j >= L, where
//   L = free + sum_j min(c_j, max(0, |S_j| - L)),
// rounded down to the grid. Failing that, the largest grid length that still
// wins (one grid step under a length it would lose the tie at).
std::optional<IntervalSet> dynamics_move(std::span<const UniformPreference> prefs, const Profile& profile,
                                         std::size_t agent, const mpz_class& g) {
  const IntervalSet& own = prefs[agent].valued();
  const Rational current = length_game_utility(prefs, profile, agent);
  Profile trial = profile;
  auto improves = [&](const IntervalSet& claim) {
    trial.strategies[agent] = claim;
    return length_game_utility(prefs, trial, agent) > current;
  };

  IntervalSet others;
  std::vector<std::pair<Rational, IntervalSet>> victims;  // (|S_j|, S_j ∩ P_i)
  for (std::size_t j = 0; j < profile.size(); ++j) {
    if (j == agent) continue;
    others = others.unite(profile.strategies[j]);
    IntervalSet take = profile.strategies[j].intersect(own);
    if (!take.empty()) victims.emplace_back(profile.strategies[j].length(), std::move(take));
  }
  const IntervalSet free = own.difference(others);

  auto excess = [&](const Rational& len) {
    Rational f = free.length() - len;
    for (const auto& [l, take] : victims) {
      if (l > len) f += min(take.length(), l - len);
    }
    return f;
  };
  // excess() is strictly decreasing and linear between these breakpoints.
  std::vector<Rational> breaks{Rational(0), own.length()};
  for (const auto& [l, take] : victims) {
    breaks.push_back(l);
    breaks.push_back(max(Rational(0), l - take.length()));
  }
  std::sort(breaks.begin(), breaks.end());
  breaks.erase(std::unique(breaks.begin(), breaks.end()), breaks.end());
  std::size_t k = 0;
  while (k + 1 < breaks.size() && excess(breaks[k + 1]).sign() >= 0) ++k;
  Rational level = breaks[k];
  if (k + 1 < breaks.size()) {
    const Rational lo = excess(breaks[k]), hi = excess(breaks[k + 1]);
    level += (breaks[k + 1] - breaks[k]) * lo / (lo - hi);
  }
  level = floor_to(level, g);

  // Exactly `level` long: free cake first, then the drainable part of each victim.
  IntervalSet claim = free.prefix(min(level, free.length()));
  Rational need = level - claim.length();
  for (const auto& [l, take] : victims) {
    if (need.sign() <= 0) break;
    if (l <= level) continue;
    const Rational x = min(need, min(take.length(), l - level));
    claim = claim.unite(take.prefix(x));
    need -= x;
  }
  if (improves(claim)) return claim;

  const BestResponse br = best_response(prefs, profile, agent);
  if (br.utility_gain.sign() <= 0) return std::nullopt;
  // The exact reply may sit strictly inside a grid cell; step down to the grid.
  const Rational len = floor_to(br.strategy.length(), g);
  IntervalSet snapped = br.strategy.prefix(len);
  if (improves(snapped)) return snapped;
  const Rational under = floor_to(br.strategy.length() - Rational(mpq_class(1, g)) / 2, g);
  snapped = br.strategy.prefix(under);
  if (improves(snapped)) return snapped;
  return std::nullopt;
}

}  // namespace

DynamicsResult best_response_dynamics(std::span<const UniformPreference> prefs, const Profile& start,
                                      std::size_t max_rounds) {
  const std::size_t n = prefs.size();
  if (max_rounds == 0) max_rounds = 100 * std::max<std::size_t>(n, 1);
  DynamicsResult r{reduce_profile(start).profile};
  const mpz_class g = dynamics_grid(prefs, r.profile);
  while (r.rounds < max_rounds) {
    ++r.rounds;
    bool moved = false;
    for (std::size_t i = 0; i < n; ++i) {
      auto move = dynamics_move(prefs, r.profile, i, g);
      if (!move) continue;
      r.profile.strategies[i] = std::move(*move);
      r.profile = reduce_profile(r.profile).profile;
      moved = true;
      ++r.moves;
    }
    if (!moved) {
      // A grid fixpoint only counts if it is an exact equilibrium.
      r.converged = is_equilibrium(prefs, ReducedProfile{r.profile, true}).is_equilibrium;
      break;
    }
  }
  return r;
}

}  // namespace cake
