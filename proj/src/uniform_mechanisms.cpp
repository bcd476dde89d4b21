#include "cake/uniform_mechanisms.hpp"

#include "cake/error.hpp"

#include <algorithm>
#include <bit>
#include <deque>
#include <numeric>
#include <optional>

namespace cake {

UniformPreference::UniformPreference(IntervalSet valued) : valued_(std::move(valued)) {
  if (valued_.length().is_zero()) throw Error(ErrorCode::ZeroMass, "uniform preference on an empty set");
}

std::vector<UniformPreference> uniform_preferences(std::span<const Valuation> valuations) {
  std::vector<UniformPreference> out;
  out.reserve(valuations.size());
  for (std::size_t i = 0; i < valuations.size(); ++i) {
    if (!valuations[i].is_piecewise_uniform()) {
      throw Error(ErrorCode::UnsupportedValuationClass,
                  "agent " + std::to_string(i) + " is not piecewise uniform");
    }
    out.emplace_back(valuations[i].uniform_set());
  }
  return out;
}

std::vector<Valuation> valuations_of(std::span<const UniformPreference> prefs) {
  std::vector<Valuation> out;
  out.reserve(prefs.size());
  for (const auto& p : prefs) out.push_back(p.valuation());
  return out;
}

bool Profile::well_behaved(std::span<const UniformPreference> prefs) const {
  if (prefs.size() != strategies.size()) return false;
  for (std::size_t i = 0; i < strategies.size(); ++i) {
    if (!strategies[i].subset_of(prefs[i].valued())) return false;
  }
  return true;
}

Allocation lex_order(const Profile& profile, const AgentOrder& order) {
  const std::size_t n = profile.size();
  std::vector<bool> seen(n, false);
  if (order.size() != n) throw Error(ErrorCode::DimensionMismatch, "order length differs from profile");
  for (std::size_t i : order) {
    if (i >= n || seen[i]) throw Error(ErrorCode::DimensionMismatch, "order is not a permutation");
    seen[i] = true;
  }
  Allocation a(n);
  IntervalSet claimed;
  for (std::size_t i : order) {
    a.portions[i] = profile.strategies[i].difference(claimed);
    claimed = claimed.unite(profile.strategies[i]);
  }
  return a;
}

AgentOrder length_game_order(const Profile& profile) {
  std::vector<std::pair<Rational, std::size_t>> keyed;
  keyed.reserve(profile.size());
  for (std::size_t i = 0; i < profile.size(); ++i) keyed.emplace_back(profile.strategies[i].length(), i);
  std::sort(keyed.begin(), keyed.end());
  AgentOrder order;
  order.reserve(keyed.size());
  for (auto& k : keyed) order.push_back(k.second);
  return order;
}

Allocation length_game(const Profile& profile) { return lex_order(profile, length_game_order(profile)); }

std::vector<std::size_t> members(AgentSubset subset) {
  std::vector<std::size_t> out;
  for (std::size_t i = 0; subset != 0; ++i, subset >>= 1) {
    if (subset & 1U) out.push_back(i);
  }
  return out;
}

IntervalSet valued_region(std::span<const UniformPreference> prefs, AgentSubset subset, const IntervalSet& x) {
  IntervalSet d;
  for (std::size_t i : members(subset)) d = d.unite(prefs[i].valued().intersect(x));
  return d;
}

Rational average_share(std::span<const UniformPreference> prefs, AgentSubset subset, const IntervalSet& x) {
  if (subset == 0) throw Error(ErrorCode::EmptySubset, "average share of an empty subset");
  return valued_region(prefs, subset, x).length() / Rational(std::popcount(subset));
}

AgentSubset min_avg_subset(std::span<const UniformPreference> prefs, AgentSubset agents, const IntervalSet& x) {
  if (agents == 0) throw Error(ErrorCode::EmptySubset, "no agents to choose from");
  std::vector<IntervalSet> local(prefs.size());
  for (std::size_t i : members(agents)) local[i] = prefs[i].valued().intersect(x);

  std::optional<AgentSubset> best;
  Rational best_avg;
  // Walk every non-empty submask of `agents`.
  for (AgentSubset s = agents;; s = (s - 1) & agents) {
    if (s == 0) break;
    IntervalSet d;
    for (std::size_t i : members(s)) d = d.unite(local[i]);
    const Rational avg = d.length() / Rational(std::popcount(s));
    bool better = !best.has_value() || avg < best_avg;
    if (!better && avg == best_avg) {
      const int cs = std::popcount(s), cb = std::popcount(*best);
      better = cs < cb || (cs == cb && members(s) < members(*best));
    }
    if (better) {
      best = s;
      best_avg = avg;
    }
  }
  return *best;
}

namespace {

// Edmonds-Karp on the agent/atom bipartite network with exact capacities.
// Returns flow[agent_slot][atom], or nullopt when the quotas cannot all be met.
std::optional<std::vector<std::vector<Rational>>> max_flow_assignment(
    const std::vector<std::vector<bool>>& values, const std::vector<Rational>& atom_len, const Rational& quota) {
  const std::size_t k = values.size();
  const std::size_t m = atom_len.size();
  const std::size_t source = 0, sink = 1 + k + m, nodes = sink + 1;
  std::vector<std::vector<Rational>> cap(nodes, std::vector<Rational>(nodes));
  for (std::size_t i = 0; i < k; ++i) {
    cap[source][1 + i] = quota;
    for (std::size_t t = 0; t < m; ++t) {
      if (values[i][t]) cap[1 + i][1 + k + t] = atom_len[t];
    }
  }
  for (std::size_t t = 0; t < m; ++t) cap[1 + k + t][sink] = atom_len[t];

  std::vector<std::vector<Rational>> flow(nodes, std::vector<Rational>(nodes));
  Rational total;
  while (true) {
    std::vector<std::ptrdiff_t> parent(nodes, -1);
    parent[source] = static_cast<std::ptrdiff_t>(source);
    std::deque<std::size_t> frontier{source};
    while (!frontier.empty() && parent[sink] < 0) {
      const std::size_t u = frontier.front();
      frontier.pop_front();
      for (std::size_t v = 0; v < nodes; ++v) {
        if (parent[v] < 0 && (cap[u][v] - flow[u][v]).sign() > 0) {
          parent[v] = static_cast<std::ptrdiff_t>(u);
          frontier.push_back(v);
        }
      }
    }
    if (parent[sink] < 0) break;
    Rational push;
    bool first = true;
    for (std::size_t v = sink; v != source; v = static_cast<std::size_t>(parent[v])) {
      const auto u = static_cast<std::size_t>(parent[v]);
      const Rational residual = cap[u][v] - flow[u][v];
      if (first || residual < push) push = residual;
      first = false;
    }
    for (std::size_t v = sink; v != source; v = static_cast<std::size_t>(parent[v])) {
      const auto u = static_cast<std::size_t>(parent[v]);
      flow[u][v] += push;
      flow[v][u] -= push;
    }
    total += push;
  }
  if (total != quota * Rational(static_cast<long>(k))) return std::nullopt;

  std::vector<std::vector<Rational>> out(k, std::vector<Rational>(m));
  for (std::size_t i = 0; i < k; ++i) {
    for (std::size_t t = 0; t < m; ++t) {
      if (flow[1 + i][1 + k + t].sign() > 0) out[i][t] = flow[1 + i][1 + k + t];
    }
  }
  return out;
}

// Left-to-right greedy: each atom goes to the unfilled valuer with the least
// valued cake still ahead of it (ties by index). Succeeds in most cases;
// nullopt when some quota is missed.
std::optional<std::vector<std::vector<Rational>>> greedy_assignment(const std::vector<std::vector<bool>>& values,
                                                                    const std::vector<Rational>& atom_len,
                                                                    const Rational& quota) {
  const std::size_t k = values.size();
  const std::size_t m = atom_len.size();
  std::vector<Rational> supply(k), filled(k);
  for (std::size_t i = 0; i < k; ++i) {
    for (std::size_t t = 0; t < m; ++t) {
      if (values[i][t]) supply[i] += atom_len[t];
    }
  }
  std::vector<std::vector<Rational>> out(k, std::vector<Rational>(m));
  for (std::size_t t = 0; t < m; ++t) {
    Rational left = atom_len[t];
    while (left.sign() > 0) {
      std::optional<std::size_t> pick;
      for (std::size_t i = 0; i < k; ++i) {
        if (!values[i][t] || filled[i] >= quota) continue;
        if (!pick || supply[i] < supply[*pick]) pick = i;
      }
      if (!pick) return std::nullopt;
      const Rational take = min(left, quota - filled[*pick]);
      out[*pick][t] += take;
      filled[*pick] += take;
      left -= take;
      for (std::size_t i = 0; i < k; ++i) {
        if (values[i][t]) supply[i] -= take;
      }
    }
  }
  for (const auto& f : filled) {
    if (f != quota) return std::nullopt;
  }
  return out;
}

}  // namespace

Allocation exact_allocation(std::span<const UniformPreference> prefs, AgentSubset subset, const IntervalSet& x) {
  if (subset == 0) throw Error(ErrorCode::EmptySubset, "exact allocation for an empty subset");
  const auto who = members(subset);
  const IntervalSet region = valued_region(prefs, subset, x);
  const Rational quota = region.length() / Rational(static_cast<long>(who.size()));

  // Atoms: maximal pieces of the region on which the set of valuers is constant.
  std::vector<Rational> marks;
  for (const auto& iv : region.intervals()) {
    marks.push_back(iv.lo);
    marks.push_back(iv.hi);
  }
  for (std::size_t i : who) {
    const IntervalSet local = prefs[i].valued().intersect(x);
    for (const auto& iv : local.intervals()) {
      marks.push_back(iv.lo);
      marks.push_back(iv.hi);
    }
  }
  std::sort(marks.begin(), marks.end());
  marks.erase(std::unique(marks.begin(), marks.end()), marks.end());

  std::vector<Interval> atoms;
  for (std::size_t k = 0; k + 1 < marks.size(); ++k) {
    const IntervalSet piece = IntervalSet::single(marks[k], marks[k + 1]);
    if (piece.subset_of(region)) atoms.push_back({marks[k], marks[k + 1]});
  }
  std::vector<Rational> atom_len;
  atom_len.reserve(atoms.size());
  for (const auto& a : atoms) atom_len.push_back(a.length());

  std::vector<std::vector<bool>> values(who.size(), std::vector<bool>(atoms.size()));
  for (std::size_t s = 0; s < who.size(); ++s) {
    const IntervalSet& p = prefs[who[s]].valued();
    for (std::size_t t = 0; t < atoms.size(); ++t) {
      values[s][t] = IntervalSet::single(atoms[t].lo, atoms[t].hi).subset_of(p);
    }
  }

  auto amounts = greedy_assignment(values, atom_len, quota);
  if (!amounts) amounts = max_flow_assignment(values, atom_len, quota);
  if (!amounts) throw Error(ErrorCode::Infeasible, "no exact allocation: subset does not minimise the average");

  // Within each atom, hand out consecutive stretches in agent order.
  std::vector<std::vector<Interval>> parts(prefs.size());
  for (std::size_t t = 0; t < atoms.size(); ++t) {
    Rational cursor = atoms[t].lo;
    for (std::size_t s = 0; s < who.size(); ++s) {
      const Rational& amount = (*amounts)[s][t];
      if (amount.sign() <= 0) continue;
      parts[who[s]].push_back({cursor, cursor + amount});
      cursor += amount;
    }
  }
  Allocation a(prefs.size());
  for (std::size_t i = 0; i < prefs.size(); ++i) a.portions[i] = IntervalSet(std::move(parts[i]));
  return a;
}

Allocation mechanism_procaccia(std::span<const UniformPreference> prefs, std::vector<ProcacciaRound>* rounds) {
  const std::size_t n = prefs.size();
  if (n > 63) throw Error(ErrorCode::DimensionMismatch, "at most 63 agents supported");
  Allocation result(n);
  AgentSubset remaining = n == 0 ? 0 : (~AgentSubset{0} >> (64 - n));
  IntervalSet cake = IntervalSet::whole();
  while (remaining != 0) {
    const AgentSubset chosen = min_avg_subset(prefs, remaining, cake);
    const Allocation part = exact_allocation(prefs, chosen, cake);
    for (std::size_t i : members(chosen)) result.portions[i] = part.portions[i];
    if (rounds != nullptr) rounds->push_back({chosen, average_share(prefs, chosen, cake)});
    cake = cake.difference(valued_region(prefs, chosen, cake));
    remaining &= ~chosen;
  }
  return result;
}

}  // namespace cake
