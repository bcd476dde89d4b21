// Acceptance run: one [PASS]/[FAIL] line per criterion, exit status 1 if any fail.

#include "cake/allocation.hpp"
#include "cake/equilibrium.hpp"
#include "cake/generator.hpp"
#include "cake/lp.hpp"
#include "cake/optimal.hpp"
#include "cake/rw_mechanisms.hpp"
#include "cake/uniform_mechanisms.hpp"

#include <chrono>
#include <cmath>
#include <functional>
#include <optional>
#include <iostream>
#include <sstream>
#include <string>

using namespace cake;

namespace {

using Clock = std::chrono::steady_clock;

Rational q(const char* s) { return Rational::parse(s); }

IntervalSet span_of(const char* lo, const char* hi) { return IntervalSet::single(q(lo), q(hi)); }

Valuation uniform(const char* lo, const char* hi) { return Valuation::uniform_on(span_of(lo, hi)); }

bool table_is(const EquityTable& t, const std::vector<std::vector<const char*>>& want) {
  if (t.size() != want.size()) return false;
  for (std::size_t i = 0; i < want.size(); ++i)
    for (std::size_t j = 0; j < want.size(); ++j)
      if (t.at(i, j) != q(want[i][j])) return false;
  return true;
}

struct Outcome {
  bool pass = true;
  std::string detail;
};

int failures = 0;

void report(int k, const std::string& title, const std::function<Outcome()>& body) {
  const auto start = Clock::now();
  Outcome o;
  try {
    o = body();
  } catch (const std::exception& e) {
    o = {false, std::string("exception: ") + e.what()};
  }
  const double secs = std::chrono::duration<double>(Clock::now() - start).count();
  if (!o.pass) ++failures;
  std::cout << (o.pass ? "[PASS]" : "[FAIL]") << " criterion " << k << ": " << title;
  if (!o.detail.empty()) std::cout << " (" << o.detail << ")";
  std::cout << " [" << secs << " s]" << std::endl;
}

std::size_t log2_ceil(std::size_t n) {
  std::size_t k = 0;
  while ((std::size_t{1} << k) < n) ++k;
  return k;
}

Outcome golden_tables() {
  const auto start = Clock::now();
  bool ok = true;
  {
    const std::vector<Valuation> v{uniform("0", "0.1"), uniform("0.4", "1"), uniform("0.4", "1")};
    const Allocation a({span_of("0", "0.1"), span_of("0.4", "0.8"), span_of("0.8", "1")});
    ok &= table_is(equity_table(v, a), {{"1", "0", "0"}, {"0", "2/3", "1/3"}, {"0", "2/3", "1/3"}});
  }
  {
    const std::vector<Valuation> v{uniform("0", "0.5"), uniform("0.5", "1")};
    const Allocation a({IntervalSet(), span_of("0.5", "1")});
    ok &= table_is(equity_table(v, a), {{"0", "0"}, {"0", "1"}});
  }
  {
    const std::vector<Valuation> v{uniform("0", "0.6"), uniform("0.4", "1")};
    const Allocation a({span_of("0.5", "1"), span_of("0", "0.5")});
    ok &= table_is(equity_table(v, a), {{"1/6", "5/6"}, {"5/6", "1/6"}});
  }
  {
    const std::vector<Valuation> v{uniform("0", "1"), uniform("2/5", "1"), uniform("4/5", "1")};
    const MechanismResult r = last_diminisher(sincere_oracles(v));
    ok &= r.allocation == Allocation({span_of("0", "1/3"), span_of("5/15", "9/15"), span_of("9/15", "1")});
    ok &= table_is(equity_table(v, r.allocation), {{"1/3", "4/15", "2/5"}, {"0", "1/3", "2/3"}, {"0", "0", "1"}});
  }
  const double secs = std::chrono::duration<double>(Clock::now() - start).count();
  return {ok && secs < 1.0, ok ? "" : "table mismatch"};
}

Outcome equity_properties() {
  Rng rng(2);
  std::size_t violations = 0;
  for (int t = 0; t < 1000; ++t) {
    const auto v2 = random_constant_valuations(rng, 2);
    const EquityTable cc = equity_table(v2, cut_and_choose(sincere_oracles(v2)).allocation);
    if (!is_envy_free(cc) || !is_proportional(cc)) ++violations;

    const auto v3 = random_constant_valuations(rng, 3);
    if (!is_envy_free(equity_table(v3, selfridge(sincere_oracles(v3)).allocation))) ++violations;

    const auto n = static_cast<std::size_t>(rng.between(2, 6));
    const auto vn = random_constant_valuations(rng, n);
    if (!is_proportional(equity_table(vn, last_diminisher(sincere_oracles(vn)).allocation))) ++violations;
    if (!is_proportional(equity_table(vn, even_paz(sincere_oracles(vn)).allocation))) ++violations;
  }
  return {violations == 0, std::to_string(violations) + " violations"};
}

// 1000 random instances; for each, a random cut of the cake into grid slices
// is handed out in every possible way.
Outcome envy_free_implies_proportional() {
  Rng rng(3);
  std::size_t counter = 0, envy_free = 0, total = 0;
  for (int t = 0; t < 1000; ++t) {
    const auto n = static_cast<std::size_t>(rng.between(2, 3));
    const auto v = random_constant_valuations(rng, n, 8, 3);
    std::vector<Interval> slices;
    Rational lo;
    while (lo < 1) {
      const Rational hi = min(Rational(1), lo + Rational(static_cast<long>(rng.between(1, 4)), 8));
      slices.push_back({lo, hi});
      lo = hi;
    }
    std::vector<std::size_t> owner(slices.size(), 0);
    while (true) {
      Allocation a(n);
      for (std::size_t k = 0; k < slices.size(); ++k) {
        a.portions[owner[k]] = a.portions[owner[k]].unite(IntervalSet::single(slices[k].lo, slices[k].hi));
      }
      const EquityTable table = equity_table(v, a);
      ++total;
      if (is_envy_free(table)) {
        ++envy_free;
        if (!is_proportional(table)) ++counter;
      }
      std::size_t k = 0;
      while (k < owner.size() && ++owner[k] == n) owner[k++] = 0;
      if (k == owner.size()) break;
    }
  }
  return {counter == 0, std::to_string(total) + " allocations, " + std::to_string(envy_free) + " envy-free, " +
                            std::to_string(counter) + " counterexamples"};
}

Outcome query_complexity() {
  Rng rng(4);
  bool ok = true;
  std::ostringstream detail;
  for (std::size_t n = 2; n <= 128; ++n) {
    const auto prefs = random_uniform_preferences(rng, n);
    const std::size_t total = even_paz(sincere_oracles(valuations_of(prefs))).transcript.total();
    if (total > 3 * n * log2_ceil(n)) {
      ok = false;
      detail << "even-paz n=" << n << " used " << total << "; ";
    }
  }
  auto ld = [&](std::size_t n) {
    const auto prefs = random_uniform_preferences(rng, n);
    return static_cast<double>(last_diminisher(sincere_oracles(valuations_of(prefs))).transcript.total());
  };
  for (std::size_t n : {16, 32, 64}) {
    const double ratio = ld(2 * n) / ld(n);
    detail << "ld q(" << 2 * n << ")/q(" << n << ")=" << ratio << " ";
    if (ratio < 3.5 || ratio > 4.5) ok = false;
  }
  return {ok, detail.str()};
}

// Exhaustive segment -> agent assignments; only called on small instances.
Rational brute_force_ue(const std::vector<Valuation>& v) {
  const Segmentation seg = segment(v);
  const SegmentRateMatrix m = segment_rates(v, seg);
  const std::size_t n = v.size(), s = seg.size();
  std::vector<std::vector<Rational>> gain(s, std::vector<Rational>(n));
  for (std::size_t k = 0; k < s; ++k)
    for (std::size_t i = 0; i < n; ++i) gain[k][i] = m.rate[i][k] * seg.segment(k).length();
  Rational best = -1;
  std::vector<std::size_t> pick(s, 0);
  while (true) {
    Rational total;
    for (std::size_t k = 0; k < s; ++k) total += gain[k][pick[k]];
    if (total > best) best = total;
    std::size_t k = 0;
    while (k < s && ++pick[k] == n) pick[k++] = 0;
    if (k == s) break;
  }
  return best;
}

Outcome utilitarian_cross_oracle() {
  Rng rng(5);
  const long denoms[] = {4, 8, 16, 32, 64};
  std::size_t mismatches = 0, brute = 0;
  for (int t = 0; t < 500; ++t) {
    const auto n = static_cast<std::size_t>(rng.between(1, 5));
    const long d = denoms[rng.between(0, 4)];
    const auto v = random_constant_valuations(rng, n, d, static_cast<int>(rng.between(1, 3)));
    const Rational direct = utilitarian_efficiency(equity_table(v, utilitarian_optimal(v)));
    const Rational lp = max_ue(v, FairnessConstraint::None).value;
    if (direct != lp) ++mismatches;
    const std::size_t s = segment(v).size();
    if (s <= 12 && std::pow(static_cast<double>(n), static_cast<double>(s)) <= 2e5) {
      ++brute;
      if (brute_force_ue(v) != lp) ++mismatches;
    }
  }
  return {mismatches == 0, std::to_string(mismatches) + " mismatches, " + std::to_string(brute) + " brute-forced"};
}

Outcome efficiency_examples() {
  const std::vector<Valuation> v{uniform("0", "0.5"), uniform("0.5", "1"), uniform("0", "1")};
  const Rational ue = utilitarian_efficiency(equity_table(v, utilitarian_optimal(v)));
  const Rational ee = max_ee(v).value;
  const Allocation known_ee({span_of("0", "0.25"), span_of("0.75", "1"), span_of("0.25", "0.75")});
  const bool ok = ue == 2 && ee == q("1/2") && egalitarian_efficiency(equity_table(v, known_ee)) == ee;
  return {ok, "UE=" + ue.str() + " EE=" + ee.str()};
}

Outcome price_of_proportionality() {
  // m = sqrt(n) = 2 agents own disjoint halves, the other n - m value the whole cake.
  const std::vector<Valuation> v{uniform("0", "1/2"), uniform("1/2", "1"), uniform("0", "1"), uniform("0", "1")};
  const Rational free = max_ue(v, FairnessConstraint::None).value;
  const Rational ratio = price_of(v, FairnessConstraint::Proportional);
  return {free == 2 && ratio >= 1 && ratio <= 3, "UE*=" + free.str() + " ratio=" + ratio.str()};
}

struct EquilibriumStats {
  std::size_t failures = 0;
  std::size_t pareto_failures = 0;
  std::size_t non_converged_instances = 0;
  std::size_t instances = 0;
  bool ran = false;
};

EquilibriumStats& equilibrium_stats() {
  static EquilibriumStats st;
  if (st.ran) return st;
  st.ran = true;
  Rng rng(8);
  for (int t = 0; t < 500; ++t) {
    const auto n = static_cast<std::size_t>(rng.between(1, 6));
    const auto prefs = random_uniform_preferences(rng, n, 32, 3);
    const auto vals = valuations_of(prefs);
    const Allocation mech = mechanism_procaccia(prefs);
    const ReducedProfile red = reduce_profile(Profile{mech.portions});
    ++st.instances;
    bool ok = is_equilibrium(prefs, red).is_equilibrium;
    for (std::size_t i = 0; i < n && ok; ++i) ok = best_response(prefs, red.profile, i).utility_gain == 0;
    if (!ok) {
      ++st.failures;
      continue;
    }
    if (!pareto_oracle(vals, length_game(red.profile))) ++st.pareto_failures;
    bool converged_all = true;
    for (int s = 0; s < 5; ++s) {
      const DynamicsResult dyn = best_response_dynamics(prefs, random_well_behaved_profile(rng, prefs, 32));
      if (!dyn.converged) {
        converged_all = false;
        continue;
      }
      const Allocation fix = length_game(dyn.profile);
      if (!pareto_oracle(vals, fix)) ++st.pareto_failures;
      if (!utilitarian_equivalent(vals, fix, mech)) {
        ++st.failures;
        break;
      }
    }
    if (!converged_all) ++st.non_converged_instances;
  }
  return st;
}

// Non-convergence is logged rather than failed. Above 5% it calls for an
// explanation: in chains of overlapping agents the exact equilibrium is only a
// limit of improving moves, because the index tie-break stops a middle agent
// from matching a lower-indexed neighbour's length exactly.
Outcome equilibrium_correspondence() {
  const EquilibriumStats& st = equilibrium_stats();
  const double rate = 100.0 * static_cast<double>(st.non_converged_instances) / static_cast<double>(st.instances);
  std::cout << "  note: dynamics did not converge within 100n rounds from some start on " << st.non_converged_instances
            << " of " << st.instances << " instances (" << rate << "%)";
  if (rate >= 5.0) std::cout << "; above 5%, see README (best-response dynamics)";
  std::cout << std::endl;
  return {st.failures == 0, std::to_string(st.failures) + " failures"};
}

Outcome equilibria_pareto() {
  const EquilibriumStats& st = equilibrium_stats();
  return {st.pareto_failures == 0, std::to_string(st.pareto_failures) + " not pareto"};
}

Outcome truthfulness() {
  Rng rng(10);
  std::size_t gains = 0, tried = 0;
  for (int t = 0; t < 200; ++t) {
    const auto n = static_cast<std::size_t>(rng.between(2, 5));
    const auto prefs = random_uniform_preferences(rng, n, 32, 3);
    const Allocation truthful = mechanism_procaccia(prefs);
    for (int d = 0; d < 20; ++d) {
      const auto i = static_cast<std::size_t>(rng.between(0, static_cast<std::int64_t>(n) - 1));
      const Profile lie = random_well_behaved_profile(rng, std::span(&prefs[i], 1), 32);
      if (lie.strategies[0].empty()) continue;
      std::vector<UniformPreference> reported = prefs;
      reported[i] = UniformPreference(lie.strategies[0]);
      ++tried;
      const Allocation out = mechanism_procaccia(reported);
      if (prefs[i].utility(out.portions[i]) > prefs[i].utility(truthful.portions[i])) ++gains;
    }
  }
  return {gains == 0, std::to_string(tried) + " deviations, " + std::to_string(gains) + " improving"};
}

Outcome min_avg_oracle() {
  Rng rng(11);
  std::size_t mismatches = 0;
  for (int t = 0; t < 200; ++t) {
    const auto n = static_cast<std::size_t>(rng.between(1, 12));
    const auto prefs = random_uniform_preferences(rng, n, 32, 3);
    const AgentSubset all = (AgentSubset{1} << n) - 1;
    const IntervalSet x = IntervalSet::whole();
    std::optional<Rational> best;
    for (AgentSubset s = 1; s <= all; ++s) {
      const Rational a = average_share(prefs, s, x);
      if (!best || a < *best) best = a;
    }
    const AgentSubset got = min_avg_subset(prefs, all, x);
    if (got == 0 || (got & ~all) != 0 || average_share(prefs, got, x) != *best) ++mismatches;
  }
  return {mismatches == 0, std::to_string(mismatches) + " mismatches"};
}

}  // namespace

int main() {
  report(1, "golden equity tables", golden_tables);
  report(2, "mechanism equity guarantees on random step densities", equity_properties);
  report(3, "envy-free implies proportional on full allocations", envy_free_implies_proportional);
  report(4, "query complexity of Even-Paz and Last Diminisher", query_complexity);
  report(5, "utilitarian optimum agrees with LP and brute force", utilitarian_cross_oracle);
  report(6, "efficiency example UE=2, EE=1/2", efficiency_examples);
  report(7, "price of proportionality instance", price_of_proportionality);
  report(8, "min-average mechanism yields Length Game equilibria", equilibrium_correspondence);
  report(9, "certified equilibria are Pareto efficient", equilibria_pareto);
  report(10, "no improving misreport of the min-average mechanism", truthfulness);
  report(11, "min-average subset matches exhaustive search", min_avg_oracle);
  std::cout << (failures == 0 ? "all criteria passed" : std::to_string(failures) + " criteria failed") << std::endl;
  return failures == 0 ? 0 : 1;
}
