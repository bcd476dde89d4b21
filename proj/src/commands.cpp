#include "cake/commands.hpp"

#include "cake/error.hpp"
#include "cake/generator.hpp"
#include "cake/rw_mechanisms.hpp"

#include <iomanip>
#include <numeric>
#include <sstream>
#include <stdexcept>

namespace cake {

using nlohmann::ordered_json;

namespace {

std::vector<std::string> ids_of(const Scenario& s) {
  std::vector<std::string> ids;
  for (const auto& a : s.agents) ids.push_back(a.id);
  return ids;
}

bool all_piecewise_constant(std::span<const Valuation> v) {
  return std::all_of(v.begin(), v.end(), [](const Valuation& x) { return x.is_piecewise_constant(); });
}

}  // namespace

RunReport audit(std::span<const Valuation> valuations, const Allocation& allocation) {
  RunReport r;
  r.allocation = allocation;
  r.table = equity_table(valuations, allocation);
  r.flags = {is_proportional(r.table), is_envy_free(r.table), is_equitable(r.table),
             is_non_wasteful(valuations, allocation)};
  r.ue = utilitarian_efficiency(r.table);
  r.ee = egalitarian_efficiency(r.table);
  return r;
}

bool is_query_mechanism(const std::string& m) {
  return m == "cut-and-choose" || m == "last-diminisher" || m == "even-paz" || m == "selfridge";
}

MechanismResult run_query_mechanism(const std::string& m, OracleSet oracles) {
  if (m == "cut-and-choose") return cut_and_choose(std::move(oracles));
  if (m == "last-diminisher") return last_diminisher(std::move(oracles));
  if (m == "even-paz") return even_paz(std::move(oracles));
  if (m == "selfridge") return selfridge(std::move(oracles));
  throw Error(ErrorCode::ParseError, "unknown query mechanism '" + m + "'");
}

RunReport cmd_run(const Scenario& s, const std::string& mechanism) {
  const std::vector<Valuation> vals = s.valuations();
  RunReport r;
  std::optional<QueryCounts> counts;
  if (is_query_mechanism(mechanism)) {
    MechanismResult res = run_query_mechanism(mechanism, sincere_oracles(vals));
    counts = QueryCounts{res.transcript.total(), res.transcript.eval_count(), res.transcript.cut_count()};
    r = audit(vals, res.allocation);
  } else if (mechanism == "lex-order" || mechanism == "length-game" || mechanism == "procaccia") {
    const std::vector<UniformPreference> prefs = uniform_preferences(vals);
    Allocation a;
    if (mechanism == "procaccia") {
      a = mechanism_procaccia(prefs);
    } else {
      Profile p;
      if (s.profile) {
        p.strategies = *s.profile;
      } else {
        for (const auto& pr : prefs) p.strategies.push_back(pr.valued());
      }
      if (mechanism == "length-game") {
        a = length_game(p);
      } else {
        AgentOrder order(p.size());
        std::iota(order.begin(), order.end(), 0);
        a = lex_order(p, order);
      }
    }
    r = audit(vals, a);
  } else {
    throw Error(ErrorCode::ParseError, "unknown mechanism '" + mechanism + "'");
  }
  r.command = "run";
  r.mechanism = mechanism;
  r.ids = ids_of(s);
  r.queries = counts;
  if (all_piecewise_constant(vals) && r.allocation.is_disjoint()) r.pareto = pareto_oracle(vals, r.allocation);
  return r;
}

RunReport cmd_audit(const Scenario& s) {
  if (!s.allocation) throw Error(ErrorCode::ParseError, "audit needs an \"allocation\"");
  const std::vector<Valuation> vals = s.valuations();
  RunReport r = audit(vals, *s.allocation);
  r.command = "audit";
  r.ids = ids_of(s);
  if (all_piecewise_constant(vals) && s.allocation->is_disjoint()) r.pareto = pareto_oracle(vals, *s.allocation);
  return r;
}

RunReport cmd_equilibrium(const Scenario& s) {
  const std::vector<Valuation> vals = s.valuations();
  const std::vector<UniformPreference> prefs = uniform_preferences(vals);
  Profile p;
  if (s.profile) {
    p.strategies = *s.profile;
  } else if (s.allocation) {
    p.strategies = s.allocation->portions;
  } else {
    throw Error(ErrorCode::ParseError, "equilibrium needs a \"profile\" or an \"allocation\"");
  }
  if (!p.well_behaved(prefs)) throw Error(ErrorCode::NotWellBehaved, "some strategy is not inside its preference");
  const bool was_reduced = is_reduced(p);
  const ReducedProfile red = reduce_profile(p);
  EquilibriumReport eq = is_equilibrium(prefs, red);

  RunReport r = audit(vals, Allocation(red.profile.strategies));
  r.command = "equilibrium";
  r.mechanism = "length-game";
  r.ids = ids_of(s);
  r.input_was_reduced = was_reduced;
  r.reduced_profile = red.profile;
  r.equilibrium = std::move(eq);
  r.pareto = pareto_oracle(vals, r.allocation);
  return r;
}

Objective parse_objective(const std::string& name) {
  if (name == "utilitarian") return Objective::Utilitarian;
  if (name == "egalitarian") return Objective::Egalitarian;
  throw Error(ErrorCode::ParseError, "unknown objective '" + name + "'");
}

RunReport cmd_optimal(const Scenario& s, Objective objective, FairnessConstraint constraint, const LpOptions& opts) {
  const std::vector<Valuation> vals = s.valuations();
  RunReport r;
  Rational optimum;
  if (objective == Objective::Utilitarian && constraint == FairnessConstraint::None) {
    r = audit(vals, utilitarian_optimal(vals));
    optimum = r.ue;
    if (all_piecewise_constant(vals)) {
      // Cross-check the construction against the LP (and show its trace).
      const OptimumResult lp = max_ue(vals, FairnessConstraint::None, opts);
      if (lp.value != optimum) throw std::logic_error("utilitarian construction disagrees with the LP optimum");
    }
  } else if (objective == Objective::Utilitarian) {
    OptimumResult o = max_ue(vals, constraint, opts);
    r = audit(vals, o.allocation);
    optimum = o.value;
  } else {
    if (constraint != FairnessConstraint::None) {
      throw Error(ErrorCode::ParseError, "the egalitarian objective takes no --criterion");
    }
    OptimumResult o = max_ee(vals, opts);
    r = audit(vals, o.allocation);
    optimum = o.value;
  }
  r.command = "optimal";
  r.mechanism = std::string(objective == Objective::Utilitarian ? "utilitarian" : "egalitarian") + "/" +
                to_string(constraint);
  r.ids = ids_of(s);
  r.optimum = optimum;
  if (all_piecewise_constant(vals)) r.pareto = pareto_oracle(vals, r.allocation);
  return r;
}

PriceRow cmd_pof(const Scenario& s, FairnessConstraint constraint, const std::string& instance) {
  const std::vector<Valuation> vals = s.valuations();
  return price_row(instance, vals, constraint);
}

std::vector<BenchRow> cmd_bench(const std::string& mechanism, std::size_t n_lo, std::size_t n_hi, std::uint64_t seed) {
  if (!is_query_mechanism(mechanism)) {
    throw Error(ErrorCode::ParseError, "bench needs a query-model mechanism, got '" + mechanism + "'");
  }
  std::vector<BenchRow> rows;
  for (std::size_t n = n_lo; n <= n_hi; ++n) {
    Rng rng(seed * 1000003u + n);
    const std::vector<UniformPreference> prefs = random_uniform_preferences(rng, n);
    const MechanismResult res = run_query_mechanism(mechanism, sincere_oracles(valuations_of(prefs)));
    rows.push_back({n, res.transcript.total(), res.transcript.eval_count(), res.transcript.cut_count()});
  }
  return rows;
}

namespace {

ordered_json rationals(const std::vector<Rational>& v) {
  ordered_json arr = ordered_json::array();
  for (const auto& x : v) arr.push_back(x.str());
  return arr;
}

ordered_json lists(const std::vector<IntervalSet>& v) {
  ordered_json arr = ordered_json::array();
  for (const auto& x : v) arr.push_back(interval_set_to_json(x));
  return arr;
}

}  // namespace

ordered_json report_to_json(const RunReport& r, const Scenario& s) {
  ordered_json j = scenario_to_json(s);
  j.erase("profile");
  j.erase("allocation");
  j["command"] = r.command;
  if (!r.mechanism.empty()) j["mechanism"] = r.mechanism;
  j["allocation"] = lists(r.allocation.portions);
  ordered_json table = ordered_json::array();
  for (const auto& row : r.table.entries) table.push_back(rationals(row));
  j["equity_table"] = std::move(table);
  j["criteria"] = {{"proportional", r.flags.proportional},
                   {"envy_free", r.flags.envy_free},
                   {"equitable", r.flags.equitable},
                   {"non_wasteful", r.flags.non_wasteful}};
  if (r.pareto) j["criteria"]["pareto"] = *r.pareto;
  j["ue"] = r.ue.str();
  j["ee"] = r.ee.str();
  if (r.optimum) j["optimum"] = r.optimum->str();
  if (r.queries) j["queries"] = {{"total", r.queries->total}, {"eval", r.queries->eval}, {"cut", r.queries->cut}};
  if (r.equilibrium) {
    const EquilibriumReport& e = *r.equilibrium;
    ordered_json ej;
    ej["is_equilibrium"] = e.is_equilibrium;
    if (r.input_was_reduced) ej["input_was_reduced"] = *r.input_was_reduced;
    if (r.reduced_profile) ej["reduced_profile"] = lists(r.reduced_profile->strategies);
    if (e.violation) {
      if (const auto* u = std::get_if<UnallocatedValuedCake>(&*e.violation)) {
        ej["violation"] = {{"kind", "unallocated-valued-cake"}, {"witness", interval_set_to_json(u->witness)}};
      } else {
        const auto& l = std::get<LengthOrderViolation>(*e.violation);
        ej["violation"] = {{"kind", "length-order"},
                           {"holder", r.ids.at(l.holder)},
                           {"claimant", r.ids.at(l.claimant)},
                           {"witness", interval_set_to_json(l.witness)}};
      }
    }
    if (e.deviating_agent) ej["deviating_agent"] = r.ids.at(*e.deviating_agent);
    if (e.improving_strategy) ej["improving_strategy"] = interval_set_to_json(*e.improving_strategy);
    j["equilibrium"] = std::move(ej);
  }
  return j;
}

std::string report_to_table(const RunReport& r) {
  std::ostringstream os;
  os << r.command;
  if (!r.mechanism.empty()) os << " (" << r.mechanism << ")";
  os << "\n\n";
  std::size_t w = 6;
  for (const auto& id : r.ids) w = std::max(w, id.size() + 2);
  for (const auto& row : r.table.entries) {
    for (const auto& x : row) w = std::max(w, x.str().size() + 2);
  }
  os << std::left << std::setw(static_cast<int>(w)) << "u_i(A_j)";
  for (const auto& id : r.ids) os << std::setw(static_cast<int>(w)) << id;
  os << '\n';
  for (std::size_t i = 0; i < r.table.size(); ++i) {
    os << std::setw(static_cast<int>(w)) << r.ids[i];
    for (const auto& x : r.table.entries[i]) os << std::setw(static_cast<int>(w)) << x.str();
    os << '\n';
  }
  os << '\n';
  for (std::size_t i = 0; i < r.allocation.size(); ++i) {
    os << std::setw(static_cast<int>(w)) << r.ids[i] << r.allocation.portions[i] << '\n';
  }
  auto yn = [](bool b) { return b ? "yes" : "no"; };
  os << "\nproportional " << yn(r.flags.proportional) << ", envy-free " << yn(r.flags.envy_free) << ", equitable "
     << yn(r.flags.equitable) << ", non-wasteful " << yn(r.flags.non_wasteful);
  if (r.pareto) os << ", pareto " << yn(*r.pareto);
  os << "\nUE " << r.ue << ", EE " << r.ee << '\n';
  if (r.optimum) os << "optimum " << *r.optimum << '\n';
  if (r.queries) os << "queries " << r.queries->total << " (eval " << r.queries->eval << ", cut " << r.queries->cut << ")\n";
  if (r.equilibrium) {
    os << "equilibrium " << yn(r.equilibrium->is_equilibrium);
    if (r.equilibrium->deviating_agent) os << ", " << r.ids[*r.equilibrium->deviating_agent] << " can deviate";
    if (r.equilibrium->improving_strategy) os << " to " << *r.equilibrium->improving_strategy;
    os << '\n';
  }
  return os.str();
}

std::string report_to_csv(const RunReport& r) {
  std::ostringstream os;
  os << "agent,portion";
  for (const auto& id : r.ids) os << ",u(" << id << ")";
  os << '\n';
  for (std::size_t i = 0; i < r.table.size(); ++i) {
    os << r.ids[i] << ",\"" << r.allocation.portions[i] << '"';
    for (const auto& x : r.table.entries[i]) os << ',' << x;
    os << '\n';
  }
  return os.str();
}

std::string bench_to_csv(std::span<const BenchRow> rows) {
  std::ostringstream os;
  os << "n,total,eval,cut\n";
  for (const auto& b : rows) os << b.n << ',' << b.total << ',' << b.eval << ',' << b.cut << '\n';
  return os.str();
}

}  // namespace cake
