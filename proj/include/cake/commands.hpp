#pragma once

// The work behind each command-line subcommand, kept in the library so that
// tests can drive it without spawning processes.

#include "cake/equilibrium.hpp"
#include "cake/optimal.hpp"
#include "cake/oracle.hpp"
#include "cake/scenario.hpp"

#include <optional>
#include <string>

namespace cake {

struct CriteriaFlags {
  bool proportional = false;
  bool envy_free = false;
  bool equitable = false;
  bool non_wasteful = false;
};

struct QueryCounts {
  std::size_t total = 0;
  std::size_t eval = 0;
  std::size_t cut = 0;
};

struct RunReport {
  std::string command;
  std::string mechanism;  // or the objective for `optimal`
  std::vector<std::string> ids;
  Allocation allocation;
  EquityTable table;
  CriteriaFlags flags;
  Rational ue;
  Rational ee;
  std::optional<QueryCounts> queries;
  std::optional<Rational> optimum;
  std::optional<bool> pareto;
  std::optional<bool> input_was_reduced;
  std::optional<Profile> reduced_profile;
  std::optional<EquilibriumReport> equilibrium;
};

/// Equity table, flags, UE and EE of `allocation`.
RunReport audit(std::span<const Valuation> valuations, const Allocation& allocation);

/// Mechanisms: cut-and-choose, last-diminisher, even-paz, selfridge,
/// lex-order (agents in index order), length-game, procaccia. The two
/// profile mechanisms use the scenario's profile when it has one, otherwise
/// the sincere profile S_i = P_i.
RunReport cmd_run(const Scenario& s, const std::string& mechanism);

/// Throws Error{ParseError} when the scenario has no allocation.
RunReport cmd_audit(const Scenario& s);

/// Reduces the profile (or, without one, treats the allocation as the
/// profile) and tests it for equilibrium.
RunReport cmd_equilibrium(const Scenario& s);

enum class Objective { Utilitarian, Egalitarian };
Objective parse_objective(const std::string& name);

/// Utilitarian with no constraint works for every valuation class (direct
/// construction); everything else goes through the LP.
RunReport cmd_optimal(const Scenario& s, Objective objective, FairnessConstraint constraint,
                      const LpOptions& opts = {});

PriceRow cmd_pof(const Scenario& s, FairnessConstraint constraint, const std::string& instance = "scenario");

struct BenchRow {
  std::size_t n = 0;
  std::size_t total = 0;
  std::size_t eval = 0;
  std::size_t cut = 0;

  friend bool operator==(const BenchRow&, const BenchRow&) = default;
};

/// Query counts of a query-model mechanism on seeded random piecewise
/// uniform agents, one row per n in [n_lo, n_hi].
std::vector<BenchRow> cmd_bench(const std::string& mechanism, std::size_t n_lo, std::size_t n_hi, std::uint64_t seed);

MechanismResult run_query_mechanism(const std::string& mechanism, OracleSet oracles);
bool is_query_mechanism(const std::string& mechanism);

nlohmann::ordered_json report_to_json(const RunReport& r, const Scenario& s);
std::string report_to_table(const RunReport& r);
/// One "agent,portion,u_own,proportional,..." style block: a row per agent.
std::string report_to_csv(const RunReport& r);
std::string bench_to_csv(std::span<const BenchRow> rows);

}  // namespace cake
