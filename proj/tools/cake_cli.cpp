// Command-line front end over the cake library.
//
// Exit status: 0 on success, 1 when an --expect-* assertion fails, 2 on any
// input problem (unreadable file, malformed scenario, wrong arity, ...).

#include "cake/commands.hpp"
#include "cake/error.hpp"

#include <CLI11.hpp>

#include <fstream>
#include <iostream>
#include <iterator>
#include <sstream>

namespace {

constexpr int kOk = 0;
constexpr int kExpectationFailed = 1;
constexpr int kInputError = 2;

struct Expectations {
  bool proportional = false;
  bool envy_free = false;
  bool equitable = false;
  bool non_wasteful = false;
  bool pareto = false;
  bool equilibrium = false;

  void attach(CLI::App* app) {
    app->add_flag("--expect-proportional", proportional, "Exit 1 unless the allocation is proportional");
    app->add_flag("--expect-envy-free", envy_free, "Exit 1 unless the allocation is envy-free");
    app->add_flag("--expect-equitable", equitable, "Exit 1 unless the allocation is equitable");
    app->add_flag("--expect-non-wasteful", non_wasteful, "Exit 1 unless the allocation is non-wasteful");
    app->add_flag("--expect-pareto", pareto, "Exit 1 unless the allocation is Pareto efficient");
    app->add_flag("--expect-equilibrium", equilibrium, "Exit 1 unless the profile is an equilibrium");
  }

  // Names of the assertions that do not hold.
  std::vector<std::string> violated(const cake::RunReport& r) const {
    std::vector<std::string> out;
    if (proportional && !r.flags.proportional) out.emplace_back("proportional");
    if (envy_free && !r.flags.envy_free) out.emplace_back("envy-free");
    if (equitable && !r.flags.equitable) out.emplace_back("equitable");
    if (non_wasteful && !r.flags.non_wasteful) out.emplace_back("non-wasteful");
    if (pareto && !r.pareto.value_or(false)) out.emplace_back("pareto");
    if (equilibrium && !(r.equilibrium && r.equilibrium->is_equilibrium)) out.emplace_back("equilibrium");
    return out;
  }
};

std::string read_input(const std::string& path) {
  if (path.empty() || path == "-") {
    return {std::istreambuf_iterator<char>(std::cin), std::istreambuf_iterator<char>()};
  }
  std::ifstream in(path, std::ios::binary);
  if (!in) throw cake::Error(cake::ErrorCode::ParseError, "cannot open '" + path + "'");
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

int emit(const cake::RunReport& r, const cake::Scenario& s, const std::string& format, const Expectations& ex) {
  if (format == "table") {
    std::cout << cake::report_to_table(r);
  } else if (format == "csv") {
    std::cout << cake::report_to_csv(r);
  } else {
    std::cout << cake::report_to_json(r, s).dump(2) << '\n';
  }
  const auto bad = ex.violated(r);
  for (const auto& name : bad) std::cerr << "expectation failed: " << name << '\n';
  return bad.empty() ? kOk : kExpectationFailed;
}

// "lo..hi", "lo:hi", "lo-hi" or a single n.
std::pair<std::size_t, std::size_t> parse_range(const std::string& text) {
  for (const char* sep : {"..", ":", "-"}) {
    const auto at = text.find(sep);
    if (at == std::string::npos) continue;
    const std::size_t lo = std::stoul(text.substr(0, at));
    const std::size_t hi = std::stoul(text.substr(at + std::char_traits<char>::length(sep)));
    if (lo == 0 || hi < lo) break;
    return {lo, hi};
  }
  if (text.find_first_not_of("0123456789") == std::string::npos && !text.empty()) {
    const std::size_t n = std::stoul(text);
    if (n > 0) return {n, n};
  }
  throw cake::Error(cake::ErrorCode::ParseError, "bad --n-range '" + text + "'");
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Fair division of a divisible cake: mechanisms, audits, equilibria and welfare optima"};
  app.require_subcommand(1);

  std::string input;
  std::string format = "json";
  std::string mechanism;
  std::string criterion = "none";
  std::string objective = "utilitarian";
  std::string instance = "scenario";
  std::string n_range = "2..16";
  std::uint64_t seed = 1;
  bool verbose_lp = false;
  Expectations expect;

  auto add_common = [&](CLI::App* sub) {
    sub->add_option("input", input, "Scenario file (default: standard input)");
    sub->add_option("--format", format, "Output format")->check(CLI::IsMember({"json", "csv", "table"}));
    expect.attach(sub);
  };

  const std::vector<std::string> mechanisms{"cut-and-choose", "last-diminisher", "even-paz", "selfridge",
                                            "lex-order",      "length-game",     "procaccia"};
  const std::vector<std::string> criteria{"none", "proportional", "envy-free", "equitable"};

  CLI::App* run = app.add_subcommand("run", "Run a mechanism on the scenario's agents");
  add_common(run);
  run->add_option("--mechanism", mechanism, "Mechanism to run")->required()->check(CLI::IsMember(mechanisms));

  CLI::App* audit = app.add_subcommand("audit", "Audit the scenario's allocation");
  add_common(audit);

  CLI::App* equilibrium = app.add_subcommand("equilibrium", "Check the scenario's profile for Length Game equilibrium");
  add_common(equilibrium);

  CLI::App* optimal = app.add_subcommand("optimal", "Compute a welfare-optimal allocation");
  add_common(optimal);
  optimal->add_option("--objective", objective, "Welfare to maximise")
      ->check(CLI::IsMember({"utilitarian", "egalitarian"}));
  optimal->add_option("--criterion", criterion, "Fairness constraint")->check(CLI::IsMember(criteria));
  optimal->add_flag("--verbose-lp", verbose_lp, "Dump every simplex tableau to standard error");

  CLI::App* pof = app.add_subcommand("pof", "Price of a fairness criterion as a CSV row");
  pof->add_option("input", input, "Scenario file (default: standard input)");
  pof->add_option("--criterion", criterion, "Fairness constraint")->required()->check(CLI::IsMember(criteria));
  pof->add_option("--instance", instance, "Instance id written in the first column");

  CLI::App* bench = app.add_subcommand("bench", "Query counts of a query-model mechanism on random agents");
  bench->add_option("--mechanism", mechanism, "Mechanism to benchmark")
      ->required()
      ->check(CLI::IsMember({"cut-and-choose", "last-diminisher", "even-paz", "selfridge"}));
  bench->add_option("--n-range", n_range, "Agent counts, e.g. 2..128");
  bench->add_option("--seed", seed, "Instance generator seed");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kOk : kInputError;
  }

  try {
    if (*bench) {
      const auto [lo, hi] = parse_range(n_range);
      std::cout << cake::bench_to_csv(cake::cmd_bench(mechanism, lo, hi, seed));
      return kOk;
    }

    const cake::Scenario scenario = cake::parse_scenario(read_input(input));
    if (*pof) {
      const cake::PriceRow row = cake::cmd_pof(scenario, cake::parse_fairness_constraint(criterion), instance);
      cake::write_price_csv(std::cout, std::span<const cake::PriceRow>(&row, 1));
      return kOk;
    }
    if (*run) return emit(cake::cmd_run(scenario, mechanism), scenario, format, expect);
    if (*audit) return emit(cake::cmd_audit(scenario), scenario, format, expect);
    if (*equilibrium) return emit(cake::cmd_equilibrium(scenario), scenario, format, expect);

    cake::LpOptions opts;
    opts.check_duality = verbose_lp;
    if (verbose_lp) opts.trace = &std::cerr;
    const cake::RunReport r = cake::cmd_optimal(scenario, cake::parse_objective(objective),
                                                cake::parse_fairness_constraint(criterion), opts);
    return emit(r, scenario, format, expect);
  } catch (const cake::Error& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kInputError;
  } catch (const std::invalid_argument& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kInputError;
  } catch (const std::out_of_range& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kInputError;
  }
}
