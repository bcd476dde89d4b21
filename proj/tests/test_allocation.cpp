#include "support.hpp"

#include "cake/error.hpp"
#include "cake/generator.hpp"

using namespace cake;
using cake::test::q;
using cake::test::set;
using cake::test::uniform;

namespace {

using Table = std::vector<std::vector<const char*>>;

bool table_is(const EquityTable& t, const Table& want) {
  if (t.size() != want.size()) return false;
  for (std::size_t i = 0; i < want.size(); ++i) {
    for (std::size_t j = 0; j < want.size(); ++j) {
      if (t.at(i, j) != q(want[i][j])) return false;
    }
  }
  return true;
}

}  // namespace

TEST_CASE("three agents, two sharing a region") {
  const std::vector<Valuation> v{uniform({{"0", "0.1"}}), uniform({{"0.4", "1"}}), uniform({{"0.4", "1"}})};
  const Allocation a({set({{"0", "0.1"}}), set({{"0.4", "0.8"}}), set({{"0.8", "1"}})});
  const EquityTable t = equity_table(v, a);
  CHECK(table_is(t, {{"1", "0", "0"}, {"0", "2/3", "1/3"}, {"0", "2/3", "1/3"}}));
  CHECK(is_proportional(t));
  CHECK_FALSE(is_envy_free(t));
  CHECK_FALSE(is_equitable(t));
}

TEST_CASE("empty allocation is envy-free but not proportional") {
  const std::vector<Valuation> v{uniform({{"0", "0.5"}}), uniform({{"0.5", "1"}})};
  const EquityTable t = equity_table(v, Allocation(2));
  CHECK(table_is(t, {{"0", "0"}, {"0", "0"}}));
  CHECK(is_envy_free(t));
  CHECK_FALSE(is_proportional(t));
}

TEST_CASE("one agent left empty-handed") {
  const std::vector<Valuation> v{uniform({{"0", "0.5"}}), uniform({{"0.5", "1"}})};
  const EquityTable t = equity_table(v, Allocation({IntervalSet(), set({{"0.5", "1"}})}));
  CHECK(table_is(t, {{"0", "0"}, {"0", "1"}}));
  CHECK(is_envy_free(t));
  CHECK_FALSE(is_proportional(t));
  CHECK_FALSE(is_equitable(t));
}

TEST_CASE("equitable but neither envy-free nor proportional") {
  const std::vector<Valuation> v{uniform({{"0", "0.6"}}), uniform({{"0.4", "1"}})};
  const EquityTable t = equity_table(v, Allocation({set({{"0.5", "1"}}), set({{"0", "0.5"}})}));
  CHECK(table_is(t, {{"1/6", "5/6"}, {"5/6", "1/6"}}));
  CHECK(is_equitable(t));
  CHECK_FALSE(is_envy_free(t));
  CHECK_FALSE(is_proportional(t));
}

TEST_CASE("dimension mismatch") {
  const std::vector<Valuation> v{uniform({{"0", "1"}})};
  CHECK_THROWS_AS((void)equity_table(v, Allocation(2)), Error);
}

TEST_CASE("non-wastefulness") {
  const std::vector<Valuation> both{uniform({{"0", "1"}}), uniform({{"0", "1"}})};
  CHECK(is_non_wasteful(both, Allocation({IntervalSet::whole(), IntervalSet()})));
  const std::vector<Valuation> v{uniform({{"0", "0.1"}}), uniform({{"0", "1"}})};
  CHECK_FALSE(is_non_wasteful(v, Allocation({IntervalSet::whole(), IntervalSet()})));
  CHECK(uncovered_valued_cake(v, Allocation({set({{"0", "0.1"}}), IntervalSet()})) == set({{"0.1", "1"}}));
}

TEST_CASE("efficiency measures") {
  const std::vector<Valuation> v{uniform({{"0", "0.5"}}), uniform({{"0.5", "1"}}), uniform({{"0", "1"}})};
  const EquityTable uo = equity_table(v, Allocation({set({{"0", "0.5"}}), set({{"0.5", "1"}}), IntervalSet()}));
  CHECK(utilitarian_efficiency(uo) == 2);
  const EquityTable eo =
      equity_table(v, Allocation({set({{"0", "0.25"}}), set({{"0.75", "1"}}), set({{"0.25", "0.75"}})}));
  CHECK(egalitarian_efficiency(eo) == q("1/2"));
}

TEST_CASE("pareto dominance and utilitarian equivalence") {
  const std::vector<Valuation> v{uniform({{"0", "0.5"}}), uniform({{"0.5", "1"}})};
  const Allocation a({set({{"0", "0.5"}}), set({{"0.5", "1"}})});
  CHECK_FALSE(pareto_dominates(v, a, a));
  CHECK(pareto_dominates(v, a, Allocation({set({{"0", "0.5"}}), IntervalSet()})));
  CHECK(utilitarian_equivalent(v, a, a));
  // Two agents who value neither of the swapped pieces.
  const std::vector<Valuation> w{uniform({{"0", "0.1"}}), uniform({{"0.2", "0.3"}})};
  const Allocation b({set({{"0.5", "0.6"}}), set({{"0.7", "0.8"}})});
  const Allocation c({set({{"0.7", "0.8"}}), set({{"0.5", "0.6"}})});
  CHECK(utilitarian_equivalent(w, b, c));
}

TEST_CASE("random full-cake allocations: row sums, envy-freeness implies proportionality, EE bound") {
  Rng rng(17);
  for (int trial = 0; trial < 1000; ++trial) {
    const std::size_t n = static_cast<std::size_t>(rng.between(2, 5));
    const std::vector<Valuation> v = random_constant_valuations(rng, n);
    const Allocation a = random_full_allocation(rng, n);
    REQUIRE(a.covers_cake());
    REQUIRE(a.is_disjoint());
    const EquityTable t = equity_table(v, a);
    for (std::size_t i = 0; i < n; ++i) {
      Rational row;
      for (std::size_t j = 0; j < n; ++j) row += t.at(i, j);
      CHECK(row == 1);
    }
    if (is_envy_free(t)) CHECK(is_proportional(t));
    CHECK(Rational(static_cast<long>(n)) * egalitarian_efficiency(t) <= utilitarian_efficiency(t));
  }
}
