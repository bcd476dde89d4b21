#include "support.hpp"

#include "cake/generator.hpp"

#include <stdexcept>

using namespace cake;
using cake::test::q;
using cake::test::set;

TEST_CASE("length") {
  CHECK(set({{"0", "1/2"}, {"3/4", "1"}}).length() == q("3/4"));
  CHECK(IntervalSet().length() == 0);
  CHECK(IntervalSet::whole().length() == 1);
}

TEST_CASE("canonical form merges, sorts and drops empty members") {
  const IntervalSet s = set({{"1/2", "1"}, {"0", "1/4"}, {"1/4", "1/2"}, {"1/3", "1/3"}});
  CHECK(s == IntervalSet::whole());
  CHECK(s.size() == 1);
  CHECK(set({{"0.2", "0.2"}}).empty());
  CHECK_THROWS_AS(set({{"1/2", "1/4"}}), std::invalid_argument);
  CHECK_THROWS_AS(set({{"0", "3/2"}}), std::invalid_argument);
}

TEST_CASE("set operations") {
  CHECK(set({{"0", "0.6"}}).intersect(set({{"0.5", "1"}})) == set({{"0.5", "0.6"}}));
  CHECK(IntervalSet::whole().difference(set({{"0.4", "0.6"}})) == set({{"0", "0.4"}, {"0.6", "1"}}));
  CHECK(set({{"0", "0.5"}}).unite(set({{"0.5", "1"}})) == IntervalSet::whole());
  CHECK(set({{"0.2", "0.4"}}).complement() == set({{"0", "0.2"}, {"0.4", "1"}}));
  // Shared endpoints are not overlap.
  CHECK_FALSE(set({{"0", "0.5"}}).overlaps(set({{"0.5", "1"}})));
  CHECK(set({{"0", "0.5"}}).intersect(set({{"0.5", "1"}})).empty());
  CHECK(set({{"0.1", "0.2"}}).subset_of(set({{"0", "0.5"}})));
}

TEST_CASE("prefix takes the leftmost part") {
  const IntervalSet s = set({{"0", "1/4"}, {"1/2", "1"}});
  CHECK(s.prefix(q("1/8")) == set({{"0", "1/8"}}));
  CHECK(s.prefix(q("1/2")) == set({{"0", "1/4"}, {"1/2", "3/4"}}));
  CHECK(s.prefix(s.length()) == s);
  CHECK(s.prefix(Rational(0)).empty());
}

TEST_CASE("printing") {
  CHECK(set({{"0", "1/2"}, {"3/4", "1"}}).str() == "[0,1/2] u [3/4,1]");
  CHECK(IntervalSet().str() == "{}");
}

namespace {

// Independent oracle: lengths from a fine grid count. Every random set below
// lives on the 1/64 grid, so counting grid cells is exact.
Rational cell_count_length(const IntervalSet& s) {
  long cells = 0;
  for (long k = 0; k < 64; ++k) {
    const IntervalSet cell = IntervalSet::single(Rational(k, 64), Rational(k + 1, 64));
    if (cell.subset_of(s)) ++cells;
  }
  return Rational(cells, 64);
}

bool cell_in(const IntervalSet& s, long k) {
  return IntervalSet::single(Rational(k, 64), Rational(k + 1, 64)).subset_of(s);
}

}  // namespace

TEST_CASE("set algebra laws on random grid sets") {
  Rng rng(11);
  for (int trial = 0; trial < 300; ++trial) {
    const IntervalSet x = random_uniform_preference(rng).valued();
    const IntervalSet y = random_uniform_preference(rng).valued();
    CHECK(x.length() == cell_count_length(x));
    CHECK(x.length() + y.length() == x.unite(y).length() + x.intersect(y).length());
    CHECK(x.difference(y) == x.intersect(y.complement()));
    CHECK(IntervalSet(x.intervals()) == x);
    for (long k = 0; k < 64; ++k) {
      CHECK(cell_in(x.unite(y), k) == (cell_in(x, k) || cell_in(y, k)));
      CHECK(cell_in(x.intersect(y), k) == (cell_in(x, k) && cell_in(y, k)));
    }
  }
}
