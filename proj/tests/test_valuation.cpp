#include "support.hpp"

#include "cake/error.hpp"
#include "cake/generator.hpp"

using namespace cake;
using cake::test::q;
using cake::test::set;
using cake::test::uniform;

namespace {

Valuation ramp() { return Valuation::normalize({PieceSpec::linear(q("0"), q("1"), q("2"), q("0"))}); }

bool throws_code(ErrorCode code, auto&& f) {
  try {
    f();
  } catch (const Error& e) {
    return e.code() == code;
  }
  return false;
}

}  // namespace

TEST_CASE("eval") {
  CHECK(uniform({{"0", "0.6"}}).eval(q("0.5"), q("1")) == q("1/6"));
  CHECK(uniform({{"0", "0.6"}}).eval(IntervalSet::whole()) == 1);
  CHECK(ramp().eval(IntervalSet::whole()) == 1);
  CHECK(ramp().eval(q("0"), q("1/2")) == q("1/4"));
  CHECK(ramp().eval(q("1/3"), q("1/3")) == 0);
}

TEST_CASE("eval of a linear density agrees with a midpoint rule") {
  const Valuation v = Valuation::normalize({PieceSpec::linear(q("1/5"), q("4/5"), q("3"), q("1"))});
  // Midpoint rule is exact for affine integrands, so a coarse rule must agree exactly.
  for (const auto& [a, b] : {std::pair{"1/5", "1/2"}, {"0", "1"}, {"3/10", "7/10"}}) {
    const Rational lo = max(q(a), q("1/5")), hi = min(q(b), q("4/5"));
    Rational sum;
    const int steps = 7;
    const Rational h = (hi - lo) / Rational(steps);
    for (int k = 0; k < steps; ++k) {
      const Rational mid = lo + h * (Rational(k) + Rational(1, 2));
      sum += v.density_at(mid) * h;
    }
    CHECK(v.eval(q(a), q(b)) == sum);
  }
}

TEST_CASE("cut returns the smallest point") {
  CHECK(uniform({{"0", "1"}}).cut(q("0"), q("1/2")).point == q("1/2"));
  // Brute-force oracle: scan the grid of piece boundaries for the first b
  // reaching the target.
  const Valuation v = uniform({{"0", "0.1"}, {"0.4", "1"}});
  Rational first_hit;
  for (long k = 0; k <= 100; ++k) {
    if (v.eval(q("0"), Rational(k, 100)) >= q("1/7")) {
      first_hit = Rational(k, 100);
      break;
    }
  }
  CHECK(first_hit == q("0.1"));
  CHECK(v.cut(q("0"), q("1/7")).point == first_hit);
  CHECK(v.cut(q("0.05"), q("0")).point == q("0.05"));
  const CutResult r = ramp().cut(q("0"), q("1/4"));
  CHECK(r.exact);
  CHECK(r.point == q("1/2"));
}

TEST_CASE("cut with an irrational root is bisected and flagged") {
  const CutResult r = ramp().cut(q("0"), q("1/2"));  // b = 1/sqrt(2)
  CHECK_FALSE(r.exact);
  CHECK(abs(ramp().eval(q("0"), r.point) - q("1/2")) <= CutOptions{}.tolerance);
}

TEST_CASE("cut beyond the remaining mass") {
  CHECK(throws_code(ErrorCode::TargetUnreachable, [] { (void)uniform({{"0", "1/2"}}).cut(q("1/4"), q("3/4")); }));
}

TEST_CASE("normalize") {
  const Valuation c = Valuation::normalize({PieceSpec::constant(q("0"), q("1"), q("2"))});
  CHECK(c.pieces().front().value == 1);
  CHECK(uniform({{"0", "0.5"}}).density_at(q("1/4")) == 2);
  // mass = 1/4 * 1 + 3/4 * 3 = 5/2, so scaling is by 2/5.
  const Valuation v = Valuation::normalize(
      {PieceSpec::constant(q("0"), q("1/4"), q("1")), PieceSpec::constant(q("1/4"), q("1"), q("3"))});
  CHECK(v.raw_mass() == q("5/2"));
  CHECK(v.density_at(q("1/8")) == q("2/5"));
  CHECK(v.density_at(q("1/2")) == q("6/5"));
  CHECK(v.eval(IntervalSet::whole()) == 1);
  CHECK(throws_code(ErrorCode::ZeroMass, [] { (void)Valuation::normalize({PieceSpec::constant(q("0"), q("1"), q("0"))}); }));
  CHECK(throws_code(ErrorCode::InvalidPiece, [] {
    (void)Valuation::normalize({PieceSpec::uniform(q("0"), q("1/2")), PieceSpec::uniform(q("1/4"), q("1"))});
  }));
  CHECK(throws_code(ErrorCode::InvalidPiece,
                    [] { (void)Valuation::normalize({PieceSpec::linear(q("0"), q("1"), q("-2"), q("1"))}); }));
}

TEST_CASE("valuation classes") {
  CHECK(uniform({{"0", "1/2"}}).is_piecewise_uniform());
  CHECK(uniform({{"0", "1/2"}}).uniform_set() == set({{"0", "1/2"}}));
  CHECK_FALSE(ramp().is_piecewise_constant());
  const Valuation c = Valuation::normalize(
      {PieceSpec::constant(q("0"), q("1/4"), q("1")), PieceSpec::constant(q("1/2"), q("1"), q("3"))});
  CHECK(c.is_piecewise_constant());
  CHECK_FALSE(c.is_piecewise_uniform());
  CHECK(c.support() == set({{"0", "1/4"}, {"1/2", "1"}}));
}

TEST_CASE("additivity and cut round trips on random step densities") {
  Rng rng(5);
  for (int trial = 0; trial < 1000; ++trial) {
    const Valuation v = random_constant_valuation(rng);
    const IntervalSet x = random_uniform_preference(rng).valued();
    const IntervalSet y = random_uniform_preference(rng).valued().difference(x);
    CHECK(v.eval(x.unite(y)) == v.eval(x) + v.eval(y));
    const Rational a(static_cast<long>(rng.between(0, 63)), 64);
    const Rational t = v.eval(a, Rational(1)) * Rational(static_cast<long>(rng.between(0, 10)), 10);
    const CutResult c = v.cut(a, t);
    CHECK(c.exact);
    CHECK(v.eval(a, c.point) == t);
    CHECK(v.eval(a, a) == 0);
  }
}
