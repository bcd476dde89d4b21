#include "cake/rw_mechanisms.hpp"

#include "cake/error.hpp"

#include <algorithm>
#include <array>
#include <numeric>

namespace cake {

namespace {

void require_arity(const OracleSet& oracles, std::size_t want, const char* mechanism) {
  if (oracles.size() != want) {
    throw Error(ErrorCode::ArityMismatch, std::string(mechanism) + " needs " + std::to_string(want) +
                                              " agents, got " + std::to_string(oracles.size()));
  }
}

const Rational& clamp(const Rational& x, const Rational& lo, const Rational& hi) {
  if (x < lo) return lo;
  if (hi < x) return hi;
  return x;
}

void give(Allocation& a, std::size_t agent, const Rational& lo, const Rational& hi) {
  if (lo < hi) a.portions[agent] = a.portions[agent].unite(IntervalSet::single(lo, hi));
}

void give(Allocation& a, std::size_t agent, const Interval& iv) { give(a, agent, iv.lo, iv.hi); }

// Cut and Choose on [s, t]: `cutter` halves by its own value, `chooser` takes
// the strictly better half, else the right one.
void cut_and_choose_on(QuerySession& q, Allocation& a, std::size_t cutter, std::size_t chooser,
                       const Rational& s, const Rational& t) {
  const Rational v = q.eval(cutter, s, t);
  const Rational m = clamp(q.cut(cutter, s, v / Rational(2)), s, t);
  if (q.eval(chooser, s, m) > q.eval(chooser, m, t)) {
    give(a, chooser, s, m);
    give(a, cutter, m, t);
  } else {
    give(a, cutter, s, m);
    give(a, chooser, m, t);
  }
}

// Three-way split of [lo, hi] by `divider`, then `first` picks, agent 0 picks
// from the remaining two, and `divider` keeps the last piece.
void divide_trimmings(QuerySession& q, Allocation& a, std::size_t divider, std::size_t first,
                      const Rational& lo, const Rational& hi) {
  const Rational third = q.eval(divider, lo, hi) / Rational(3);
  const Rational d = clamp(q.cut(divider, lo, third), lo, hi);
  const Rational e = clamp(q.cut(divider, d, third), d, hi);
  const std::array<Interval, 3> parts{Interval{lo, d}, Interval{d, e}, Interval{e, hi}};

  std::array<Rational, 3> vf;
  for (std::size_t k = 0; k < 3; ++k) vf[k] = q.eval(first, parts[k].lo, parts[k].hi);
  std::size_t pick = 2;
  if (vf[0] >= vf[1] && vf[0] >= vf[2]) {
    pick = 0;
  } else if (vf[1] >= vf[0] && vf[1] >= vf[2]) {
    pick = 1;
  }
  give(a, first, parts[pick]);

  std::array<std::size_t, 2> rest{};
  std::size_t r = 0;
  for (std::size_t k = 0; k < 3; ++k) {
    if (k != pick) rest[r++] = k;
  }
  const Rational v0 = q.eval(0, parts[rest[0]].lo, parts[rest[0]].hi);
  const Rational v1 = q.eval(0, parts[rest[1]].lo, parts[rest[1]].hi);
  const bool left = v0 >= v1;
  give(a, 0, parts[left ? rest[0] : rest[1]]);
  give(a, divider, parts[left ? rest[1] : rest[0]]);
}

void even_paz_on(QuerySession& q, Allocation& a, std::vector<std::size_t> agents, const Rational& s,
                 const Rational& t) {
  if (agents.empty()) return;
  if (agents.size() == 1) {
    give(a, agents.front(), s, t);
    return;
  }
  const std::size_t k = agents.size();
  const std::size_t left_count = k / 2;
  const Rational fraction(static_cast<long>(left_count), static_cast<long>(k));

  std::vector<std::pair<Rational, std::size_t>> marks;
  marks.reserve(k);
  for (std::size_t i : agents) {
    const Rational v = q.eval(i, s, t);
    marks.emplace_back(clamp(q.cut(i, s, v * fraction), s, t), i);
  }
  std::sort(marks.begin(), marks.end());
  const Rational split = marks[left_count - 1].first;

  std::vector<std::size_t> left, right;
  for (std::size_t r = 0; r < k; ++r) (r < left_count ? left : right).push_back(marks[r].second);
  even_paz_on(q, a, std::move(left), s, split);
  even_paz_on(q, a, std::move(right), split, t);
}

}  // namespace

MechanismResult cut_and_choose(OracleSet oracles) {
  require_arity(oracles, 2, "cut-and-choose");
  QuerySession q(std::move(oracles));
  Allocation a(2);
  const Rational zero(0), one(1);
  const Rational m = clamp(q.cut(0, zero, Rational(1, 2)), zero, one);
  if (q.eval(1, zero, m) > q.eval(1, m, one)) {
    give(a, 0, m, one);
    give(a, 1, zero, m);
  } else {
    give(a, 0, zero, m);
    give(a, 1, m, one);
  }
  return {std::move(a), q.take_transcript()};
}

MechanismResult last_diminisher(OracleSet oracles) {
  const std::size_t n = oracles.size();
  if (n < 2) throw Error(ErrorCode::ArityMismatch, "last-diminisher needs at least 2 agents");
  QuerySession q(std::move(oracles));
  Allocation a(n);
  const Rational share(1, static_cast<long>(n));
  const Rational one(1);

  std::vector<std::size_t> remaining(n);
  std::iota(remaining.begin(), remaining.end(), 0);
  Rational s(0);
  while (!remaining.empty()) {
    Rational l = one;
    std::size_t last = remaining.front();
    for (std::size_t i : remaining) {
      if (q.eval(i, s, l) > share) {
        last = i;
        if (remaining.size() > 1) l = clamp(q.cut(i, s, share), s, l);
      }
    }
    if (remaining.size() == 1) l = one;
    give(a, last, s, l);
    s = l;
    std::erase(remaining, last);
  }
  return {std::move(a), q.take_transcript()};
}

MechanismResult selfridge(OracleSet oracles) {
  require_arity(oracles, 3, "selfridge");
  QuerySession q(std::move(oracles));
  Allocation a(3);
  const Rational zero(0), one(1), third(1, 3);

  const Rational cut_a = clamp(q.cut(0, zero, third), zero, one);
  const Rational cut_b = clamp(q.cut(0, cut_a, third), cut_a, one);
  const std::array<Interval, 3> slices{Interval{zero, cut_a}, Interval{cut_a, cut_b}, Interval{cut_b, one}};

  std::array<Rational, 3> v2;
  for (std::size_t k = 0; k < 3; ++k) v2[k] = q.eval(1, slices[k].lo, slices[k].hi);
  std::size_t xi = 0;
  for (std::size_t k = 1; k < 3; ++k) {
    if (v2[k] > v2[xi]) xi = k;
  }
  std::size_t zi = xi == 0 ? 1 : 0;
  for (std::size_t k = 0; k < 3; ++k) {
    if (k != xi && v2[k] < v2[zi]) zi = k;
  }
  const std::size_t yi = 3 - xi - zi;
  const Interval& x = slices[xi];
  const Interval& y = slices[yi];
  const Interval& z = slices[zi];

  // Agent 1 (index 1) trims its favourite down to a tie with the runner-up.
  Rational c = x.hi;
  if (v2[xi] != v2[yi]) c = clamp(q.cut(1, x.lo, v2[yi]), x.lo, x.hi);
  const Interval trimmed{x.lo, c};
  const bool has_trimmings = c < x.hi;

  const Rational t_trim = q.eval(2, trimmed.lo, trimmed.hi);
  const Rational t_y = q.eval(2, y.lo, y.hi);
  const Rational t_z = q.eval(2, z.lo, z.hi);

  // Who ends up holding the trimmed slice decides how the trimmings are split.
  enum class Split { ByAgent1, ByAgent2, CutAndChoose } split;
  if (t_trim >= t_y && t_trim >= t_z) {
    give(a, 2, trimmed);
    give(a, 1, y);  // agent 1 prefers y to z, agent 0 is indifferent between them
    give(a, 0, z);
    split = Split::ByAgent1;
  } else {
    const Interval& taken = (t_y >= t_trim && t_y >= t_z) ? y : z;
    const Interval& other = (&taken == &y) ? z : y;
    give(a, 2, taken);
    if (q.eval(0, other.lo, other.hi) >= q.eval(0, trimmed.lo, trimmed.hi)) {
      give(a, 0, other);
      give(a, 1, trimmed);
      split = Split::ByAgent2;
    } else {
      give(a, 0, trimmed);
      give(a, 1, other);
      split = Split::CutAndChoose;
    }
  }

  if (has_trimmings) {
    switch (split) {
      case Split::ByAgent1: divide_trimmings(q, a, 1, 2, c, x.hi); break;
      case Split::ByAgent2: divide_trimmings(q, a, 2, 1, c, x.hi); break;
      case Split::CutAndChoose: cut_and_choose_on(q, a, 1, 2, c, x.hi); break;
    }
  }
  return {std::move(a), q.take_transcript()};
}

MechanismResult even_paz(OracleSet oracles) {
  const std::size_t n = oracles.size();
  if (n == 0) throw Error(ErrorCode::ArityMismatch, "even-paz needs at least 1 agent");
  QuerySession q(std::move(oracles));
  Allocation a(n);
  std::vector<std::size_t> agents(n);
  std::iota(agents.begin(), agents.end(), 0);
  even_paz_on(q, a, std::move(agents), Rational(0), Rational(1));
  return {std::move(a), q.take_transcript()};
}

}  // namespace cake
