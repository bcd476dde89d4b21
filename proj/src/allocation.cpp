#include "cake/allocation.hpp"

#include "cake/error.hpp"

#include <algorithm>
#include <sstream>

namespace cake {

IntervalSet Allocation::covered() const {
  IntervalSet all;
  for (const auto& p : portions) all = all.unite(p);
  return all;
}

bool Allocation::is_disjoint() const {
  for (std::size_t i = 0; i < portions.size(); ++i) {
    for (std::size_t j = i + 1; j < portions.size(); ++j) {
      if (portions[i].overlaps(portions[j])) return false;
    }
  }
  return true;
}

std::vector<Rational> EquityTable::diagonal() const {
  std::vector<Rational> d;
  d.reserve(entries.size());
  for (std::size_t i = 0; i < entries.size(); ++i) d.push_back(entries[i][i]);
  return d;
}

std::string EquityTable::str() const {
  std::ostringstream os;
  for (const auto& row : entries) {
    for (std::size_t j = 0; j < row.size(); ++j) os << (j ? "\t" : "") << row[j];
    os << '\n';
  }
  return os.str();
}

namespace {

void require_same_size(std::size_t valuations, std::size_t portions) {
  if (valuations != portions) {
    throw Error(ErrorCode::DimensionMismatch, std::to_string(valuations) + " valuations vs " +
                                                  std::to_string(portions) + " portions");
  }
}

}  // namespace

EquityTable equity_table(std::span<const Valuation> valuations, const Allocation& allocation) {
  require_same_size(valuations.size(), allocation.size());
  EquityTable t;
  t.entries.resize(valuations.size());
  for (std::size_t i = 0; i < valuations.size(); ++i) {
    t.entries[i].reserve(allocation.size());
    for (const auto& portion : allocation.portions) t.entries[i].push_back(valuations[i].eval(portion));
  }
  return t;
}

bool is_proportional(const EquityTable& table) {
  const Rational share(1, static_cast<long>(std::max<std::size_t>(table.size(), 1)));
  for (std::size_t i = 0; i < table.size(); ++i) {
    if (table.at(i, i) < share) return false;
  }
  return true;
}

bool is_envy_free(const EquityTable& table) {
  for (std::size_t i = 0; i < table.size(); ++i) {
    for (std::size_t j = 0; j < table.size(); ++j) {
      if (table.at(i, i) < table.at(i, j)) return false;
    }
  }
  return true;
}

bool is_equitable(const EquityTable& table) {
  for (std::size_t i = 1; i < table.size(); ++i) {
    if (table.at(i, i) != table.at(0, 0)) return false;
  }
  return true;
}

bool is_non_wasteful(std::span<const Valuation> valuations, const Allocation& allocation) {
  require_same_size(valuations.size(), allocation.size());
  for (std::size_t i = 0; i < allocation.size(); ++i) {
    const IntervalSet worthless = allocation.portions[i].difference(valuations[i].support());
    if (worthless.empty()) continue;
    for (std::size_t j = 0; j < valuations.size(); ++j) {
      if (j != i && valuations[j].eval(worthless).sign() > 0) return false;
    }
  }
  return true;
}

IntervalSet uncovered_valued_cake(std::span<const Valuation> valuations, const Allocation& allocation) {
  IntervalSet valued;
  for (const auto& v : valuations) valued = valued.unite(v.support());
  return valued.difference(allocation.covered());
}

Rational utilitarian_efficiency(const EquityTable& table) {
  Rational total;
  for (std::size_t i = 0; i < table.size(); ++i) total += table.at(i, i);
  return total;
}

Rational egalitarian_efficiency(const EquityTable& table) {
  if (table.size() == 0) return Rational(0);
  Rational low = table.at(0, 0);
  for (std::size_t i = 1; i < table.size(); ++i) low = min(low, table.at(i, i));
  return low;
}

std::vector<Rational> utilities(std::span<const Valuation> valuations, const Allocation& allocation) {
  require_same_size(valuations.size(), allocation.size());
  std::vector<Rational> u;
  u.reserve(valuations.size());
  for (std::size_t i = 0; i < valuations.size(); ++i) u.push_back(valuations[i].eval(allocation.portions[i]));
  return u;
}

bool pareto_dominates(std::span<const Valuation> valuations, const Allocation& a, const Allocation& b) {
  const auto ua = utilities(valuations, a);
  const auto ub = utilities(valuations, b);
  bool strict = false;
  for (std::size_t i = 0; i < ua.size(); ++i) {
    if (ua[i] < ub[i]) return false;
    if (ub[i] < ua[i]) strict = true;
  }
  return strict;
}

bool utilitarian_equivalent(std::span<const Valuation> valuations, const Allocation& a, const Allocation& b) {
  return utilities(valuations, a) == utilities(valuations, b);
}

}  // namespace cake
