#pragma once

// Shorthands shared by the unit tests.

#include "cake/allocation.hpp"
#include "cake/uniform_mechanisms.hpp"

#include <doctest.h>

#include <initializer_list>
#include <utility>

namespace cake::test {

inline Rational q(const char* text) { return Rational::parse(text); }

inline IntervalSet set(std::initializer_list<std::pair<const char*, const char*>> parts) {
  std::vector<Interval> v;
  for (const auto& [lo, hi] : parts) v.push_back({q(lo), q(hi)});
  return IntervalSet(std::move(v));
}

inline Valuation uniform(std::initializer_list<std::pair<const char*, const char*>> parts) {
  return Valuation::uniform_on(set(parts));
}

inline UniformPreference pref(std::initializer_list<std::pair<const char*, const char*>> parts) {
  return UniformPreference(set(parts));
}

}  // namespace cake::test

namespace doctest {
template <>
struct StringMaker<cake::Rational> {
  static String convert(const cake::Rational& r) { return r.str().c_str(); }
};
template <>
struct StringMaker<cake::IntervalSet> {
  static String convert(const cake::IntervalSet& s) { return s.str().c_str(); }
};
}  // namespace doctest
