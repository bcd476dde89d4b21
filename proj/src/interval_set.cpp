#include "cake/interval_set.hpp"

#include <algorithm>
#include <ostream>
#include <sstream>
#include <stdexcept>

namespace cake {

namespace {

std::vector<Interval> canonicalize(std::vector<Interval> parts) {
  for (auto& p : parts) {
    if (p.hi < p.lo) throw std::invalid_argument("interval with hi < lo");
    if (p.lo < Rational(0) || Rational(1) < p.hi) {
      throw std::invalid_argument("interval outside [0,1]: [" + p.lo.str() + "," + p.hi.str() + "]");
    }
  }
  std::erase_if(parts, [](const Interval& p) { return p.lo == p.hi; });
  std::sort(parts.begin(), parts.end(), [](const Interval& a, const Interval& b) { return a.lo < b.lo; });

  std::vector<Interval> out;
  out.reserve(parts.size());
  for (auto& p : parts) {
    if (!out.empty() && p.lo <= out.back().hi) {
      if (out.back().hi < p.hi) out.back().hi = p.hi;
    } else {
      out.push_back(std::move(p));
    }
  }
  return out;
}

}  // namespace

IntervalSet::IntervalSet(std::initializer_list<Interval> parts)
    : parts_(canonicalize(std::vector<Interval>(parts))) {}

IntervalSet::IntervalSet(std::vector<Interval> parts) : parts_(canonicalize(std::move(parts))) {}

Rational IntervalSet::length() const {
  Rational total;
  for (const auto& p : parts_) total += p.length();
  return total;
}

IntervalSet IntervalSet::unite(const IntervalSet& o) const {
  std::vector<Interval> all = parts_;
  all.insert(all.end(), o.parts_.begin(), o.parts_.end());
  return IntervalSet(std::move(all));
}

IntervalSet IntervalSet::intersect(const IntervalSet& o) const {
  std::vector<Interval> out;
  std::size_t i = 0, j = 0;
  while (i < parts_.size() && j < o.parts_.size()) {
    const auto& a = parts_[i];
    const auto& b = o.parts_[j];
    const Rational& lo = max(a.lo, b.lo);
    const Rational& hi = min(a.hi, b.hi);
    if (lo < hi) out.push_back({lo, hi});
    if (a.hi < b.hi) {
      ++i;
    } else {
      ++j;
    }
  }
  return IntervalSet(std::move(out));
}

IntervalSet IntervalSet::complement() const {
  std::vector<Interval> out;
  Rational cursor(0);
  for (const auto& p : parts_) {
    if (cursor < p.lo) out.push_back({cursor, p.lo});
    cursor = p.hi;
  }
  if (cursor < Rational(1)) out.push_back({cursor, Rational(1)});
  return IntervalSet(std::move(out));
}

IntervalSet IntervalSet::difference(const IntervalSet& o) const { return intersect(o.complement()); }

bool IntervalSet::subset_of(const IntervalSet& o) const { return difference(o).empty(); }

bool IntervalSet::overlaps(const IntervalSet& o) const { return !intersect(o).empty(); }

IntervalSet IntervalSet::prefix(const Rational& len) const {
  if (len.sign() < 0 || length() < len) throw std::invalid_argument("prefix length out of range");
  std::vector<Interval> out;
  Rational remaining = len;
  for (const auto& p : parts_) {
    if (remaining.is_zero()) break;
    const Rational l = p.length();
    if (l <= remaining) {
      out.push_back(p);
      remaining -= l;
    } else {
      out.push_back({p.lo, p.lo + remaining});
      remaining = Rational(0);
    }
  }
  return IntervalSet(std::move(out));
}

std::string IntervalSet::str() const {
  std::ostringstream os;
  os << *this;
  return os.str();
}

bool lex_less(const IntervalSet& a, const IntervalSet& b) {
  const auto& x = a.intervals();
  const auto& y = b.intervals();
  for (std::size_t k = 0; k < x.size() && k < y.size(); ++k) {
    if (x[k].lo != y[k].lo) return x[k].lo < y[k].lo;
    if (x[k].hi != y[k].hi) return x[k].hi < y[k].hi;
  }
  return x.size() < y.size();
}

std::ostream& operator<<(std::ostream& os, const IntervalSet& s) {
  if (s.empty()) return os << "{}";
  bool first = true;
  for (const auto& p : s.intervals()) {
    if (!first) os << " u ";
    first = false;
    os << '[' << p.lo << ',' << p.hi << ']';
  }
  return os;
}

}  // namespace cake
