#pragma once

// Closed subintervals of the unit cake and their canonical finite unions.

#include "cake/rational.hpp"

#include <initializer_list>
#include <iosfwd>
#include <string>
#include <vector>

namespace cake {

struct Interval {
  Rational lo;
  Rational hi;

  [[nodiscard]] Rational length() const { return hi - lo; }
  friend bool operator==(const Interval&, const Interval&) = default;
};

/// Sorted, pairwise separated, positive-length intervals inside [0,1].
///
/// Touching or overlapping inputs are merged and zero-length members dropped,
/// so two sets covering the same points (up to measure zero) compare equal.
/// Set operations are taken up to measure zero: shared endpoints of closed
/// intervals never count as overlap.
class IntervalSet {
public:
  IntervalSet() = default;
  IntervalSet(std::initializer_list<Interval> parts);
  explicit IntervalSet(std::vector<Interval> parts);

  static IntervalSet whole() { return IntervalSet{{Rational(0), Rational(1)}}; }
  static IntervalSet single(Rational lo, Rational hi) { return IntervalSet{{std::move(lo), std::move(hi)}}; }

  [[nodiscard]] const std::vector<Interval>& intervals() const { return parts_; }
  [[nodiscard]] bool empty() const { return parts_.empty(); }
  [[nodiscard]] std::size_t size() const { return parts_.size(); }
  [[nodiscard]] Rational length() const;

  [[nodiscard]] IntervalSet unite(const IntervalSet& o) const;
  [[nodiscard]] IntervalSet intersect(const IntervalSet& o) const;
  [[nodiscard]] IntervalSet difference(const IntervalSet& o) const;
  [[nodiscard]] IntervalSet complement() const;  // within [0,1]

  /// True when this \ o has zero length.
  [[nodiscard]] bool subset_of(const IntervalSet& o) const;
  /// True when the intersection has positive length.
  [[nodiscard]] bool overlaps(const IntervalSet& o) const;

  /// The leftmost sub-part of this set with the given total length.
  /// Requires 0 <= len <= length().
  [[nodiscard]] IntervalSet prefix(const Rational& len) const;

  [[nodiscard]] std::string str() const;

  friend bool operator==(const IntervalSet&, const IntervalSet&) = default;

private:
  std::vector<Interval> parts_;
};

/// Lexicographic order on endpoint sequences; used only as a deterministic tie-break.
bool lex_less(const IntervalSet& a, const IntervalSet& b);

std::ostream& operator<<(std::ostream& os, const IntervalSet& s);

}  // namespace cake
