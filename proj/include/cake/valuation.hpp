#pragma once

// Piecewise densities over the unit cake and the two Robertson-Webb queries.

#include "cake/interval_set.hpp"
#include "cake/rational.hpp"

#include <vector>

namespace cake {

enum class PieceKind { Uniform, Constant, Linear };

/// One piece of a density on [lo, hi]. Uniform pieces are indicator pieces
/// (raw value 1); Constant pieces carry `value`; Linear pieces carry
/// slope * x + intercept.
struct PieceSpec {
  Rational lo;
  Rational hi;
  PieceKind kind = PieceKind::Uniform;
  Rational value{1};
  Rational slope{0};
  Rational intercept{0};

  static PieceSpec uniform(Rational lo, Rational hi);
  static PieceSpec constant(Rational lo, Rational hi, Rational value);
  static PieceSpec linear(Rational lo, Rational hi, Rational slope, Rational intercept);

  /// Density as slope * x + intercept, whatever the kind.
  [[nodiscard]] Rational density_slope() const;
  [[nodiscard]] Rational density_intercept() const;
  [[nodiscard]] Rational density_at(const Rational& x) const;
  /// Integral of the density over [a, b] (clamped to the piece).
  [[nodiscard]] Rational integral(const Rational& a, const Rational& b) const;

  friend bool operator==(const PieceSpec&, const PieceSpec&) = default;
};

struct CutResult {
  Rational point;
  bool exact = true;
};

struct CutOptions {
  /// Bisection stops once the bracket's value spread is at most this.
  Rational tolerance{1, 1000000000000};
};

/// A normalised piecewise (uniform | constant | linear) valuation.
///
/// Pieces are sorted and non-overlapping; gaps carry zero density. Constant
/// and Uniform pieces are stored with their normalised value, Linear pieces
/// with normalised slope and intercept, so `eval(whole) == 1` exactly.
class Valuation {
public:
  /// Scales the raw pieces to total mass 1.
  /// Throws Error{ZeroMass} when the mass is zero and Error{InvalidPiece}
  /// on pieces outside [0,1], empty, overlapping or with negative density.
  static Valuation normalize(std::vector<PieceSpec> raw);

  /// Piecewise uniform valuation on the given set (density 1/|set|).
  static Valuation uniform_on(const IntervalSet& valued);

  [[nodiscard]] const std::vector<PieceSpec>& pieces() const { return pieces_; }
  [[nodiscard]] const Rational& raw_mass() const { return raw_mass_; }

  [[nodiscard]] Rational eval(const Interval& x) const;
  [[nodiscard]] Rational eval(const IntervalSet& x) const;
  [[nodiscard]] Rational eval(const Rational& a, const Rational& b) const { return eval(Interval{a, b}); }

  /// Smallest b >= a with eval([a, b]) == target. Exact for constant pieces and
  /// for linear pieces with a rational root; otherwise bisected to the
  /// tolerance and flagged inexact. Throws Error{TargetUnreachable} when
  /// target exceeds eval([a, 1]) or is negative.
  [[nodiscard]] CutResult cut(const Rational& a, const Rational& target, const CutOptions& opts = {}) const;

  [[nodiscard]] Rational density_at(const Rational& x) const;

  /// Where the density is positive (up to measure zero).
  [[nodiscard]] IntervalSet support() const;

  [[nodiscard]] bool is_piecewise_uniform() const;
  [[nodiscard]] bool is_piecewise_constant() const;  // uniform counts too

  /// The valued set of a piecewise uniform valuation (same as support()).
  [[nodiscard]] IntervalSet uniform_set() const;

  friend bool operator==(const Valuation&, const Valuation&) = default;

private:
  std::vector<PieceSpec> pieces_;
  Rational raw_mass_;
};

}  // namespace cake
