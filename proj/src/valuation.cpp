#include "cake/valuation.hpp"

#include "cake/error.hpp"

#include <algorithm>

namespace cake {

const char* to_string(ErrorCode code) {
  switch (code) {
    case ErrorCode::ZeroMass: return "ZeroMass";
    case ErrorCode::InvalidPiece: return "InvalidPiece";
    case ErrorCode::TargetUnreachable: return "TargetUnreachable";
    case ErrorCode::DimensionMismatch: return "DimensionMismatch";
    case ErrorCode::EmptySubset: return "EmptySubset";
    case ErrorCode::Infeasible: return "Infeasible";
    case ErrorCode::NotWellBehaved: return "NotWellBehaved";
    case ErrorCode::NotReduced: return "NotReduced";
    case ErrorCode::ArityMismatch: return "ArityMismatch";
    case ErrorCode::UnsupportedValuationClass: return "UnsupportedValuationClass";
    case ErrorCode::ParseError: return "ParseError";
  }
  return "Error";
}

PieceSpec PieceSpec::uniform(Rational lo, Rational hi) {
  return PieceSpec{std::move(lo), std::move(hi), PieceKind::Uniform, Rational(1), Rational(0), Rational(0)};
}

PieceSpec PieceSpec::constant(Rational lo, Rational hi, Rational value) {
  return PieceSpec{std::move(lo), std::move(hi), PieceKind::Constant, std::move(value), Rational(0), Rational(0)};
}

PieceSpec PieceSpec::linear(Rational lo, Rational hi, Rational slope, Rational intercept) {
  return PieceSpec{std::move(lo), std::move(hi), PieceKind::Linear, Rational(0), std::move(slope), std::move(intercept)};
}

Rational PieceSpec::density_slope() const { return kind == PieceKind::Linear ? slope : Rational(0); }

Rational PieceSpec::density_intercept() const { return kind == PieceKind::Linear ? intercept : value; }

Rational PieceSpec::density_at(const Rational& x) const { return density_slope() * x + density_intercept(); }

Rational PieceSpec::integral(const Rational& a, const Rational& b) const {
  const Rational& from = max(a, lo);
  const Rational& to = min(b, hi);
  if (to <= from) return Rational(0);
  if (kind != PieceKind::Linear) return value * (to - from);
  return slope * (to * to - from * from) / Rational(2) + intercept * (to - from);
}

Valuation Valuation::normalize(std::vector<PieceSpec> raw) {
  std::sort(raw.begin(), raw.end(), [](const PieceSpec& a, const PieceSpec& b) { return a.lo < b.lo; });
  Rational mass;
  for (std::size_t k = 0; k < raw.size(); ++k) {
    const auto& p = raw[k];
    if (p.lo < Rational(0) || Rational(1) < p.hi || !(p.lo < p.hi)) {
      throw Error(ErrorCode::InvalidPiece, "piece [" + p.lo.str() + "," + p.hi.str() + "] is empty or outside [0,1]");
    }
    if (k > 0 && p.lo < raw[k - 1].hi) {
      throw Error(ErrorCode::InvalidPiece, "pieces overlap at " + p.lo.str());
    }
    if (p.density_at(p.lo).sign() < 0 || p.density_at(p.hi).sign() < 0) {
      throw Error(ErrorCode::InvalidPiece, "negative density on [" + p.lo.str() + "," + p.hi.str() + "]");
    }
    mass += p.integral(p.lo, p.hi);
  }
  if (mass.is_zero()) throw Error(ErrorCode::ZeroMass, "valuation has zero total mass");

  Valuation v;
  v.raw_mass_ = mass;
  v.pieces_.reserve(raw.size());
  for (auto& p : raw) {
    if (p.kind == PieceKind::Linear) {
      p.slope /= mass;
      p.intercept /= mass;
    } else {
      p.value /= mass;
    }
    v.pieces_.push_back(std::move(p));
  }
  return v;
}

Valuation Valuation::uniform_on(const IntervalSet& valued) {
  std::vector<PieceSpec> raw;
  for (const auto& iv : valued.intervals()) raw.push_back(PieceSpec::uniform(iv.lo, iv.hi));
  return normalize(std::move(raw));
}

Rational Valuation::eval(const Interval& x) const {
  Rational total;
  for (const auto& p : pieces_) {
    if (x.hi <= p.lo) break;
    total += p.integral(x.lo, x.hi);
  }
  return total;
}

Rational Valuation::eval(const IntervalSet& x) const {
  Rational total;
  for (const auto& iv : x.intervals()) total += eval(iv);
  return total;
}

Rational Valuation::density_at(const Rational& x) const {
  for (const auto& p : pieces_) {
    if (p.lo <= x && x < p.hi) return p.density_at(x);
  }
  if (!pieces_.empty() && x == pieces_.back().hi) return pieces_.back().density_at(x);
  return Rational(0);
}

namespace {

// Smallest b in [start, p.hi] with p.integral(start, b) == remaining, given
// 0 < remaining <= p.integral(start, p.hi).
CutResult solve_in_piece(const PieceSpec& p, const Rational& start, const Rational& remaining,
                         const CutOptions& opts) {
  if (p.kind != PieceKind::Linear || p.slope.is_zero()) {
    return {start + remaining / p.density_intercept(), true};
  }
  const Rational& s = p.slope;
  const Rational& i = p.intercept;
  const Rational base = s * start + i;
  const Rational disc = base * base + Rational(2) * s * remaining;
  if (auto root = disc.exact_sqrt()) {
    return {(*root - i) / s, true};
  }
  Rational lo = start;
  Rational hi = p.hi;
  while (true) {
    const Rational spread = p.integral(lo, hi);
    if (spread <= opts.tolerance) break;
    const Rational mid = (lo + hi) / Rational(2);
    if (p.integral(start, mid) < remaining) {
      lo = mid;
    } else {
      hi = mid;
    }
  }
  return {hi, false};
}

}  // namespace

CutResult Valuation::cut(const Rational& a, const Rational& target, const CutOptions& opts) const {
  if (target.sign() < 0) throw Error(ErrorCode::TargetUnreachable, "negative cut target " + target.str());
  if (target.is_zero()) return {a, true};
  Rational remaining = target;
  for (const auto& p : pieces_) {
    if (p.hi <= a) continue;
    const Rational& start = max(a, p.lo);
    const Rational mass = p.integral(start, p.hi);
    if (mass.is_zero()) continue;
    if (remaining <= mass) return solve_in_piece(p, start, remaining, opts);
    remaining -= mass;
  }
  throw Error(ErrorCode::TargetUnreachable,
              "target " + target.str() + " exceeds remaining mass from " + a.str());
}

IntervalSet Valuation::support() const {
  std::vector<Interval> parts;
  for (const auto& p : pieces_) {
    if (p.density_slope().is_zero() && p.density_intercept().is_zero()) continue;
    parts.push_back({p.lo, p.hi});
  }
  return IntervalSet(std::move(parts));
}

bool Valuation::is_piecewise_constant() const {
  return std::all_of(pieces_.begin(), pieces_.end(),
                     [](const PieceSpec& p) { return p.density_slope().is_zero(); });
}

bool Valuation::is_piecewise_uniform() const {
  if (!is_piecewise_constant()) return false;
  const Rational* level = nullptr;
  for (const auto& p : pieces_) {
    const Rational& d = p.kind == PieceKind::Linear ? p.intercept : p.value;
    if (d.is_zero()) continue;
    if (level != nullptr && *level != d) return false;
    level = &d;
  }
  return true;
}

IntervalSet Valuation::uniform_set() const { return support(); }

}  // namespace cake
