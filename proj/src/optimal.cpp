#include "cake/optimal.hpp"

#include "cake/error.hpp"

#include <algorithm>
#include <ostream>

namespace cake {

Segmentation segment(std::span<const Valuation> valuations) {
  std::vector<Rational> marks{Rational(0), Rational(1)};
  for (const auto& v : valuations) {
    for (const auto& p : v.pieces()) {
      marks.push_back(p.lo);
      marks.push_back(p.hi);
    }
  }
  // Crossings of two densities inside the overlap of two pieces.
  for (std::size_t i = 0; i < valuations.size(); ++i) {
    for (std::size_t j = i + 1; j < valuations.size(); ++j) {
      for (const auto& p : valuations[i].pieces()) {
        for (const auto& q : valuations[j].pieces()) {
          const Rational lo = max(p.lo, q.lo);
          const Rational hi = min(p.hi, q.hi);
          if (!(lo < hi)) continue;
          const Rational ds = p.density_slope() - q.density_slope();
          if (ds.is_zero()) continue;
          const Rational x = (q.density_intercept() - p.density_intercept()) / ds;
          if (lo < x && x < hi) marks.push_back(x);
        }
      }
    }
  }
  std::sort(marks.begin(), marks.end());
  marks.erase(std::unique(marks.begin(), marks.end()), marks.end());
  return {std::move(marks)};
}

SegmentRateMatrix segment_rates(std::span<const Valuation> valuations, const Segmentation& seg) {
  SegmentRateMatrix m;
  m.rate.reserve(valuations.size());
  for (const auto& v : valuations) {
    if (!v.is_piecewise_constant()) {
      throw Error(ErrorCode::UnsupportedValuationClass, "segment rates need piecewise constant valuations");
    }
    std::vector<Rational> row;
    row.reserve(seg.size());
    for (std::size_t s = 0; s < seg.size(); ++s) {
      const Interval iv = seg.segment(s);
      row.push_back(v.density_at((iv.lo + iv.hi) / Rational(2)));
    }
    m.rate.push_back(std::move(row));
  }
  return m;
}

Allocation utilitarian_optimal(std::span<const Valuation> valuations) {
  const Segmentation seg = segment(valuations);
  Allocation a(valuations.size());
  if (valuations.empty()) return a;
  for (std::size_t s = 0; s < seg.size(); ++s) {
    const Interval iv = seg.segment(s);
    const Rational mid = (iv.lo + iv.hi) / Rational(2);
    std::size_t best = 0;
    Rational top = valuations[0].density_at(mid);
    for (std::size_t i = 1; i < valuations.size(); ++i) {
      Rational d = valuations[i].density_at(mid);
      if (d > top) {
        top = std::move(d);
        best = i;
      }
    }
    a.portions[best] = a.portions[best].unite(IntervalSet::single(iv.lo, iv.hi));
  }
  return a;
}

const char* to_string(FairnessConstraint c) {
  switch (c) {
    case FairnessConstraint::None: return "none";
    case FairnessConstraint::Proportional: return "proportional";
    case FairnessConstraint::EnvyFree: return "envy-free";
    case FairnessConstraint::Equitable: return "equitable";
  }
  return "?";
}

FairnessConstraint parse_fairness_constraint(const std::string& name) {
  if (name == "none") return FairnessConstraint::None;
  if (name == "proportional") return FairnessConstraint::Proportional;
  if (name == "envy-free") return FairnessConstraint::EnvyFree;
  if (name == "equitable") return FairnessConstraint::Equitable;
  throw Error(ErrorCode::ParseError, "unknown criterion '" + name + "'");
}

namespace {

// Only pairs (agent, segment) with a positive rate get a variable. Handing an
// agent cake it does not value never raises any objective used here and can
// only add envy, so the optima are unchanged.
struct SegmentLp {
  Segmentation seg;
  SegmentRateMatrix rates;
  std::vector<std::pair<std::size_t, std::size_t>> vars;  // (agent, segment)
  LpProblem problem;

  explicit SegmentLp(std::span<const Valuation> valuations, std::size_t extra_vars = 0)
      : seg(segment(valuations)), rates(segment_rates(valuations, seg)) {
    for (std::size_t i = 0; i < valuations.size(); ++i) {
      for (std::size_t s = 0; s < seg.size(); ++s) {
        if (rates.rate[i][s].sign() > 0) vars.emplace_back(i, s);
      }
    }
    problem = LpProblem(vars.size() + extra_vars);
    for (std::size_t s = 0; s < seg.size(); ++s) {
      LpConstraint row{std::vector<Rational>(problem.num_vars), Relation::LessEq, seg.segment(s).length()};
      bool used = false;
      for (std::size_t k = 0; k < vars.size(); ++k) {
        if (vars[k].second == s) {
          row.coeffs[k] = 1;
          used = true;
        }
      }
      if (used) problem.constraints.push_back(std::move(row));
    }
  }

  // Adds sign * u_viewer(A_holder) into `coeffs`.
  void add_utility(std::vector<Rational>& coeffs, std::size_t viewer, std::size_t holder, const Rational& sign) const {
    for (std::size_t k = 0; k < vars.size(); ++k) {
      if (vars[k].first != holder) continue;
      const Rational& r = rates.rate[viewer][vars[k].second];
      if (!r.is_zero()) coeffs[k] += sign * r;
    }
  }

  void maximise_ue() {
    for (std::size_t i = 0; i < rates.rate.size(); ++i) add_utility(problem.objective, i, i, Rational(1));
  }

  Allocation materialise(const std::vector<Rational>& x) const {
    const std::size_t n = rates.rate.size();
    Allocation a(n);
    std::vector<Rational> cursor(seg.marks.begin(), seg.marks.end() - 1);
    // vars are ordered by agent, so each segment fills in agent order.
    for (std::size_t k = 0; k < vars.size(); ++k) {
      if (x[k].sign() <= 0) continue;
      const auto [i, s] = vars[k];
      const Rational end = cursor[s] + x[k];
      a.portions[i] = a.portions[i].unite(IntervalSet::single(cursor[s], end));
      cursor[s] = end;
    }
    return a;
  }

  OptimumResult solve(const LpOptions& opts) const {
    OptimumResult r;
    r.lp = lp_solve(problem, opts);
    if (r.lp.status != LpStatus::Optimal) {
      throw Error(ErrorCode::Infeasible, std::string("welfare program is ") + to_string(r.lp.status));
    }
    r.value = r.lp.value;
    r.allocation = materialise(r.lp.x);
    return r;
  }
};

}  // namespace

OptimumResult max_ue(std::span<const Valuation> valuations, FairnessConstraint constraint, const LpOptions& opts) {
  SegmentLp lp(valuations);
  const std::size_t n = valuations.size();
  lp.maximise_ue();
  switch (constraint) {
    case FairnessConstraint::None: break;
    case FairnessConstraint::Proportional:
      for (std::size_t i = 0; i < n; ++i) {
        auto& row = lp.problem.add_row(Relation::GreaterEq, Rational(1, static_cast<long>(n)));
        lp.add_utility(row.coeffs, i, i, Rational(1));
      }
      break;
    case FairnessConstraint::EnvyFree:
      for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = 0; j < n; ++j) {
          if (i == j) continue;
          auto& row = lp.problem.add_row(Relation::GreaterEq, Rational(0));
          lp.add_utility(row.coeffs, i, i, Rational(1));
          lp.add_utility(row.coeffs, i, j, Rational(-1));
        }
      }
      break;
    case FairnessConstraint::Equitable:
      for (std::size_t i = 1; i < n; ++i) {
        auto& row = lp.problem.add_row(Relation::Equal, Rational(0));
        lp.add_utility(row.coeffs, 0, 0, Rational(1));
        lp.add_utility(row.coeffs, i, i, Rational(-1));
      }
      break;
  }
  return lp.solve(opts);
}

OptimumResult max_ee(std::span<const Valuation> valuations, const LpOptions& opts) {
  SegmentLp lp(valuations, 1);
  const std::size_t t = lp.problem.num_vars - 1;
  lp.problem.objective[t] = 1;
  for (std::size_t i = 0; i < valuations.size(); ++i) {
    auto& row = lp.problem.add_row(Relation::GreaterEq, Rational(0));
    lp.add_utility(row.coeffs, i, i, Rational(1));
    row.coeffs[t] = -1;
  }
  OptimumResult r = lp.solve(opts);
  return r;
}

bool pareto_oracle(std::span<const Valuation> valuations, const Allocation& allocation) {
  const std::vector<Rational> current = utilities(valuations, allocation);
  SegmentLp lp(valuations);
  lp.maximise_ue();
  Rational total;
  for (std::size_t i = 0; i < valuations.size(); ++i) {
    auto& row = lp.problem.add_row(Relation::GreaterEq, current[i]);
    lp.add_utility(row.coeffs, i, i, Rational(1));
    total += current[i];
  }
  return lp.solve({}).value == total;
}

Rational price_of(std::span<const Valuation> valuations, FairnessConstraint constraint) {
  return max_ue(valuations, FairnessConstraint::None).value / max_ue(valuations, constraint).value;
}

PriceRow price_row(std::string instance, std::span<const Valuation> valuations, FairnessConstraint constraint) {
  PriceRow row;
  row.instance = std::move(instance);
  row.agents = valuations.size();
  row.unconstrained = max_ue(valuations, FairnessConstraint::None).value;
  row.constrained = max_ue(valuations, constraint).value;
  row.ratio = row.unconstrained / row.constrained;
  return row;
}

void write_price_csv(std::ostream& os, std::span<const PriceRow> rows, bool header) {
  if (header) os << "instance,n,ue_opt,constrained_ue,ratio\n";
  for (const auto& r : rows) {
    os << r.instance << ',' << r.agents << ',' << r.unconstrained << ',' << r.constrained << ',' << r.ratio << '\n';
  }
}

}  // namespace cake
