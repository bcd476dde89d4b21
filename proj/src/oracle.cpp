#include "cake/oracle.hpp"

#include <algorithm>
#include <ostream>

namespace cake {

Rational SincereOracle::cut(const Rational& a, const Rational& target) {
  const CutResult r = v_.cut(a, target, opts_);
  if (!r.exact) ++inexact_;
  return r.point;
}

Rational DistortingOracle::grid_point(const Rational& from) {
  // Uniform over {from} and the grid points k/64 >= from.
  mpz_class first;
  const mpz_class scaled = from.num() * 64;
  const mpz_class den = from.den();
  mpz_cdiv_q(first.get_mpz_t(), scaled.get_mpz_t(), den.get_mpz_t());
  const long lowest = std::min<long>(first.get_si(), 65);
  const auto choices = static_cast<std::uint64_t>(64 - lowest + 2);
  const auto pick = static_cast<long>(rng_() % choices);
  if (pick == 0) return from;
  return Rational(lowest + pick - 1, 64);
}

Rational DistortingOracle::eval(const Rational&, const Rational&) {
  return Rational(static_cast<long>(rng_() % 65), 64);
}

Rational DistortingOracle::cut(const Rational& a, const Rational&) { return grid_point(a); }

void QueryTranscript::record(QueryRecord r) {
  if (r.agent >= eval_counts_.size()) {
    eval_counts_.resize(r.agent + 1);
    cut_counts_.resize(r.agent + 1);
  }
  ++(r.kind == QueryKind::Eval ? eval_counts_ : cut_counts_)[r.agent];
  records_.push_back(std::move(r));
}

std::size_t QueryTranscript::eval_count() const {
  std::size_t n = 0;
  for (auto c : eval_counts_) n += c;
  return n;
}

std::size_t QueryTranscript::cut_count() const {
  std::size_t n = 0;
  for (auto c : cut_counts_) n += c;
  return n;
}

void QueryTranscript::write_lines(std::ostream& os) const {
  for (const auto& r : records_) {
    os << r.agent << ',' << (r.kind == QueryKind::Eval ? "eval" : "cut") << ',' << r.arg1 << ';' << r.arg2 << ','
       << r.response << '\n';
  }
}

OracleSet sincere_oracles(const std::vector<Valuation>& valuations, const CutOptions& opts) {
  OracleSet out;
  out.reserve(valuations.size());
  for (const auto& v : valuations) out.push_back(std::make_shared<SincereOracle>(v, opts));
  return out;
}

QuerySession::QuerySession(OracleSet oracles)
    : oracles_(std::move(oracles)), transcript_(oracles_.size()) {}

Rational QuerySession::eval(std::size_t agent, const Rational& a, const Rational& b) {
  Rational r = oracles_.at(agent)->eval(a, b);
  transcript_.record({agent, QueryKind::Eval, a, b, r});
  return r;
}

Rational QuerySession::cut(std::size_t agent, const Rational& a, const Rational& target) {
  Rational r = oracles_.at(agent)->cut(a, target);
  transcript_.record({agent, QueryKind::Cut, a, target, r});
  return r;
}

bool replay_matches(const QueryTranscript& transcript, const OracleSet& oracles) {
  for (const auto& r : transcript.records()) {
    if (r.agent >= oracles.size()) return false;
    auto& o = *oracles[r.agent];
    const Rational got = r.kind == QueryKind::Eval ? o.eval(r.arg1, r.arg2) : o.cut(r.arg1, r.arg2);
    if (got != r.response) return false;
  }
  return true;
}

}  // namespace cake
