#pragma once

// Agents as Robertson-Webb oracles, and the query transcript a protocol run
// leaves behind.

#include "cake/allocation.hpp"
#include "cake/rational.hpp"
#include "cake/valuation.hpp"

#include <cstdint>
#include <functional>
#include <iosfwd>
#include <memory>
#include <random>
#include <string>
#include <vector>

namespace cake {

/// An agent that answers eval(a, b) and cut(a, target) queries.
class AgentOracle {
public:
  virtual ~AgentOracle() = default;
  virtual Rational eval(const Rational& a, const Rational& b) = 0;
  virtual Rational cut(const Rational& a, const Rational& target) = 0;
};

/// Answers straight from a valuation.
class SincereOracle final : public AgentOracle {
public:
  explicit SincereOracle(Valuation v, CutOptions opts = {}) : v_(std::move(v)), opts_(std::move(opts)) {}

  Rational eval(const Rational& a, const Rational& b) override { return v_.eval(a, b); }
  Rational cut(const Rational& a, const Rational& target) override;

  [[nodiscard]] const Valuation& valuation() const { return v_; }
  /// Number of cut answers that came from bisection rather than an exact root.
  [[nodiscard]] std::size_t inexact_cuts() const { return inexact_; }

private:
  Valuation v_;
  CutOptions opts_;
  std::size_t inexact_ = 0;
};

/// Answers with seeded random values: eval in [0,1], cut in [a,1] on a grid
/// of denominator 64. Models an agent ignoring the protocol entirely.
class DistortingOracle final : public AgentOracle {
public:
  explicit DistortingOracle(std::uint64_t seed) : rng_(seed) {}

  Rational eval(const Rational& a, const Rational& b) override;
  Rational cut(const Rational& a, const Rational& target) override;

private:
  Rational grid_point(const Rational& from);
  std::mt19937_64 rng_;
};

enum class QueryKind { Eval, Cut };

struct QueryRecord {
  std::size_t agent = 0;
  QueryKind kind = QueryKind::Eval;
  Rational arg1;  // a
  Rational arg2;  // b for eval, target for cut
  Rational response;

  friend bool operator==(const QueryRecord&, const QueryRecord&) = default;
};

class QueryTranscript {
public:
  explicit QueryTranscript(std::size_t agents = 0) : eval_counts_(agents), cut_counts_(agents) {}

  void record(QueryRecord r);

  [[nodiscard]] const std::vector<QueryRecord>& records() const { return records_; }
  [[nodiscard]] std::size_t total() const { return records_.size(); }
  [[nodiscard]] std::size_t eval_count() const;
  [[nodiscard]] std::size_t cut_count() const;
  [[nodiscard]] std::size_t eval_count(std::size_t agent) const { return eval_counts_.at(agent); }
  [[nodiscard]] std::size_t cut_count(std::size_t agent) const { return cut_counts_.at(agent); }
  [[nodiscard]] std::size_t agent_count() const { return eval_counts_.size(); }

  /// Line-delimited "agent,kind,args,response" records; args are ';'-separated.
  void write_lines(std::ostream& os) const;

  friend bool operator==(const QueryTranscript&, const QueryTranscript&) = default;

private:
  std::vector<QueryRecord> records_;
  std::vector<std::size_t> eval_counts_;
  std::vector<std::size_t> cut_counts_;
};

using OracleSet = std::vector<std::shared_ptr<AgentOracle>>;

OracleSet sincere_oracles(const std::vector<Valuation>& valuations, const CutOptions& opts = {});

/// Routes every query to the right oracle and records it.
class QuerySession {
public:
  explicit QuerySession(OracleSet oracles);

  Rational eval(std::size_t agent, const Rational& a, const Rational& b);
  Rational cut(std::size_t agent, const Rational& a, const Rational& target);

  [[nodiscard]] std::size_t agent_count() const { return oracles_.size(); }
  [[nodiscard]] const QueryTranscript& transcript() const { return transcript_; }
  QueryTranscript take_transcript() { return std::move(transcript_); }

private:
  OracleSet oracles_;
  QueryTranscript transcript_;
};

/// Re-issues every recorded query and reports whether all responses match.
bool replay_matches(const QueryTranscript& transcript, const OracleSet& oracles);

struct MechanismResult {
  Allocation allocation;
  QueryTranscript transcript;
};

}  // namespace cake
