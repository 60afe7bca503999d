#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <vector>

#include "satmp/coupling.hpp"
#include "satmp/formula.hpp"
#include "satmp/lcg.hpp"

namespace satmp {

/// Row-major table of fixed-width real vectors.
class EmbeddingTable {
public:
  EmbeddingTable() = default;
  EmbeddingTable(std::size_t rows, std::size_t dim) : rows_(rows), dim_(dim), data_(rows * dim, 0.0) {}

  std::size_t rows() const noexcept { return rows_; }
  std::size_t dim() const noexcept { return dim_; }
  std::span<double> row(std::size_t i) { return {data_.data() + i * dim_, dim_}; }
  std::span<const double> row(std::size_t i) const { return {data_.data() + i * dim_, dim_}; }

  friend bool operator==(const EmbeddingTable&, const EmbeddingTable&) = default;

private:
  std::size_t rows_ = 0;
  std::size_t dim_ = 0;
  std::vector<double> data_;
};

double norm(std::span<const double> v);
bool is_zero(std::span<const double> v);
bool same_vector(std::span<const double> a, std::span<const double> b);

/// Per-variable "true" and "false" codewords, unit norm, distinct.
class LiteralCodebook {
public:
  LiteralCodebook(std::uint64_t seed, Var num_vars, std::size_t dim);

  Var num_vars() const noexcept { return static_cast<Var>(codes_.rows() / 2); }
  std::size_t dim() const noexcept { return codes_.dim(); }
  std::span<const double> true_code(Var v) const { return codes_.row(2 * static_cast<std::size_t>(v - 1)); }
  std::span<const double> false_code(Var v) const { return codes_.row(2 * static_cast<std::size_t>(v - 1) + 1); }

private:
  EmbeddingTable codes_;
};

/// Per-clause initial embeddings, unit norm.
class ClauseCodebook {
public:
  ClauseCodebook(std::uint64_t seed, std::size_t num_clauses, std::size_t dim);

  std::size_t dim() const noexcept { return codes_.dim(); }
  std::span<const double> code(std::size_t j) const { return codes_.row(j); }

private:
  EmbeddingTable codes_;
};

struct EmbeddingState {
  EmbeddingTable literals;  // 2n rows, indexed by Literal::node_id()
  EmbeddingTable clauses;   // m rows
  std::uint64_t iteration = 0;

  friend bool operator==(const EmbeddingState&, const EmbeddingState&) = default;
};

struct MessageBuffer {
  EmbeddingTable literals;
  EmbeddingTable clauses;
};

struct InitialMachine {
  EmbeddingState state;
  LiteralCodebook literal_codes;
  ClauseCodebook clause_codes;
};

/// Codebooks plus the encoding of the seeded initial assignment
/// (the same assignment the literal-uniform WalkSAT starts from).
InitialMachine init_state(const CnfFormula& formula, std::uint64_t seed, std::size_t dim);

/// x_i is true iff h_{x_i} is exactly t_i. Throws CorruptState when the pair
/// for some variable is not {t_i, f_i}.
Assignment decode_assignment(const EmbeddingState& state, const LiteralCodebook& codes);

/// Exact clause-satisfaction oracle over literal embeddings: a literal u is
/// true iff h_u equals its variable's true codeword.
class ClauseOracle {
public:
  ClauseOracle(const LcgGraph& graph, const LiteralCodebook& codes) : graph_(graph), codes_(codes) {}

  bool satisfied(const EmbeddingState& state, std::size_t j) const;

private:
  const LcgGraph& graph_;
  const LiteralCodebook& codes_;
};

/// Writes c_j to out if the oracle accepts clause j, else zero.
void clause_aggregate(const EmbeddingState& state, std::size_t j, const ClauseOracle& oracle,
                      const ClauseCodebook& clause_codes, std::span<double> out);

/// prev == msg -> prev; |prev| < |msg| -> init; otherwise zero. Throws
/// DomainViolation if prev or msg is neither init nor zero.
void clause_combine(std::span<const double> prev, std::span<const double> msg, std::span<const double> init,
                    std::span<double> out);

/// Zero message unless some neighbouring clause embedding is zero, in which
/// case out = draw * e_0 with draw in (0, 1]. An empty neighbourhood yields zero.
void literal_aggregate(const EmbeddingTable& clause_embeddings, std::span<const std::size_t> neighborhood,
                       double draw, std::span<double> out);

/// Swaps the embedding pair of the literal with the largest message norm
/// (ties: lowest node id) and returns its variable; no-op when all messages
/// are zero.
std::optional<Var> literal_combine(const EmbeddingTable& literal_messages, EmbeddingState& state);

struct MpStepReport {
  std::uint64_t k = 0;
  std::vector<std::uint8_t> clause_verdicts;  // 1 = satisfied
  std::vector<Literal> candidates;            // {v : m_v != 0}, node-id order
  std::optional<Var> flipped;
  bool fixed_point = false;
  Assignment assignment;  // decoded after the step
  std::optional<GraphFingerprint> graph;

  std::vector<std::size_t> unsat_clause_indices() const;
};

inline constexpr std::size_t kDefaultDim = 8;
inline constexpr std::uint64_t kDefaultMaxIterations = 100000;

struct MpRunConfig {
  std::uint64_t max_iterations = kDefaultMaxIterations;
  std::size_t dim = kDefaultDim;
  std::uint64_t seed = 0;
  /// Upper bound on |epsilon|; norms are draw * epsilon_scale.
  double epsilon_scale = 1.0;
  bool record_trace = true;
  /// Fingerprint the graph consulted at every step (costly; for the static-graph demo).
  bool record_graph_fingerprints = false;
};

/// One formula's machine: immutable graph and codebooks, evolving state.
class MpMachine {
public:
  MpMachine(const CnfFormula& formula, const MpRunConfig& config);

  MpMachine(const MpMachine&) = delete;
  MpMachine& operator=(const MpMachine&) = delete;

  MpStepReport step();

  const EmbeddingState& state() const noexcept { return state_; }
  const MessageBuffer& messages() const noexcept { return messages_; }
  const LiteralCodebook& literal_codes() const noexcept { return literal_codes_; }
  const ClauseCodebook& clause_codes() const noexcept { return clause_codes_; }
  const LcgGraph& graph() const noexcept { return graph_; }
  Assignment decode() const { return decode_assignment(state_, literal_codes_); }

private:
  CnfFormula formula_;
  MpRunConfig config_;
  LcgGraph graph_;
  LiteralCodebook literal_codes_;
  ClauseCodebook clause_codes_;
  EmbeddingState state_;
  MessageBuffer messages_;
  CoupledStream stream_;
};

/// One step of the schedule on an explicit state: every clause aggregates
/// and combines first, then every literal aggregates over the updated clause
/// embeddings, then a single global literal combine.
MpStepReport mp_step(EmbeddingState& state, const LcgGraph& graph, const LiteralCodebook& literal_codes,
                     const ClauseCodebook& clause_codes, std::span<const double> draws, MessageBuffer& messages,
                     double epsilon_scale = 1.0);

struct MpRunResult {
  SolveResult result;
  Assignment initial;
  std::vector<MpStepReport> reports;
};

/// Steps until a fixed point or max_iterations. A fixed point whose decoded
/// assignment fails evaluation (empty clause) ends the run as Unknown. Never
/// returns Unsat.
MpRunResult mp_run(const CnfFormula& formula, const MpRunConfig& config);

}  // namespace satmp
