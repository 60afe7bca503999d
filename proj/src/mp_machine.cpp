#include "satmp/mp_machine.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>

#include "satmp/error.hpp"
#include "satmp/rng.hpp"

namespace satmp {

double norm(std::span<const double> v) {
  double sum = 0.0;
  for (double x : v) sum += x * x;
  return std::sqrt(sum);
}

bool is_zero(std::span<const double> v) {
  return std::all_of(v.begin(), v.end(), [](double x) { return x == 0.0; });
}

bool same_vector(std::span<const double> a, std::span<const double> b) {
  return a.size() == b.size() && std::equal(a.begin(), a.end(), b.begin());
}

namespace {

void draw_unit_vector(RngStream& rng, std::span<double> out) {
  double length = 0.0;
  do {
    for (double& x : out) x = 2.0 * rng.uniform_open_closed() - 1.0;
    length = norm(out);
  } while (length < 1e-3);
  for (double& x : out) x /= length;
}

void check_dim(std::size_t dim) {
  if (dim == 0) throw Error(ErrorCode::InvalidParams, "embedding dimension must be at least 1");
}

}  // namespace

LiteralCodebook::LiteralCodebook(std::uint64_t seed, Var num_vars, std::size_t dim)
    : codes_(2 * static_cast<std::size_t>(num_vars), dim) {
  check_dim(dim);
  RngStream rng(seed, StreamTag::Codebook);
  for (Var v = 1; v <= num_vars; ++v) {
    auto t = codes_.row(2 * static_cast<std::size_t>(v - 1));
    auto f = codes_.row(2 * static_cast<std::size_t>(v - 1) + 1);
    draw_unit_vector(rng, t);
    draw_unit_vector(rng, f);
    if (same_vector(t, f)) {
      for (std::size_t i = 0; i < dim; ++i) f[i] = -t[i];
    }
  }
}

ClauseCodebook::ClauseCodebook(std::uint64_t seed, std::size_t num_clauses, std::size_t dim)
    : codes_(num_clauses, dim) {
  check_dim(dim);
  // Offset seed: a stream independent of the literal codewords.
  RngStream rng(seed ^ 0x5bd1e9955bd1e995ULL, StreamTag::Codebook);
  for (std::size_t j = 0; j < num_clauses; ++j) draw_unit_vector(rng, codes_.row(j));
}

InitialMachine init_state(const CnfFormula& formula, std::uint64_t seed, std::size_t dim) {
  const Var n = formula.num_vars();
  InitialMachine machine{EmbeddingState{EmbeddingTable(2 * static_cast<std::size_t>(n), dim),
                                        EmbeddingTable(formula.num_clauses(), dim), 0},
                         LiteralCodebook(seed, n, dim), ClauseCodebook(seed, formula.num_clauses(), dim)};
  const Assignment initial = seeded_initial_assignment(seed, n);
  for (Var v = 1; v <= n; ++v) {
    const auto pos = machine.state.literals.row(Literal(v, Polarity::Positive).node_id());
    const auto neg = machine.state.literals.row(Literal(v, Polarity::Negative).node_id());
    const auto t = machine.literal_codes.true_code(v);
    const auto f = machine.literal_codes.false_code(v);
    std::copy(t.begin(), t.end(), initial[v] ? pos.begin() : neg.begin());
    std::copy(f.begin(), f.end(), initial[v] ? neg.begin() : pos.begin());
  }
  for (std::size_t j = 0; j < formula.num_clauses(); ++j) {
    const auto c = machine.clause_codes.code(j);
    std::copy(c.begin(), c.end(), machine.state.clauses.row(j).begin());
  }
  return machine;
}

Assignment decode_assignment(const EmbeddingState& state, const LiteralCodebook& codes) {
  const Var n = codes.num_vars();
  if (state.literals.rows() != 2 * static_cast<std::size_t>(n)) {
    throw Error(ErrorCode::CorruptState, "literal table does not match the codebook");
  }
  Assignment a(n);
  for (Var v = 1; v <= n; ++v) {
    const auto pos = state.literals.row(Literal(v, Polarity::Positive).node_id());
    const auto neg = state.literals.row(Literal(v, Polarity::Negative).node_id());
    const auto t = codes.true_code(v);
    const auto f = codes.false_code(v);
    if (same_vector(pos, t) && same_vector(neg, f)) {
      a.set(v, true);
    } else if (same_vector(pos, f) && same_vector(neg, t)) {
      a.set(v, false);
    } else {
      throw Error(ErrorCode::CorruptState, "embedding pair of variable " + std::to_string(v) + " is not {t, f}");
    }
  }
  return a;
}

bool ClauseOracle::satisfied(const EmbeddingState& state, std::size_t j) const {
  for (Literal u : graph_.literals_of(j)) {
    if (same_vector(state.literals.row(u.node_id()), codes_.true_code(u.var()))) return true;
  }
  return false;
}

void clause_aggregate(const EmbeddingState& state, std::size_t j, const ClauseOracle& oracle,
                      const ClauseCodebook& clause_codes, std::span<double> out) {
  if (oracle.satisfied(state, j)) {
    const auto c = clause_codes.code(j);
    std::copy(c.begin(), c.end(), out.begin());
  } else {
    std::fill(out.begin(), out.end(), 0.0);
  }
}

void clause_combine(std::span<const double> prev, std::span<const double> msg, std::span<const double> init,
                    std::span<double> out) {
  const bool prev_ok = is_zero(prev) || same_vector(prev, init);
  const bool msg_ok = is_zero(msg) || same_vector(msg, init);
  if (!prev_ok || !msg_ok) {
    throw Error(ErrorCode::DomainViolation, "clause embedding or message outside {c_j, 0}");
  }
  // out may alias prev; decide the branch before writing.
  enum { Keep, Reset, Clear } branch;
  if (same_vector(prev, msg)) {
    branch = Keep;
  } else if (norm(prev) < norm(msg)) {
    branch = Reset;
  } else {
    branch = Clear;
  }
  switch (branch) {
    case Keep:
      if (out.data() != prev.data()) std::copy(prev.begin(), prev.end(), out.begin());
      break;
    case Reset: std::copy(init.begin(), init.end(), out.begin()); break;
    case Clear: std::fill(out.begin(), out.end(), 0.0); break;
  }
}

void literal_aggregate(const EmbeddingTable& clause_embeddings, std::span<const std::size_t> neighborhood,
                       double draw, std::span<double> out) {
  std::fill(out.begin(), out.end(), 0.0);
  // Product of norms is zero iff some factor is zero; the empty product is 1.
  const bool touches_falsified =
      std::any_of(neighborhood.begin(), neighborhood.end(),
                  [&](std::size_t j) { return is_zero(clause_embeddings.row(j)); });
  if (touches_falsified) {
    if (!(draw > 0.0 && draw <= 1.0)) throw Error(ErrorCode::InvalidParams, "epsilon norm must lie in (0, 1]");
    out[0] = draw;
  }
}

std::optional<Var> literal_combine(const EmbeddingTable& literal_messages, EmbeddingState& state) {
  std::optional<std::size_t> best;
  double best_norm = 0.0;
  for (std::size_t id = 0; id < literal_messages.rows(); ++id) {
    const double n = norm(literal_messages.row(id));
    if (n > best_norm) {
      best_norm = n;
      best = id;
    }
  }
  if (!best) return std::nullopt;
  const Literal chosen = Literal::from_node_id(*best);
  auto a = state.literals.row(Literal(chosen.var(), Polarity::Positive).node_id());
  auto b = state.literals.row(Literal(chosen.var(), Polarity::Negative).node_id());
  std::swap_ranges(a.begin(), a.end(), b.begin());
  return chosen.var();
}

std::vector<std::size_t> MpStepReport::unsat_clause_indices() const {
  std::vector<std::size_t> out;
  for (std::size_t j = 0; j < clause_verdicts.size(); ++j) {
    if (!clause_verdicts[j]) out.push_back(j);
  }
  return out;
}

MpStepReport mp_step(EmbeddingState& state, const LcgGraph& graph, const LiteralCodebook& literal_codes,
                     const ClauseCodebook& clause_codes, std::span<const double> draws, MessageBuffer& messages,
                     double epsilon_scale) {
  const std::size_t dim = literal_codes.dim();
  const std::size_t m = graph.num_clause_nodes();
  const std::size_t literal_nodes = graph.num_literal_nodes();
  if (draws.size() != literal_nodes) throw Error(ErrorCode::InvalidParams, "one draw per literal node required");
  if (messages.clauses.rows() != m || messages.clauses.dim() != dim) messages.clauses = EmbeddingTable(m, dim);
  if (messages.literals.rows() != literal_nodes || messages.literals.dim() != dim) {
    messages.literals = EmbeddingTable(literal_nodes, dim);
  }

  MpStepReport report;
  report.k = state.iteration + 1;
  report.clause_verdicts.resize(m);

  // Clause phase reads literal embeddings from iteration k-1.
  const ClauseOracle oracle(graph, literal_codes);
  for (std::size_t j = 0; j < m; ++j) {
    clause_aggregate(state, j, oracle, clause_codes, messages.clauses.row(j));
    report.clause_verdicts[j] = is_zero(messages.clauses.row(j)) ? 0 : 1;
  }
  for (std::size_t j = 0; j < m; ++j) {
    clause_combine(state.clauses.row(j), messages.clauses.row(j), clause_codes.code(j), state.clauses.row(j));
  }

  // Literal phase reads the clause embeddings just written.
  for (std::size_t id = 0; id < literal_nodes; ++id) {
    const Literal lit = Literal::from_node_id(id);
    literal_aggregate(state.clauses, graph.clauses_of(lit), draws[id] * epsilon_scale, messages.literals.row(id));
    if (!is_zero(messages.literals.row(id))) report.candidates.push_back(lit);
  }
  report.flipped = literal_combine(messages.literals, state);
  report.fixed_point = !report.flipped.has_value();
  state.iteration = report.k;
  report.assignment = decode_assignment(state, literal_codes);
  return report;
}

MpMachine::MpMachine(const CnfFormula& formula, const MpRunConfig& config)
    : formula_(formula),
      config_(config),
      graph_(formula_),
      literal_codes_(config.seed, formula_.num_vars(), config.dim),
      clause_codes_(config.seed, formula_.num_clauses(), config.dim),
      stream_(config.seed, formula_.num_vars()) {
  if (!(config.epsilon_scale > 0.0 && config.epsilon_scale <= 1.0)) {
    throw Error(ErrorCode::InvalidParams, "epsilon_scale must lie in (0, 1]");
  }
  state_ = init_state(formula_, config.seed, config.dim).state;
}

MpStepReport MpMachine::step() {
  MpStepReport report =
      mp_step(state_, graph_, literal_codes_, clause_codes_, stream_.next(), messages_, config_.epsilon_scale);
  if (config_.record_graph_fingerprints) report.graph = fingerprint(graph_);
  return report;
}

MpRunResult mp_run(const CnfFormula& formula, const MpRunConfig& config) {
  const auto start = std::chrono::steady_clock::now();
  auto elapsed = [&] {
    return std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start).count();
  };

  MpMachine machine(formula, config);
  MpRunResult run{SolveResult::unknown(), machine.decode(), {}};
  SolveStats stats;
  for (std::uint64_t k = 1; k <= config.max_iterations; ++k) {
    MpStepReport report = machine.step();
    stats.iterations = k;
    if (report.flipped) ++stats.flips;
    const bool fixed_point = report.fixed_point;
    Assignment decoded = report.assignment;
    if (config.record_trace) run.reports.push_back(std::move(report));
    if (fixed_point) {
      stats.wall_time_ms = elapsed();
      // The verdict comes from evaluate, not from the embeddings.
      run.result = evaluate(formula, decoded) ? SolveResult::sat(formula, std::move(decoded), stats)
                                              : SolveResult::unknown(stats);
      return run;
    }
  }
  stats.wall_time_ms = elapsed();
  run.result = SolveResult::unknown(stats);
  return run;
}

}  // namespace satmp
