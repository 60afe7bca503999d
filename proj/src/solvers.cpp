#include "satmp/solvers.hpp"

#include <algorithm>
#include <chrono>
#include <limits>

#include "satmp/error.hpp"

namespace satmp {

namespace {

using Clock = std::chrono::steady_clock;

double elapsed_ms(Clock::time_point start) {
  return std::chrono::duration<double, std::milli>(Clock::now() - start).count();
}

constexpr std::size_t kNotListed = std::numeric_limits<std::size_t>::max();

// Incremental true-literal counts and falsified-clause list shared by the
// local-search solvers.
class SearchState {
public:
  SearchState(const CnfFormula& formula, Assignment initial)
      : formula_(formula),
        occurrences_(2 * static_cast<std::size_t>(formula.num_vars())),
        true_count_(formula.num_clauses(), 0),
        unsat_pos_(formula.num_clauses(), kNotListed),
        delta_(formula.num_clauses(), 0),
        literal_mark_(2 * static_cast<std::size_t>(formula.num_vars()), 0) {
    for (std::size_t j = 0; j < formula.num_clauses(); ++j) {
      for (Literal lit : formula.clauses()[j]) occurrences_[lit.node_id()].push_back(j);
    }
    reset(std::move(initial));
  }

  void reset(Assignment a) {
    assignment_ = std::move(a);
    unsat_.clear();
    for (std::size_t j = 0; j < formula_.num_clauses(); ++j) {
      std::uint32_t count = 0;
      for (Literal lit : formula_.clauses()[j]) count += assignment_.satisfies(lit) ? 1 : 0;
      true_count_[j] = count;
      unsat_pos_[j] = kNotListed;
      if (count == 0) add_unsat(j);
    }
  }

  const Assignment& assignment() const noexcept { return assignment_; }
  bool satisfied() const noexcept { return unsat_.empty(); }
  const std::vector<std::size_t>& unsat() const noexcept { return unsat_; }

  void flip(Var v) {
    const Literal was_true = assignment_[v] ? Literal(v, Polarity::Positive) : Literal(v, Polarity::Negative);
    assignment_.flip(v);
    for (std::size_t j : occurrences_[was_true.node_id()]) {
      if (--true_count_[j] == 0) add_unsat(j);
    }
    for (std::size_t j : occurrences_[(~was_true).node_id()]) {
      if (true_count_[j]++ == 0) remove_unsat(j);
    }
  }

  struct FlipEffect {
    std::int64_t make = 0;
    std::int64_t breaks = 0;
  };

  FlipEffect flip_effect(Var v) {
    const Literal now_true = assignment_[v] ? Literal(v, Polarity::Positive) : Literal(v, Polarity::Negative);
    const auto& losing = occurrences_[now_true.node_id()];
    const auto& gaining = occurrences_[(~now_true).node_id()];
    for (std::size_t j : gaining) delta_[j] += 1;
    for (std::size_t j : losing) delta_[j] -= 1;
    FlipEffect effect;
    auto visit = [&](std::size_t j) {
      if (delta_[j] == kVisited) return;
      const bool before = true_count_[j] > 0;
      const bool after = static_cast<std::int64_t>(true_count_[j]) + delta_[j] > 0;
      if (!before && after) ++effect.make;
      if (before && !after) ++effect.breaks;
      delta_[j] = kVisited;
    };
    for (std::size_t j : gaining) visit(j);
    for (std::size_t j : losing) visit(j);
    for (std::size_t j : gaining) delta_[j] = 0;
    for (std::size_t j : losing) delta_[j] = 0;
    return effect;
  }

  /// Node ids of literals occurring in some falsified clause, ascending.
  std::vector<std::size_t> candidate_node_ids() {
    std::vector<std::size_t> ids;
    for (std::size_t j : unsat_) {
      for (Literal lit : formula_.clauses()[j]) {
        if (!literal_mark_[lit.node_id()]) {
          literal_mark_[lit.node_id()] = 1;
          ids.push_back(lit.node_id());
        }
      }
    }
    for (std::size_t id : ids) literal_mark_[id] = 0;
    std::sort(ids.begin(), ids.end());
    return ids;
  }

private:
  static constexpr std::int64_t kVisited = std::numeric_limits<std::int64_t>::min();

  void add_unsat(std::size_t j) {
    unsat_pos_[j] = unsat_.size();
    unsat_.push_back(j);
  }

  void remove_unsat(std::size_t j) {
    const std::size_t pos = unsat_pos_[j];
    const std::size_t last = unsat_.back();
    unsat_[pos] = last;
    unsat_pos_[last] = pos;
    unsat_.pop_back();
    unsat_pos_[j] = kNotListed;
  }

  const CnfFormula& formula_;
  std::vector<std::vector<std::size_t>> occurrences_;
  Assignment assignment_;
  std::vector<std::uint32_t> true_count_;
  std::vector<std::size_t> unsat_;
  std::vector<std::size_t> unsat_pos_;
  std::vector<std::int64_t> delta_;
  std::vector<std::uint8_t> literal_mark_;
};

std::vector<Literal> to_literals(const std::vector<std::size_t>& node_ids) {
  std::vector<Literal> out;
  out.reserve(node_ids.size());
  for (std::size_t id : node_ids) out.push_back(Literal::from_node_id(id));
  return out;
}

}  // namespace

std::pair<SolveResult, FlipTrace> walksat_paper_variant(const CnfFormula& formula, std::uint64_t seed,
                                                        std::uint64_t max_flips, const WalkSatPaperOptions& options) {
  const auto start = Clock::now();
  FlipTrace trace;
  trace.initial = seeded_initial_assignment(seed, formula.num_vars());
  SearchState state(formula, trace.initial);
  CoupledStream stream(seed, formula.num_vars());

  SolveStats stats;
  for (std::uint64_t k = 1;; ++k) {
    stats.iterations = k;
    if (state.satisfied()) {
      stats.wall_time_ms = elapsed_ms(start);
      return {SolveResult::sat(formula, state.assignment(), stats), std::move(trace)};
    }
    if (stats.flips == max_flips) break;
    const std::vector<std::size_t> candidates = state.candidate_node_ids();
    // Only empty clauses are falsified: nothing can ever be flipped.
    if (candidates.empty()) break;
    const std::span<const double> draws = stream.next();
    const Literal chosen = Literal::from_node_id(select_by_draw(candidates, draws, options.order));
    state.flip(chosen.var());
    ++stats.flips;
    if (options.record_trace) {
      trace.steps.push_back({k, chosen.var(), to_literals(candidates), state.assignment()});
    }
  }
  stats.wall_time_ms = elapsed_ms(start);
  return {SolveResult::unknown(stats), std::move(trace)};
}

std::pair<SolveResult, FlipTrace> walksat_classic(const CnfFormula& formula, std::uint64_t seed, double noise_p,
                                                  std::uint64_t max_flips, bool record_trace) {
  if (!(noise_p >= 0.0 && noise_p <= 1.0)) throw Error(ErrorCode::InvalidParams, "noise_p must lie in [0, 1]");
  const auto start = Clock::now();
  FlipTrace trace;
  trace.initial = seeded_initial_assignment(seed, formula.num_vars());
  SearchState state(formula, trace.initial);
  RngStream rng(seed, StreamTag::Search);

  SolveStats stats;
  std::vector<std::size_t> flippable;
  for (std::uint64_t k = 1;; ++k) {
    stats.iterations = k;
    if (state.satisfied()) {
      stats.wall_time_ms = elapsed_ms(start);
      return {SolveResult::sat(formula, state.assignment(), stats), std::move(trace)};
    }
    if (stats.flips == max_flips) break;
    flippable.clear();
    for (std::size_t j : state.unsat()) {
      if (!formula.clauses()[j].empty()) flippable.push_back(j);
    }
    if (flippable.empty()) break;
    // unsat() order depends on flip history but is itself deterministic.
    const Clause& clause = formula.clauses()[flippable[rng.below(flippable.size())]];

    Var chosen = 0;
    if (rng.uniform_open_closed() <= noise_p) {
      chosen = clause.literals()[rng.below(clause.size())].var();
    } else {
      std::int64_t best_break = std::numeric_limits<std::int64_t>::max();
      for (Literal lit : clause) {
        const std::int64_t b = state.flip_effect(lit.var()).breaks;
        if (b < best_break || (b == best_break && lit.var() < chosen)) {
          best_break = b;
          chosen = lit.var();
        }
      }
    }
    state.flip(chosen);
    ++stats.flips;
    if (record_trace) {
      std::vector<Literal> candidates = clause.literals();
      std::sort(candidates.begin(), candidates.end(),
                [](Literal x, Literal y) { return x.node_id() < y.node_id(); });
      trace.steps.push_back({k, chosen, std::move(candidates), state.assignment()});
    }
  }
  stats.wall_time_ms = elapsed_ms(start);
  return {SolveResult::unknown(stats), std::move(trace)};
}

SolveResult gsat(const CnfFormula& formula, std::uint64_t seed, std::uint64_t max_flips, std::uint64_t max_tries) {
  const auto start = Clock::now();
  const Var n = formula.num_vars();
  SearchState state(formula, seeded_initial_assignment(seed, n));
  RngStream rng(seed, StreamTag::Search);
  SolveStats stats;

  auto finish_sat = [&] {
    stats.wall_time_ms = elapsed_ms(start);
    return SolveResult::sat(formula, state.assignment(), stats);
  };
  if (state.satisfied()) return finish_sat();

  for (std::uint64_t attempt = 0; attempt < max_tries; ++attempt) {
    if (attempt > 0) {
      Assignment fresh(n);
      for (Var v = 1; v <= n; ++v) fresh.set(v, rng.coin());
      state.reset(std::move(fresh));
      if (state.satisfied()) return finish_sat();
    }
    for (std::uint64_t f = 0; f < max_flips && n > 0; ++f) {
      Var best = 1;
      std::int64_t best_gain = std::numeric_limits<std::int64_t>::min();
      for (Var v = 1; v <= n; ++v) {
        const auto effect = state.flip_effect(v);
        const std::int64_t gain = effect.make - effect.breaks;
        if (gain > best_gain) {
          best_gain = gain;
          best = v;
        }
      }
      state.flip(best);
      ++stats.flips;
      ++stats.iterations;
      if (state.satisfied()) return finish_sat();
    }
  }
  stats.wall_time_ms = elapsed_ms(start);
  return SolveResult::unknown(stats);
}

const char* dpll_event_name(DpllEventKind kind) noexcept {
  switch (kind) {
    case DpllEventKind::Decision: return "decision";
    case DpllEventKind::UnitPropagation: return "unit-propagation";
    case DpllEventKind::PureLiteral: return "pure-literal";
    case DpllEventKind::Backtrack: return "backtrack";
  }
  return "unknown";
}

std::vector<GraphFingerprint> DpllTrace::fingerprints() const {
  std::vector<GraphFingerprint> out;
  out.reserve(events.size() + 1);
  out.push_back(initial);
  for (const DpllEvent& e : events) out.push_back(e.residual);
  return out;
}

namespace {

class Dpll {
public:
  Dpll(const CnfFormula& formula, const DpllOptions& options)
      : num_vars_(formula.num_vars()), options_(options), values_(formula.num_vars(), kUnassigned) {}

  bool solve(std::vector<Clause> residual) { return search(std::move(residual)); }

  Assignment assignment() const {
    Assignment a(num_vars_);
    for (Var v = 1; v <= num_vars_; ++v) a.set(v, values_[v - 1] == kTrue);
    return a;
  }

  DpllTrace& trace() noexcept { return trace_; }
  SolveStats& stats() noexcept { return stats_; }

  GraphFingerprint fingerprint_of(const std::vector<Clause>& residual) const {
    return fingerprint(build_lcg(CnfFormula(num_vars_, residual)));
  }

private:
  static constexpr std::int8_t kUnassigned = -1;
  static constexpr std::int8_t kFalse = 0;
  static constexpr std::int8_t kTrue = 1;

  static std::vector<Clause> simplify(const std::vector<Clause>& residual, Literal lit) {
    std::vector<Clause> out;
    out.reserve(residual.size());
    for (const Clause& clause : residual) {
      if (clause.contains(lit)) continue;
      if (!clause.contains(~lit)) {
        out.push_back(clause);
        continue;
      }
      std::vector<Literal> kept;
      for (Literal x : clause) {
        if (x != ~lit) kept.push_back(x);
      }
      out.emplace_back(std::move(kept));
    }
    return out;
  }

  void record(DpllEventKind kind, Literal lit, const std::vector<Clause>& residual) {
    ++stats_.iterations;
    if (options_.record_trace) trace_.events.push_back({kind, lit, fingerprint_of(residual)});
  }

  void assign(Literal lit, std::vector<Var>& assigned_here) {
    values_[lit.var() - 1] = lit.negative() ? kFalse : kTrue;
    assigned_here.push_back(lit.var());
  }

  std::optional<Literal> find_pure(const std::vector<Clause>& residual) const {
    std::vector<std::uint8_t> seen(2 * static_cast<std::size_t>(num_vars_), 0);
    for (const Clause& clause : residual) {
      for (Literal lit : clause) seen[lit.node_id()] = 1;
    }
    for (Var v = 1; v <= num_vars_; ++v) {
      const bool pos = seen[Literal(v, Polarity::Positive).node_id()];
      const bool neg = seen[Literal(v, Polarity::Negative).node_id()];
      if (pos != neg) return Literal(v, pos ? Polarity::Positive : Polarity::Negative);
    }
    return std::nullopt;
  }

  bool search(std::vector<Clause> residual) {
    std::vector<Var> assigned_here;
    auto undo = [&] {
      for (Var v : assigned_here) values_[v - 1] = kUnassigned;
    };

    for (;;) {
      if (std::any_of(residual.begin(), residual.end(), [](const Clause& c) { return c.empty(); })) {
        undo();
        return false;
      }
      auto unit = std::find_if(residual.begin(), residual.end(), [](const Clause& c) { return c.size() == 1; });
      if (unit != residual.end()) {
        const Literal lit = unit->literals().front();
        assign(lit, assigned_here);
        residual = simplify(residual, lit);
        record(DpllEventKind::UnitPropagation, lit, residual);
        continue;
      }
      if (options_.pure_literal) {
        if (auto pure = find_pure(residual)) {
          assign(*pure, assigned_here);
          residual = simplify(residual, *pure);
          record(DpllEventKind::PureLiteral, *pure, residual);
          continue;
        }
      }
      break;
    }
    if (residual.empty()) return true;

    Var branch = num_vars_ + 1;
    for (const Clause& clause : residual) {
      for (Literal lit : clause) branch = std::min(branch, lit.var());
    }

    for (const Polarity polarity : {Polarity::Positive, Polarity::Negative}) {
      const Literal decision(branch, polarity);
      values_[branch - 1] = polarity == Polarity::Positive ? kTrue : kFalse;
      ++stats_.decisions;
      std::vector<Clause> child = simplify(residual, decision);
      record(DpllEventKind::Decision, decision, child);
      if (search(std::move(child))) return true;
      values_[branch - 1] = kUnassigned;
      record(DpllEventKind::Backtrack, decision, residual);
    }
    undo();
    return false;
  }

  Var num_vars_;
  DpllOptions options_;
  std::vector<std::int8_t> values_;
  DpllTrace trace_;
  SolveStats stats_;
};

}  // namespace

std::pair<SolveResult, DpllTrace> dpll(const CnfFormula& formula, const DpllOptions& options) {
  const auto start = Clock::now();
  Dpll solver(formula, options);
  if (options.record_trace) solver.trace().initial = solver.fingerprint_of(formula.clauses());
  const bool sat = solver.solve(formula.clauses());
  SolveStats stats = solver.stats();
  stats.wall_time_ms = elapsed_ms(start);
  DpllTrace trace = std::move(solver.trace());
  if (sat) return {SolveResult::sat(formula, solver.assignment(), stats), std::move(trace)};
  return {SolveResult::unsat(stats), std::move(trace)};
}

std::size_t count_graph_reconfigurations(std::span<const GraphFingerprint> sequence) {
  std::size_t changes = 0;
  for (std::size_t i = 1; i < sequence.size(); ++i) {
    if (sequence[i] != sequence[i - 1]) ++changes;
  }
  return changes;
}

std::size_t count_graph_reconfigurations(const DpllTrace& trace) {
  const auto sequence = trace.fingerprints();
  return count_graph_reconfigurations(sequence);
}

}  // namespace satmp
