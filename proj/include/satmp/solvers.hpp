#pragma once

#include <cstdint>
#include <span>
#include <utility>
#include <vector>

#include "satmp/coupling.hpp"
#include "satmp/formula.hpp"
#include "satmp/lcg.hpp"

namespace satmp {

struct FlipStep {
  std::uint64_t iteration = 0;  // 1-based
  Var flipped = 0;
  std::vector<Literal> candidates;  // sorted by node id
  Assignment after;
};

struct FlipTrace {
  Assignment initial;
  std::vector<FlipStep> steps;
};

struct WalkSatPaperOptions {
  bool record_trace = true;
  SelectionOrder order = SelectionOrder::HighestDraw;
};

/// Literal-uniform WalkSAT: the candidate set is every literal occurring in
/// at least one falsified clause; the pick is argmax of the coupled draws
/// over that set. Checks for success before each flip and after the last.
std::pair<SolveResult, FlipTrace> walksat_paper_variant(const CnfFormula& formula, std::uint64_t seed,
                                                        std::uint64_t max_flips,
                                                        const WalkSatPaperOptions& options = {});

inline constexpr double kDefaultNoise = 0.5;

/// Clause-first WalkSAT with the noise/greedy split. Greedy moves minimise
/// break count, ties to the lowest variable.
std::pair<SolveResult, FlipTrace> walksat_classic(const CnfFormula& formula, std::uint64_t seed, double noise_p,
                                                  std::uint64_t max_flips, bool record_trace = true);

SolveResult gsat(const CnfFormula& formula, std::uint64_t seed, std::uint64_t max_flips, std::uint64_t max_tries);

enum class DpllEventKind { Decision, UnitPropagation, PureLiteral, Backtrack };

const char* dpll_event_name(DpllEventKind kind) noexcept;

struct DpllEvent {
  DpllEventKind kind;
  Literal literal;  // the literal made true (for Backtrack: the undone decision)
  GraphFingerprint residual;
};

struct DpllTrace {
  GraphFingerprint initial;
  std::vector<DpllEvent> events;

  /// initial followed by every event's residual fingerprint.
  std::vector<GraphFingerprint> fingerprints() const;
};

struct DpllOptions {
  bool pure_literal = false;
  bool record_trace = true;
};

/// Complete DPLL. Unit propagation runs to fixpoint before each decision;
/// decisions take the lowest-index variable still occurring in the residual
/// formula, true first.
std::pair<SolveResult, DpllTrace> dpll(const CnfFormula& formula, const DpllOptions& options = {});

std::size_t count_graph_reconfigurations(std::span<const GraphFingerprint> sequence);
std::size_t count_graph_reconfigurations(const DpllTrace& trace);

}  // namespace satmp
