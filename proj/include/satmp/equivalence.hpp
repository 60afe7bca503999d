#pragma once

#include <cstdint>
#include <optional>

#include "satmp/coupling.hpp"
#include "satmp/formula.hpp"
#include "satmp/mp_machine.hpp"
#include "satmp/solvers.hpp"

namespace satmp {

enum class DivergenceField { CandidateSet, Flip, Assignment, Outcome };

const char* divergence_field_name(DivergenceField field) noexcept;

struct Divergence {
  std::uint64_t step = 0;  // 1-based iteration
  DivergenceField field = DivergenceField::Outcome;

  friend bool operator==(const Divergence&, const Divergence&) = default;
};

struct EquivalenceReport {
  std::uint64_t seed = 0;
  std::uint64_t max_steps = 0;
  std::uint64_t steps_compared = 0;
  bool matched = true;
  std::optional<Divergence> first_divergence;
  Outcome machine_outcome = Outcome::Unknown;
  Outcome reference_outcome = Outcome::Unknown;

  friend bool operator==(const EquivalenceReport&, const EquivalenceReport&) = default;
};

/// Negative controls and mutation hooks; defaults give the honest coupling.
struct CoupledOptions {
  /// Reference side runs from this seed instead of the shared one.
  std::optional<std::uint64_t> reference_seed;
  SelectionOrder reference_order = SelectionOrder::HighestDraw;
  std::size_t dim = kDefaultDim;
};

/// Runs the message-passing machine and the literal-uniform WalkSAT from one
/// seed and compares them iteration by iteration: candidate set, flipped
/// variable, assignment, then final outcome. Stops at the first divergence.
///
/// The horizon is max_steps flips. The machine gets max_steps + 1 iterations
/// because it recognises success one iteration after the flip that causes
/// it, while WalkSAT checks right after flipping.
EquivalenceReport run_coupled(const CnfFormula& formula, std::uint64_t seed, std::uint64_t max_steps,
                              const CoupledOptions& options = {});

/// True iff the decoded machine assignments equal the reference assignments
/// at every flip, starting with the initial ones. Throws LengthMismatch when
/// the two traces hold a different number of flips.
bool check_decode_consistency(const MpRunResult& machine, const FlipTrace& reference);

}  // namespace satmp
