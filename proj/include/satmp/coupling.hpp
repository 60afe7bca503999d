#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

#include "satmp/formula.hpp"
#include "satmp/rng.hpp"

namespace satmp {

/// Initial assignment drawn from a seed. Every local-search consumer that is
/// meant to be comparable step by step starts here.
Assignment seeded_initial_assignment(std::uint64_t seed, Var num_vars);

/// Per-iteration draw vectors u_k, one value in (0,1] per literal node.
/// Consumers index u_k by Literal::node_id(), so the order in which either
/// side inspects candidates never affects what it reads.
class CoupledStream {
public:
  CoupledStream(std::uint64_t seed, Var num_vars);

  /// Draws for the next iteration (k = 1, 2, ...). The span stays valid
  /// until the following call.
  std::span<const double> next();
  std::uint64_t iteration() const noexcept { return iteration_; }

private:
  RngStream rng_;
  std::vector<double> draws_;
  std::uint64_t iteration_ = 0;
};

enum class SelectionOrder {
  HighestDraw,
  /// Mutation hook for the equivalence checker: picks the lowest draw.
  LowestDraw,
};

/// Candidate node id with the highest draw (ties: lowest node id). Candidates
/// must be nonempty.
std::size_t select_by_draw(std::span<const std::size_t> candidate_node_ids, std::span<const double> draws,
                           SelectionOrder order = SelectionOrder::HighestDraw);

}  // namespace satmp
