#include "satmp/coupling.hpp"

#include "satmp/error.hpp"

namespace satmp {

Assignment seeded_initial_assignment(std::uint64_t seed, Var num_vars) {
  RngStream rng(seed, StreamTag::InitialAssignment);
  Assignment a(num_vars);
  for (Var v = 1; v <= num_vars; ++v) a.set(v, rng.coin());
  return a;
}

CoupledStream::CoupledStream(std::uint64_t seed, Var num_vars)
    : rng_(seed, StreamTag::Coupled), draws_(2 * static_cast<std::size_t>(num_vars)) {}

std::span<const double> CoupledStream::next() {
  for (double& u : draws_) u = rng_.uniform_open_closed();
  ++iteration_;
  return draws_;
}

std::size_t select_by_draw(std::span<const std::size_t> candidate_node_ids, std::span<const double> draws,
                           SelectionOrder order) {
  if (candidate_node_ids.empty()) throw Error(ErrorCode::InvalidParams, "selection over an empty candidate set");
  std::size_t best = candidate_node_ids.front();
  for (std::size_t id : candidate_node_ids.subspan(1)) {
    const bool better = order == SelectionOrder::HighestDraw ? draws[id] > draws[best] : draws[id] < draws[best];
    if (better || (draws[id] == draws[best] && id < best)) best = id;
  }
  return best;
}

}  // namespace satmp
