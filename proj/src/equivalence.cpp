#include "satmp/equivalence.hpp"

#include <algorithm>

#include "satmp/error.hpp"

namespace satmp {

const char* divergence_field_name(DivergenceField field) noexcept {
  switch (field) {
    case DivergenceField::CandidateSet: return "candidate_set";
    case DivergenceField::Flip: return "flip";
    case DivergenceField::Assignment: return "assignment";
    case DivergenceField::Outcome: return "outcome";
  }
  return "unknown";
}

EquivalenceReport run_coupled(const CnfFormula& formula, std::uint64_t seed, std::uint64_t max_steps,
                              const CoupledOptions& options) {
  MpRunConfig config;
  config.seed = seed;
  config.dim = options.dim;
  config.max_iterations = max_steps + 1;
  const MpRunResult machine = mp_run(formula, config);

  WalkSatPaperOptions ws_options;
  ws_options.order = options.reference_order;
  const auto [reference, trace] =
      walksat_paper_variant(formula, options.reference_seed.value_or(seed), max_steps, ws_options);

  EquivalenceReport report;
  report.seed = seed;
  report.max_steps = max_steps;
  report.machine_outcome = machine.result.outcome();
  report.reference_outcome = reference.outcome();

  auto diverge = [&](std::uint64_t step, DivergenceField field) {
    report.matched = false;
    report.first_divergence = Divergence{step, field};
    return report;
  };

  const std::size_t flips = trace.steps.size();
  for (std::size_t i = 0; i < flips; ++i) {
    const FlipStep& ref = trace.steps[i];
    const std::uint64_t step = i + 1;
    if (i >= machine.reports.size() || machine.reports[i].fixed_point) {
      return diverge(step, DivergenceField::Outcome);
    }
    const MpStepReport& mp = machine.reports[i];
    if (mp.candidates != ref.candidates) return diverge(step, DivergenceField::CandidateSet);
    if (*mp.flipped != ref.flipped) return diverge(step, DivergenceField::Flip);
    if (mp.assignment != ref.after) return diverge(step, DivergenceField::Assignment);
    ++report.steps_compared;
  }

  // The reference has stopped; compare how each side ended.
  const std::uint64_t final_step = flips + 1;
  if (reference.is_sat()) {
    const bool machine_agrees = machine.result.is_sat() && machine.reports.size() == flips + 1 &&
                                *machine.result.assignment() == *reference.assignment();
    if (!machine_agrees) return diverge(final_step, DivergenceField::Outcome);
  } else if (!machine.result.is_unknown()) {
    return diverge(final_step, DivergenceField::Outcome);
  } else if (flips < max_steps && machine.reports.size() != flips + 1) {
    // Reference got stuck on falsified empty clauses; the machine must sit
    // at a fixed point on the same iteration.
    return diverge(final_step, DivergenceField::Outcome);
  }
  return report;
}

bool check_decode_consistency(const MpRunResult& machine, const FlipTrace& reference) {
  std::vector<const Assignment*> decoded;
  for (const MpStepReport& r : machine.reports) {
    if (r.flipped) decoded.push_back(&r.assignment);
  }
  if (decoded.size() != reference.steps.size()) {
    throw Error(ErrorCode::LengthMismatch, "machine trace has " + std::to_string(decoded.size()) +
                                               " flips, reference has " + std::to_string(reference.steps.size()));
  }
  if (machine.initial != reference.initial) return false;
  for (std::size_t i = 0; i < decoded.size(); ++i) {
    if (*decoded[i] != reference.steps[i].after) return false;
  }
  return true;
}

}  // namespace satmp
