#include "satmp/report.hpp"

namespace satmp {

namespace {

Json literal_list(const std::vector<Literal>& literals) {
  Json out = Json::array();
  for (Literal lit : literals) out.push_back(lit.to_dimacs());
  return out;
}

}  // namespace

Json to_json(const MpStepReport& report) {
  Json j;
  j["k"] = report.k;
  j["unsat_clause_indices"] = report.unsat_clause_indices();
  j["candidate_literals"] = literal_list(report.candidates);
  j["flipped_var"] = report.flipped ? Json(*report.flipped) : Json(nullptr);
  j["fixed_point"] = report.fixed_point;
  j["assignment"] = report.assignment.to_bit_string();
  if (report.graph) j["graph_fingerprint"] = report.graph->hex();
  return j;
}

Json to_json(const FlipStep& step) {
  Json j;
  j["k"] = step.iteration;
  j["candidate_literals"] = literal_list(step.candidates);
  j["flipped_var"] = step.flipped;
  j["assignment"] = step.after.to_bit_string();
  return j;
}

Json to_json(const DpllEvent& event) {
  Json j;
  j["event"] = dpll_event_name(event.kind);
  j["literal"] = event.literal.to_dimacs();
  j["residual_fingerprint"] = event.residual.hex();
  return j;
}

Json to_json(const EquivalenceReport& report) {
  Json j;
  j["seed"] = report.seed;
  j["max_steps"] = report.max_steps;
  j["steps_compared"] = report.steps_compared;
  j["matched"] = report.matched;
  if (report.first_divergence) {
    Json d;
    d["step"] = report.first_divergence->step;
    d["field"] = divergence_field_name(report.first_divergence->field);
    j["first_divergence"] = d;
  } else {
    j["first_divergence"] = nullptr;
  }
  j["machine_outcome"] = outcome_name(report.machine_outcome);
  j["reference_outcome"] = outcome_name(report.reference_outcome);
  return j;
}

Json to_json(const SolveResult& result, bool include_timing) {
  Json j;
  j["outcome"] = outcome_name(result.outcome());
  j["assignment"] = result.assignment() ? Json(result.assignment()->to_bit_string()) : Json(nullptr);
  j["flips"] = result.stats().flips;
  j["decisions"] = result.stats().decisions;
  j["iterations"] = result.stats().iterations;
  if (include_timing) j["wall_time_ms"] = result.stats().wall_time_ms;
  return j;
}

}  // namespace satmp
