#pragma once

#include <json.hpp>
#include <string>

#include "satmp/equivalence.hpp"
#include "satmp/formula.hpp"
#include "satmp/mp_machine.hpp"
#include "satmp/solvers.hpp"

namespace satmp {

using Json = nlohmann::ordered_json;

/// {k, unsat_clause_indices, candidate_literals, flipped_var, fixed_point, assignment}
Json to_json(const MpStepReport& report);
Json to_json(const FlipStep& step);
Json to_json(const DpllEvent& event);
Json to_json(const EquivalenceReport& report);
/// Wall time only when include_timing is set.
Json to_json(const SolveResult& result, bool include_timing);

/// One compact JSON document per line.
template <typename Range>
std::string to_json_lines(const Range& records) {
  std::string out;
  for (const auto& record : records) {
    out += to_json(record).dump();
    out += '\n';
  }
  return out;
}

}  // namespace satmp
