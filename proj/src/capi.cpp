#include "satmp/satmp.h"

#include <cstdlib>
#include <cstring>
#include <string>
#include <variant>

#include "satmp/bench.hpp"
#include "satmp/equivalence.hpp"
#include "satmp/error.hpp"
#include "satmp/formula.hpp"
#include "satmp/lcg.hpp"
#include "satmp/mp_machine.hpp"
#include "satmp/report.hpp"
#include "satmp/solvers.hpp"

struct satmp_formula {
  satmp::CnfFormula formula;
};

struct satmp_result {
  satmp::SolveResult result;
  std::variant<std::monostate, satmp::FlipTrace, satmp::DpllTrace, std::vector<satmp::MpStepReport>> trace;
  bool graph_fingerprints = false;
};

namespace {

thread_local std::string g_last_error;

satmp_status fail(satmp_status status, std::string message) {
  g_last_error = std::move(message);
  return status;
}

template <typename F>
satmp_status guarded(F&& body) {
  try {
    g_last_error.clear();
    return body();
  } catch (const satmp::Error& e) {
    return fail(static_cast<satmp_status>(e.code()), e.what());
  } catch (const std::bad_alloc&) {
    return fail(SATMP_ERR_INTERNAL, "out of memory");
  } catch (const std::exception& e) {
    return fail(SATMP_ERR_INTERNAL, e.what());
  }
}

satmp_status null_argument() { return fail(SATMP_ERR_NULL_ARGUMENT, "required argument is NULL"); }

char* dup_string(const std::string& s) {
  char* out = static_cast<char*>(std::malloc(s.size() + 1));
  if (!out) throw std::bad_alloc();
  std::memcpy(out, s.c_str(), s.size() + 1);
  return out;
}

satmp_outcome to_c(satmp::Outcome outcome) {
  switch (outcome) {
    case satmp::Outcome::Sat: return SATMP_SAT;
    case satmp::Outcome::Unsat: return SATMP_UNSAT;
    case satmp::Outcome::Unknown: return SATMP_UNKNOWN;
  }
  return SATMP_UNKNOWN;
}

}  // namespace

extern "C" {

const char* satmp_last_error(void) { return g_last_error.c_str(); }

const char* satmp_status_name(satmp_status status) {
  switch (status) {
    case SATMP_OK: return "Ok";
    case SATMP_ERR_NULL_ARGUMENT: return "NullArgument";
    case SATMP_ERR_INTERNAL: return "Internal";
    default: break;
  }
  if (status >= SATMP_ERR_MISSING_HEADER && status <= SATMP_ERR_IO) {
    return satmp::error_code_name(static_cast<satmp::ErrorCode>(status));
  }
  return "Unknown";
}

void satmp_string_free(char* s) { std::free(s); }

satmp_status satmp_formula_parse(const char* text, size_t length, satmp_formula** out) {
  if ((!text && length) || !out) return null_argument();
  return guarded([&] {
    *out = new satmp_formula{satmp::parse_dimacs(std::string_view(text ? text : "", length))};
    return SATMP_OK;
  });
}

satmp_status satmp_formula_generate(uint32_t num_vars, uint64_t num_clauses, uint32_t width, uint64_t seed,
                                    satmp_formula** out) {
  if (!out) return null_argument();
  return guarded([&] {
    *out = new satmp_formula{satmp::generate_random_ksat(num_vars, num_clauses, width, seed)};
    return SATMP_OK;
  });
}

void satmp_formula_free(satmp_formula* formula) { delete formula; }

uint32_t satmp_formula_num_vars(const satmp_formula* formula) { return formula ? formula->formula.num_vars() : 0; }

uint64_t satmp_formula_num_clauses(const satmp_formula* formula) {
  return formula ? formula->formula.num_clauses() : 0;
}

satmp_status satmp_formula_to_dimacs(const satmp_formula* formula, char** out) {
  if (!formula || !out) return null_argument();
  return guarded([&] {
    *out = dup_string(satmp::emit_dimacs(formula->formula));
    return SATMP_OK;
  });
}

satmp_status satmp_formula_edge_list(const satmp_formula* formula, char** out) {
  if (!formula || !out) return null_argument();
  return guarded([&] {
    *out = dup_string(satmp::export_edge_list(satmp::build_lcg(formula->formula)));
    return SATMP_OK;
  });
}

satmp_status satmp_formula_fingerprint(const satmp_formula* formula, char out_hex[33]) {
  if (!formula || !out_hex) return null_argument();
  return guarded([&] {
    const std::string hex = satmp::fingerprint(satmp::build_lcg(formula->formula)).hex();
    std::memcpy(out_hex, hex.c_str(), 33);
    return SATMP_OK;
  });
}

void satmp_solve_params_init(satmp_solve_params* params) {
  if (!params) return;
  params->solver = SATMP_SOLVER_DPLL;
  params->seed = 0;
  params->max_steps = satmp::kDefaultMaxIterations;
  params->max_tries = 10;
  params->noise = satmp::kDefaultNoise;
  params->dim = static_cast<uint32_t>(satmp::kDefaultDim);
  params->record_trace = 0;
  params->pure_literal = 0;
  params->record_graph_fingerprints = 0;
}

satmp_status satmp_solve(const satmp_formula* formula, const satmp_solve_params* params, satmp_result** out) {
  if (!formula || !params || !out) return null_argument();
  return guarded([&] {
    const satmp::CnfFormula& f = formula->formula;
    const bool trace = params->record_trace != 0;
    switch (params->solver) {
      case SATMP_SOLVER_WALKSAT: {
        auto [r, t] = satmp::walksat_classic(f, params->seed, params->noise, params->max_steps, trace);
        *out = new satmp_result{std::move(r), std::move(t)};
        break;
      }
      case SATMP_SOLVER_WALKSAT_PAPER: {
        satmp::WalkSatPaperOptions options;
        options.record_trace = trace;
        auto [r, t] = satmp::walksat_paper_variant(f, params->seed, params->max_steps, options);
        *out = new satmp_result{std::move(r), std::move(t)};
        break;
      }
      case SATMP_SOLVER_GSAT:
        *out = new satmp_result{satmp::gsat(f, params->seed, params->max_steps, params->max_tries), {}};
        break;
      case SATMP_SOLVER_DPLL: {
        satmp::DpllOptions options;
        options.pure_literal = params->pure_literal != 0;
        options.record_trace = true;  // reconfiguration counts need it
        auto [r, t] = satmp::dpll(f, options);
        *out = new satmp_result{std::move(r), std::move(t)};
        break;
      }
      case SATMP_SOLVER_BRUTE:
        *out = new satmp_result{satmp::brute_force_sat(f), {}};
        break;
      case SATMP_SOLVER_MP: {
        satmp::MpRunConfig config;
        config.seed = params->seed;
        config.max_iterations = params->max_steps;
        config.dim = params->dim;
        config.record_graph_fingerprints = params->record_graph_fingerprints != 0;
        config.record_trace = trace || config.record_graph_fingerprints;
        satmp::MpRunResult run = satmp::mp_run(f, config);
        *out = new satmp_result{std::move(run.result), std::move(run.reports), config.record_graph_fingerprints};
        break;
      }
      default:
        return fail(SATMP_ERR_INVALID_PARAMS, "unknown solver");
    }
    return SATMP_OK;
  });
}

void satmp_result_free(satmp_result* result) { delete result; }

satmp_outcome satmp_result_outcome(const satmp_result* result) {
  return result ? to_c(result->result.outcome()) : SATMP_UNKNOWN;
}

int satmp_result_value(const satmp_result* result, uint32_t var) {
  if (!result || !result->result.assignment()) return -1;
  const satmp::Assignment& a = *result->result.assignment();
  if (var < 1 || var > a.num_vars()) return -1;
  return a[var] ? 1 : 0;
}

satmp_status satmp_result_stats(const satmp_result* result, satmp_stats* out) {
  if (!result || !out) return null_argument();
  const satmp::SolveStats& s = result->result.stats();
  *out = satmp_stats{s.flips, s.decisions, s.iterations, s.wall_time_ms};
  return SATMP_OK;
}

satmp_status satmp_result_to_json(const satmp_result* result, int include_timing, char** out) {
  if (!result || !out) return null_argument();
  return guarded([&] {
    *out = dup_string(satmp::to_json(result->result, include_timing != 0).dump());
    return SATMP_OK;
  });
}

satmp_status satmp_result_trace_jsonl(const satmp_result* result, char** out) {
  if (!result || !out) return null_argument();
  return guarded([&] {
    std::string text = std::visit(
        [](const auto& t) -> std::string {
          using T = std::decay_t<decltype(t)>;
          if constexpr (std::is_same_v<T, std::monostate>) {
            return {};
          } else if constexpr (std::is_same_v<T, satmp::FlipTrace>) {
            return satmp::to_json_lines(t.steps);
          } else if constexpr (std::is_same_v<T, satmp::DpllTrace>) {
            return satmp::to_json_lines(t.events);
          } else {
            return satmp::to_json_lines(t);
          }
        },
        result->trace);
    *out = dup_string(text);
    return SATMP_OK;
  });
}

satmp_status satmp_result_graph_reconfigurations(const satmp_result* result, uint64_t* out) {
  if (!result || !out) return null_argument();
  return guarded([&] {
    if (const auto* dpll = std::get_if<satmp::DpllTrace>(&result->trace)) {
      *out = satmp::count_graph_reconfigurations(*dpll);
      return SATMP_OK;
    }
    const auto* reports = std::get_if<std::vector<satmp::MpStepReport>>(&result->trace);
    if (!reports || !result->graph_fingerprints) {
      return fail(SATMP_ERR_INVALID_PARAMS, "result carries no graph trace");
    }
    std::vector<satmp::GraphFingerprint> sequence;
    for (const satmp::MpStepReport& r : *reports) sequence.push_back(*r.graph);
    *out = satmp::count_graph_reconfigurations(sequence);
    return SATMP_OK;
  });
}

void satmp_equiv_params_init(satmp_equiv_params* params) {
  if (!params) return;
  params->seed = 0;
  params->max_steps = 1000;
  params->dim = static_cast<uint32_t>(satmp::kDefaultDim);
  params->has_reference_seed = 0;
  params->reference_seed = 0;
  params->inject_fault = 0;
}

satmp_status satmp_equiv(const satmp_formula* formula, const satmp_equiv_params* params, int* matched,
                         char** report_json) {
  if (!formula || !params || !matched) return null_argument();
  return guarded([&] {
    satmp::CoupledOptions options;
    options.dim = params->dim;
    if (params->has_reference_seed) options.reference_seed = params->reference_seed;
    if (params->inject_fault) options.reference_order = satmp::SelectionOrder::LowestDraw;
    const satmp::EquivalenceReport report =
        satmp::run_coupled(formula->formula, params->seed, params->max_steps, options);
    *matched = report.matched ? 1 : 0;
    if (report_json) *report_json = dup_string(satmp::to_json(report).dump());
    return SATMP_OK;
  });
}

satmp_status satmp_demo_obs1(const satmp_formula* formula, uint64_t seed, uint64_t max_steps, uint32_t dim,
                             satmp_obs1_report* out) {
  if (!formula || !out) return null_argument();
  return guarded([&] {
    const auto [dpll_result, dpll_trace] = satmp::dpll(formula->formula);
    satmp::MpRunConfig config;
    config.seed = seed;
    config.max_iterations = max_steps;
    config.dim = dim;
    config.record_graph_fingerprints = true;
    const satmp::MpRunResult run = satmp::mp_run(formula->formula, config);
    std::vector<satmp::GraphFingerprint> sequence;
    // The machine's graph before any step is the formula's own.
    sequence.push_back(satmp::fingerprint(satmp::build_lcg(formula->formula)));
    for (const satmp::MpStepReport& r : run.reports) sequence.push_back(*r.graph);

    out->dpll_outcome = to_c(dpll_result.outcome());
    out->dpll_events = dpll_trace.events.size();
    out->dpll_reconfigurations = satmp::count_graph_reconfigurations(dpll_trace);
    out->mp_outcome = to_c(run.result.outcome());
    out->mp_iterations = run.result.stats().iterations;
    out->mp_reconfigurations = satmp::count_graph_reconfigurations(sequence);
    return SATMP_OK;
  });
}

void satmp_bench_params_init(satmp_bench_params* params) {
  if (!params) return;
  *params = satmp_bench_params{};
  params->width = 3;
  params->max_steps = 10000;
  params->dim = static_cast<uint32_t>(satmp::kDefaultDim);
  params->noise = satmp::kDefaultNoise;
  params->threads = 1;
  params->include_timing = 1;
}

satmp_status satmp_bench(const satmp_bench_params* params, char** json_out, char** csv_out) {
  if (!params || (params->ns_count && !params->ns) || (params->ms_count && !params->ms)) return null_argument();
  return guarded([&] {
    satmp::BenchSweep sweep;
    sweep.ns.assign(params->ns, params->ns + params->ns_count);
    sweep.ms.assign(params->ms, params->ms + params->ms_count);
    sweep.k = params->width;
    sweep.seeds_per_point = params->seeds_per_point;
    sweep.base_seed = params->base_seed;
    sweep.max_steps = params->max_steps;
    sweep.dim = params->dim;
    sweep.noise = params->noise;
    sweep.threads = params->threads;
    const satmp::ExperimentResult result = satmp::run_bench(sweep);
    const bool timing = params->include_timing != 0;
    if (json_out) *json_out = dup_string(satmp::bench_json(result, timing).dump(2) + "\n");
    if (csv_out) *csv_out = dup_string(satmp::bench_csv(result, timing));
    return SATMP_OK;
  });
}

}  // extern "C"
