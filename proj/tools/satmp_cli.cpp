// satmp command-line harness. Talks to the library only through satmp.h.
#include <CLI11.hpp>
#include <json.hpp>

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <iterator>
#include <memory>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "satmp/satmp.h"

namespace {

using Json = nlohmann::ordered_json;

constexpr int kExitError = 1;

struct FormulaDeleter {
  void operator()(satmp_formula* f) const { satmp_formula_free(f); }
};
struct ResultDeleter {
  void operator()(satmp_result* r) const { satmp_result_free(r); }
};
struct StringDeleter {
  void operator()(char* s) const { satmp_string_free(s); }
};
using FormulaPtr = std::unique_ptr<satmp_formula, FormulaDeleter>;
using ResultPtr = std::unique_ptr<satmp_result, ResultDeleter>;
using StringPtr = std::unique_ptr<char, StringDeleter>;

class CliError : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

void check(satmp_status status, const std::string& context) {
  if (status != SATMP_OK) {
    throw CliError(context + ": " + satmp_status_name(status) + ": " + satmp_last_error());
  }
}

std::string take(char* s) { return std::string(StringPtr(s).get()); }

enum class Format { Human, Json, Csv };

struct CommonOptions {
  std::uint64_t seed = 0;
  std::uint32_t dim = 8;
  Format format = Format::Human;
  std::string trace_path;
  bool no_timing = false;
};

struct InputOptions {
  std::string path;
  std::vector<std::uint64_t> generate;
  std::optional<std::uint64_t> gen_seed;
};

void add_common(CLI::App* cmd, CommonOptions& common) {
  cmd->add_option("--seed", common.seed, "Random seed")->capture_default_str();
  cmd->add_option("--dim", common.dim, "Embedding dimension for the message-passing machine")
      ->capture_default_str()
      ->check(CLI::PositiveNumber);
  cmd->add_option("--format", common.format, "Output format")
      ->transform(CLI::CheckedTransformer(
          std::map<std::string, Format>{{"human", Format::Human}, {"json", Format::Json}, {"csv", Format::Csv}}));
  cmd->add_option("--trace", common.trace_path, "Write the step trace (JSON Lines) to this path");
  cmd->add_flag("--no-timing", common.no_timing, "Omit wall-time fields");
}

void add_input(CLI::App* cmd, InputOptions& input) {
  auto* file = cmd->add_option("input", input.path, "DIMACS file, or - for standard input");
  auto* gen = cmd->add_option("--generate", input.generate, "Generate random k-SAT instead: N,M,K")
                  ->delimiter(',')
                  ->expected(3);
  cmd->add_option("--gen-seed", input.gen_seed, "Generator seed (defaults to --seed)");
  file->excludes(gen);
}

std::string read_all(std::istream& in) {
  return std::string(std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>());
}

FormulaPtr parse_text(const std::string& text, const std::string& origin) {
  satmp_formula* f = nullptr;
  check(satmp_formula_parse(text.data(), text.size(), &f), origin);
  return FormulaPtr(f);
}

FormulaPtr load_formula(const InputOptions& input, std::uint64_t seed) {
  if (!input.generate.empty()) {
    satmp_formula* f = nullptr;
    check(satmp_formula_generate(static_cast<std::uint32_t>(input.generate[0]), input.generate[1],
                                 static_cast<std::uint32_t>(input.generate[2]), input.gen_seed.value_or(seed), &f),
          "generate");
    return FormulaPtr(f);
  }
  if (input.path.empty()) throw CliError("no input: give a DIMACS file, '-' or --generate N,M,K");
  if (input.path == "-") return parse_text(read_all(std::cin), "<stdin>");
  std::ifstream file(input.path, std::ios::binary);
  if (!file) throw CliError("cannot open " + input.path);
  return parse_text(read_all(file), input.path);
}

void write_file(const std::string& path, const std::string& contents) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw CliError("cannot write " + path);
  out << contents;
  if (!out) throw CliError("write failed: " + path);
}

const char* outcome_text(satmp_outcome outcome) {
  switch (outcome) {
    case SATMP_SAT: return "SAT";
    case SATMP_UNSAT: return "UNSAT";
    case SATMP_UNKNOWN: return "UNKNOWN";
  }
  return "UNKNOWN";
}

int exit_code(satmp_outcome outcome) { return static_cast<int>(outcome); }

// ---------------------------------------------------------------- gen

struct GenOptions {
  std::uint32_t n = 0;
  std::uint64_t m = 0;
  std::uint32_t k = 3;
  std::uint64_t count = 1;
  std::uint64_t seed = 0;
  std::string out_dir;
};

int run_gen(const GenOptions& opt) {
  if (opt.k == 0 || opt.k > opt.n) throw CliError("need n >= k >= 1");
  std::filesystem::create_directories(opt.out_dir);
  for (std::uint64_t i = 0; i < opt.count; ++i) {
    satmp_formula* raw = nullptr;
    check(satmp_formula_generate(opt.n, opt.m, opt.k, opt.seed + i, &raw), "generate");
    FormulaPtr f(raw);
    char* text = nullptr;
    check(satmp_formula_to_dimacs(f.get(), &text), "emit");
    const std::string name = "ksat_n" + std::to_string(opt.n) + "_m" + std::to_string(opt.m) + "_k" +
                             std::to_string(opt.k) + "_s" + std::to_string(opt.seed) + "_" + std::to_string(i) +
                             ".cnf";
    write_file((std::filesystem::path(opt.out_dir) / name).string(), take(text));
  }
  return 0;
}

// ---------------------------------------------------------------- solve / simulate

struct SolveOptions {
  std::string solver = "dpll";
  std::uint64_t max_steps = 100000;
  std::uint64_t max_tries = 10;
  double noise = 0.5;
  bool pure_literal = false;
  std::string graph_path;
};

satmp_solver solver_of(const std::string& name) {
  if (name == "walksat") return SATMP_SOLVER_WALKSAT;
  if (name == "walksat-paper") return SATMP_SOLVER_WALKSAT_PAPER;
  if (name == "gsat") return SATMP_SOLVER_GSAT;
  if (name == "dpll") return SATMP_SOLVER_DPLL;
  if (name == "brute") return SATMP_SOLVER_BRUTE;
  return SATMP_SOLVER_MP;
}

std::string assignment_line(const satmp_result* r, std::uint32_t n) {
  std::string line = "v";
  for (std::uint32_t v = 1; v <= n; ++v) line += " " + std::string(satmp_result_value(r, v) ? "" : "-") + std::to_string(v);
  return line + " 0";
}

int print_solve(const std::string& solver, const satmp_formula* f, const satmp_result* r, const CommonOptions& common) {
  const satmp_outcome outcome = satmp_result_outcome(r);
  satmp_stats stats{};
  check(satmp_result_stats(r, &stats), "stats");
  char* json_text = nullptr;
  check(satmp_result_to_json(r, common.no_timing ? 0 : 1, &json_text), "report");
  Json report = Json::parse(take(json_text));

  switch (common.format) {
    case Format::Human:
      std::cout << outcome_text(outcome) << '\n';
      if (outcome == SATMP_SAT) std::cout << assignment_line(r, satmp_formula_num_vars(f)) << '\n';
      std::cout << "c solver=" << solver << " flips=" << stats.flips << " decisions=" << stats.decisions
                << " iterations=" << stats.iterations;
      if (!common.no_timing) std::cout << " wall_time_ms=" << stats.wall_time_ms;
      std::cout << '\n';
      break;
    case Format::Json: {
      Json out;
      out["solver"] = solver;
      for (auto& [key, value] : report.items()) out[key] = value;
      std::cout << out.dump() << '\n';
      break;
    }
    case Format::Csv:
      std::cout << "solver,outcome,flips,decisions,iterations" << (common.no_timing ? "" : ",wall_time_ms")
                << ",assignment\n";
      std::cout << solver << ',' << outcome_text(outcome) << ',' << stats.flips << ',' << stats.decisions << ','
                << stats.iterations;
      if (!common.no_timing) std::cout << ',' << stats.wall_time_ms;
      std::cout << ',' << (report["assignment"].is_null() ? "" : report["assignment"].get<std::string>()) << '\n';
      break;
  }
  return exit_code(outcome);
}

ResultPtr solve(const satmp_formula* f, satmp_solver solver, const SolveOptions& opt, const CommonOptions& common,
                bool trace) {
  satmp_solve_params params;
  satmp_solve_params_init(&params);
  params.solver = solver;
  params.seed = common.seed;
  params.max_steps = opt.max_steps;
  params.max_tries = opt.max_tries;
  params.noise = opt.noise;
  params.dim = common.dim;
  params.pure_literal = opt.pure_literal ? 1 : 0;
  params.record_trace = trace ? 1 : 0;
  satmp_result* r = nullptr;
  check(satmp_solve(f, &params, &r), "solve");
  return ResultPtr(r);
}

std::string trace_text(const satmp_result* r) {
  char* text = nullptr;
  check(satmp_result_trace_jsonl(r, &text), "trace");
  return take(text);
}

int run_solve(const InputOptions& input, const SolveOptions& opt, const CommonOptions& common) {
  FormulaPtr f = load_formula(input, common.seed);
  ResultPtr r = solve(f.get(), solver_of(opt.solver), opt, common, !common.trace_path.empty());
  if (!common.trace_path.empty()) write_file(common.trace_path, trace_text(r.get()));
  return print_solve(opt.solver, f.get(), r.get(), common);
}

int run_simulate(const InputOptions& input, const SolveOptions& opt, const CommonOptions& common) {
  FormulaPtr f = load_formula(input, common.seed);
  if (!opt.graph_path.empty()) {
    char* edges = nullptr;
    check(satmp_formula_edge_list(f.get(), &edges), "graph");
    write_file(opt.graph_path, take(edges));
  }
  ResultPtr r = solve(f.get(), SATMP_SOLVER_MP, opt, common, true);
  const std::string steps = trace_text(r.get());
  if (!common.trace_path.empty()) {
    write_file(common.trace_path, steps);
  } else if (common.format == Format::Json) {
    std::cout << steps;
  }
  if (common.format == Format::Json && common.trace_path.empty()) {
    // Summary goes last so the step records stay one-per-line.
    char* json_text = nullptr;
    check(satmp_result_to_json(r.get(), common.no_timing ? 0 : 1, &json_text), "report");
    std::cout << take(json_text) << '\n';
    return exit_code(satmp_result_outcome(r.get()));
  }
  return print_solve("mp", f.get(), r.get(), common);
}

// ---------------------------------------------------------------- equiv

struct EquivOptions {
  std::uint64_t max_steps = 1000;
  std::uint64_t count = 1;
  std::optional<std::uint64_t> reference_seed;
  bool inject_fault = false;
};

int run_equiv(const InputOptions& input, const EquivOptions& opt, const CommonOptions& common) {
  if (opt.count != 1 && input.generate.empty()) throw CliError("--count needs --generate");
  Json reports = Json::array();
  std::uint64_t matched_count = 0;
  for (std::uint64_t i = 0; i < opt.count; ++i) {
    InputOptions one = input;
    const std::uint64_t seed = common.seed + i;
    if (!one.generate.empty()) one.gen_seed = input.gen_seed.value_or(common.seed) + i;
    FormulaPtr f = load_formula(one, seed);
    satmp_equiv_params params;
    satmp_equiv_params_init(&params);
    params.seed = seed;
    params.max_steps = opt.max_steps;
    params.dim = common.dim;
    params.inject_fault = opt.inject_fault ? 1 : 0;
    if (opt.reference_seed) {
      params.has_reference_seed = 1;
      params.reference_seed = *opt.reference_seed + i;
    }
    int matched = 0;
    char* report = nullptr;
    check(satmp_equiv(f.get(), &params, &matched, &report), "equiv");
    matched_count += matched ? 1 : 0;
    reports.push_back(Json::parse(take(report)));
  }

  const bool all_matched = matched_count == opt.count;
  if (opt.count == 1 && common.format != Format::Csv) {
    std::cout << reports[0].dump() << '\n';
  } else if (common.format == Format::Csv) {
    std::cout << "seed,max_steps,steps_compared,matched,divergence_step,divergence_field,machine_outcome,"
                 "reference_outcome\n";
    for (const Json& r : reports) {
      const Json& d = r["first_divergence"];
      std::cout << r["seed"] << ',' << r["max_steps"] << ',' << r["steps_compared"] << ','
                << (r["matched"].get<bool>() ? "true" : "false") << ','
                << (d.is_null() ? "" : d["step"].dump()) << ','
                << (d.is_null() ? "" : d["field"].get<std::string>()) << ','
                << r["machine_outcome"].get<std::string>() << ',' << r["reference_outcome"].get<std::string>()
                << '\n';
    }
  } else {
    Json summary;
    summary["instances"] = opt.count;
    summary["matched"] = matched_count;
    summary["all_matched"] = all_matched;
    summary["reports"] = reports;
    std::cout << summary.dump() << '\n';
  }
  return all_matched ? 0 : 1;
}

// ---------------------------------------------------------------- demo-obs1

int run_demo(const InputOptions& input, std::uint64_t max_steps, const CommonOptions& common) {
  FormulaPtr f = load_formula(input, common.seed);
  satmp_obs1_report report{};
  check(satmp_demo_obs1(f.get(), common.seed, max_steps, common.dim, &report), "demo-obs1");
  switch (common.format) {
    case Format::Human:
      std::cout << "dpll: outcome=" << outcome_text(report.dpll_outcome) << " events=" << report.dpll_events
                << " graph_reconfigurations=" << report.dpll_reconfigurations << '\n'
                << "mp:   outcome=" << outcome_text(report.mp_outcome) << " iterations=" << report.mp_iterations
                << " graph_reconfigurations=" << report.mp_reconfigurations << '\n';
      break;
    case Format::Json: {
      Json j;
      j["dpll"] = {{"outcome", outcome_text(report.dpll_outcome)},
                   {"events", report.dpll_events},
                   {"graph_reconfigurations", report.dpll_reconfigurations}};
      j["mp"] = {{"outcome", outcome_text(report.mp_outcome)},
                 {"iterations", report.mp_iterations},
                 {"graph_reconfigurations", report.mp_reconfigurations}};
      std::cout << j.dump() << '\n';
      break;
    }
    case Format::Csv:
      std::cout << "dpll_outcome,dpll_events,dpll_reconfigurations,mp_outcome,mp_iterations,mp_reconfigurations\n"
                << outcome_text(report.dpll_outcome) << ',' << report.dpll_events << ','
                << report.dpll_reconfigurations << ',' << outcome_text(report.mp_outcome) << ','
                << report.mp_iterations << ',' << report.mp_reconfigurations << '\n';
      break;
  }
  return 0;
}

// ---------------------------------------------------------------- bench

struct BenchOptions {
  std::vector<std::uint32_t> ns;
  std::vector<std::uint64_t> ms;
  std::uint32_t k = 3;
  std::uint64_t seeds = 0;
  std::uint64_t max_steps = 10000;
  double noise = 0.5;
  std::uint32_t threads = 1;
  std::string out;
};

int run_bench(const BenchOptions& opt, const CommonOptions& common) {
  satmp_bench_params params;
  satmp_bench_params_init(&params);
  params.ns = opt.ns.data();
  params.ns_count = opt.ns.size();
  params.ms = opt.ms.data();
  params.ms_count = opt.ms.size();
  params.width = opt.k;
  params.seeds_per_point = opt.seeds;
  params.base_seed = common.seed;
  params.max_steps = opt.max_steps;
  params.dim = common.dim;
  params.noise = opt.noise;
  params.threads = opt.threads;
  params.include_timing = common.no_timing ? 0 : 1;
  char* json_text = nullptr;
  char* csv_text = nullptr;
  check(satmp_bench(&params, &json_text, &csv_text), "bench");
  const std::string json = take(json_text);
  const std::string csv = take(csv_text);
  if (!opt.out.empty()) {
    write_file(opt.out + ".csv", csv);
    write_file(opt.out + ".json", json);
  } else {
    std::cout << (common.format == Format::Json ? json : csv);
  }
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"SAT toolkit: reference solvers, message-passing machine, equivalence checks"};
  app.require_subcommand(1);

  CommonOptions common;
  InputOptions input;

  GenOptions gen;
  auto* gen_cmd = app.add_subcommand("gen", "Write random k-SAT instances as DIMACS files");
  gen_cmd->add_option("--n", gen.n, "Variables")->required();
  gen_cmd->add_option("--m", gen.m, "Clauses")->required();
  gen_cmd->add_option("--k", gen.k, "Clause width")->capture_default_str();
  gen_cmd->add_option("--count", gen.count, "Number of instances")->capture_default_str();
  gen_cmd->add_option("--seed", gen.seed, "Seed of the first instance; instance i uses seed+i")->capture_default_str();
  gen_cmd->add_option("--out-dir,-o", gen.out_dir, "Output directory")->required();

  SolveOptions solve_opt;
  auto* solve_cmd = app.add_subcommand("solve", "Solve one formula; exit 10 SAT, 20 UNSAT, 0 UNKNOWN");
  add_input(solve_cmd, input);
  add_common(solve_cmd, common);
  solve_cmd->add_option("--solver,-s", solve_opt.solver, "Solver")
      ->check(CLI::IsMember({"walksat", "walksat-paper", "gsat", "dpll", "brute", "mp"}))
      ->capture_default_str();
  solve_cmd->add_option("--max-steps,-K", solve_opt.max_steps, "Flip / iteration budget")->capture_default_str();
  solve_cmd->add_option("--max-tries", solve_opt.max_tries, "GSAT restarts")->capture_default_str();
  solve_cmd->add_option("--noise", solve_opt.noise, "WalkSAT noise probability")
      ->check(CLI::Range(0.0, 1.0))
      ->capture_default_str();
  solve_cmd->add_flag("--pure-literal", solve_opt.pure_literal, "DPLL pure-literal elimination");

  SolveOptions sim_opt;
  auto* sim_cmd = app.add_subcommand("simulate", "Run the message-passing machine and report every step");
  add_input(sim_cmd, input);
  add_common(sim_cmd, common);
  sim_cmd->add_option("--max-steps,-K", sim_opt.max_steps, "Iteration budget K")->capture_default_str();
  sim_cmd->add_option("--graph", sim_opt.graph_path, "Write the literal-clause graph edge list here");

  EquivOptions equiv_opt;
  auto* equiv_cmd = app.add_subcommand("equiv", "Check machine vs literal-uniform WalkSAT under coupled randomness");
  add_input(equiv_cmd, input);
  add_common(equiv_cmd, common);
  equiv_cmd->add_option("--max-steps,-K", equiv_opt.max_steps, "Flip horizon")->capture_default_str();
  equiv_cmd->add_option("--count", equiv_opt.count, "Generated instances (with --generate)")->capture_default_str();
  equiv_cmd->add_option("--reference-seed", equiv_opt.reference_seed, "Decouple: reseed the reference side");
  equiv_cmd->add_flag("--inject-fault", equiv_opt.inject_fault, "Test hook: invert the reference selection order")
      ->group("");

  std::uint64_t demo_steps = 1000;
  auto* demo_cmd = app.add_subcommand("demo-obs1", "Compare graph reconfigurations: DPLL vs message passing");
  add_input(demo_cmd, input);
  add_common(demo_cmd, common);
  demo_cmd->add_option("--max-steps,-K", demo_steps, "Machine iteration budget")->capture_default_str();

  BenchOptions bench_opt;
  auto* bench_cmd = app.add_subcommand("bench", "Batch experiment over a random k-SAT sweep");
  add_common(bench_cmd, common);
  bench_cmd->add_option("--n", bench_opt.ns, "Variable counts")->delimiter(',');
  bench_cmd->add_option("--m", bench_opt.ms, "Clause counts")->delimiter(',');
  bench_cmd->add_option("--k", bench_opt.k, "Clause width")->capture_default_str();
  bench_cmd->add_option("--seeds", bench_opt.seeds, "Instances per (n, m) point, seeds --seed..")
      ->capture_default_str();
  bench_cmd->add_option("--max-steps,-K", bench_opt.max_steps, "Local-search flip horizon")->capture_default_str();
  bench_cmd->add_option("--noise", bench_opt.noise, "WalkSAT noise")->check(CLI::Range(0.0, 1.0));
  bench_cmd->add_option("--threads", bench_opt.threads, "Worker threads")->check(CLI::PositiveNumber);
  bench_cmd->add_option("--out", bench_opt.out, "Write <out>.csv and <out>.json instead of stdout");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : kExitError;
  }

  try {
    if (*gen_cmd) return run_gen(gen);
    if (*solve_cmd) return run_solve(input, solve_opt, common);
    if (*sim_cmd) return run_simulate(input, sim_opt, common);
    if (*equiv_cmd) return run_equiv(input, equiv_opt, common);
    if (*demo_cmd) return run_demo(input, demo_steps, common);
    if (*bench_cmd) return run_bench(bench_opt, common);
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitError;
  }
  return kExitError;
}
