// Acceptance suite: one PASS/FAIL line per criterion, non-zero exit on any failure.
#include <sys/wait.h>

#include <algorithm>
#include <chrono>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <functional>
#include <iostream>
#include <map>
#include <random>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "satmp/equivalence.hpp"
#include "satmp/formula.hpp"
#include "satmp/lcg.hpp"
#include "satmp/mp_machine.hpp"
#include "satmp/satmp.h"
#include "satmp/solvers.hpp"
#include "test_support.hpp"

namespace fs = std::filesystem;
using namespace satmp;
using satmp::testing::from_bits;
using satmp::testing::oracle_formula;
using satmp::testing::oracle_satisfiable;
using satmp::testing::semantic_candidates;

namespace {

struct Instance {
  std::string name;
  CnfFormula formula;
  std::uint64_t seed = 0;
};

struct Verdict {
  bool pass = false;
  std::string detail;
};

int failures = 0;
std::map<int, std::string> lines;

void report(int id, const std::string& title, const Verdict& o, double seconds) {
  std::ostringstream line;
  line << (o.pass ? "PASS" : "FAIL") << " criterion " << id << " (" << title << "): " << o.detail << " ["
       << static_cast<long long>(seconds * 1000) << " ms]";
  std::cerr << line.str() << std::endl;
  lines[id] = line.str();
  if (!o.pass) ++failures;
}

template <typename F>
void run_criterion(int id, const std::string& title, F&& body) {
  const auto start = std::chrono::steady_clock::now();
  Verdict o;
  try {
    o = body();
  } catch (const std::exception& e) {
    o = {false, std::string("exception: ") + e.what()};
  }
  const double seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  report(id, title, o, seconds);
}

std::string read_file(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

int cli_exit_code(const std::string& args) {
  const std::string command = std::string(SATMP_CLI_PATH) + " " + args + " >/dev/null 2>&1";
  const int status = std::system(command.c_str());
  return WIFEXITED(status) ? WEXITSTATUS(status) : -1;
}

// Mixed-width random formula drawn directly from an engine, independent of the
// library's generator.
CnfFormula sample_formula(std::mt19937_64& rng, Var max_vars, std::size_t max_clauses) {
  const Var n = 1 + static_cast<Var>(rng() % max_vars);
  const std::size_t m = rng() % (max_clauses + 1);
  std::vector<Clause> clauses;
  for (std::size_t j = 0; j < m; ++j) {
    const std::size_t width = 1 + rng() % 4;
    std::vector<Literal> lits;
    for (std::size_t i = 0; i < width; ++i) {
      lits.emplace_back(1 + static_cast<Var>(rng() % n), (rng() & 1) ? Polarity::Negative : Polarity::Positive);
    }
    clauses.emplace_back(std::move(lits));
  }
  return CnfFormula(n, std::move(clauses));
}

std::uint64_t oracle_bits(const Assignment& a) {
  std::uint64_t bits = 0;
  for (Var v = 1; v <= a.num_vars(); ++v) bits |= std::uint64_t{a[v]} << (v - 1);
  return bits;
}

struct MpSoundness {
  std::size_t sat_results = 0;
  std::size_t violations = 0;

  void record(const CnfFormula& f, const MpRunResult& r) {
    if (!r.result.is_sat()) {
      if (r.result.is_unsat()) ++violations;
      return;
    }
    ++sat_results;
    const Assignment& a = *r.result.assignment();
    const bool ok = f.num_vars() <= 63 ? oracle_formula(f, oracle_bits(a)) : evaluate(f, a);
    if (!ok) ++violations;
  }
};

}  // namespace

int main() {
  std::vector<Instance> corpus;
  MpSoundness soundness;
  constexpr std::uint64_t kHorizon = 1000;

  // Criterion 1 instances: n in [5,20], ratio in [3,5], plus the two-clause equivalence fixture.
  std::vector<Instance> coupled;
  {
    std::mt19937_64 rng(20240601);
    std::uniform_int_distribution<Var> n_dist(5, 20);
    std::uniform_real_distribution<double> ratio_dist(3.0, 5.0);
    for (std::uint64_t i = 0; i < 500; ++i) {
      const Var n = n_dist(rng);
      const auto m = static_cast<std::size_t>(std::lround(ratio_dist(rng) * n));
      const std::uint64_t seed = rng();
      coupled.push_back({"coupled_" + std::to_string(i), generate_random_ksat(n, m, 3, seed), seed});
    }
    coupled.push_back({"phi1", satmp::testing::phi1(), 7});
  }

  run_criterion(1, "step equivalence, 501 runs at horizon 1000", [&]() -> Verdict {
    std::size_t matched = 0;
    std::size_t sat = 0;
    std::string first_bad;
    for (const Instance& inst : coupled) {
      const EquivalenceReport r = run_coupled(inst.formula, inst.seed, kHorizon);
      if (r.matched) {
        ++matched;
      } else if (first_bad.empty()) {
        first_bad = " first mismatch: " + inst.name;
      }
      sat += r.machine_outcome == satmp::Outcome::Sat;
    }
    return {matched == coupled.size(), std::to_string(matched) + "/" + std::to_string(coupled.size()) +
                                            " matched, " + std::to_string(sat) + " solved" + first_bad};
  });
  for (const Instance& inst : coupled) corpus.push_back(inst);

  // Criterion 3 instances: random 3-SAT n=10, m=60 certified Unsat by DPLL.
  std::vector<Instance> refuted;
  for (std::uint64_t seed = 1; refuted.size() < 100; ++seed) {
    CnfFormula f = generate_random_ksat(10, 60, 3, seed);
    DpllOptions options;
    options.record_trace = false;
    if (dpll(f, options).first.is_unsat()) refuted.push_back({"unsat_" + std::to_string(seed), std::move(f), seed});
  }

  run_criterion(3, "no certification on 100 DPLL-Unsat instances, K = 1e5", [&]() -> Verdict {
    std::size_t unknown = 0;
    for (const Instance& inst : refuted) {
      MpRunConfig config;
      config.seed = inst.seed;
      config.max_iterations = 100000;
      config.record_trace = false;
      const MpRunResult r = mp_run(inst.formula, config);
      soundness.record(inst.formula, r);
      unknown += r.result.is_unknown();
    }
    return {unknown == refuted.size(),
            std::to_string(unknown) + "/" + std::to_string(refuted.size()) + " Unknown"};
  });
  for (const Instance& inst : refuted) corpus.push_back(inst);

  // Criterion 7 instances: brute-force-verified satisfiable n=15, m=45.
  std::vector<Instance> satisfiable;
  for (std::uint64_t seed = 1; satisfiable.size() < 100; ++seed) {
    CnfFormula f = generate_random_ksat(15, 45, 3, seed);
    if (oracle_satisfiable(f)) satisfiable.push_back({"sat_" + std::to_string(seed), std::move(f), seed});
  }

  run_criterion(7, "local search on 100 satisfiable n=15 m=45, 1e4 flips", [&]() -> Verdict {
    std::set<std::string> walk_solved;
    std::set<std::string> mp_solved;
    for (const Instance& inst : satisfiable) {
      WalkSatPaperOptions options;
      options.record_trace = false;
      if (walksat_paper_variant(inst.formula, inst.seed, 10000, options).first.is_sat()) walk_solved.insert(inst.name);
      MpRunConfig config;
      config.seed = inst.seed;
      config.max_iterations = 10001;
      config.record_trace = false;
      const MpRunResult r = mp_run(inst.formula, config);
      soundness.record(inst.formula, r);
      if (r.result.is_sat()) mp_solved.insert(inst.name);
    }
    const bool rate_ok = walk_solved.size() * 100 >= 90 * satisfiable.size();
    return {rate_ok && walk_solved == mp_solved,
            "walksat solved " + std::to_string(walk_solved.size()) + "/100, machine solved " +
                std::to_string(mp_solved.size()) + ", identical set: " + (walk_solved == mp_solved ? "yes" : "no")};
  });
  for (const Instance& inst : satisfiable) corpus.push_back(inst);

  // Hand-written edge cases.
  std::vector<fs::path> edge_files;
  for (const auto& entry : fs::directory_iterator(SATMP_TEST_DATA_DIR)) {
    if (entry.is_regular_file() && entry.path().extension() == ".cnf") edge_files.push_back(entry.path());
  }
  std::sort(edge_files.begin(), edge_files.end());
  for (const fs::path& p : edge_files) corpus.push_back({p.filename().string(), parse_dimacs(read_file(p)), 1});

  run_criterion(2, "fixed-point soundness over the corpus", [&]() -> Verdict {
    for (const Instance& inst : corpus) {
      if (inst.name.rfind("unsat_", 0) == 0 || inst.name.rfind("sat_", 0) == 0) continue;  // run above
      MpRunConfig config;
      config.seed = inst.seed;
      config.max_iterations = kHorizon + 1;
      config.record_trace = false;
      soundness.record(inst.formula, mp_run(inst.formula, config));
    }
    return {soundness.violations == 0 && soundness.sat_results > 0,
            std::to_string(soundness.sat_results) + " Sat results, " + std::to_string(soundness.violations) +
                " violations"};
  });

  run_criterion(4, "DPLL agrees with brute force", [&]() -> Verdict {
    std::vector<Clause> ternary;
    for (int signs = 0; signs < 8; ++signs) {
      ternary.push_back(Clause{Literal(1, (signs & 1) ? Polarity::Negative : Polarity::Positive),
                               Literal(2, (signs & 2) ? Polarity::Negative : Polarity::Positive),
                               Literal(3, (signs & 4) ? Polarity::Negative : Polarity::Positive)});
    }
    std::size_t exhaustive = 0;
    std::size_t disagreements = 0;
    std::vector<Clause> current;
    std::function<void(std::size_t)> enumerate = [&](std::size_t depth) {
      const CnfFormula f(3, current);
      ++exhaustive;
      const bool truth = oracle_satisfiable(f);
      if (dpll(f).first.is_sat() != truth || brute_force_sat(f).is_sat() != truth) ++disagreements;
      if (depth == 4) return;
      for (const Clause& c : ternary) {
        current.push_back(c);
        enumerate(depth + 1);
        current.pop_back();
      }
    };
    enumerate(0);

    std::mt19937_64 rng(4);
    std::size_t sampled_sat = 0;
    for (int i = 0; i < 10000; ++i) {
      const CnfFormula f = sample_formula(rng, 12, 60);
      const SolveResult brute = brute_force_sat(f);
      DpllOptions options;
      options.record_trace = false;
      const SolveResult r = dpll(f, options).first;
      if (r.outcome() != brute.outcome()) ++disagreements;
      if (r.is_sat() && !oracle_formula(f, oracle_bits(*r.assignment()))) ++disagreements;
      sampled_sat += brute.is_sat();
    }
    return {disagreements == 0, std::to_string(exhaustive) + " exhaustive n=3 formulas + 10000 random (" +
                                    std::to_string(sampled_sat) + " Sat), " + std::to_string(disagreements) +
                                    " disagreements"};
  });

  run_criterion(5, "graph reconfigurations: DPLL >= 1, machine = 0", [&]() -> Verdict {
    std::size_t checked = 0;
    std::size_t excluded = 0;
    std::size_t violations = 0;
    std::string first_bad;
    for (const Instance& inst : corpus) {
      if (inst.formula.num_clauses() == 0) continue;
      if (inst.formula.has_empty_clause()) {
        // Refuted before any propagation or decision: nothing to reconfigure.
        ++excluded;
        continue;
      }
      const std::string text = emit_dimacs(inst.formula);
      satmp_formula* f = nullptr;
      if (satmp_formula_parse(text.data(), text.size(), &f) != SATMP_OK) return {false, satmp_last_error()};
      satmp_obs1_report r{};
      const satmp_status status = satmp_demo_obs1(f, inst.seed, kHorizon, kDefaultDim, &r);
      satmp_formula_free(f);
      if (status != SATMP_OK) return {false, satmp_last_error()};
      ++checked;
      if (r.dpll_reconfigurations < 1 || r.mp_reconfigurations != 0) {
        ++violations;
        if (first_bad.empty()) first_bad = " first: " + inst.name;
      }
    }
    return {violations == 0 && checked > 0, std::to_string(checked) + " instances, " + std::to_string(violations) +
                                                " violations, " + std::to_string(excluded) +
                                                " excluded (input already holds an empty clause)" + first_bad};
  });

  run_criterion(6, "embedding-domain fuzz", [&]() -> Verdict {
    std::mt19937_64 rng(66);
    std::size_t steps = 0;
    std::size_t violations = 0;
    while (steps < 20000) {
      const CnfFormula f = sample_formula(rng, 16, 70);
      MpRunConfig config;
      config.seed = rng();
      config.dim = 1 + rng() % 8;
      config.epsilon_scale = 0.1 + 0.9 * std::uniform_real_distribution<double>(0.0, 1.0)(rng);
      MpMachine machine(f, config);
      for (int k = 0; k < 60; ++k) {
        const Assignment before = machine.decode();
        const MpStepReport report = machine.step();
        ++steps;
        const EmbeddingState& s = machine.state();
        const LiteralCodebook& lc = machine.literal_codes();
        for (Var v = 1; v <= f.num_vars(); ++v) {
          const auto hp = s.literals.row(2 * (v - 1));
          const auto hn = s.literals.row(2 * (v - 1) + 1);
          const bool straight = same_vector(hp, lc.true_code(v)) && same_vector(hn, lc.false_code(v));
          const bool swapped = same_vector(hp, lc.false_code(v)) && same_vector(hn, lc.true_code(v));
          violations += !(straight || swapped);
        }
        for (std::size_t j = 0; j < f.num_clauses(); ++j) {
          const auto h = s.clauses.row(j);
          violations += !(is_zero(h) || same_vector(h, machine.clause_codes().code(j)));
        }
        for (std::size_t id = 0; id < s.literals.rows(); ++id) {
          const double mv = norm(machine.messages().literals.row(id));
          violations += mv < 0.0 || mv > 1.0;
        }
        violations += report.candidates != semantic_candidates(f, before);
        if (report.fixed_point) break;
      }
    }
    return {violations == 0 && steps >= 10000,
            std::to_string(steps) + " steps, " + std::to_string(violations) + " violations"};
  });

  run_criterion(8, "DIMACS round trip and CLI exit codes", [&]() -> Verdict {
    std::size_t round_trips = 0;
    std::size_t bad = 0;
    std::string first_bad;
    const fs::path dir = fs::temp_directory_path() / "satmp_acceptance_corpus";
    fs::remove_all(dir);
    fs::create_directories(dir);
    for (const Instance& inst : corpus) {
      const std::string text = emit_dimacs(inst.formula);
      const CnfFormula back = parse_dimacs(text);
      ++round_trips;
      const bool same = back.num_vars() == inst.formula.num_vars() && back.clauses() == inst.formula.clauses() &&
                        emit_dimacs(back) == text;
      DpllOptions options;
      options.record_trace = false;
      const int expected = dpll(inst.formula, options).first.is_sat() ? 10 : 20;
      const fs::path file = dir / (inst.name + (inst.name.size() > 4 && inst.name.ends_with(".cnf") ? "" : ".cnf"));
      std::ofstream(file, std::ios::binary) << text;
      const int code = cli_exit_code("solve --solver dpll " + file.string());
      if (!same || code != expected) {
        ++bad;
        if (first_bad.empty()) first_bad = " first: " + inst.name;
      }
    }
    for (const fs::path& p : edge_files) {
      const CnfFormula f = parse_dimacs(read_file(p));
      const int expected = dpll(f).first.is_sat() ? 10 : 20;
      if (cli_exit_code("solve --solver dpll " + p.string()) != expected ||
          cli_exit_code("solve --solver brute " + p.string()) != expected) {
        ++bad;
        if (first_bad.empty()) first_bad = " first raw file: " + p.filename().string();
      }
    }
    std::size_t malformed = 0;
    for (const auto& entry : fs::directory_iterator(fs::path(SATMP_TEST_DATA_DIR) / "malformed")) {
      ++malformed;
      if (cli_exit_code("solve " + entry.path().string()) != 1) {
        ++bad;
        if (first_bad.empty()) first_bad = " malformed accepted: " + entry.path().filename().string();
      }
    }
    fs::remove_all(dir);
    return {bad == 0 && edge_files.size() >= 10,
            std::to_string(round_trips) + " round trips (" + std::to_string(edge_files.size()) +
                " hand-written), " + std::to_string(malformed) + " malformed inputs, " + std::to_string(bad) +
                " failures" + first_bad};
  });

  for (const auto& [id, line] : lines) std::cout << line << '\n';
  std::cout << (failures == 0 ? "ALL CRITERIA PASS" : std::to_string(failures) + " CRITERIA FAILED") << std::endl;
  return failures == 0 ? 0 : 1;
}
