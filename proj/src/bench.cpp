#include "satmp/bench.hpp"

#include <algorithm>
#include <atomic>
#include <sstream>
#include <thread>

#include "satmp/error.hpp"
#include "satmp/mp_machine.hpp"
#include "satmp/solvers.hpp"

namespace satmp {

const char* bench_solver_name(BenchSolver solver) noexcept {
  switch (solver) {
    case BenchSolver::MessagePassing: return "mp";
    case BenchSolver::WalkSatPaper: return "walksat_paper";
    case BenchSolver::WalkSat: return "walksat";
    case BenchSolver::Gsat: return "gsat";
  }
  return "unknown";
}

namespace {

SolverCell cell_of(const SolveResult& r) {
  return {r.outcome(), r.stats().flips, r.stats().iterations, r.stats().wall_time_ms};
}

InstanceRow run_instance(const BenchSweep& sweep, Var n, std::size_t m, std::uint64_t seed) {
  InstanceRow row;
  row.id = "n" + std::to_string(n) + "_m" + std::to_string(m) + "_k" + std::to_string(sweep.k) + "_s" +
           std::to_string(seed);
  row.n = n;
  row.m = m;
  row.k = sweep.k;
  row.seed = seed;
  const CnfFormula formula = generate_random_ksat(n, m, sweep.k, seed);

  if (n <= kGroundTruthMaxVars) {
    DpllOptions options;
    options.record_trace = false;
    row.ground_truth = dpll(formula, options).first.outcome();
  }

  MpRunConfig config;
  config.seed = seed;
  config.dim = sweep.dim;
  config.max_iterations = sweep.max_steps + 1;
  config.record_trace = false;
  row.cells[0] = cell_of(mp_run(formula, config).result);

  WalkSatPaperOptions ws;
  ws.record_trace = false;
  row.cells[1] = cell_of(walksat_paper_variant(formula, seed, sweep.max_steps, ws).first);
  row.cells[2] = cell_of(walksat_classic(formula, seed, sweep.noise, sweep.max_steps, false).first);
  row.cells[3] = cell_of(gsat(formula, seed, sweep.max_steps, 1));
  return row;
}

double median(std::vector<double> values) {
  if (values.empty()) return 0.0;
  std::sort(values.begin(), values.end());
  const std::size_t mid = values.size() / 2;
  return values.size() % 2 ? values[mid] : 0.5 * (values[mid - 1] + values[mid]);
}

PointAggregate aggregate(Var n, std::size_t m, const std::vector<InstanceRow>& rows) {
  PointAggregate point;
  point.n = n;
  point.m = m;
  std::array<std::vector<double>, kBenchSolvers.size()> flips;
  std::array<std::vector<double>, kBenchSolvers.size()> times;
  for (const InstanceRow& row : rows) {
    if (row.n != n || row.m != m) continue;
    ++point.instances;
    if (!row.ground_truth) {
      ++point.truth_unknown;
    } else if (*row.ground_truth == Outcome::Sat) {
      ++point.truth_sat;
    } else {
      ++point.truth_unsat;
    }
    for (std::size_t s = 0; s < kBenchSolvers.size(); ++s) {
      const SolverCell& cell = row.cells[s];
      SolverAggregate& agg = point.solvers[s];
      times[s].push_back(cell.wall_time_ms);
      if (cell.outcome == Outcome::Unsat) ++agg.unsat_certified;
      if (cell.outcome != Outcome::Sat) continue;
      ++agg.sat_claims;
      flips[s].push_back(static_cast<double>(cell.flips));
      if (row.ground_truth == Outcome::Sat) ++agg.solved_on_sat;
      if (row.ground_truth == Outcome::Unsat) ++agg.sat_claims_on_unsat;
    }
  }
  for (std::size_t s = 0; s < kBenchSolvers.size(); ++s) {
    SolverAggregate& agg = point.solvers[s];
    agg.solve_rate_on_sat =
        point.truth_sat ? static_cast<double>(agg.solved_on_sat) / static_cast<double>(point.truth_sat) : 0.0;
    agg.median_flips_solved = median(flips[s]);
    agg.median_wall_time_ms = median(times[s]);
  }
  return point;
}

std::string csv_number(double x) {
  std::ostringstream out;
  out.precision(6);
  out << std::fixed << x;
  return out.str();
}

}  // namespace

ExperimentResult run_bench(const BenchSweep& sweep) {
  if (sweep.k == 0) throw Error(ErrorCode::InvalidParams, "clause width must be at least 1");
  for (Var n : sweep.ns) {
    if (sweep.k > n) throw Error(ErrorCode::InvalidParams, "clause width exceeds variable count " + std::to_string(n));
  }

  struct Job {
    Var n;
    std::size_t m;
    std::uint64_t seed;
  };
  std::vector<Job> jobs;
  for (Var n : sweep.ns) {
    for (std::size_t m : sweep.ms) {
      for (std::uint64_t s = 0; s < sweep.seeds_per_point; ++s) jobs.push_back({n, m, sweep.base_seed + s});
    }
  }

  ExperimentResult result;
  result.sweep = sweep;
  result.rows.resize(jobs.size());
  std::atomic<std::size_t> next{0};
  auto worker = [&] {
    for (std::size_t i = next++; i < jobs.size(); i = next++) {
      result.rows[i] = run_instance(sweep, jobs[i].n, jobs[i].m, jobs[i].seed);
    }
  };
  const unsigned threads = std::max(1u, std::min<unsigned>(sweep.threads, static_cast<unsigned>(jobs.size())));
  if (threads <= 1) {
    worker();
  } else {
    std::vector<std::jthread> pool;
    for (unsigned t = 0; t < threads; ++t) pool.emplace_back(worker);
  }

  for (Var n : sweep.ns) {
    for (std::size_t m : sweep.ms) result.points.push_back(aggregate(n, m, result.rows));
  }
  return result;
}

std::string bench_csv(const ExperimentResult& result, bool include_timing) {
  std::string out = "instance_id,n,m,k,seed,ground_truth";
  for (BenchSolver solver : kBenchSolvers) {
    const std::string name = bench_solver_name(solver);
    out += "," + name + "_outcome," + name + "_flips," + name + "_iterations";
    if (include_timing) out += "," + name + "_wall_time_ms";
  }
  out += '\n';
  for (const InstanceRow& row : result.rows) {
    out += row.id + "," + std::to_string(row.n) + "," + std::to_string(row.m) + "," + std::to_string(row.k) + "," +
           std::to_string(row.seed) + "," + (row.ground_truth ? outcome_name(*row.ground_truth) : "");
    for (const SolverCell& cell : row.cells) {
      out += std::string(",") + outcome_name(cell.outcome) + "," + std::to_string(cell.flips) + "," +
             std::to_string(cell.iterations);
      if (include_timing) out += "," + csv_number(cell.wall_time_ms);
    }
    out += '\n';
  }
  return out;
}

Json bench_json(const ExperimentResult& result, bool include_timing) {
  const BenchSweep& sweep = result.sweep;
  Json j;
  j["sweep"] = {{"n", sweep.ns},
                {"m", sweep.ms},
                {"k", sweep.k},
                {"seeds_per_point", sweep.seeds_per_point},
                {"base_seed", sweep.base_seed},
                {"max_steps", sweep.max_steps},
                {"dim", sweep.dim},
                {"noise", sweep.noise}};

  Json points = Json::array();
  for (const PointAggregate& p : result.points) {
    Json point;
    point["n"] = p.n;
    point["m"] = p.m;
    point["instances"] = p.instances;
    point["truth_sat"] = p.truth_sat;
    point["truth_unsat"] = p.truth_unsat;
    point["truth_unknown"] = p.truth_unknown;
    Json solvers;
    for (std::size_t s = 0; s < kBenchSolvers.size(); ++s) {
      const SolverAggregate& a = p.solvers[s];
      Json agg;
      agg["sat_claims"] = a.sat_claims;
      agg["solved_on_sat"] = a.solved_on_sat;
      agg["solve_rate_on_sat"] = a.solve_rate_on_sat;
      agg["sat_claims_on_unsat"] = a.sat_claims_on_unsat;
      agg["unsat_certified"] = a.unsat_certified;
      agg["median_flips_solved"] = a.median_flips_solved;
      if (include_timing) agg["median_wall_time_ms"] = a.median_wall_time_ms;
      solvers[bench_solver_name(kBenchSolvers[s])] = agg;
    }
    point["solvers"] = solvers;
    points.push_back(point);
  }
  j["points"] = points;

  Json rows = Json::array();
  for (const InstanceRow& row : result.rows) {
    Json r;
    r["instance_id"] = row.id;
    r["n"] = row.n;
    r["m"] = row.m;
    r["k"] = row.k;
    r["seed"] = row.seed;
    r["ground_truth"] = row.ground_truth ? Json(outcome_name(*row.ground_truth)) : Json(nullptr);
    for (std::size_t s = 0; s < kBenchSolvers.size(); ++s) {
      const SolverCell& cell = row.cells[s];
      Json c;
      c["outcome"] = outcome_name(cell.outcome);
      c["flips"] = cell.flips;
      c["iterations"] = cell.iterations;
      if (include_timing) c["wall_time_ms"] = cell.wall_time_ms;
      r[bench_solver_name(kBenchSolvers[s])] = c;
    }
    rows.push_back(r);
  }
  j["instances"] = rows;
  return j;
}

}  // namespace satmp
