#pragma once

#include <array>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "satmp/formula.hpp"
#include "satmp/report.hpp"

namespace satmp {

/// Ground truth comes from DPLL up to this many variables.
inline constexpr Var kGroundTruthMaxVars = 60;

struct BenchSweep {
  std::vector<Var> ns;
  std::vector<std::size_t> ms;
  std::uint32_t k = 3;
  std::uint64_t seeds_per_point = 0;
  std::uint64_t base_seed = 0;
  /// Flip horizon for the local-search solvers (the machine gets one more iteration).
  std::uint64_t max_steps = 10000;
  std::size_t dim = kDefaultDim;
  double noise = kDefaultNoise;
  unsigned threads = 1;
};

enum class BenchSolver { MessagePassing, WalkSatPaper, WalkSat, Gsat };
inline constexpr std::array<BenchSolver, 4> kBenchSolvers = {BenchSolver::MessagePassing, BenchSolver::WalkSatPaper,
                                                             BenchSolver::WalkSat, BenchSolver::Gsat};
const char* bench_solver_name(BenchSolver solver) noexcept;

struct SolverCell {
  Outcome outcome = Outcome::Unknown;
  std::uint64_t flips = 0;
  std::uint64_t iterations = 0;
  double wall_time_ms = 0.0;
};

struct InstanceRow {
  std::string id;
  Var n = 0;
  std::size_t m = 0;
  std::uint32_t k = 0;
  std::uint64_t seed = 0;
  std::optional<Outcome> ground_truth;
  std::array<SolverCell, kBenchSolvers.size()> cells;
};

struct SolverAggregate {
  std::uint64_t sat_claims = 0;
  std::uint64_t solved_on_sat = 0;
  std::uint64_t sat_claims_on_unsat = 0;
  std::uint64_t unsat_certified = 0;
  double solve_rate_on_sat = 0.0;
  double median_flips_solved = 0.0;
  double median_wall_time_ms = 0.0;
};

struct PointAggregate {
  Var n = 0;
  std::size_t m = 0;
  std::uint64_t instances = 0;
  std::uint64_t truth_sat = 0;
  std::uint64_t truth_unsat = 0;
  std::uint64_t truth_unknown = 0;
  std::array<SolverAggregate, kBenchSolvers.size()> solvers;
};

struct ExperimentResult {
  BenchSweep sweep;
  std::vector<InstanceRow> rows;
  std::vector<PointAggregate> points;
};

/// Instances are (n, m) points in sweep order, seeds base_seed + 0..seeds-1.
/// Rows come back in that order regardless of thread count.
ExperimentResult run_bench(const BenchSweep& sweep);

std::string bench_csv(const ExperimentResult& result, bool include_timing);
Json bench_json(const ExperimentResult& result, bool include_timing);

}  // namespace satmp
