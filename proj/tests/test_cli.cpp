#include <gtest/gtest.h>

#include <sys/wait.h>

#include <array>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>

#include <json.hpp>

namespace {

namespace fs = std::filesystem;

struct CliRun {
  int code = -1;
  std::string out;
};

CliRun run(const std::string& args) {
  const std::string command = std::string(SATMP_CLI_PATH) + " " + args + " 2>/dev/null";
  CliRun r;
  FILE* pipe = popen(command.c_str(), "r");
  if (!pipe) return r;
  std::array<char, 4096> buf{};
  std::size_t n = 0;
  while ((n = fread(buf.data(), 1, buf.size(), pipe)) > 0) r.out.append(buf.data(), n);
  const int status = pclose(pipe);
  r.code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
  return r;
}

std::string data(const std::string& name) { return std::string(SATMP_TEST_DATA_DIR) + "/" + name; }

std::string read_file(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

fs::path scratch(const std::string& name) {
  const fs::path dir = fs::temp_directory_path() / ("satmp_cli_test_" + name);
  fs::remove_all(dir);
  fs::create_directories(dir);
  return dir;
}

}  // namespace

TEST(Cli, EdgeCaseFilesGetExpectedExitCodes) {
  const std::vector<std::pair<std::string, int>> cases{
      {"phi1.cnf", 10},         {"no_clauses.cnf", 10},      {"no_vars.cnf", 10},
      {"empty_clause.cnf", 20}, {"tautology.cnf", 10},       {"units.cnf", 10},
      {"contradiction.cnf", 20}, {"multiline_clause.cnf", 10}, {"duplicate_literals.cnf", 10},
      {"unused_vars_crlf.cnf", 10}};
  for (const auto& [file, expected] : cases) {
    for (const char* solver : {"dpll", "brute"}) {
      EXPECT_EQ(run(std::string("solve --solver ") + solver + " " + data(file)).code, expected) << file << " " << solver;
    }
  }
}

TEST(Cli, MalformedInputExitsOne) {
  for (const char* file : {"missing_header.cnf", "count_mismatch.cnf", "out_of_range.cnf", "unterminated.cnf",
                           "non_integer.cnf"}) {
    EXPECT_EQ(run(std::string("solve ") + data(std::string("malformed/") + file)).code, 1) << file;
  }
  EXPECT_EQ(run("solve /nonexistent/file.cnf").code, 1);
  EXPECT_EQ(run("solve --bogus-flag " + data("phi1.cnf")).code, 1);
  EXPECT_EQ(run("").code, 1);
  EXPECT_EQ(run("--help").code, 0);
}

TEST(Cli, LocalSearchNeverClaimsUnsat) {
  for (const char* solver : {"walksat", "walksat-paper", "gsat", "mp"}) {
    EXPECT_EQ(run(std::string("solve -K 200 --solver ") + solver + " " + data("contradiction.cnf")).code, 0) << solver;
    EXPECT_EQ(run(std::string("solve --solver ") + solver + " " + data("phi1.cnf")).code, 10) << solver;
  }
}

TEST(Cli, HumanOutputHasModelLine) {
  const CliRun r = run("solve --solver dpll " + data("units.cnf"));
  EXPECT_EQ(r.code, 10);
  EXPECT_NE(r.out.find("SAT"), std::string::npos);
  EXPECT_NE(r.out.find("v 1 -2 3 0"), std::string::npos);
}

TEST(Cli, JsonOutputIsDeterministicWithoutTiming) {
  const std::string args = "solve --solver mp --seed 5 --format json --no-timing --generate 20,85,3 --gen-seed 9";
  const CliRun a = run(args);
  const CliRun b = run(args);
  EXPECT_EQ(a.out, b.out);
  EXPECT_EQ(a.code, b.code);
  const auto doc = nlohmann::json::parse(a.out);
  EXPECT_FALSE(doc.contains("wall_time_ms"));
}

TEST(Cli, GenWritesParsableFiles) {
  const fs::path dir = scratch("gen");
  ASSERT_EQ(run("gen --n 10 --m 40 --k 3 --count 3 --seed 4 --out-dir " + dir.string()).code, 0);
  int files = 0;
  for (const auto& entry : fs::directory_iterator(dir)) {
    ++files;
    const int code = run("solve --solver dpll " + entry.path().string()).code;
    EXPECT_TRUE(code == 10 || code == 20);
  }
  EXPECT_EQ(files, 3);
  EXPECT_TRUE(fs::exists(dir / "ksat_n10_m40_k3_s4_0.cnf"));
  EXPECT_EQ(run("gen --n 3 --m 4 --k 5 --out-dir " + dir.string()).code, 1);
  fs::remove_all(dir);
}

TEST(Cli, RoundTripThroughStdin) {
  const fs::path dir = scratch("stdin");
  const CliRun r = run("solve --solver dpll - < " + data("phi1.cnf"));
  EXPECT_EQ(r.code, 10);
  fs::remove_all(dir);
}

TEST(Cli, SimulateTraceAndGraph) {
  const fs::path dir = scratch("simulate");
  const fs::path trace = dir / "trace.jsonl";
  const fs::path graph = dir / "graph.txt";
  const CliRun r = run("simulate --seed 7 --trace " + trace.string() + " --graph " + graph.string() + " " + data("phi1.cnf"));
  EXPECT_EQ(r.code, 10);
  EXPECT_EQ(read_file(graph), "L0 C0\nL3 C0\nL1 C1\nL2 C1\n");
  std::istringstream lines(read_file(trace));
  std::string line;
  int count = 0;
  while (std::getline(lines, line)) {
    const auto rec = nlohmann::json::parse(line);
    EXPECT_TRUE(rec.contains("k"));
    ++count;
  }
  EXPECT_GE(count, 1);
  fs::remove_all(dir);
}

TEST(Cli, EquivExitCodes) {
  EXPECT_EQ(run("equiv --seed 7 " + data("phi1.cnf")).code, 0);
  EXPECT_EQ(run("equiv --seed 3 --count 5 -K 300 --generate 12,50,3").code, 0);
  EXPECT_EQ(run("equiv --seed 3 --count 5 -K 300 --inject-fault --generate 12,55,3").code, 1);
}

TEST(Cli, DemoAndBench) {
  const CliRun demo = run("demo-obs1 --seed 7 --format json " + data("phi1.cnf"));
  EXPECT_EQ(demo.code, 0);
  const auto doc = nlohmann::json::parse(demo.out);
  EXPECT_EQ(doc.at("mp").at("graph_reconfigurations"), 0);
  EXPECT_GE(doc.at("dpll").at("graph_reconfigurations").get<int>(), 1);

  const std::string args = "bench --n 8 --m 20,34 --seeds 2 -K 300 --no-timing";
  const CliRun a = run(args + " --threads 1");
  const CliRun b = run(args + " --threads 3");
  EXPECT_EQ(a.code, 0);
  EXPECT_EQ(a.out, b.out);
  EXPECT_EQ(a.out.substr(0, 12), "instance_id,");
}
