#include "satmp/formula.hpp"

#include <algorithm>
#include <charconv>
#include <cstdlib>
#include <numeric>

#include "satmp/error.hpp"
#include "satmp/rng.hpp"

namespace satmp {

Literal Literal::from_dimacs(std::int64_t value) {
  if (value == 0) throw Error(ErrorCode::InvalidParams, "literal 0 is the clause terminator");
  return {static_cast<Var>(std::llabs(value)), value < 0 ? Polarity::Negative : Polarity::Positive};
}

Clause::Clause(std::vector<Literal> literals) {
  literals_.reserve(literals.size());
  for (Literal lit : literals) {
    if (!contains(lit)) literals_.push_back(lit);
  }
}

bool Clause::contains(Literal lit) const noexcept {
  return std::find(literals_.begin(), literals_.end(), lit) != literals_.end();
}

CnfFormula::CnfFormula(Var num_vars, std::vector<Clause> clauses)
    : num_vars_(num_vars), clauses_(std::move(clauses)) {
  for (std::size_t j = 0; j < clauses_.size(); ++j) {
    for (Literal lit : clauses_[j]) {
      if (lit.var() < 1 || lit.var() > num_vars_) {
        throw Error(ErrorCode::VariableOutOfRange,
                    "clause " + std::to_string(j) + " mentions variable " + std::to_string(lit.var()) +
                        " outside 1.." + std::to_string(num_vars_));
      }
    }
  }
}

bool CnfFormula::has_empty_clause() const noexcept {
  return std::any_of(clauses_.begin(), clauses_.end(), [](const Clause& c) { return c.empty(); });
}

Assignment Assignment::from_bit_string(std::string_view bits) {
  Assignment a(static_cast<Var>(bits.size()));
  for (std::size_t i = 0; i < bits.size(); ++i) {
    if (bits[i] != '0' && bits[i] != '1') throw Error(ErrorCode::InvalidParams, "bit string must be 0/1");
    a.values_[i] = bits[i] == '1';
  }
  return a;
}

std::string Assignment::to_bit_string() const {
  std::string bits(values_.size(), '0');
  for (std::size_t i = 0; i < values_.size(); ++i) {
    if (values_[i]) bits[i] = '1';
  }
  return bits;
}

namespace {

bool is_space(char c) { return c == ' ' || c == '\t' || c == '\r' || c == '\n' || c == '\f' || c == '\v'; }

std::vector<std::string_view> split_tokens(std::string_view line) {
  std::vector<std::string_view> tokens;
  std::size_t i = 0;
  while (i < line.size()) {
    while (i < line.size() && is_space(line[i])) ++i;
    std::size_t start = i;
    while (i < line.size() && !is_space(line[i])) ++i;
    if (i > start) tokens.push_back(line.substr(start, i - start));
  }
  return tokens;
}

std::int64_t parse_int(std::string_view token, std::size_t line_no) {
  std::int64_t value = 0;
  const char* first = token.data();
  const char* last = token.data() + token.size();
  if (!token.empty() && token.front() == '+') ++first;
  auto [ptr, ec] = std::from_chars(first, last, value);
  if (ec != std::errc() || ptr != last || first == last) {
    throw Error(ErrorCode::NonIntegerToken,
                "line " + std::to_string(line_no) + ": not an integer: '" + std::string(token) + "'");
  }
  return value;
}

}  // namespace

CnfFormula parse_dimacs(std::string_view text) {
  bool have_header = false;
  std::int64_t num_vars = 0;
  std::int64_t declared_clauses = 0;
  std::vector<Clause> clauses;
  std::vector<Literal> pending;

  std::size_t line_no = 0;
  std::size_t pos = 0;
  while (pos <= text.size()) {
    std::size_t eol = text.find('\n', pos);
    if (eol == std::string_view::npos) eol = text.size();
    std::string_view line = text.substr(pos, eol - pos);
    pos = eol + 1;
    ++line_no;

    auto tokens = split_tokens(line);
    if (tokens.empty()) continue;
    if (tokens.front().front() == 'c') continue;

    if (tokens.front() == "p") {
      if (have_header) throw Error(ErrorCode::MissingHeader, "line " + std::to_string(line_no) + ": duplicate header");
      if (tokens.size() != 4 || tokens[1] != "cnf") {
        throw Error(ErrorCode::MissingHeader, "line " + std::to_string(line_no) + ": expected 'p cnf <vars> <clauses>'");
      }
      num_vars = parse_int(tokens[2], line_no);
      declared_clauses = parse_int(tokens[3], line_no);
      if (num_vars < 0 || declared_clauses < 0 || num_vars > 0x7fffffff) {
        throw Error(ErrorCode::MissingHeader, "line " + std::to_string(line_no) + ": header counts out of range");
      }
      have_header = true;
      continue;
    }

    if (!have_header) {
      throw Error(ErrorCode::MissingHeader, "line " + std::to_string(line_no) + ": clause data before 'p cnf' header");
    }
    for (std::string_view token : tokens) {
      const std::int64_t value = parse_int(token, line_no);
      if (value == 0) {
        clauses.emplace_back(std::move(pending));
        pending.clear();
        continue;
      }
      if (value > num_vars || -value > num_vars) {
        throw Error(ErrorCode::VariableOutOfRange, "line " + std::to_string(line_no) + ": literal " +
                                                       std::to_string(value) + " exceeds " +
                                                       std::to_string(num_vars) + " variables");
      }
      pending.push_back(Literal::from_dimacs(value));
    }
  }

  if (!have_header) throw Error(ErrorCode::MissingHeader, "no 'p cnf' header found");
  if (!pending.empty()) throw Error(ErrorCode::UnterminatedClause, "input ended inside a clause (missing final 0)");
  if (static_cast<std::int64_t>(clauses.size()) != declared_clauses) {
    throw Error(ErrorCode::ClauseCountMismatch, "header declares " + std::to_string(declared_clauses) +
                                                    " clauses, found " + std::to_string(clauses.size()));
  }
  return CnfFormula(static_cast<Var>(num_vars), std::move(clauses));
}

std::string emit_dimacs(const CnfFormula& formula) {
  std::string out = "p cnf " + std::to_string(formula.num_vars()) + " " + std::to_string(formula.num_clauses()) + "\n";
  for (const Clause& clause : formula.clauses()) {
    for (Literal lit : clause) {
      out += std::to_string(lit.to_dimacs());
      out += ' ';
    }
    out += "0\n";
  }
  return out;
}

bool clause_satisfied(const Clause& clause, const Assignment& a) {
  return std::any_of(clause.begin(), clause.end(), [&](Literal lit) { return a.satisfies(lit); });
}

bool evaluate(const CnfFormula& formula, const Assignment& a) {
  return std::all_of(formula.clauses().begin(), formula.clauses().end(),
                     [&](const Clause& c) { return clause_satisfied(c, a); });
}

std::vector<std::size_t> unsat_clauses(const CnfFormula& formula, const Assignment& a) {
  std::vector<std::size_t> out;
  for (std::size_t j = 0; j < formula.num_clauses(); ++j) {
    if (!clause_satisfied(formula.clauses()[j], a)) out.push_back(j);
  }
  return out;
}

CnfFormula generate_random_ksat(Var n, std::size_t m, std::uint32_t k, std::uint64_t seed) {
  if (k == 0 || k > n) {
    throw Error(ErrorCode::InvalidParams, "need n >= k >= 1 (n=" + std::to_string(n) + ", k=" + std::to_string(k) + ")");
  }
  RngStream rng(seed, StreamTag::Generator);
  std::vector<Var> pool(n);
  std::iota(pool.begin(), pool.end(), Var{1});
  std::vector<Clause> clauses;
  clauses.reserve(m);
  for (std::size_t j = 0; j < m; ++j) {
    // Partial Fisher-Yates: the first k slots become a uniform k-subset.
    std::vector<Literal> lits;
    lits.reserve(k);
    for (std::uint32_t i = 0; i < k; ++i) {
      const std::size_t pick = i + static_cast<std::size_t>(rng.below(n - i));
      std::swap(pool[i], pool[pick]);
      lits.emplace_back(pool[i], rng.coin() ? Polarity::Negative : Polarity::Positive);
    }
    clauses.emplace_back(std::move(lits));
  }
  return CnfFormula(n, std::move(clauses));
}

const char* outcome_name(Outcome outcome) noexcept {
  switch (outcome) {
    case Outcome::Sat: return "SAT";
    case Outcome::Unsat: return "UNSAT";
    case Outcome::Unknown: return "UNKNOWN";
  }
  return "UNKNOWN";
}

SolveResult SolveResult::sat(const CnfFormula& formula, Assignment a, SolveStats stats) {
  if (a.num_vars() != formula.num_vars() || !evaluate(formula, a)) {
    throw Error(ErrorCode::InvalidParams, "SAT result carries an assignment that does not satisfy the formula");
  }
  return SolveResult(Outcome::Sat, std::move(a), stats);
}

SolveResult SolveResult::unsat(SolveStats stats) { return SolveResult(Outcome::Unsat, std::nullopt, stats); }

SolveResult SolveResult::unknown(SolveStats stats) { return SolveResult(Outcome::Unknown, std::nullopt, stats); }

SolveResult brute_force_sat(const CnfFormula& formula) {
  const Var n = formula.num_vars();
  if (n > kBruteForceMaxVars) {
    throw Error(ErrorCode::TooLarge, "brute force limited to " + std::to_string(kBruteForceMaxVars) + " variables");
  }
  SolveStats stats;
  Assignment a(n);
  const std::uint64_t total = std::uint64_t{1} << n;
  for (std::uint64_t bits = 0; bits < total; ++bits) {
    for (Var v = 1; v <= n; ++v) a.set(v, (bits >> (v - 1)) & 1);
    ++stats.iterations;
    if (evaluate(formula, a)) return SolveResult::sat(formula, a, stats);
  }
  return SolveResult::unsat(stats);
}

}  // namespace satmp
