#pragma once

#include <compare>
#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace satmp {

using Var = std::uint32_t;

enum class Polarity : std::uint8_t { Positive = 0, Negative = 1 };

class Literal {
public:
  constexpr Literal(Var var, Polarity polarity) : var_(var), polarity_(polarity) {}

  /// From a nonzero DIMACS integer.
  static Literal from_dimacs(std::int64_t value);

  constexpr Var var() const noexcept { return var_; }
  constexpr Polarity polarity() const noexcept { return polarity_; }
  constexpr bool negative() const noexcept { return polarity_ == Polarity::Negative; }
  constexpr Literal operator~() const noexcept {
    return {var_, negative() ? Polarity::Positive : Polarity::Negative};
  }

  /// Literal-node id in the literal-clause graph: 2*(var-1) + polarity bit.
  constexpr std::size_t node_id() const noexcept {
    return 2 * static_cast<std::size_t>(var_ - 1) + static_cast<std::size_t>(polarity_);
  }
  static constexpr Literal from_node_id(std::size_t id) noexcept {
    return {static_cast<Var>(id / 2 + 1), (id & 1) ? Polarity::Negative : Polarity::Positive};
  }

  std::int64_t to_dimacs() const noexcept {
    return negative() ? -static_cast<std::int64_t>(var_) : static_cast<std::int64_t>(var_);
  }

  friend constexpr auto operator<=>(const Literal&, const Literal&) = default;

private:
  Var var_;
  Polarity polarity_;
};

/// Disjunction of distinct literals. Duplicates are dropped on construction,
/// keeping the first occurrence; v and ~v together are allowed.
class Clause {
public:
  Clause() = default;
  explicit Clause(std::vector<Literal> literals);
  Clause(std::initializer_list<Literal> literals) : Clause(std::vector<Literal>(literals)) {}

  const std::vector<Literal>& literals() const noexcept { return literals_; }
  std::size_t size() const noexcept { return literals_.size(); }
  bool empty() const noexcept { return literals_.empty(); }
  bool contains(Literal lit) const noexcept;
  auto begin() const noexcept { return literals_.begin(); }
  auto end() const noexcept { return literals_.end(); }

  friend bool operator==(const Clause&, const Clause&) = default;

private:
  std::vector<Literal> literals_;
};

class CnfFormula {
public:
  CnfFormula() = default;
  /// Throws Error(VariableOutOfRange) if a literal mentions a variable > num_vars.
  CnfFormula(Var num_vars, std::vector<Clause> clauses);

  Var num_vars() const noexcept { return num_vars_; }
  std::size_t num_clauses() const noexcept { return clauses_.size(); }
  const std::vector<Clause>& clauses() const noexcept { return clauses_; }
  const Clause& clause(std::size_t j) const { return clauses_.at(j); }
  bool has_empty_clause() const noexcept;

  friend bool operator==(const CnfFormula&, const CnfFormula&) = default;

private:
  Var num_vars_ = 0;
  std::vector<Clause> clauses_;
};

/// Total assignment over variables 1..n.
class Assignment {
public:
  Assignment() = default;
  explicit Assignment(Var num_vars, bool value = false) : values_(num_vars, value ? 1 : 0) {}
  /// Bit i of the string is variable i+1 ('1' = true).
  static Assignment from_bit_string(std::string_view bits);

  Var num_vars() const noexcept { return static_cast<Var>(values_.size()); }
  bool operator[](Var var) const { return values_[var - 1] != 0; }
  bool value(Var var) const { return values_.at(var - 1) != 0; }
  void set(Var var, bool value) { values_.at(var - 1) = value ? 1 : 0; }
  void flip(Var var) { values_.at(var - 1) ^= 1; }
  bool satisfies(Literal lit) const { return value(lit.var()) != lit.negative(); }

  std::string to_bit_string() const;

  friend bool operator==(const Assignment&, const Assignment&) = default;

private:
  std::vector<std::uint8_t> values_;
};

/// Parses DIMACS CNF text. Throws Error with one of MissingHeader,
/// ClauseCountMismatch, VariableOutOfRange, UnterminatedClause, NonIntegerToken.
CnfFormula parse_dimacs(std::string_view text);
std::string emit_dimacs(const CnfFormula& formula);

bool clause_satisfied(const Clause& clause, const Assignment& a);
bool evaluate(const CnfFormula& formula, const Assignment& a);
/// Ascending indices of clauses falsified by a.
std::vector<std::size_t> unsat_clauses(const CnfFormula& formula, const Assignment& a);

/// m clauses of k distinct variables each, uniform polarities. Throws
/// InvalidParams when k > n or k == 0.
CnfFormula generate_random_ksat(Var n, std::size_t m, std::uint32_t k, std::uint64_t seed);

enum class Outcome { Sat, Unsat, Unknown };

const char* outcome_name(Outcome outcome) noexcept;

struct SolveStats {
  std::uint64_t flips = 0;
  std::uint64_t decisions = 0;
  std::uint64_t iterations = 0;
  double wall_time_ms = 0.0;
};

class SolveResult {
public:
  /// Throws Error(InvalidParams) if a does not satisfy formula.
  static SolveResult sat(const CnfFormula& formula, Assignment a, SolveStats stats = {});
  static SolveResult unsat(SolveStats stats = {});
  static SolveResult unknown(SolveStats stats = {});

  Outcome outcome() const noexcept { return outcome_; }
  bool is_sat() const noexcept { return outcome_ == Outcome::Sat; }
  bool is_unsat() const noexcept { return outcome_ == Outcome::Unsat; }
  bool is_unknown() const noexcept { return outcome_ == Outcome::Unknown; }
  /// Present iff outcome is Sat.
  const std::optional<Assignment>& assignment() const noexcept { return assignment_; }
  const SolveStats& stats() const noexcept { return stats_; }
  SolveStats& stats() noexcept { return stats_; }

private:
  SolveResult(Outcome outcome, std::optional<Assignment> a, SolveStats stats)
      : outcome_(outcome), assignment_(std::move(a)), stats_(stats) {}

  Outcome outcome_;
  std::optional<Assignment> assignment_;
  SolveStats stats_;
};

inline constexpr Var kBruteForceMaxVars = 25;

/// Lexicographic enumeration (x1 is the low bit, false before true).
/// Throws Error(TooLarge) above kBruteForceMaxVars.
SolveResult brute_force_sat(const CnfFormula& formula);

}  // namespace satmp
