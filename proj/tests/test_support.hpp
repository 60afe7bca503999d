#pragma once

#include <cstdint>
#include <random>
#include <set>
#include <vector>

#include "satmp/formula.hpp"

namespace satmp::testing {

// (x1 v ~x2) ^ (~x1 v x2)
inline CnfFormula phi1() {
  return CnfFormula(2, {Clause{Literal(1, Polarity::Positive), Literal(2, Polarity::Negative)},
                        Clause{Literal(1, Polarity::Negative), Literal(2, Polarity::Positive)}});
}

inline Literal pos(Var v) { return Literal(v, Polarity::Positive); }
inline Literal neg(Var v) { return Literal(v, Polarity::Negative); }

inline CnfFormula contradiction() { return CnfFormula(1, {Clause{pos(1)}, Clause{neg(1)}}); }

/// Truth value of a clause from first principles, independent of the library.
inline bool oracle_clause(const Clause& c, std::uint64_t bits) {
  for (Literal lit : c) {
    const bool value = (bits >> (lit.var() - 1)) & 1;
    if (value != lit.negative()) return true;
  }
  return false;
}

inline bool oracle_formula(const CnfFormula& f, std::uint64_t bits) {
  for (const Clause& c : f.clauses()) {
    if (!oracle_clause(c, bits)) return false;
  }
  return true;
}

/// Exhaustive satisfiability over all 2^n assignments.
inline bool oracle_satisfiable(const CnfFormula& f) {
  for (std::uint64_t bits = 0; bits < (std::uint64_t{1} << f.num_vars()); ++bits) {
    if (oracle_formula(f, bits)) return true;
  }
  return false;
}

inline Assignment from_bits(Var n, std::uint64_t bits) {
  Assignment a(n);
  for (Var v = 1; v <= n; ++v) a.set(v, (bits >> (v - 1)) & 1);
  return a;
}

/// Literals occurring in at least one falsified clause, by node id.
inline std::vector<Literal> semantic_candidates(const CnfFormula& f, const Assignment& a) {
  std::set<std::size_t> ids;
  for (const Clause& c : f.clauses()) {
    bool sat = false;
    for (Literal lit : c) sat = sat || (a.value(lit.var()) != lit.negative());
    if (!sat) {
      for (Literal lit : c) ids.insert(lit.node_id());
    }
  }
  std::vector<Literal> out;
  for (std::size_t id : ids) out.push_back(Literal::from_node_id(id));
  return out;
}

/// Arbitrary formula of mixed clause widths; may contain tautologies or empty clauses.
inline CnfFormula random_formula(std::mt19937_64& rng, Var max_vars, std::size_t max_clauses, bool allow_empty) {
  const Var n = 1 + static_cast<Var>(rng() % max_vars);
  const std::size_t m = rng() % (max_clauses + 1);
  std::vector<Clause> clauses;
  for (std::size_t j = 0; j < m; ++j) {
    const std::size_t width = allow_empty ? rng() % 5 : 1 + rng() % 4;
    std::vector<Literal> lits;
    for (std::size_t i = 0; i < width; ++i) {
      lits.emplace_back(1 + static_cast<Var>(rng() % n), (rng() & 1) ? Polarity::Negative : Polarity::Positive);
    }
    clauses.emplace_back(std::move(lits));
  }
  return CnfFormula(n, std::move(clauses));
}

}  // namespace satmp::testing
