#pragma once

#include <array>
#include <cstddef>
#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include "satmp/formula.hpp"

namespace satmp {

/// Bipartite literal-clause incidence graph. Literal node ids follow
/// Literal::node_id(); clause node ids are clause indices. Immutable.
class LcgGraph {
public:
  explicit LcgGraph(const CnfFormula& formula);

  Var num_vars() const noexcept { return num_vars_; }
  std::size_t num_literal_nodes() const noexcept { return literal_adjacency_.size(); }
  std::size_t num_clause_nodes() const noexcept { return clause_adjacency_.size(); }
  std::size_t num_edges() const noexcept { return num_edges_; }

  /// Clause indices containing lit, ascending. Throws IndexOutOfRange if the
  /// variable is outside 1..n.
  const std::vector<std::size_t>& clauses_of(Literal lit) const;
  /// Literals of clause j in clause order. Throws IndexOutOfRange.
  const std::vector<Literal>& literals_of(std::size_t j) const;

  /// (positive node id, negative node id) for every variable, in variable order.
  std::vector<std::pair<std::size_t, std::size_t>> negation_pairs() const;
  /// (literal node id, clause node id), clause-major.
  std::vector<std::pair<std::size_t, std::size_t>> edges() const;

  friend bool operator==(const LcgGraph&, const LcgGraph&) = default;

private:
  Var num_vars_;
  std::size_t num_edges_ = 0;
  std::vector<std::vector<std::size_t>> literal_adjacency_;
  std::vector<std::vector<Literal>> clause_adjacency_;
};

LcgGraph build_lcg(const CnfFormula& formula);

inline const std::vector<std::size_t>& neighbors_of_literal(const LcgGraph& g, Literal v) { return g.clauses_of(v); }
inline const std::vector<Literal>& neighbors_of_clause(const LcgGraph& g, std::size_t j) { return g.literals_of(j); }

/// 128-bit digest of the canonical clause multiset plus n.
struct GraphFingerprint {
  std::array<std::uint8_t, 16> digest{};

  std::string hex() const;
  friend bool operator==(const GraphFingerprint&, const GraphFingerprint&) = default;
};

GraphFingerprint fingerprint(const LcgGraph& g);

/// One "L<literal id> C<clause id>" line per edge.
std::string export_edge_list(const LcgGraph& g);

}  // namespace satmp
