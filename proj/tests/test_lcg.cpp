#include <gtest/gtest.h>

#include <algorithm>
#include <random>

#include "satmp/error.hpp"
#include "satmp/lcg.hpp"
#include "test_support.hpp"

using namespace satmp;
using namespace satmp::testing;

TEST(BuildLcg, Counts) {
  const LcgGraph g = build_lcg(phi1());
  EXPECT_EQ(g.num_literal_nodes(), 4u);
  EXPECT_EQ(g.num_clause_nodes(), 2u);
  EXPECT_EQ(g.num_edges(), 4u);

  const LcgGraph unit = build_lcg(CnfFormula(1, {Clause{pos(1)}}));
  EXPECT_EQ(unit.num_literal_nodes(), 2u);
  EXPECT_EQ(unit.num_clause_nodes(), 1u);
  EXPECT_EQ(unit.num_edges(), 1u);

  const LcgGraph empty = build_lcg(CnfFormula(2, {}));
  EXPECT_EQ(empty.num_literal_nodes(), 4u);
  EXPECT_EQ(empty.num_clause_nodes(), 0u);
  EXPECT_EQ(empty.num_edges(), 0u);
}

TEST(BuildLcg, NodeNumberingAndPairs) {
  const LcgGraph g = build_lcg(phi1());
  EXPECT_EQ(g.edges(), (std::vector<std::pair<std::size_t, std::size_t>>{{0, 0}, {3, 0}, {1, 1}, {2, 1}}));
  EXPECT_EQ(g.negation_pairs(), (std::vector<std::pair<std::size_t, std::size_t>>{{0, 1}, {2, 3}}));
  EXPECT_EQ(export_edge_list(g), "L0 C0\nL3 C0\nL1 C1\nL2 C1\n");
}

TEST(Neighbors, Examples) {
  const LcgGraph g = build_lcg(phi1());
  EXPECT_EQ(neighbors_of_literal(g, pos(1)), std::vector<std::size_t>{0});
  EXPECT_EQ(neighbors_of_literal(g, neg(1)), std::vector<std::size_t>{1});
  EXPECT_EQ(neighbors_of_clause(g, 0), (std::vector<Literal>{pos(1), neg(2)}));
  EXPECT_EQ(neighbors_of_clause(g, 1), (std::vector<Literal>{neg(1), pos(2)}));

  const LcgGraph sparse = build_lcg(CnfFormula(3, {Clause{pos(1)}}));
  EXPECT_TRUE(neighbors_of_literal(sparse, neg(3)).empty());
  EXPECT_EQ(neighbors_of_clause(sparse, 0).size(), 1u);

  try {
    neighbors_of_clause(g, 2);
    FAIL() << "expected IndexOutOfRange";
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::IndexOutOfRange);
  }
  EXPECT_THROW(neighbors_of_literal(g, pos(3)), Error);
}

TEST(BuildLcg, IncidenceProperties) {
  std::mt19937_64 rng(11);
  for (int i = 0; i < 300; ++i) {
    const CnfFormula f = random_formula(rng, 12, 20, true);
    const LcgGraph g = build_lcg(f);
    std::size_t occurrences = 0;
    for (const Clause& c : f.clauses()) occurrences += c.size();
    EXPECT_EQ(g.num_edges(), occurrences);
    EXPECT_EQ(g, build_lcg(f));
    for (Var v = 1; v <= f.num_vars(); ++v) {
      for (Literal lit : {pos(v), neg(v)}) {
        const auto& clauses = neighbors_of_literal(g, lit);
        EXPECT_TRUE(std::is_sorted(clauses.begin(), clauses.end()));
        for (std::size_t j = 0; j < f.num_clauses(); ++j) {
          const bool in_clause = f.clause(j).contains(lit);
          const bool listed = std::binary_search(clauses.begin(), clauses.end(), j);
          ASSERT_EQ(in_clause, listed);
          const auto& lits = neighbors_of_clause(g, j);
          ASSERT_EQ(in_clause, std::find(lits.begin(), lits.end(), lit) != lits.end());
        }
      }
    }
  }
}

TEST(Fingerprint, Examples) {
  const CnfFormula f = phi1();
  const CnfFormula swapped(2, {f.clause(1), f.clause(0)});
  const CnfFormula minus_one(2, {f.clause(0)});
  EXPECT_EQ(fingerprint(build_lcg(f)), fingerprint(build_lcg(swapped)));
  EXPECT_NE(fingerprint(build_lcg(f)), fingerprint(build_lcg(minus_one)));
  EXPECT_NE(fingerprint(build_lcg(CnfFormula(2, {}))), fingerprint(build_lcg(CnfFormula(3, {}))));
  EXPECT_EQ(fingerprint(build_lcg(f)).hex().size(), 32u);
}

TEST(Fingerprint, InvariantUnderSeededShuffles) {
  std::mt19937_64 rng(31337);
  for (int i = 0; i < 300; ++i) {
    const CnfFormula f = random_formula(rng, 10, 15, true);
    std::vector<Clause> shuffled;
    for (const Clause& c : f.clauses()) {
      std::vector<Literal> lits = c.literals();
      std::shuffle(lits.begin(), lits.end(), rng);
      shuffled.emplace_back(std::move(lits));
    }
    std::shuffle(shuffled.begin(), shuffled.end(), rng);
    EXPECT_EQ(fingerprint(build_lcg(f)), fingerprint(build_lcg(CnfFormula(f.num_vars(), shuffled))));
  }
}

TEST(Fingerprint, DistinguishesClauseBoundaries) {
  // Same literal multiset, different grouping.
  const CnfFormula a(3, {Clause{pos(1), pos(2)}, Clause{pos(3)}});
  const CnfFormula b(3, {Clause{pos(1)}, Clause{pos(2), pos(3)}});
  EXPECT_NE(fingerprint(build_lcg(a)), fingerprint(build_lcg(b)));
  const CnfFormula with_empty(3, {Clause{pos(1)}, Clause{}});
  EXPECT_NE(fingerprint(build_lcg(with_empty)), fingerprint(build_lcg(CnfFormula(3, {Clause{pos(1)}}))));
}
