#include "satmp/lcg.hpp"

#include <sodium.h>

#include <algorithm>

#include "satmp/error.hpp"

namespace satmp {

LcgGraph::LcgGraph(const CnfFormula& formula)
    : num_vars_(formula.num_vars()),
      literal_adjacency_(2 * static_cast<std::size_t>(formula.num_vars())),
      clause_adjacency_(formula.num_clauses()) {
  for (std::size_t j = 0; j < formula.num_clauses(); ++j) {
    const Clause& clause = formula.clauses()[j];
    clause_adjacency_[j] = clause.literals();
    for (Literal lit : clause) {
      literal_adjacency_[lit.node_id()].push_back(j);
      ++num_edges_;
    }
  }
}

const std::vector<std::size_t>& LcgGraph::clauses_of(Literal lit) const {
  if (lit.var() < 1 || lit.var() > num_vars_) {
    throw Error(ErrorCode::IndexOutOfRange, "variable " + std::to_string(lit.var()) + " not in graph");
  }
  return literal_adjacency_[lit.node_id()];
}

const std::vector<Literal>& LcgGraph::literals_of(std::size_t j) const {
  if (j >= clause_adjacency_.size()) {
    throw Error(ErrorCode::IndexOutOfRange,
                "clause " + std::to_string(j) + " out of range (m=" + std::to_string(clause_adjacency_.size()) + ")");
  }
  return clause_adjacency_[j];
}

std::vector<std::pair<std::size_t, std::size_t>> LcgGraph::negation_pairs() const {
  std::vector<std::pair<std::size_t, std::size_t>> pairs;
  pairs.reserve(num_vars_);
  for (Var v = 1; v <= num_vars_; ++v) {
    pairs.emplace_back(Literal(v, Polarity::Positive).node_id(), Literal(v, Polarity::Negative).node_id());
  }
  return pairs;
}

std::vector<std::pair<std::size_t, std::size_t>> LcgGraph::edges() const {
  std::vector<std::pair<std::size_t, std::size_t>> out;
  out.reserve(num_edges_);
  for (std::size_t j = 0; j < clause_adjacency_.size(); ++j) {
    for (Literal lit : clause_adjacency_[j]) out.emplace_back(lit.node_id(), j);
  }
  return out;
}

LcgGraph build_lcg(const CnfFormula& formula) { return LcgGraph(formula); }

std::string GraphFingerprint::hex() const {
  static constexpr char kDigits[] = "0123456789abcdef";
  std::string out;
  out.reserve(digest.size() * 2);
  for (std::uint8_t byte : digest) {
    out += kDigits[byte >> 4];
    out += kDigits[byte & 0xf];
  }
  return out;
}

namespace {

void append_u64(std::vector<unsigned char>& buf, std::uint64_t x) {
  for (int i = 0; i < 8; ++i) buf.push_back(static_cast<unsigned char>(x >> (8 * i)));
}

}  // namespace

GraphFingerprint fingerprint(const LcgGraph& g) {
  std::vector<std::vector<std::size_t>> canonical;
  canonical.reserve(g.num_clause_nodes());
  for (std::size_t j = 0; j < g.num_clause_nodes(); ++j) {
    std::vector<std::size_t> ids;
    for (Literal lit : g.literals_of(j)) ids.push_back(lit.node_id());
    std::sort(ids.begin(), ids.end());
    canonical.push_back(std::move(ids));
  }
  std::sort(canonical.begin(), canonical.end());

  std::vector<unsigned char> buf;
  append_u64(buf, g.num_vars());
  append_u64(buf, canonical.size());
  for (const auto& ids : canonical) {
    // Length prefix keeps clause boundaries unambiguous.
    append_u64(buf, ids.size());
    for (std::size_t id : ids) append_u64(buf, id);
  }

  static const bool sodium_ready = sodium_init() >= 0;
  if (!sodium_ready) throw Error(ErrorCode::Io, "libsodium failed to initialise");

  GraphFingerprint fp;
  crypto_generichash(fp.digest.data(), fp.digest.size(), buf.data(), buf.size(), nullptr, 0);
  return fp;
}

std::string export_edge_list(const LcgGraph& g) {
  std::string out;
  for (auto [lit, clause] : g.edges()) {
    out += "L" + std::to_string(lit) + " C" + std::to_string(clause) + "\n";
  }
  return out;
}

}  // namespace satmp
