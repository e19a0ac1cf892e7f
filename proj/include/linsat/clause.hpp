#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

#include "linsat/echelon.hpp"
#include "linsat/equation.hpp"
#include "linsat/types.hpp"

namespace linsat {

// Reduced form of a watched row, valid for the first `stamp` trail units
// as long as the unit at stamp-1 is still the one with generation `gen`.
struct WatchCache {
  Equation value;
  std::size_t stamp = 0;
  std::uint64_t gen = 0;
  bool primed = false;
};

// A disjunction of affine equations f_1 v ... v f_k, stored canonically as
// an independent basis of its linear negation span(f_1+1, ..., f_k+1).
// An empty basis is the empty (false) clause.
struct LinClause {
  ClauseId id = kNoClause;
  bool learned = false;
  double activity = 0.0;
  EchelonBasis neg_basis;
  std::uint32_t watch1 = 0;
  std::uint32_t watch2 = 1;
  WatchCache cache1;
  WatchCache cache2;

  std::size_t size() const { return neg_basis.size(); }
  bool is_empty() const { return neg_basis.empty(); }
  std::size_t nvars() const { return neg_basis.nvars(); }
  // The disjuncts, i.e. every basis row negated.
  std::vector<Equation> disjuncts() const;
  void reset_watches();
};

struct NormalizedClause {
  enum class Kind { Clause, Tautology, FalseClause };
  Kind kind;
  EchelonBasis neg_basis;
};

// Canonical store for a disjunction. A [0=0] disjunct or a pair of
// complementary disjuncts makes the clause a tautology; [0=1] disjuncts
// vanish; a clause whose disjuncts all vanish is the false clause.
NormalizedClause normalize_clause(std::size_t nvars, std::span<const Equation> disjuncts);

// Total assignment of x1..xn.
struct Assignment {
  std::vector<std::uint8_t> values;

  std::size_t size() const { return values.size(); }
  bool value(std::size_t var) const { return values[var - 1] != 0; }
  // A clause is true iff some row of its negation is violated.
  bool satisfies(const EchelonBasis& neg_basis) const;
  bool satisfies(const LinClause& clause) const { return satisfies(clause.neg_basis); }
};

}  // namespace linsat
