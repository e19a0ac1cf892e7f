#include <gtest/gtest.h>

#include "linsat/dimacs.hpp"
#include "linsat/errors.hpp"
#include "linsat/learn.hpp"
#include "linsat/propagate.hpp"
#include "linsat/rng.hpp"
#include "oracle.hpp"

using namespace linsat;

namespace {

Equation bits(const char* s) { return Equation::from_bits(s); }

Equation var_eq(std::size_t n, std::initializer_list<std::size_t> vars, bool rhs) {
  std::vector<std::size_t> v(vars);
  return Equation::from_vars(n, v, rhs);
}

const char* kAppB =
    "p xnf 5 3\n"
    "1+2+5 -2+3+4+5 0\n"
    "2+4 4+5 0\n"
    "-2+5 -3+4 0\n";

EchelonBasis basis_of(std::initializer_list<const char*> rows) {
  std::vector<Equation> r;
  for (const char* s : rows) r.push_back(bits(s));
  return span_of(r.front().width(), r);
}

ClauseDb random_formula(std::size_t n, std::size_t m, std::size_t k, Rng& rng) {
  ClauseDb db(n);
  while (db.size() < m) {
    std::vector<Equation> eqs;
    for (std::size_t i = 0, w = 1 + rng.below(k); i < w; ++i) eqs.push_back(oracle::random_nonconstant(n, rng));
    db.add_disjunction(eqs);
  }
  return db;
}

// Random decisions with propagation until a conflict above level 0.
bool drive_to_conflict(Trail& t, ClauseDb& db, Rng& rng) {
  if (propagate_all(t, db).conflict) return false;
  while (!t.full()) {
    bool decided = false;
    for (int tries = 0; tries < 30 && !decided; ++tries) decided = t.decide(oracle::random_nonconstant(t.nvars(), rng)).added();
    if (!decided) return false;
    if (propagate_all(t, db).conflict) return true;
  }
  return false;
}

// Minimal level whose prefix makes the clause propagate or conflict, by
// scanning every prefix.
std::uint32_t brute_asserting_level(const EchelonBasis& neg, const Trail& t) {
  for (std::uint32_t k = 0; k <= t.level(); ++k) {
    EchelonBasis prefix = t.units();
    prefix.truncate(t.level_end(k));
    ClauseStatus s = classify_clause(prefix, neg);
    if (s.propagated() || s.conflict()) return k;
  }
  return UINT32_MAX;
}

// Seeds ¬C as decisions and propagates through `hints` until a fixed point.
bool hints_refute(const EchelonBasis& neg, std::span<const ClauseId> hints, const ClauseDb& db) {
  Trail t(db.nvars());
  for (const Equation& r : neg.rows()) {
    if (t.decide(r).kind == InsertOutcome::Kind::Inconsistent) return true;
  }
  bool progress = true;
  while (progress) {
    progress = false;
    for (ClauseId id : hints) {
      ClauseStatus s = propagate_clause(t, db.get(id));
      if (s.conflict()) return true;
      progress = progress || s.propagated();
    }
  }
  return false;
}

}  // namespace

TEST(Analyze, WorkedExampleLearnsAssertingClause) {
  ClauseDb db = parse_xnf(kAppB);
  Trail t(5);
  t.decide(bits("011000"));
  propagate_all(t, db);
  t.decide(bits("110101"));
  ASSERT_TRUE(propagate_all(t, db).conflict);

  Analysis a = analyze(t, db);
  EXPECT_TRUE(same_span(a.neg_basis, basis_of({"000110", "011000"})));
  EXPECT_EQ(a.neg_basis.size(), 2u);
  EXPECT_EQ(a.level, 1u);
  EXPECT_EQ(a.antecedents, (std::vector<ClauseId>{make_id(3), make_id(2)}));
  EXPECT_EQ(a.iterations, 1u);
  EXPECT_EQ(a.asserting_index, 3u);
  EXPECT_EQ(asserting_level(a.neg_basis, t), 1u);

  // After backjumping, the learned clause propagates d+e = 1 from f1.
  t.backjump(a.level);
  ClauseId id = db.add_learned(a.neg_basis);
  ClauseStatus s = propagate_clause(t, db.get(id));
  ASSERT_TRUE(s.propagated());
  EXPECT_EQ(t.units().member(bits("000111")), Membership::InSpan);
  EXPECT_EQ(t.level(), 1u);
}

TEST(Analyze, AssertingConflictClauseNeedsNoAddition) {
  const std::size_t n = 2;
  ClauseDb db(n);
  std::vector<Equation> c = {var_eq(n, {1}, true), var_eq(n, {2}, true)};
  db.add_disjunction(c);
  Trail t(n);
  t.decide(var_eq(n, {1}, false));
  t.decide(var_eq(n, {2}, false));
  ASSERT_TRUE(propagate_all(t, db).conflict);
  Analysis a = analyze(t, db);
  EXPECT_EQ(a.iterations, 0u);
  EXPECT_EQ(a.antecedents, std::vector<ClauseId>{make_id(1)});
  EXPECT_EQ(a.level, 1u);
  EXPECT_TRUE(same_span(a.neg_basis, db.at_position(0).neg_basis));
}

TEST(Analyze, RequiresConflictAndDecision) {
  ClauseDb db = parse_xnf(kAppB);
  Trail t(5);
  EXPECT_THROW(analyze(t, db), UsageError);
  ClauseDb bad(1);
  std::vector<Equation> x1 = {var_eq(1, {1}, true)};
  std::vector<Equation> x0 = {var_eq(1, {1}, false)};
  bad.add_disjunction(x1);
  bad.add_disjunction(x0);
  Trail t0(1);
  ASSERT_TRUE(propagate_all(t0, bad).conflict);
  EXPECT_THROW(analyze(t0, bad), UsageError);
}

TEST(AssertingLevel, UnitAndNonConflicting) {
  const std::size_t n = 3;
  Trail t(n);
  t.decide(var_eq(n, {1}, true));
  t.decide(var_eq(n, {2}, true));
  EchelonBasis unit(n + 1);
  unit.insert(var_eq(n, {2}, true));
  EXPECT_EQ(asserting_level(unit, t), 0u);
  EchelonBasis open(n + 1);
  open.insert(var_eq(n, {3}, true));
  EXPECT_THROW(asserting_level(open, t), ContractViolation);
}

TEST(Analyze, RandomConflictsGiveImpliedAssertingClauses) {
  Rng rng(61);
  int checked = 0;
  for (int trial = 0; trial < 20000 && checked < 400; ++trial) {
    const std::size_t n = 2 + rng.below(7);
    ClauseDb db = random_formula(n, n + rng.below(3 * n), 3, rng);
    Trail t(n);
    if (!drive_to_conflict(t, db, rng)) continue;
    ++checked;
    const std::uint32_t conflict_level = t.level();
    Analysis a = analyze(t, db);

    ASSERT_FALSE(a.neg_basis.contains_one());
    ASSERT_LT(a.level, conflict_level);
    ASSERT_EQ(a.level, asserting_level(a.neg_basis, t));
    ASSERT_EQ(a.level, brute_asserting_level(a.neg_basis, t));
    ASSERT_EQ(a.antecedents.front(), t.conflict_reason());
    // Every unit of ¬C is known at the conflict.
    ASSERT_TRUE(t.units().contains(a.neg_basis));

    // Implied by the formula.
    for (std::uint64_t x = 0; x < (std::uint64_t{1} << n); ++x) {
      if (oracle::formula_holds(db, x)) ASSERT_TRUE(oracle::clause_holds(a.neg_basis, x));
    }
    // Its negation propagates to a contradiction through the antecedents.
    ASSERT_TRUE(hints_refute(a.neg_basis, a.antecedents, db));

    // Asserting: at its level the clause propagates rather than conflicts.
    EchelonBasis prefix = t.units();
    prefix.truncate(t.level_end(a.level));
    ASSERT_TRUE(classify_clause(prefix, a.neg_basis).propagated());
  }
  EXPECT_GE(checked, 300);
}
