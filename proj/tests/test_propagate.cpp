#include <gtest/gtest.h>

#include <numeric>

#include "linsat/dimacs.hpp"
#include "linsat/errors.hpp"
#include "linsat/propagate.hpp"
#include "linsat/rng.hpp"
#include "linsat/trail.hpp"
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

Equation row_of_mask(std::size_t n, std::uint64_t mask) {
  Equation e(n);
  for (std::size_t b = 0; b <= n; ++b) {
    if ((mask >> b) & 1) e.flip(b);
  }
  return e;
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

// Decides random fresh equations until the trail has `count` decisions or
// no fresh equation is found quickly.
void random_decisions(Trail& t, std::size_t count, Rng& rng) {
  for (std::size_t d = 0; d < count && !t.full(); ++d) {
    for (int tries = 0; tries < 20; ++tries) {
      if (t.decide(oracle::random_nonconstant(t.nvars(), rng)).added()) break;
    }
  }
}

}  // namespace

TEST(PropagateClause, SingleClauseExample) {
  const std::size_t n = 3;
  Trail t(n);
  t.decide(var_eq(n, {1}, false));
  t.decide(var_eq(n, {2}, false));
  ClauseDb db(n);
  std::vector<Equation> c = {var_eq(n, {1, 2, 3}, true), var_eq(n, {3}, true)};
  db.add_disjunction(c);
  ClauseStatus s = propagate_clause(t, db.at_position(0));
  ASSERT_TRUE(s.propagated());
  EXPECT_EQ(t.size(), 3u);
  EXPECT_EQ(t.units().member(var_eq(n, {3}, true)), Membership::InSpan);
  EXPECT_EQ(t.units().member(var_eq(n, {1, 2, 3}, true)), Membership::InSpan);
  EXPECT_EQ(t.info(2).reason, make_id(1));
}

TEST(PropagateClause, WorkedExampleTrace) {
  ClauseDb db = parse_xnf(kAppB);
  Trail t(5);
  ASSERT_TRUE(t.decide(bits("011000")).added());
  ASSERT_TRUE(t.decide(bits("110101")).added());

  for (const Equation& r : db.at_position(0).neg_basis.rows()) EXPECT_EQ(t.units().reduce(r), bits("000111"));
  ClauseStatus s1 = propagate_clause(t, db.at_position(0));
  ASSERT_TRUE(s1.propagated());
  EXPECT_EQ(t.units().member(bits("000110")), Membership::InSpan);
  EXPECT_EQ(t.units().reduce(bits("010100")), bits("001010"));
  EXPECT_TRUE(t.units().reduce(bits("000110")).is_zero());

  ClauseStatus s2 = propagate_clause(t, db.at_position(1));
  ASSERT_TRUE(s2.propagated());
  EXPECT_EQ(t.units().member(bits("001011")), Membership::InSpan);

  for (const Equation& r : db.at_position(2).neg_basis.rows()) EXPECT_TRUE(t.units().reduce(r).is_zero());
  ClauseStatus s3 = propagate_clause(t, db.at_position(2));
  EXPECT_TRUE(s3.conflict());
  EXPECT_TRUE(t.in_conflict());
  EXPECT_EQ(t.conflict_reason(), make_id(3));
  EXPECT_EQ(t.level(), 2u);
  EXPECT_EQ(t.info(2).level, 2u);
  EXPECT_EQ(t.info(3).level, 2u);
}

TEST(PropagateAll, WorkedExampleRun) {
  ClauseDb db = parse_xnf(kAppB);
  Trail t(5);
  EXPECT_FALSE(propagate_all(t, db).conflict);
  EXPECT_EQ(t.size(), 0u);
  t.decide(bits("011000"));
  EXPECT_FALSE(propagate_all(t, db).conflict);
  t.decide(bits("110101"));
  PropagateResult r = propagate_all(t, db);
  EXPECT_TRUE(r.conflict);
  EXPECT_EQ(r.reason, make_id(3));
  EXPECT_EQ(r.propagations, 2u);
  EXPECT_EQ(t.info(2).reason, make_id(1));
  EXPECT_EQ(t.info(3).reason, make_id(2));
}

TEST(PropagateAll, EmptyClauseConflictsAndEmptyDbIsFixedPoint) {
  ClauseDb empty(3);
  Trail t(3);
  EXPECT_FALSE(propagate_all(t, empty).conflict);

  ClauseDb db(3);
  db.add_disjunction({});
  Trail t2(3);
  t2.decide(var_eq(3, {1}, true));
  EXPECT_TRUE(propagate_clause(t2, db.at_position(0)).conflict());
  Trail t3(3);
  EXPECT_TRUE(propagate_all(t3, db).conflict);
}

TEST(PropagateClause, SemanticsExhaustive) {
  // Random consistent U and random clauses, n <= 5, against truth tables and
  // the definition enumerated over every candidate equation.
  Rng rng(31);
  for (int trial = 0; trial < 3000; ++trial) {
    const std::size_t n = 1 + rng.below(5);
    EchelonBasis u(n + 1);
    for (std::size_t i = 0, k = rng.below(n + 1); i < k; ++i) u.insert(oracle::random_nonconstant(n, rng));
    std::vector<Equation> eqs;
    for (std::size_t i = 0, k = 1 + rng.below(3); i < k; ++i) eqs.push_back(oracle::random_nonconstant(n, rng));
    NormalizedClause nc = normalize_clause(n, eqs);
    if (nc.kind != NormalizedClause::Kind::Clause) continue;

    auto sols = oracle::solutions(n, oracle::rows_of(u));
    std::vector<std::uint64_t> models;
    for (std::uint64_t a : sols) {
      if (oracle::clause_holds(nc.neg_basis, a)) models.push_back(a);
    }
    auto in_span = [&](const EchelonBasis& b, const Equation& f) {
      return oracle::span_elements(b).count(f.to_string()) > 0;
    };
    auto admissible = [&](const Equation& f) {
      if (in_span(u, f) || in_span(u, f.negated())) return false;
      EchelonBasis uf = u;
      uf.extend(f.negated());
      return uf.contains(nc.neg_basis);
    };

    ClauseStatus s = classify_clause(u, nc.neg_basis);
    ASSERT_EQ(s.conflict(), models.empty());
    std::vector<Equation> all;
    for (std::uint64_t m = 0; m < (std::uint64_t{1} << (n + 1)); ++m) {
      Equation f = row_of_mask(n, m);
      if (admissible(f)) all.push_back(f);
    }
    if (s.propagated()) {
      ASSERT_FALSE(in_span(u, s.unit));
      ASSERT_FALSE(in_span(u, s.unit.negated()));
      for (std::uint64_t a : models) ASSERT_TRUE(oracle::eval(s.unit, a));
      ASSERT_FALSE(all.empty());
      EchelonBasis us = u;
      us.insert(s.unit);
      for (const Equation& f : all) {
        EchelonBasis uf = u;
        uf.insert(f);
        ASSERT_TRUE(same_span(us, uf));
      }
    } else if (!s.conflict()) {
      ASSERT_TRUE(all.empty());
      // Nothing is implied beyond span(U) by the clause and the units.
      for (std::uint64_t m = 0; m < (std::uint64_t{1} << (n + 1)); ++m) {
        Equation f = row_of_mask(n, m);
        if (in_span(u, f) || in_span(u, f.negated())) continue;
        bool implied = true;
        for (std::uint64_t a : models) implied = implied && oracle::eval(f, a);
        ASSERT_FALSE(implied);
      }
    }
  }
}

TEST(PropagateAll, WatchesAgreeWithFullReduction) {
  Rng rng(41);
  for (int trial = 0; trial < 400; ++trial) {
    const std::size_t n = 2 + rng.below(9);
    ClauseDb db = random_formula(n, 2 + rng.below(3 * n), 4, rng);
    ClauseDb plain = db;
    Trail a(n), b(n);
    PropagateOptions watched;
    PropagateOptions full;
    full.use_watches = false;
    // A few rounds of decide, propagate and backjump on both trails.
    for (int round = 0; round < 6; ++round) {
      PropagateResult ra = propagate_all(a, db, watched);
      PropagateResult rb = propagate_all(b, plain, full);
      ASSERT_EQ(ra.conflict, rb.conflict);
      if (!ra.conflict) {
        ASSERT_EQ(a.size(), b.size());
        ASSERT_TRUE(same_span(a.units(), b.units()));
      }
      if (ra.conflict || a.full() || rng.below(3) == 0) {
        std::uint32_t k = a.level() == 0 ? 0 : static_cast<std::uint32_t>(rng.below(a.level()));
        if (a.level() == 0) {
          a.restart();
          b.restart();
        } else {
          a.backjump(k);
          b.backjump(k);
        }
        continue;
      }
      Equation f = oracle::random_nonconstant(n, rng);
      bool da = a.decide(f).added();
      bool dbd = b.decide(f).added();
      ASSERT_EQ(da, dbd);
    }
  }
}

TEST(PropagateAll, FixedPointIsOrderIndependent) {
  Rng rng(43);
  int conflicts = 0, fixed = 0;
  for (int trial = 0; trial < 150; ++trial) {
    const std::size_t n = 2 + rng.below(7);
    ClauseDb db = random_formula(n, 2 + rng.below(2 * n), 3, rng);
    std::vector<Equation> decisions;
    for (std::size_t i = 0, k = rng.below(3); i < k; ++i) decisions.push_back(oracle::random_nonconstant(n, rng));
    std::optional<EchelonBasis> ref;
    bool ref_conflict = false;
    for (int order_i = 0; order_i < 30; ++order_i) {
      std::vector<std::size_t> order(db.size());
      std::iota(order.begin(), order.end(), 0);
      rng.shuffle(order.begin(), order.end());
      ClauseDb copy = db;
      Trail t(n);
      for (const Equation& d : decisions) t.decide(d);
      PropagateOptions opts;
      opts.order = order;
      opts.use_watches = rng.coin();
      PropagateResult r = propagate_all(t, copy, opts);
      if (!ref) {
        ref = t.units();
        ref_conflict = r.conflict;
        (r.conflict ? conflicts : fixed)++;
        continue;
      }
      ASSERT_EQ(r.conflict, ref_conflict);
      if (!r.conflict) ASSERT_TRUE(same_span(t.units(), *ref));
    }
  }
  EXPECT_GT(conflicts, 0);
  EXPECT_GT(fixed, 0);
}

TEST(Trail, BackjumpMatchesReplayedPrefix) {
  Rng rng(47);
  for (int trial = 0; trial < 300; ++trial) {
    const std::size_t n = 3 + rng.below(8);
    ClauseDb db = random_formula(n, n, 3, rng);
    Trail t(n);
    std::vector<std::vector<Equation>> decided;  // decision per level
    for (int step = 0; step < 5; ++step) {
      if (propagate_all(t, db).conflict) break;
      std::size_t before = t.level();
      random_decisions(t, 1, rng);
      if (t.level() == before) break;
    }
    if (t.level() == 0) continue;
    const std::uint32_t k = static_cast<std::uint32_t>(rng.below(t.level()));
    const std::size_t keep = t.level_end(k);
    std::vector<Equation> rows(t.units().rows().begin(), t.units().rows().begin() + keep);
    std::vector<UnitInfo> infos;
    for (std::size_t i = 0; i < keep; ++i) infos.push_back(t.info(i));
    t.backjump(k);
    EXPECT_FALSE(t.in_conflict());
    ASSERT_EQ(t.size(), keep);
    ASSERT_EQ(t.level(), k);
    // Fresh replay of the kept prefix.
    Trail r(n);
    for (std::size_t i = 0; i < keep; ++i) {
      if (infos[i].is_decision()) {
        r.decide(rows[i]);
      } else {
        r.propagate(rows[i], infos[i].reason);
      }
    }
    for (std::size_t i = 0; i < keep; ++i) {
      EXPECT_EQ(t.unit(i), r.unit(i));
      EXPECT_EQ(t.info(i).level, r.info(i).level);
      EXPECT_EQ(t.info(i).reason, r.info(i).reason);
    }
    // Each propagated unit is certified by its reason on the prefix before
    // it.
    for (std::size_t i = 0; i < keep; ++i) {
      if (infos[i].is_decision()) continue;
      EchelonBasis prefix = t.units();
      prefix.truncate(i);
      ClauseStatus s = classify_clause(prefix, db.get(infos[i].reason).neg_basis);
      ASSERT_TRUE(s.propagated());
      prefix.insert(s.unit);
      EXPECT_EQ(prefix.member(t.unit(i)), Membership::InSpan);
    }
  }
}

TEST(Trail, BackjumpToCurrentLevelIsUsageError) {
  Trail t(3);
  t.decide(var_eq(3, {1}, true));
  EXPECT_THROW(t.backjump(1), UsageError);
  EXPECT_THROW(t.backjump(2), UsageError);
  t.backjump(0);
  EXPECT_EQ(t.size(), 0u);
  EXPECT_THROW(t.backjump(0), UsageError);
}

TEST(Trail, DeterminedDecisionsAreRejected) {
  Trail t(2);
  t.decide(var_eq(2, {1}, true));
  EXPECT_EQ(t.decide(var_eq(2, {1}, true)).kind, InsertOutcome::Kind::AlreadyInSpan);
  EXPECT_EQ(t.decide(var_eq(2, {1}, false)).kind, InsertOutcome::Kind::Inconsistent);
  EXPECT_EQ(t.level(), 1u);
  EXPECT_THROW(t.propagate(var_eq(2, {1}, false), make_id(1)), ContractViolation);
}

TEST(InspectWatches, OpenClauseCannotAct) {
  Rng rng(53);
  for (int trial = 0; trial < 1000; ++trial) {
    const std::size_t n = 2 + rng.below(6);
    ClauseDb db = random_formula(n, 6, 4, rng);
    Trail t(n);
    random_decisions(t, rng.below(n), rng);
    for (LinClause& c : db.clauses()) {
      if (inspect_watches(t, c) == WatchView::Open) {
        ClauseStatus s = classify_clause(t.units(), c.neg_basis);
        EXPECT_FALSE(s.conflict());
        EXPECT_FALSE(s.propagated());
      }
      EXPECT_EQ(satisfied_by(t.units(), c.neg_basis),
                [&] {
                  for (std::uint64_t a : oracle::solutions(n, oracle::rows_of(t.units()))) {
                    if (!oracle::clause_holds(c.neg_basis, a)) return false;
                  }
                  return true;
                }());
    }
  }
}
