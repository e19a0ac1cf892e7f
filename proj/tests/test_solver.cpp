#include <gtest/gtest.h>

#include <map>
#include <sstream>

#include "linsat/dimacs.hpp"
#include "linsat/errors.hpp"
#include "linsat/gen.hpp"
#include "linsat/proof.hpp"
#include "linsat/solver.hpp"
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

std::vector<SolverConfig> configs() {
  std::vector<SolverConfig> out;
  SolverConfig base;
  out.push_back(base);
  SolverConfig c = base;
  c.phase = Phase::Satisfy;
  out.push_back(c);
  c = base;
  c.phase = Phase::Random;
  c.seed = 5;
  out.push_back(c);
  c = base;
  c.selection = ClauseSelection::BerkMin;
  out.push_back(c);
  c = base;
  c.selection = ClauseSelection::Cmtf;
  c.compaction = false;
  out.push_back(c);
  c = base;
  c.selection = ClauseSelection::VariableVsids;
  out.push_back(c);
  c = base;
  c.restarts = {RestartPolicy::Kind::Luby, 2};
  out.push_back(c);
  c = base;
  c.restarts = {RestartPolicy::Kind::Fixed, 3};
  c.compaction = false;
  out.push_back(c);
  return out;
}

}  // namespace

TEST(Solver, WorkedExampleScriptedRun) {
  Solver s(parse_xnf(kAppB));
  ASSERT_EQ(s.settle(), Solver::Settle::FixedPoint);
  ASSERT_TRUE(s.decide(bits("011000")));
  ASSERT_EQ(s.settle(), Solver::Settle::FixedPoint);
  ASSERT_TRUE(s.decide(bits("110101")));
  ASSERT_EQ(s.settle(), Solver::Settle::FixedPoint);

  EXPECT_EQ(s.stats().conflicts, 1u);
  EXPECT_EQ(s.stats().learned, 1u);
  EXPECT_EQ(s.stats().additions, 1u);
  EXPECT_EQ(s.trail().level(), 1u);
  EXPECT_EQ(s.trail().units().member(bits("000111")), Membership::InSpan);
  const LinClause& learned = s.db().get(make_id(4));
  EXPECT_TRUE(learned.learned);
  EXPECT_TRUE(same_span(learned.neg_basis, basis_of({"000110", "011000"})));
  EXPECT_EQ(s.trail().info(1).reason, make_id(4));

  // A determined decision is skipped.
  EXPECT_FALSE(s.decide(bits("011000")));
  EXPECT_FALSE(s.decide(bits("000111")));
}

TEST(Solver, WorkedExampleCompletedTrailGivesModel) {
  ClauseDb db = parse_xnf(kAppB);
  Solver s(db);
  s.settle();
  s.decide(bits("011000"));
  s.settle();
  s.decide(bits("110101"));
  s.settle();
  std::optional<Equation> f;
  while (!s.trail().full()) {
    f = s.pick_decision();
    if (!f) break;
    ASSERT_TRUE(s.decide(*f));
    ASSERT_EQ(s.settle(), Solver::Settle::FixedPoint);
  }
  Assignment a = complete_model(s.trail().units());
  for (const auto& c : db.clauses()) EXPECT_TRUE(a.satisfies(c));
  SolveResult r = solve(db);
  ASSERT_TRUE(r.sat());
  for (const auto& c : db.clauses()) EXPECT_TRUE(r.model.satisfies(c));
}

TEST(Solver, ContradictoryUnitsAreUnsatWithoutDecisions) {
  ClauseDb db(1);
  std::vector<Equation> a = {var_eq(1, {1}, true)};
  std::vector<Equation> b = {var_eq(1, {1}, false)};
  db.add_disjunction(a);
  db.add_disjunction(b);
  ProofLog log(1);
  SolveResult r = solve(db, {}, &log);
  EXPECT_TRUE(r.unsat());
  EXPECT_EQ(r.stats.decisions, 0u);
  ASSERT_TRUE(r.proof.has_value());
  EXPECT_TRUE(check_proof(db, *r.proof).accepted);
}

TEST(Solver, EmptyFormulaAndEmptyClause) {
  SolveResult r = solve(ClauseDb(3));
  ASSERT_TRUE(r.sat());
  EXPECT_EQ(r.model.size(), 3u);
  ClauseDb db(2);
  db.add_disjunction({});
  EXPECT_TRUE(solve(db).unsat());
}

TEST(Solver, VerdictsMatchBruteForce) {
  Rng rng(71);
  auto cfgs = configs();
  std::map<bool, int> seen;
  for (int trial = 0; trial < 160; ++trial) {
    const std::size_t k = 1 + rng.below(4);
    const std::size_t n = 2 + rng.below(9);
    const std::size_t m = 1 + rng.below(4 * n);
    ClauseDb db = gen_random_kxnf(k, n, m, rng.next());
    const bool sat = oracle::brute_sat(db).has_value();
    seen[sat]++;
    for (const SolverConfig& cfg : cfgs) {
      ProofLog log(n);
      SolveResult r = solve(db, cfg, &log);
      ASSERT_EQ(r.sat(), sat) << "trial " << trial;
      if (sat) {
        ASSERT_TRUE(oracle::formula_holds(db, oracle::pack(r.model.values)));
      } else {
        Verdict v = check_proof(db, *r.proof);
        ASSERT_TRUE(v.accepted) << v.line << ": " << v.reason;
      }
      ASSERT_LE(r.stats.additions, r.stats.propagations);
      ASSERT_LE(r.stats.additions + r.stats.conflicts, r.stats.propagations + r.stats.conflicts);
    }
  }
  EXPECT_GT(seen[true], 20);
  EXPECT_GT(seen[false], 20);
}

TEST(Solver, LearnedClausesAreImplied) {
  Rng rng(73);
  for (int trial = 0; trial < 150; ++trial) {
    const std::size_t n = 3 + rng.below(6);
    ClauseDb db = gen_random_kxnf(2 + rng.below(2), n, 2 * n + rng.below(2 * n), rng.next());
    SolverConfig cfg;
    cfg.compaction = rng.coin();
    Solver s(db, cfg);
    s.solve();
    for (const LinClause& c : s.db().clauses()) {
      if (!c.learned) continue;
      for (std::uint64_t x = 0; x < (std::uint64_t{1} << n); ++x) {
        if (oracle::formula_holds(db, x)) ASSERT_TRUE(oracle::clause_holds(c.neg_basis, x));
      }
    }
  }
}

TEST(Solver, VariableVsidsDecidesSingleVariables) {
  Rng rng(79);
  std::uint64_t decisions = 0;
  for (int trial = 0; trial < 20; ++trial) {
    ClauseDb db = gen_tseitin(3, 8, rng.next(), trial % 2 == 0);
    SolverConfig cfg;
    cfg.selection = ClauseSelection::VariableVsids;
    Solver s(db, cfg);
    while (s.settle() == Solver::Settle::FixedPoint && !s.trail().full()) {
      std::optional<Equation> f = s.pick_decision();
      ASSERT_TRUE(f.has_value());
      ASSERT_EQ(f->support().size(), 1u);
      ASSERT_TRUE(s.decide(*f));
      ++decisions;
    }
    EXPECT_EQ(s.unsat(), trial % 2 == 0);
  }
  EXPECT_GT(decisions, 0u);
}

TEST(Solver, DeterministicPerSeed) {
  ClauseDb db = gen_random_kxnf(3, 12, 40, 99);
  for (Phase phase : {Phase::Falsify, Phase::Random}) {
    SolverConfig cfg;
    cfg.phase = phase;
    cfg.seed = 1234;
    cfg.restarts = {RestartPolicy::Kind::Luby, 4};
    std::ostringstream p1, p2;
    ProofLog l1(db.nvars(), &p1), l2(db.nvars(), &p2);
    SolveResult a = solve(db, cfg, &l1);
    SolveResult b = solve(db, cfg, &l2);
    EXPECT_EQ(a.status, b.status);
    EXPECT_EQ(a.model.values, b.model.values);
    EXPECT_EQ(a.stats.decisions, b.stats.decisions);
    EXPECT_EQ(a.stats.conflicts, b.stats.conflicts);
    EXPECT_EQ(a.stats.propagations, b.stats.propagations);
    EXPECT_EQ(p1.str(), p2.str());
  }
}

TEST(Solver, RestartsHappenAndPreserveVerdicts) {
  ClauseDb db = gen_tseitin(4, 10, 3);
  SolverConfig plain;
  SolverConfig fixed;
  fixed.restarts = {RestartPolicy::Kind::Fixed, 5};
  SolverConfig lb;
  lb.restarts = {RestartPolicy::Kind::Luby, 3};
  for (const SolverConfig& cfg : {plain, fixed, lb}) {
    ProofLog log(db.nvars());
    SolveResult r = solve(db, cfg, &log);
    EXPECT_TRUE(r.unsat());
    EXPECT_TRUE(check_proof(db, *r.proof).accepted);
    if (cfg.restarts.kind == RestartPolicy::Kind::Off) {
      EXPECT_EQ(r.stats.restarts, 0u);
    } else {
      EXPECT_GT(r.stats.restarts, 0u);
    }
  }
}

TEST(Solver, LubySequence) {
  std::vector<std::uint64_t> expect = {1, 1, 2, 1, 1, 2, 4, 1, 1, 2, 1, 1, 2, 4, 8, 1};
  for (std::size_t i = 0; i < expect.size(); ++i) EXPECT_EQ(luby(i + 1), expect[i]);
}

TEST(Solver, ConflictLimitGivesUnknown) {
  ClauseDb db = gen_tseitin(4, 16, 1);
  SolverConfig cfg;
  cfg.conflict_limit = 3;
  SolveResult r = solve(db, cfg);
  EXPECT_EQ(r.status, SolveResult::Status::Unknown);
  EXPECT_EQ(r.stats.conflicts, 3u);
}

TEST(Solver, ConfigValidation) {
  SolverConfig cfg;
  cfg.restarts = {RestartPolicy::Kind::Luby, 0};
  EXPECT_THROW(cfg.validate(), UsageError);
  cfg.restarts = {};
  cfg.csids.decay = 1.5;
  EXPECT_THROW(cfg.validate(), UsageError);
  SolverConfig b;
  b.selection = ClauseSelection::BerkMin;
  EXPECT_EQ(b.effective_csids().bump, 0.0);
  EXPECT_EQ(b.effective_csids().decay, 0.9);
  SolverConfig m;
  m.selection = ClauseSelection::Cmtf;
  EXPECT_EQ(m.effective_csids().decay, 0.4);
}

TEST(Sampling, TwoRowDistributionWithNoUnits) {
  const std::size_t n = 4;
  EchelonBasis neg(n + 1);
  Equation g = var_eq(n, {1, 2}, false);
  Equation h = var_eq(n, {3}, true);
  neg.insert(g);
  neg.insert(h);
  EchelonBasis units(n + 1);
  Rng rng(83);
  std::map<std::string, int> counts;
  const int trials = 40000;
  for (int i = 0; i < trials; ++i) {
    SampleOutcome s = sample_once(units, neg, rng);
    EXPECT_EQ(s.accepted, !s.equation.is_zero());
    counts[s.equation.to_string()]++;
  }
  ASSERT_EQ(counts.size(), 4u);
  for (const Equation& e : {Equation(n), g, h, g + h}) {
    double p = static_cast<double>(counts[e.to_string()]) / trials;
    EXPECT_NEAR(p, 0.25, 0.02);
  }
}

TEST(Model, ExtractionBySubstitution) {
  EchelonBasis u(2);
  u.insert(var_eq(1, {1}, true));
  EXPECT_EQ(extract_model(u).values, std::vector<std::uint8_t>{1});
  EchelonBasis partial(3);
  partial.insert(var_eq(2, {1, 2}, true));
  EXPECT_THROW(extract_model(partial), ContractViolation);
  Assignment c = complete_model(partial);
  EXPECT_TRUE(oracle::eval(var_eq(2, {1, 2}, true), oracle::pack(c.values)));

  Rng rng(89);
  for (int t = 0; t < 300; ++t) {
    const std::size_t n = 1 + rng.below(12);
    EchelonBasis b(n + 1);
    while (b.size() < n) b.insert(oracle::random_nonconstant(n, rng));
    Assignment a = extract_model(b);
    for (const Equation& r : b.rows()) ASSERT_TRUE(r.holds(a.values));
  }
}
