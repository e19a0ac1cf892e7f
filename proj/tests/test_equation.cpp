#include <gtest/gtest.h>

#include "linsat/echelon.hpp"
#include "linsat/equation.hpp"
#include "linsat/errors.hpp"
#include "linsat/rng.hpp"
#include "oracle.hpp"

using namespace linsat;

namespace {

Equation bits(const char* s) { return Equation::from_bits(s); }

Equation random_row(std::size_t n, Rng& rng) {
  Equation e(n);
  for (std::size_t b = 0; b <= n; ++b) {
    if (rng.coin()) e.flip(b);
  }
  return e;
}

}  // namespace

TEST(Equation, LayoutAndConstants) {
  Equation x1 = bits("101");
  EXPECT_EQ(x1.nvars(), 2u);
  EXPECT_TRUE(x1.coeff(1));
  EXPECT_FALSE(x1.coeff(2));
  EXPECT_TRUE(x1.rhs());
  EXPECT_TRUE(Equation::zero(3).is_zero());
  EXPECT_TRUE(Equation::one(3).is_one());
  EXPECT_TRUE(Equation::one(3).is_constant());
  EXPECT_FALSE(x1.is_constant());
  EXPECT_EQ(bits("110010").support(), (std::vector<std::size_t>{1, 2, 5}));
  EXPECT_EQ(bits("110010").to_string(), "110010");
}

TEST(Equation, AdditionExamples) {
  EXPECT_EQ(bits("101") + bits("011"), bits("110"));
  Equation f = bits("10111");
  EXPECT_EQ(f + Equation::zero(4), f);
  EXPECT_TRUE((f + f).is_zero());
  EXPECT_EQ(f.negated(), bits("10110"));
}

TEST(Equation, AdditionLengthMismatchIsUsageError) {
  Equation a(3);
  Equation b(4);
  EXPECT_THROW(a += b, UsageError);
}

TEST(Equation, WideRowsSpanWords) {
  const std::size_t n = 130;
  std::size_t vars[] = {1, 64, 65, 130};
  Equation e = Equation::from_vars(n, vars, true);
  EXPECT_EQ(e.popcount(), 5u);
  EXPECT_EQ(e.support(), (std::vector<std::size_t>{1, 64, 65, 130}));
  EXPECT_EQ(e.leading(), 0u);
  Equation f = e;
  f.flip(0);
  EXPECT_EQ(f.leading(), 63u);
  EXPECT_TRUE((e + e).is_zero());
}

TEST(Equation, AlgebraicLaws) {
  Rng rng(7);
  for (int t = 0; t < 500; ++t) {
    Equation a = random_row(9, rng), b = random_row(9, rng), c = random_row(9, rng);
    EXPECT_EQ(a + b, b + a);
    EXPECT_EQ((a + b) + c, a + (b + c));
  }
}

TEST(Echelon, ReduceMatchesWorkedExample) {
  EchelonBasis u(6);
  u.insert(bits("011000"));
  EXPECT_EQ(u.reduce(bits("110010")), bits("101010"));
  EchelonBasis empty(6);
  EXPECT_EQ(empty.reduce(bits("110010")), bits("110010"));
}

TEST(Echelon, InsertOutcomes) {
  EchelonBasis b(6);
  InsertOutcome o = b.insert(bits("011000"));
  ASSERT_TRUE(o.added());
  EXPECT_EQ(o.row, bits("011000"));
  EXPECT_EQ(b.insert(bits("011000")).kind, InsertOutcome::Kind::AlreadyInSpan);

  EchelonBasis x(2);
  x.insert(bits("10"));
  EXPECT_EQ(x.insert(bits("11")).kind, InsertOutcome::Kind::Inconsistent);
  EXPECT_EQ(x.size(), 1u);
  EXPECT_FALSE(x.contains_one());
}

TEST(Echelon, MemberExamples) {
  EchelonBasis b(3);
  b.insert(bits("100"));
  b.insert(bits("010"));
  EXPECT_EQ(b.member(bits("110")), Membership::InSpan);
  EXPECT_EQ(b.member(bits("111")), Membership::ComplementInSpan);
  EchelonBasis empty(3);
  EXPECT_EQ(empty.member(Equation::zero(2)), Membership::InSpan);

  EchelonBasis u(6);
  u.insert(bits("011000"));
  u.insert(bits("110101"));
  EXPECT_EQ(u.member(bits("000110")), Membership::Free);
}

TEST(Echelon, ReducedRowsAreIndependentAndPivotFree) {
  Rng rng(11);
  for (int t = 0; t < 200; ++t) {
    const std::size_t n = 1 + rng.below(8);
    EchelonBasis b(n + 1);
    for (int i = 0; i < 6; ++i) b.extend(random_row(n, rng));
    for (std::size_t i = 0; i < b.size(); ++i) {
      EchelonBasis others(n + 1);
      for (std::size_t j = 0; j < b.size(); ++j) {
        if (j != i) others.extend(b.row(j));
      }
      EXPECT_FALSE(others.reduce(b.row(i)).is_zero());
    }
    Equation f = random_row(n, rng);
    Equation r = b.reduce(f);
    for (std::size_t i = 0; i < b.size(); ++i) EXPECT_FALSE(r.test(b.pivot(i)));
    auto sp = oracle::span_elements(b);
    EXPECT_TRUE(sp.count((f + r).to_string()));
  }
}

TEST(Echelon, MemberAgreesWithEnumerationExhaustively) {
  // Every basis generated by up to three rows over n = 3, and every f.
  const std::size_t n = 3;
  const std::size_t width = n + 1;
  const std::uint64_t count = std::uint64_t{1} << width;
  auto row = [&](std::uint64_t v) {
    Equation e(n);
    for (std::size_t b = 0; b < width; ++b) {
      if ((v >> b) & 1) e.flip(b);
    }
    return e;
  };
  for (std::uint64_t a = 0; a < count; ++a) {
    for (std::uint64_t b = a; b < count; ++b) {
      for (std::uint64_t c = b; c < count; ++c) {
        std::vector<Equation> rows = {row(a), row(b), row(c)};
        EchelonBasis basis = span_of(width, rows);
        auto sp = oracle::span_elements(width, rows);
        for (std::uint64_t f = 0; f < count; ++f) {
          Equation e = row(f);
          Membership expect = sp.count(e.to_string())               ? Membership::InSpan
                              : sp.count(e.negated().to_string()) ? Membership::ComplementInSpan
                                                                  : Membership::Free;
          if (expect == Membership::InSpan || !basis.contains_one()) {
            ASSERT_EQ(basis.member(e), expect);
          }
        }
      }
    }
  }
}

TEST(Echelon, InsertGrowsDimensionByOne) {
  Rng rng(5);
  for (int t = 0; t < 200; ++t) {
    EchelonBasis b(7);
    for (int i = 0; i < 10; ++i) {
      std::size_t before = b.size();
      InsertOutcome o = b.insert(random_row(6, rng));
      EXPECT_EQ(b.size(), before + (o.added() ? 1 : 0));
      EXPECT_FALSE(b.contains_one());
    }
  }
}

TEST(Echelon, TruncateRestoresPrefix) {
  Rng rng(3);
  EchelonBasis b(9);
  std::vector<EchelonBasis> prefixes{b};
  for (int i = 0; i < 6; ++i) {
    if (b.insert(random_row(8, rng)).added()) prefixes.push_back(b);
  }
  for (std::size_t k = prefixes.size(); k-- > 0;) {
    EchelonBasis c = b;
    c.truncate(k);
    EXPECT_TRUE(same_span(c, prefixes[k]));
    EXPECT_EQ(c.size(), k);
  }
}

TEST(ChangeBasis, WorkedExampleCoordinates) {
  // Trail f1..f4 of the five-variable worked example.
  EchelonBasis t(6);
  for (const char* f : {"011000", "110101", "000110", "001011"}) ASSERT_TRUE(t.insert(bits(f)).added());
  // Coordinate bit 0 is [0=1], bit 4-i is the i-th inserted row. f2 is
  // stored reduced, which the rows below do not involve.
  std::vector<Equation> rows = {bits("010100"), bits("000110")};
  auto coords = change_basis(rows, t);
  EXPECT_EQ(coords[0].to_string(), "11101");  // f1 + f3 + f4 + 1
  EXPECT_EQ(coords[1].to_string(), "00100");  // f3
  for (std::size_t i = 0; i < rows.size(); ++i) EXPECT_EQ(expand(coords[i], t), rows[i]);
}

TEST(ChangeBasis, TargetRowsGiveUnitVectors) {
  EchelonBasis t(5);
  for (const char* f : {"11000", "01100", "00011"}) t.insert(bits(f));
  for (std::size_t i = 0; i < t.size(); ++i) {
    Equation c = coordinates(t.row(i), t);
    EXPECT_EQ(c.popcount(), 1u);
    EXPECT_TRUE(c.test(coordinate_bit(i, t.size())));
  }
}

TEST(ChangeBasis, OutsideSpanIsContractViolation) {
  EchelonBasis t(4);
  t.insert(bits("1000"));
  EXPECT_THROW(coordinates(bits("0100"), t), ContractViolation);
}

TEST(ChangeBasis, RandomRoundTrip) {
  Rng rng(21);
  for (int trial = 0; trial < 300; ++trial) {
    const std::size_t n = 1 + rng.below(8);
    EchelonBasis t(n + 1);
    for (int i = 0; i < 6; ++i) t.insert(random_row(n, rng));
    std::vector<Equation> rows;
    for (int i = 0; i < 4; ++i) {
      Equation r(n);
      for (std::size_t j = 0; j < t.size(); ++j) {
        if (rng.coin()) r += t.row(j);
      }
      if (rng.coin()) r.flip_rhs();
      rows.push_back(r);
    }
    auto coords = change_basis(rows, t);
    for (std::size_t i = 0; i < rows.size(); ++i) ASSERT_EQ(expand(coords[i], t), rows[i]);
  }
}
