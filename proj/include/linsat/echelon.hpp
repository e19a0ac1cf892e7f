#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

#include "linsat/equation.hpp"

namespace linsat {

enum class Membership {
  InSpan,            // reduces to [0=0]
  ComplementInSpan,  // reduces to [0=1], i.e. f+1 is in the span
  Free,
};

struct InsertOutcome {
  enum class Kind { Added, AlreadyInSpan, Inconsistent };
  Kind kind;
  Equation row;  // the stored (reduced) row when kind == Added

  bool added() const { return kind == Kind::Added; }
};

// A list of independent rows in row-echelon form: every row's leading
// (lowest-index) set bit is unique among the rows. The basis is not kept in
// reduced form, but each appended row is fully reduced against the rows that
// precede it, so prefixes of the insertion order are themselves echelon
// bases of the corresponding prefix spans.
class EchelonBasis {
 public:
  static constexpr std::size_t npos = Equation::npos;

  EchelonBasis() = default;
  explicit EchelonBasis(std::size_t width);

  std::size_t width() const { return width_; }
  std::size_t nvars() const { return width_ == 0 ? 0 : width_ - 1; }
  std::size_t size() const { return rows_.size(); }
  bool empty() const { return rows_.empty(); }

  const Equation& row(std::size_t i) const { return rows_[i]; }
  std::span<const Equation> rows() const { return rows_; }
  std::size_t pivot(std::size_t i) const { return pivots_[i]; }
  std::size_t row_with_pivot(std::size_t bit) const {
    return pivot_row_[bit] == kNone ? npos : pivot_row_[bit];
  }

  // Eliminates every pivot bit of the basis from f.
  Equation reduce(Equation f) const {
    reduce_in_place(f);
    return f;
  }
  void reduce_in_place(Equation& f) const;
  // Same result as reduce_in_place when f is already reduced by rows
  // [0, from); only rows [from, size()) are consulted.
  void reduce_from(Equation& f, std::size_t from) const;

  Membership member(const Equation& f) const;
  // Adds f unless it is in the span; [0=1] is reported as Inconsistent and
  // not stored, so a basis built only through insert() stays consistent.
  InsertOutcome insert(Equation f);
  // Plain span extension: [0=1] is stored like any other row. Returns
  // whether the dimension grew.
  bool extend(Equation f);
  bool contains_one() const { return width_ > 0 && pivot_row_[width_ - 1] != kNone; }
  // Drops rows [n, size()), restoring the state after the n-th insertion.
  void truncate(std::size_t n);

  // True when every row of `other` lies in this span.
  bool contains(const EchelonBasis& other) const;
  friend bool same_span(const EchelonBasis& a, const EchelonBasis& b) {
    return a.size() == b.size() && a.contains(b);
  }

 private:
  static constexpr std::uint32_t kNone = UINT32_MAX;

  void check_width(const Equation& f) const;
  void append(Equation reduced);

  std::size_t width_ = 0;
  std::vector<Equation> rows_;
  std::vector<std::size_t> pivots_;
  std::vector<std::uint32_t> pivot_row_;
};

// Builds a basis of span(rows); dependent rows are dropped. The span may
// contain [0=1].
EchelonBasis span_of(std::size_t width, std::span<const Equation> rows);

// Coordinates of v over the ordered basis (1, f_m, ..., f_1), where f_1..f_m
// are target's rows in insertion order. The result has width m+1: bit 0 is
// the coefficient of [0=1] and bit t is the coefficient of row m-t, so the
// lowest set bit names the most recently inserted row that v depends on.
// Throws ContractViolation when v is outside span(target, 1); target must not
// contain [0=1] in its span.
Equation coordinates(const Equation& v, const EchelonBasis& target);
std::vector<Equation> change_basis(std::span<const Equation> rows, const EchelonBasis& target);
// Inverse of coordinates().
Equation expand(const Equation& coords, const EchelonBasis& target);

// Coordinate bit of target row `index` (0-based insertion index) when the
// target has m rows.
inline std::size_t coordinate_bit(std::size_t index, std::size_t m) { return m - index; }
inline std::size_t row_of_coordinate_bit(std::size_t bit, std::size_t m) { return m - bit; }

}  // namespace linsat
