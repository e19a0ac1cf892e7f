#include "linsat/echelon.hpp"

#include <string>

#include "linsat/errors.hpp"

namespace linsat {

EchelonBasis::EchelonBasis(std::size_t width) : width_(width), pivot_row_(width, kNone) {}

void EchelonBasis::check_width(const Equation& f) const {
  if (f.width() != width_) {
    throw UsageError("row width " + std::to_string(f.width()) + " does not match basis width " +
                     std::to_string(width_));
  }
}

void EchelonBasis::reduce_in_place(Equation& f) const {
  check_width(f);
  if (rows_.empty()) return;
  for (std::size_t b = f.next_set(0); b != npos; b = f.next_set(b + 1)) {
    std::uint32_t r = pivot_row_[b];
    if (r != kNone) f += rows_[r];
  }
}

void EchelonBasis::reduce_from(Equation& f, std::size_t from) const {
  check_width(f);
  for (std::size_t j = from; j < rows_.size(); ++j) {
    if (f.test(pivots_[j])) f += rows_[j];
  }
}

Membership EchelonBasis::member(const Equation& f) const {
  Equation r = reduce(f);
  if (r.is_zero()) return Membership::InSpan;
  if (r.is_one()) return Membership::ComplementInSpan;
  return Membership::Free;
}

InsertOutcome EchelonBasis::insert(Equation f) {
  reduce_in_place(f);
  if (f.is_zero()) return {InsertOutcome::Kind::AlreadyInSpan, std::move(f)};
  if (f.is_one()) return {InsertOutcome::Kind::Inconsistent, std::move(f)};
  append(f);
  return {InsertOutcome::Kind::Added, std::move(f)};
}

bool EchelonBasis::extend(Equation f) {
  reduce_in_place(f);
  if (f.is_zero()) return false;
  append(std::move(f));
  return true;
}

void EchelonBasis::append(Equation reduced) {
  std::size_t lead = reduced.leading();
  pivot_row_[lead] = static_cast<std::uint32_t>(rows_.size());
  pivots_.push_back(lead);
  rows_.push_back(std::move(reduced));
}

void EchelonBasis::truncate(std::size_t n) {
  if (n > rows_.size()) throw UsageError("truncate beyond basis size");
  while (rows_.size() > n) {
    pivot_row_[pivots_.back()] = kNone;
    pivots_.pop_back();
    rows_.pop_back();
  }
}

bool EchelonBasis::contains(const EchelonBasis& other) const {
  for (const Equation& r : other.rows()) {
    if (!reduce(r).is_zero()) return false;
  }
  return true;
}

EchelonBasis span_of(std::size_t width, std::span<const Equation> rows) {
  EchelonBasis basis(width);
  for (const Equation& r : rows) basis.extend(r);
  return basis;
}

Equation coordinates(const Equation& v, const EchelonBasis& target) {
  const std::size_t m = target.size();
  Equation coords(m);
  Equation rest = v;
  if (rest.width() != target.width()) throw UsageError("coordinates: width mismatch");
  for (std::size_t b = rest.next_set(0); b != Equation::npos; b = rest.next_set(b + 1)) {
    std::size_t r = target.row_with_pivot(b);
    if (r != EchelonBasis::npos) {
      rest += target.row(r);
      coords.flip(coordinate_bit(r, m));
    }
  }
  if (rest.is_one()) {
    coords.flip(0);
  } else if (!rest.is_zero()) {
    throw ContractViolation("row " + v.to_string() + " is outside span(target, 1)");
  }
  return coords;
}

std::vector<Equation> change_basis(std::span<const Equation> rows, const EchelonBasis& target) {
  std::vector<Equation> out;
  out.reserve(rows.size());
  for (const Equation& r : rows) out.push_back(coordinates(r, target));
  return out;
}

Equation expand(const Equation& coords, const EchelonBasis& target) {
  const std::size_t m = target.size();
  if (coords.width() != m + 1) throw UsageError("expand: coordinate width mismatch");
  Equation v(target.nvars());
  if (coords.test(0)) v.flip_rhs();
  for (std::size_t b = coords.next_set(1); b != Equation::npos; b = coords.next_set(b + 1)) {
    v += target.row(row_of_coordinate_bit(b, m));
  }
  return v;
}

}  // namespace linsat
