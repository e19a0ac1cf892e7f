#pragma once

#include <bit>
#include <cstddef>
#include <cstdint>
#include <functional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include <boost/container/small_vector.hpp>

namespace linsat {

// An affine equation over GF(2) with n variables, stored as an (n+1)-bit row:
// variable i (1-based) lives at bit i-1 and the right-hand side at bit n.
// The zero row is the trivially true equation [0=0]; the row with only the
// RHS bit set is the contradiction [0=1].
//
// The same row type doubles as a plain GF(2) coordinate vector (learn uses
// it that way), in which case nvars() is just width()-1.
class Equation {
 public:
  using Word = std::uint64_t;
  static constexpr std::size_t kWordBits = 64;
  static constexpr std::size_t npos = static_cast<std::size_t>(-1);

  Equation() = default;
  explicit Equation(std::size_t nvars);

  static Equation zero(std::size_t nvars) { return Equation(nvars); }
  static Equation one(std::size_t nvars);
  // Coefficients of the 1-based variables in `vars` (repeats cancel).
  static Equation from_vars(std::size_t nvars, std::span<const std::size_t> vars,
                            bool rhs);
  // "110010": coefficients of x1..xn followed by the RHS bit.
  static Equation from_bits(std::string_view bits);

  std::size_t nvars() const { return width_ == 0 ? 0 : width_ - 1; }
  std::size_t width() const { return width_; }

  bool test(std::size_t bit) const {
    return (words_[bit / kWordBits] >> (bit % kWordBits)) & 1U;
  }
  void flip(std::size_t bit) { words_[bit / kWordBits] ^= Word{1} << (bit % kWordBits); }
  void set(std::size_t bit, bool value) {
    if (test(bit) != value) flip(bit);
  }

  bool coeff(std::size_t var) const { return test(var - 1); }
  bool rhs() const { return test(nvars()); }
  void flip_rhs() { flip(nvars()); }

  bool is_zero() const;
  // Exactly [0=1].
  bool is_one() const;
  // True when no variable coefficient is set (the row is [0=0] or [0=1]).
  bool is_constant() const;

  // Lowest set bit, or npos.
  std::size_t leading() const { return next_set(0); }
  std::size_t next_set(std::size_t from) const;
  std::size_t popcount() const;
  // 1-based variables with a nonzero coefficient.
  std::vector<std::size_t> support() const;

  Equation& operator+=(const Equation& other);
  friend Equation operator+(Equation a, const Equation& b) {
    a += b;
    return a;
  }
  // Adds [0=1], i.e. negates the equation.
  Equation negated() const {
    Equation e = *this;
    e.flip_rhs();
    return e;
  }

  friend bool operator==(const Equation& a, const Equation& b) {
    return a.width_ == b.width_ && a.words_ == b.words_;
  }
  friend bool operator<(const Equation& a, const Equation& b);

  // Truth value under an assignment of x1..xn (values[i] is x_{i+1}).
  bool holds(std::span<const std::uint8_t> values) const;

  std::string to_string() const;
  std::size_t hash() const;

  std::span<const Word> words() const { return {words_.data(), words_.size()}; }

 private:
  void check_width(const Equation& other) const;

  std::size_t width_ = 0;
  boost::container::small_vector<Word, 4> words_;
};

struct EquationHash {
  std::size_t operator()(const Equation& e) const { return e.hash(); }
};

}  // namespace linsat
