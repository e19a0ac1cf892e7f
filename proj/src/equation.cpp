#include "linsat/equation.hpp"

#include <algorithm>

#include "linsat/errors.hpp"

namespace linsat {

namespace {

std::size_t word_count(std::size_t width) {
  return (width + Equation::kWordBits - 1) / Equation::kWordBits;
}

}  // namespace

Equation::Equation(std::size_t nvars) : width_(nvars + 1), words_(word_count(nvars + 1), 0) {}

Equation Equation::one(std::size_t nvars) {
  Equation e(nvars);
  e.flip(nvars);
  return e;
}

Equation Equation::from_vars(std::size_t nvars, std::span<const std::size_t> vars, bool rhs) {
  Equation e(nvars);
  for (std::size_t v : vars) {
    if (v == 0 || v > nvars) throw UsageError("variable out of range: " + std::to_string(v));
    e.flip(v - 1);
  }
  if (rhs) e.flip_rhs();
  return e;
}

Equation Equation::from_bits(std::string_view bits) {
  if (bits.empty()) throw UsageError("empty bit string");
  Equation e(bits.size() - 1);
  for (std::size_t i = 0; i < bits.size(); ++i) {
    if (bits[i] == '1') {
      e.flip(i);
    } else if (bits[i] != '0') {
      throw UsageError("bit string may only contain 0 and 1");
    }
  }
  return e;
}

bool Equation::is_zero() const {
  return std::all_of(words_.begin(), words_.end(), [](Word w) { return w == 0; });
}

bool Equation::is_one() const { return width_ > 0 && rhs() && next_set(0) == nvars(); }

bool Equation::is_constant() const {
  std::size_t lead = leading();
  return lead == npos || lead == nvars();
}

std::size_t Equation::next_set(std::size_t from) const {
  if (from >= width_) return npos;
  std::size_t w = from / kWordBits;
  Word cur = words_[w] & (~Word{0} << (from % kWordBits));
  while (true) {
    if (cur != 0) {
      std::size_t bit = w * kWordBits + static_cast<std::size_t>(std::countr_zero(cur));
      return bit < width_ ? bit : npos;
    }
    if (++w == words_.size()) return npos;
    cur = words_[w];
  }
}

std::size_t Equation::popcount() const {
  std::size_t total = 0;
  for (Word w : words_) total += static_cast<std::size_t>(std::popcount(w));
  return total;
}

std::vector<std::size_t> Equation::support() const {
  std::vector<std::size_t> vars;
  for (std::size_t b = next_set(0); b != npos && b < nvars(); b = next_set(b + 1)) {
    vars.push_back(b + 1);
  }
  return vars;
}

void Equation::check_width(const Equation& other) const {
  if (width_ != other.width_) {
    throw UsageError("equation width mismatch: " + std::to_string(width_) + " vs " +
                     std::to_string(other.width_));
  }
}

Equation& Equation::operator+=(const Equation& other) {
  check_width(other);
  for (std::size_t i = 0; i < words_.size(); ++i) words_[i] ^= other.words_[i];
  return *this;
}

bool operator<(const Equation& a, const Equation& b) {
  if (a.width_ != b.width_) return a.width_ < b.width_;
  return std::lexicographical_compare(a.words_.begin(), a.words_.end(), b.words_.begin(),
                                      b.words_.end());
}

bool Equation::holds(std::span<const std::uint8_t> values) const {
  bool parity = false;
  for (std::size_t b = next_set(0); b != npos && b < nvars(); b = next_set(b + 1)) {
    parity ^= values[b] != 0;
  }
  return parity == rhs();
}

std::string Equation::to_string() const {
  std::string s(width_, '0');
  for (std::size_t i = 0; i < width_; ++i) {
    if (test(i)) s[i] = '1';
  }
  return s;
}

std::size_t Equation::hash() const {
  std::size_t h = std::hash<std::size_t>{}(width_);
  for (Word w : words_) h ^= std::hash<Word>{}(w) + 0x9e3779b97f4a7c15ULL + (h << 6) + (h >> 2);
  return h;
}

}  // namespace linsat
