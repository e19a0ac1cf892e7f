// Proof checker. Deliberately self-contained: it keeps its own elimination
// state and classification so that a bug in the solver's propagation code
// cannot make a bad proof pass.
#include <string>
#include <unordered_map>
#include <vector>

#include "linsat/proof.hpp"

namespace linsat {

namespace {

// Gaussian elimination state over a set of known-true equations.
class Knowledge {
 public:
  explicit Knowledge(std::size_t width) : width_(width), owner_(width, -1) {}

  Equation residue(Equation e) const {
    for (std::size_t b = 0; b < width_; ++b) {
      if (e.test(b) && owner_[b] >= 0) e += rows_[owner_[b]];
    }
    return e;
  }

  // Returns false when e is implied (or contradicts what is known).
  bool learn(const Equation& e) {
    Equation r = residue(e);
    std::size_t lead = r.leading();
    if (lead == Equation::npos || lead + 1 == width_) return false;
    owner_[lead] = static_cast<int>(rows_.size());
    rows_.push_back(std::move(r));
    return true;
  }

 private:
  std::size_t width_;
  std::vector<int> owner_;
  std::vector<Equation> rows_;
};

enum class Effect { Nothing, Unit, Contradiction };

// neg holds the rows of the hint clause's linear negation.
Effect apply_hint(Knowledge& k, const std::vector<Equation>& neg) {
  bool have = false;
  Equation common;
  for (const Equation& f : neg) {
    Equation g = k.residue(f);
    bool zero = g.leading() == Equation::npos;
    bool one = !zero && g.leading() + 1 == g.width();
    if (one) return Effect::Nothing;
    if (zero) continue;
    if (!have) {
      common = g;
      have = true;
    } else if (!(common == g)) {
      return Effect::Nothing;
    }
  }
  if (!have) return Effect::Contradiction;
  common.flip(common.width() - 1);
  k.learn(common);
  return Effect::Unit;
}

// Independent basis of span(f + 1 : f in disjuncts); false if tautological.
bool negation_of(const std::vector<Equation>& disjuncts, std::size_t width, std::vector<Equation>& out) {
  Knowledge k(width);
  out.clear();
  for (Equation f : disjuncts) {
    f.flip(width - 1);
    Equation r = k.residue(f);
    if (r.leading() == Equation::npos) continue;
    if (r.leading() + 1 == width) return false;
    k.learn(r);
    out.push_back(std::move(r));
  }
  return true;
}

Verdict reject(std::size_t line, std::string why) { return {false, line, std::move(why)}; }

}  // namespace

Verdict check_proof(const ClauseDb& formula, const Proof& proof) {
  const std::size_t width = formula.nvars() + 1;
  std::unordered_map<std::uint32_t, std::vector<Equation>> active;
  std::uint32_t max_id = 0;
  for (const LinClause& c : formula.clauses()) {
    active[raw(c.id)] = std::vector<Equation>(c.neg_basis.rows().begin(), c.neg_basis.rows().end());
    max_id = std::max(max_id, raw(c.id));
  }

  bool last_add_empty = false;
  bool any_add = false;
  for (std::size_t n = 0; n < proof.lines.size(); ++n) {
    const ProofLine& line = proof.lines[n];
    const std::size_t lineno = n + 1;
    if (!line.is_add()) {
      for (ClauseId id : line.ids) {
        if (active.erase(raw(id)) == 0) return reject(lineno, "deleting unknown clause " + to_string(id));
      }
      continue;
    }
    if (raw(line.id) <= max_id) return reject(lineno, "clause id " + to_string(line.id) + " is not increasing");
    for (const Equation& e : line.equations) {
      if (e.width() != width) return reject(lineno, "equation width does not match the formula");
    }
    std::vector<Equation> neg;
    if (!negation_of(line.equations, width, neg)) return reject(lineno, "tautological clause");
    if (line.ids.empty()) return reject(lineno, "no hints");

    Knowledge k(width);
    for (const Equation& f : neg) k.learn(f);
    bool refuted = false;
    for (std::size_t h = 0; h < line.ids.size(); ++h) {
      auto it = active.find(raw(line.ids[h]));
      if (it == active.end()) return reject(lineno, "hint " + to_string(line.ids[h]) + " is not an active clause");
      Effect e = apply_hint(k, it->second);
      if (e == Effect::Nothing) return reject(lineno, "hint " + to_string(line.ids[h]) + " does not propagate");
      if (e == Effect::Contradiction) {
        if (h + 1 != line.ids.size()) return reject(lineno, "hints continue after the conflict");
        refuted = true;
      }
    }
    if (!refuted) return reject(lineno, "hints do not reach a conflict");
    active[raw(line.id)] = std::move(neg);
    max_id = raw(line.id);
    any_add = true;
    last_add_empty = line.equations.empty() || active[raw(line.id)].empty();
  }
  if (!any_add || !last_add_empty) return reject(0, "proof does not derive the empty clause");
  return {true, 0, {}};
}

}  // namespace linsat
