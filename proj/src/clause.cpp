#include "linsat/clause.hpp"

#include "linsat/errors.hpp"

namespace linsat {

std::vector<Equation> LinClause::disjuncts() const {
  std::vector<Equation> out;
  out.reserve(neg_basis.size());
  for (const Equation& r : neg_basis.rows()) out.push_back(r.negated());
  return out;
}

void LinClause::reset_watches() {
  watch1 = 0;
  watch2 = 1;
  cache1 = {};
  cache2 = {};
}

NormalizedClause normalize_clause(std::size_t nvars, std::span<const Equation> disjuncts) {
  EchelonBasis basis(nvars + 1);
  for (const Equation& f : disjuncts) {
    if (f.nvars() != nvars) throw UsageError("normalize_clause: equation width mismatch");
    if (basis.insert(f.negated()).kind == InsertOutcome::Kind::Inconsistent) {
      return {NormalizedClause::Kind::Tautology, EchelonBasis(nvars + 1)};
    }
  }
  if (basis.empty()) return {NormalizedClause::Kind::FalseClause, std::move(basis)};
  return {NormalizedClause::Kind::Clause, std::move(basis)};
}

bool Assignment::satisfies(const EchelonBasis& neg_basis) const {
  for (const Equation& r : neg_basis.rows()) {
    if (!r.holds(values)) return true;
  }
  return false;
}

}  // namespace linsat
