#include "linsat/learn.hpp"

#include <string>

#include "linsat/errors.hpp"
#include "linsat/propagate.hpp"

namespace linsat {

namespace {

constexpr std::size_t npos = EchelonBasis::npos;

EchelonBasis to_coordinates(const EchelonBasis& neg_basis, const EchelonBasis& units) {
  EchelonBasis out(units.size() + 1);
  for (const Equation& r : neg_basis.rows()) out.extend(coordinates(r, units));
  return out;
}

// The two smallest pivots, i.e. the latest and second-latest units used.
std::pair<std::size_t, std::size_t> two_lowest(const EchelonBasis& b) {
  std::size_t lo = npos, second = npos;
  for (std::size_t i = 0; i < b.size(); ++i) {
    std::size_t p = b.pivot(i);
    if (lo == npos || p < lo) {
      second = lo;
      lo = p;
    } else if (second == npos || p < second) {
      second = p;
    }
  }
  return {lo, second};
}

class Resolver {
 public:
  Resolver(const Trail& trail, const ClauseDb& db) : trail_(trail), db_(db), m_(trail.size()) {
    if (!trail.in_conflict()) throw UsageError("conflict analysis needs a conflicting trail");
    const LinClause* r = db.find(trail.conflict_reason());
    if (r == nullptr) throw ContractViolation("conflict reason is not in the database");
    coords_ = to_coordinates(r->neg_basis, trail.units());
    for (const Equation& row : coords_.rows()) {
      if (row.test(0)) throw ContractViolation("conflict reason is not falsified by the trail");
    }
    out_.antecedents.push_back(r->id);
  }

  void update_level() {
    auto [lo, second] = two_lowest(coords_);
    lo_ = lo;
    level_ = second == npos ? 0 : trail_.info(row_of_coordinate_bit(second, m_)).level;
  }

  bool empty() const { return coords_.empty(); }
  bool asserting() const { return level_ < trail_.level(); }

  // One addition: isolate the latest used unit in the clause and in its
  // reason, then add the isolated rows so that unit cancels.
  void resolve() {
    const std::size_t t = lo_;
    const std::size_t index = row_of_coordinate_bit(t, m_);
    const UnitInfo& info = trail_.info(index);
    if (info.is_decision()) throw ContractViolation("cannot resolve on a decision");
    const LinClause* reason = db_.find(info.reason);
    if (reason == nullptr) {
      throw ContractViolation("reason clause " + to_string(info.reason) + " is no longer in the database");
    }
    EchelonBasis rb = to_coordinates(reason->neg_basis, trail_.units());
    std::size_t bi = rb.row_with_pivot(0);
    if (bi == npos || !rb.row(bi).test(t)) {
      throw ContractViolation("clause " + to_string(reason->id) + " is not the reason for unit " +
                              std::to_string(index + 1));
    }
    std::size_t ai = coords_.row_with_pivot(t);

    EchelonBasis next(m_ + 1);
    for (std::size_t i = 0; i < coords_.size(); ++i) {
      if (i != ai) next.extend(coords_.row(i));
    }
    for (std::size_t i = 0; i < rb.size(); ++i) {
      if (i != bi) next.extend(rb.row(i));
    }
    Equation sum = coords_.row(ai) + rb.row(bi);
    sum.flip(0);
    next.extend(std::move(sum));
    coords_ = std::move(next);
    out_.antecedents.push_back(reason->id);
    ++out_.iterations;
    update_level();
  }

  Analysis finish() {
    const EchelonBasis& units = trail_.units();
    out_.neg_basis = EchelonBasis(units.width());
    for (const Equation& row : coords_.rows()) {
      if (!out_.neg_basis.insert(expand(row, units)).added()) {
        throw ContractViolation("learned clause rows are dependent");
      }
    }
    out_.level = level_;
    out_.asserting_index = coords_.empty() ? 0 : row_of_coordinate_bit(lo_, m_) + 1;
    return std::move(out_);
  }

 private:
  const Trail& trail_;
  const ClauseDb& db_;
  std::size_t m_;
  EchelonBasis coords_;
  std::size_t lo_ = npos;
  std::uint32_t level_ = 0;
  Analysis out_;
};

}  // namespace

Analysis analyze(const Trail& trail, const ClauseDb& db) {
  if (!trail.has_decision()) throw UsageError("conflict analysis needs a decision on the trail");
  Resolver r(trail, db);
  r.update_level();
  while (!r.empty() && !r.asserting()) r.resolve();
  return r.finish();
}

std::uint32_t asserting_level(const EchelonBasis& neg_basis, const Trail& trail) {
  if (classify_clause(trail.units(), neg_basis).kind != ClauseStatus::Kind::Conflict) {
    throw ContractViolation("clause is not falsified by the trail");
  }
  for (std::uint32_t k = 0; k <= trail.level(); ++k) {
    EchelonBasis prefix = trail.units();
    prefix.truncate(trail.level_end(k));
    if (classify_clause(prefix, neg_basis).kind != ClauseStatus::Kind::NoAction) return k;
  }
  return trail.level();
}

}  // namespace linsat
