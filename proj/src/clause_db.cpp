#include "linsat/clause_db.hpp"

#include <algorithm>
#include <cmath>
#include <unordered_set>

#include "linsat/errors.hpp"

namespace linsat {

void CsidsParams::validate() const {
  if (!(base >= 0.0) || !std::isfinite(base)) throw UsageError("CSIDS base activity must be >= 0");
  if (!(bump >= 0.0) || !std::isfinite(bump)) throw UsageError("CSIDS bump must be >= 0");
  if (!(decay >= 0.0 && decay <= 1.0)) throw UsageError("CSIDS decay must lie in [0, 1]");
}

ClauseDb::ClauseDb(std::size_t nvars) : nvars_(nvars), level0_subst_(nvars + 1) {}

std::optional<ClauseId> ClauseDb::add_disjunction(std::span<const Equation> disjuncts) {
  NormalizedClause n = normalize_clause(nvars_, disjuncts);
  if (n.kind == NormalizedClause::Kind::Tautology) {
    ++tautologies_dropped_;
    return std::nullopt;
  }
  return add_original(std::move(n.neg_basis));
}

ClauseId ClauseDb::add_original(EchelonBasis neg_basis) {
  if (has_learned_) throw UsageError("original clauses must precede learned ones");
  ClauseId id = insert(std::move(neg_basis), false);
  ++original_count_;
  return id;
}

ClauseId ClauseDb::add_learned(EchelonBasis neg_basis) {
  has_learned_ = true;
  return insert(std::move(neg_basis), true);
}

ClauseId ClauseDb::insert(EchelonBasis neg_basis, bool learned) {
  if (neg_basis.width() != nvars_ + 1) throw UsageError("clause width does not match formula");
  if (neg_basis.contains_one()) throw ContractViolation("tautological clause inserted");
  LinClause c;
  c.id = reserve_id();
  c.learned = learned;
  c.neg_basis = std::move(neg_basis);
  clauses_.push_back(std::move(c));
  const ClauseId id = clauses_.back().id;
  if (pos_.size() <= raw(id)) pos_.resize(raw(id) + 1, 0);
  pos_[raw(id)] = static_cast<std::uint32_t>(clauses_.size());
  // Activity 0 ranks after every positive activity and after older ties.
  order_.push_back(id);
  return id;
}

std::size_t ClauseDb::position_of(ClauseId id) const {
  std::uint32_t r = raw(id);
  if (r >= pos_.size() || pos_[r] == 0) return npos;
  return pos_[r] - 1;
}

LinClause* ClauseDb::find(ClauseId id) {
  std::size_t p = position_of(id);
  return p == npos ? nullptr : &clauses_[p];
}

const LinClause* ClauseDb::find(ClauseId id) const {
  std::size_t p = position_of(id);
  return p == npos ? nullptr : &clauses_[p];
}

const LinClause& ClauseDb::get(ClauseId id) const {
  const LinClause* c = find(id);
  if (c == nullptr) throw UsageError("unknown clause id " + to_string(id));
  return *c;
}

LinClause& ClauseDb::get(ClauseId id) {
  LinClause* c = find(id);
  if (c == nullptr) throw UsageError("unknown clause id " + to_string(id));
  return *c;
}

void ClauseDb::remove(std::span<const ClauseId> ids) {
  if (ids.empty()) return;
  std::unordered_set<std::uint32_t> dead;
  for (ClauseId id : ids) dead.insert(raw(id));
  std::erase_if(clauses_, [&](const LinClause& c) { return dead.count(raw(c.id)) > 0; });
  std::erase_if(order_, [&](ClauseId id) { return dead.count(raw(id)) > 0; });
  rebuild_index();
}

void ClauseDb::rebuild_index() {
  std::fill(pos_.begin(), pos_.end(), 0);
  for (std::size_t i = 0; i < clauses_.size(); ++i) pos_[raw(clauses_[i].id)] = static_cast<std::uint32_t>(i + 1);
}

bool ClauseDb::ranks_before(ClauseId a, ClauseId b) const {
  double x = get(a).activity;
  double y = get(b).activity;
  if (x != y) return x > y;
  return raw(a) < raw(b);
}

void ClauseDb::rebuild_order() {
  order_.clear();
  order_.reserve(clauses_.size());
  for (const LinClause& c : clauses_) order_.push_back(c.id);
  std::sort(order_.begin(), order_.end(), [&](ClauseId a, ClauseId b) { return ranks_before(a, b); });
}

void ClauseDb::set_csids(const CsidsParams& params) {
  params.validate();
  csids_ = params;
}

void ClauseDb::bump_and_decay(std::span<const ClauseId> used, ClauseId fresh) {
  bool full_resort = false;
  if (csids_.decay == 0.0) {
    for (LinClause& c : clauses_) c.activity = 0.0;
    inc_ = 1.0;
    full_resort = true;
  } else {
    inc_ /= csids_.decay;
  }

  std::vector<ClauseId> moved;
  moved.reserve(used.size() + 1);
  std::unordered_set<std::uint32_t> seen;
  if (csids_.bump > 0.0) {
    for (ClauseId id : used) {
      LinClause* c = find(id);
      if (c == nullptr || id == fresh || !seen.insert(raw(id)).second) continue;
      c->activity += csids_.bump * inc_;
      moved.push_back(id);
    }
  }
  if (fresh != kNoClause) {
    LinClause& c = get(fresh);
    c.activity = csids_.base * inc_;
    moved.push_back(fresh);
  }

  if (inc_ > kRescaleLimit) {
    for (LinClause& c : clauses_) c.activity *= 1.0 / kRescaleLimit;
    inc_ *= 1.0 / kRescaleLimit;
    full_resort = true;
  }

  if (full_resort) {
    rebuild_order();
    return;
  }
  if (moved.empty()) return;
  // Uniform decay keeps relative order, so only the moved clauses need to
  // be re-ranked.
  std::unordered_set<std::uint32_t> moved_set;
  for (ClauseId id : moved) moved_set.insert(raw(id));
  std::erase_if(order_, [&](ClauseId id) { return moved_set.count(raw(id)) > 0; });
  std::sort(moved.begin(), moved.end(), [&](ClauseId a, ClauseId b) { return ranks_before(a, b); });
  std::vector<ClauseId> merged;
  merged.reserve(order_.size() + moved.size());
  std::merge(order_.begin(), order_.end(), moved.begin(), moved.end(), std::back_inserter(merged),
             [&](ClauseId a, ClauseId b) { return ranks_before(a, b); });
  order_ = std::move(merged);
}

CompactionReport ClauseDb::compact(const EchelonBasis& level0) {
  CompactionReport report;
  if (level0.width() != nvars_ + 1) throw UsageError("compaction basis width mismatch");
  level0_subst_ = level0;
  if (level0.empty()) return report;
  for (LinClause& c : clauses_) {
    EchelonBasis fresh(nvars_ + 1);
    bool satisfied = false;
    bool changed = false;
    for (const Equation& r : c.neg_basis.rows()) {
      Equation g = level0.reduce(r);
      if (!(g == r)) changed = true;
      if (fresh.insert(std::move(g)).kind == InsertOutcome::Kind::Inconsistent) {
        satisfied = true;
        break;
      }
    }
    if (satisfied) {
      report.removed.push_back(c.id);
      continue;
    }
    if (changed || fresh.size() != c.neg_basis.size()) {
      c.neg_basis = std::move(fresh);
      c.reset_watches();
      ++report.rewritten;
    }
  }
  remove(report.removed);
  return report;
}

}  // namespace linsat
