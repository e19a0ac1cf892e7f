#include "linsat/propagate.hpp"

#include <numeric>
#include <vector>

#include "linsat/errors.hpp"

namespace linsat {

namespace {

using Kind = ClauseStatus::Kind;

// Brings a watch cache up to date with the trail, incrementally when the
// prefix it was computed against is still in place.
const Equation& refresh(WatchCache& c, const Equation& row, const Trail& trail) {
  const EchelonBasis& u = trail.units();
  if (c.primed && trail.prefix_intact(c.stamp, c.gen)) {
    if (c.stamp < u.size()) u.reduce_from(c.value, c.stamp);
  } else {
    c.value = u.reduce(row);
  }
  c.primed = true;
  c.stamp = u.size();
  c.gen = trail.gen_at_size();
  return c.value;
}

void prime(WatchCache& c, Equation value, const Trail& trail) {
  c.value = std::move(value);
  c.primed = true;
  c.stamp = trail.size();
  c.gen = trail.gen_at_size();
}

ClauseStatus visit(const Trail& trail, LinClause& c, bool use_watches) {
  const std::size_t k = c.size();
  if (k == 0) return {Kind::Conflict, {}};
  if (!use_watches) return classify_clause(trail.units(), c.neg_basis);

  if (k >= 2) {
    if (c.watch1 >= k || c.watch2 >= k || c.watch1 == c.watch2) c.reset_watches();
    const Equation& v1 = refresh(c.cache1, c.neg_basis.row(c.watch1), trail);
    const Equation& v2 = refresh(c.cache2, c.neg_basis.row(c.watch2), trail);
    if (v1.is_one() || v2.is_one()) return {};
    if (!v1.is_zero() && !v2.is_zero() && !(v1 == v2)) return {};
  } else {
    c.watch1 = 0;
    const Equation& v = refresh(c.cache1, c.neg_basis.row(0), trail);
    if (v.is_one()) return {};
    if (v.is_zero()) return {Kind::Conflict, {}};
    return {Kind::Propagated, v.negated()};
  }

  // Slow path: reduce every row and look for a new pair of watches.
  std::vector<Equation> g(k);
  for (std::size_t i = 0; i < k; ++i) {
    if (i == c.watch1) {
      g[i] = c.cache1.value;
    } else if (i == c.watch2) {
      g[i] = c.cache2.value;
    } else {
      g[i] = trail.units().reduce(c.neg_basis.row(i));
    }
  }
  std::size_t first = k;
  for (std::size_t i = 0; i < k; ++i) {
    if (g[i].is_one()) {
      if (i != c.watch2) {
        c.watch1 = static_cast<std::uint32_t>(i);
        prime(c.cache1, g[i], trail);
      }
      return {};
    }
    if (first == k && !g[i].is_zero()) first = i;
  }
  if (first == k) return {Kind::Conflict, {}};
  for (std::size_t j = first + 1; j < k; ++j) {
    if (!g[j].is_zero() && !(g[j] == g[first])) {
      c.watch1 = static_cast<std::uint32_t>(first);
      c.watch2 = static_cast<std::uint32_t>(j);
      prime(c.cache1, g[first], trail);
      prime(c.cache2, g[j], trail);
      return {};
    }
  }
  return {Kind::Propagated, g[first].negated()};
}

}  // namespace

WatchView inspect_watches(const Trail& trail, LinClause& c) {
  if (c.size() < 2) {
    if (c.size() == 1 && refresh(c.cache1, c.neg_basis.row(0), trail).is_one()) return WatchView::Satisfied;
    return WatchView::Determined;
  }
  if (c.watch1 >= c.size() || c.watch2 >= c.size() || c.watch1 == c.watch2) c.reset_watches();
  const Equation& v1 = refresh(c.cache1, c.neg_basis.row(c.watch1), trail);
  const Equation& v2 = refresh(c.cache2, c.neg_basis.row(c.watch2), trail);
  if (v1.is_one() || v2.is_one()) return WatchView::Satisfied;
  if (!v1.is_zero() && !v2.is_zero() && !(v1 == v2)) return WatchView::Open;
  ClauseStatus s = visit(trail, c, true);
  if (s.kind != ClauseStatus::Kind::NoAction) return WatchView::Determined;
  return inspect_watches(trail, c);
}

ClauseStatus classify_clause(const EchelonBasis& units, const EchelonBasis& neg_basis) {
  if (neg_basis.width() != units.width()) throw UsageError("clause and units differ in width");
  const Equation* first = nullptr;
  Equation keep;
  for (const Equation& row : neg_basis.rows()) {
    Equation g = units.reduce(row);
    if (g.is_one()) return {};
    if (g.is_zero()) continue;
    if (first == nullptr) {
      keep = std::move(g);
      first = &keep;
    } else if (!(g == keep)) {
      return {};
    }
  }
  if (first == nullptr) return {Kind::Conflict, {}};
  return {Kind::Propagated, keep.negated()};
}

bool satisfied_by(const EchelonBasis& units, const EchelonBasis& neg_basis) {
  // Rows reduced by U carry no pivot of U, so a combination lands in
  // span(U) + 1 only if it is exactly [0=1].
  EchelonBasis scratch(units.width());
  for (const Equation& row : neg_basis.rows()) {
    if (scratch.insert(units.reduce(row)).kind == InsertOutcome::Kind::Inconsistent) return true;
  }
  return false;
}

ClauseStatus propagate_clause(Trail& trail, const LinClause& clause) {
  if (trail.in_conflict()) throw UsageError("propagate_clause on a conflicting trail");
  ClauseStatus s = classify_clause(trail.units(), clause.neg_basis);
  if (s.propagated()) trail.propagate(s.unit, clause.id);
  if (s.conflict()) trail.set_conflict(clause.id);
  return s;
}

PropagateResult propagate_all(Trail& trail, ClauseDb& db, const PropagateOptions& opts) {
  PropagateResult res;
  if (trail.in_conflict()) {
    res.conflict = true;
    res.reason = trail.conflict_reason();
    return res;
  }
  const std::size_t n = db.size();
  if (n == 0) return res;

  std::vector<std::size_t> identity;
  std::span<const std::size_t> order = opts.order;
  if (order.empty()) {
    identity.resize(n);
    std::iota(identity.begin(), identity.end(), std::size_t{0});
    order = identity;
  } else if (order.size() != n) {
    throw UsageError("clause order does not cover the database");
  }

  std::size_t idx = 0;
  if (opts.start_hint != kNoClause) {
    std::size_t p = db.position_of(opts.start_hint);
    if (p != ClauseDb::npos) {
      if (opts.order.empty()) {
        idx = p;
      } else {
        for (std::size_t i = 0; i < n; ++i) {
          if (order[i] == p) idx = i;
        }
      }
    }
  }

  std::size_t idle = 0;
  while (idle < n) {
    LinClause& c = db.at_position(order[idx]);
    ++res.visits;
    ClauseStatus s = visit(trail, c, opts.use_watches);
    if (s.conflict()) {
      trail.set_conflict(c.id);
      res.conflict = true;
      res.reason = c.id;
      return res;
    }
    if (s.propagated()) {
      trail.propagate(s.unit, c.id);
      ++res.propagations;
      idle = 0;
    } else {
      ++idle;
    }
    idx = idx + 1 == n ? 0 : idx + 1;
  }
  return res;
}

}  // namespace linsat
