#pragma once

#include <cstddef>
#include <cstdint>
#include <span>

#include "linsat/clause.hpp"
#include "linsat/clause_db.hpp"
#include "linsat/echelon.hpp"
#include "linsat/trail.hpp"

namespace linsat {

struct ClauseStatus {
  enum class Kind { NoAction, Propagated, Conflict };
  Kind kind = Kind::NoAction;
  Equation unit;  // the deduced equation, reduced by the units

  bool propagated() const { return kind == Kind::Propagated; }
  bool conflict() const { return kind == Kind::Conflict; }
};

// Unit propagation of one clause against a consistent set of units, by full
// reduction of every row of the clause's negation.
ClauseStatus classify_clause(const EchelonBasis& units, const EchelonBasis& neg_basis);

// classify_clause against the trail, applying the outcome: a Propagated
// unit is appended, a Conflict is recorded on the trail.
ClauseStatus propagate_clause(Trail& trail, const LinClause& clause);

struct PropagateOptions {
  // First clause of the sweep; the lowest live id when absent/unknown.
  ClauseId start_hint = kNoClause;
  // Sweep order as positions into db.clauses(); id order when empty.
  std::span<const std::size_t> order = {};
  // Watched rows skip clauses that cannot act; off means full reduction of
  // every clause on every visit.
  bool use_watches = true;
};

struct PropagateResult {
  bool conflict = false;
  ClauseId reason = kNoClause;  // conflicting clause
  std::uint64_t propagations = 0;
  std::uint64_t visits = 0;
};

// Watch-based view of a clause at a fixed point. Open means two watched
// rows reduce to distinct equations outside span(U) and span(U)+1, so the
// clause is neither satisfied by a watch nor able to propagate.
enum class WatchView { Satisfied, Open, Determined };
WatchView inspect_watches(const Trail& trail, LinClause& clause);

// True when the units imply the clause, i.e. [0=1] lies in span(U, ¬C).
bool satisfied_by(const EchelonBasis& units, const EchelonBasis& neg_basis);

// Cycles through the clauses until a sweep with no propagation (fixed
// point) or a conflict.
PropagateResult propagate_all(Trail& trail, ClauseDb& db, const PropagateOptions& opts = {});

}  // namespace linsat
